//! Mechanical checks of the construction's claimed properties, the strength
//! bound on random trees, and the padded-tree ratio sequence.

use num_rational::Ratio;
use rand::{Rng, RngExt, SeedableRng};
use rand_pcg::Pcg64Mcg;
use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{
    build_padded_with_budget, build_with_budget, padded_size, stats_only, Alpha, ExpectedProps,
    PairIndex,
};
use crate::error::{Error, Result};
use crate::sumcolor::{solve, solve_brute, Tabulation, BRUTE_MAX_N};
use crate::treebank::{coloring_sum, is_proper, random_tree, serialize, tree_stats, Format};

/// Trees at most this large are also handed to the exhaustive solver.
pub const ORACLE_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub actual: String,
    pub expected: String,
}

impl Check {
    fn new(name: &'static str, pass: bool, actual: impl ToString, expected: impl ToString) -> Self {
        Check {
            name,
            pass,
            actual: actual.to_string(),
            expected: expected.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Facts reported without being asserted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Observations {
    /// Root colors whose forced minimum exceeds the canonical sum by exactly `j`.
    pub tight_gap_colors: Vec<u64>,
    /// Maximum-degree vertices beyond the ones the construction names.
    pub extra_max_degree_vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub pair: PairIndex,
    pub status: Status,
    pub n: u64,
    pub checks: Vec<Check>,
    pub observed: Observations,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    /// `sumtree-v1` JSON of the tree and its canonical coloring, on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl VerdictReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Root colors the gap property is checked on: `1..=max(i+j, Δ+1)+1`
/// without `i`. Above `Δ + 2` the forced minimum grows by exactly one per
/// color, so the finite range covers every root color.
pub fn gap_check_range(p: PairIndex, max_degree: u64) -> impl Iterator<Item = u64> {
    let top = p.sum().max(max_degree + 1) + 1;
    let i = u64::from(p.i);
    (1..=top).filter(move |&c| c != i)
}

pub fn verify_pair(i: u32, j: u32, budget: u64) -> Result<VerdictReport> {
    let p = PairIndex::new(i, j)?;
    let entry = stats_only(i, j)?;
    let (tree, f) = match build_with_budget(i, j, budget) {
        Ok(built) => built,
        Err(e @ Error::Budget { .. }) => {
            return Ok(VerdictReport {
                pair: p,
                status: Status::Skipped,
                n: entry.n,
                checks: Vec::new(),
                observed: Observations::default(),
                skip_reason: Some(e.to_string()),
                counterexample: None,
            })
        }
        Err(e) => return Err(e),
    };
    let want = ExpectedProps::for_pair(p);
    let mut checks = Vec::new();

    checks.push(Check::new(
        "size",
        tree.len() as u64 == entry.n,
        tree.len(),
        entry.n,
    ));
    let proper = is_proper(&tree, &f)?;
    checks.push(Check::new(
        "proper_with_root_color",
        proper && f.get(tree.root()) == want.root_color,
        format!("proper={proper} root={}", f.get(tree.root())),
        format!("proper=true root={}", want.root_color),
    ));

    let sigma_f = coloring_sum(&f);
    checks.push(Check::new(
        "sigma_recurrence",
        sigma_f == entry.sigma_f,
        sigma_f,
        entry.sigma_f,
    ));
    let report = solve(&tree);
    checks.push(Check::new(
        "sigma_solver",
        report.sigma == sigma_f,
        report.sigma,
        sigma_f,
    ));
    checks.push(Check::new(
        "unique_minimal",
        report.count.is_unique(),
        report.count,
        1,
    ));

    let stats = tree_stats(&tree);
    let max_degree = stats.max_degree as u64;
    let tab = Tabulation::new(&tree);
    let mut worst: Option<(u64, u64)> = None;
    let mut tight = Vec::new();
    for c in gap_check_range(p, max_degree) {
        let gap = tab
            .forced_root(c)
            .expect("uncapped boxes are always feasible")
            - sigma_f;
        if gap == want.gap {
            tight.push(c);
        }
        if worst.is_none_or(|(g, _)| gap < g) {
            worst = Some((gap, c));
        }
    }
    // the range always holds at least two colors other than i
    let (g, c) = worst.expect("nonempty root color range");
    checks.push(Check::new(
        "root_gap",
        g >= want.gap,
        format!("min gap {g} at root color {c}"),
        format!(">= {}", want.gap),
    ));

    checks.push(Check::new(
        "max_degree",
        max_degree == want.max_degree,
        max_degree,
        want.max_degree,
    ));
    let named: Vec<usize> = if j == 1 {
        vec![tree.root()]
    } else {
        // the two copies of T(i+j-1, 1) are attached last
        let kids = tree.children(tree.root());
        kids[kids.len() - 2..].to_vec()
    };
    let present = named.iter().all(|v| stats.max_degree_vertices.contains(v));
    checks.push(Check::new(
        "max_degree_vertices",
        present,
        format!("{:?}", stats.max_degree_vertices),
        format!("contains {named:?}"),
    ));
    let extra = stats
        .max_degree_vertices
        .iter()
        .copied()
        .filter(|v| !named.contains(v))
        .collect();

    checks.push(Check::new(
        "max_color",
        f.max_color() == want.max_color,
        f.max_color(),
        want.max_color,
    ));
    checks.push(Check::new(
        "strength",
        report.strength == want.strength,
        report.strength,
        want.strength,
    ));

    let pass = checks.iter().all(|c| c.pass);
    let counterexample = (!pass).then(|| {
        String::from_utf8(serialize(&tree, Some(&f), Format::Json).expect("lengths match"))
            .expect("JSON is UTF-8")
    });
    Ok(VerdictReport {
        pair: p,
        status: if pass { Status::Pass } else { Status::Fail },
        n: entry.n,
        checks,
        observed: Observations {
            tight_gap_colors: tight,
            extra_max_degree_vertices: extra,
        },
        skip_reason: None,
        counterexample,
    })
}

/// Verifies every pair with `i + j <= max_sum` on up to `jobs` threads.
/// Reports come back in pair order whatever the scheduling.
pub fn verify_all(max_sum: u32, jobs: usize, budget: u64) -> Result<Vec<VerdictReport>> {
    if max_sum < 2 {
        return Err(Error::input(format!(
            "max sum must be at least 2, got {max_sum}"
        )));
    }
    if jobs == 0 {
        return Err(Error::input("jobs must be at least 1"));
    }
    let pairs = PairIndex::all_up_to(max_sum);
    // fill the shared catalog serially before fanning out
    for p in &pairs {
        stats_only(p.i, p.j)?;
    }
    if jobs == 1 {
        return pairs
            .iter()
            .map(|p| verify_pair(p.i, p.j, budget))
            .collect();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::input(format!("cannot start {jobs} worker threads: {e}")))?
        .install(|| {
            pairs
                .par_iter()
                .map(|p| verify_pair(p.i, p.j, budget))
                .collect()
        })
}

/// `1 + ceil(Δ / 2)`, the strength bound for nontrivial trees.
pub fn tree_strength_bound(max_degree: u64) -> u64 {
    1 + max_degree.div_ceil(2)
}

/// `ceil((w + Δ) / 2)` for Szekeres-Wilf number `w`.
pub fn general_strength_bound(szekeres_wilf: u64, max_degree: u64) -> u64 {
    (szekeres_wilf + max_degree).div_ceil(2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RandomCase {
    pub n: usize,
    pub seed: u64,
    pub strength: u64,
    pub max_degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsSummary {
    pub trees: usize,
    /// Trees with at least one edge; single vertices are not bound-checked.
    pub bound_checked: usize,
    pub bound_tight: usize,
    pub violations: Vec<RandomCase>,
    pub oracle_checked: usize,
    pub oracle_mismatches: Vec<RandomCase>,
    /// Largest strength / max degree over nontrivial trees, as `p/q`.
    pub max_ratio: Option<String>,
}

impl BoundsSummary {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.oracle_mismatches.is_empty()
    }
}

/// Sizes and seeds of the trees used by [`verify_bounds_random`]: sizes are
/// uniform in `1..=nmax`, drawn from `Pcg64Mcg::seed_from_u64(seed)`
/// alternately with the per-tree seed.
pub fn random_corpus(trials: usize, nmax: usize, seed: u64) -> Vec<(usize, u64)> {
    let mut rng = Pcg64Mcg::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let n = rng.random_range(1..=nmax);
            (n, rng.next_u64())
        })
        .collect()
}

pub fn verify_bounds_random(trials: usize, nmax: usize, seed: u64) -> Result<BoundsSummary> {
    if trials == 0 || nmax == 0 {
        return Err(Error::input("trials and nmax must both be at least 1"));
    }
    let mut summary = BoundsSummary {
        trees: 0,
        bound_checked: 0,
        bound_tight: 0,
        violations: Vec::new(),
        oracle_checked: 0,
        oracle_mismatches: Vec::new(),
        max_ratio: None,
    };
    let mut max_ratio: Option<Ratio<u64>> = None;
    for (n, tree_seed) in random_corpus(trials, nmax, seed) {
        let tree = random_tree(n, tree_seed)?;
        let report = solve(&tree);
        let delta = tree_stats(&tree).max_degree as u64;
        let case = RandomCase {
            n,
            seed: tree_seed,
            strength: report.strength,
            max_degree: delta,
        };
        summary.trees += 1;
        if n >= 2 {
            summary.bound_checked += 1;
            let bound = tree_strength_bound(delta);
            debug_assert_eq!(bound, general_strength_bound(2, delta));
            if report.strength > bound {
                summary.violations.push(case.clone());
            } else if report.strength == bound {
                summary.bound_tight += 1;
            }
            let r = Ratio::new(report.strength, delta);
            max_ratio = Some(max_ratio.map_or(r, |m| m.max(r)));
        }
        if n <= ORACLE_MAX_N.min(BRUTE_MAX_N) {
            summary.oracle_checked += 1;
            let brute = solve_brute(&tree)?;
            if (brute.sigma, brute.strength, brute.count)
                != (report.sigma, report.strength, report.count)
            {
                summary.oracle_mismatches.push(case);
            }
        }
    }
    summary.max_ratio = max_ratio.map(|r| format!("{}/{}", r.numer(), r.denom()));
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceRow {
    pub i: u32,
    pub t: u64,
    pub n: u64,
    pub strength: u64,
    pub max_degree: u64,
    /// Exact `strength / max_degree` as `p/q`.
    pub ratio: String,
    pub ratio_decimal: String,
    pub skipped: bool,
    /// Strength equals `i` and max degree equals `2i - 2 + t`.
    pub pass: bool,
}

/// `p/q` rounded half-up to six decimal places.
pub fn decimal6(r: Ratio<u64>) -> String {
    let (p, q) = (u128::from(*r.numer()), u128::from(*r.denom()));
    let scaled = (p * 1_000_000 * 2 + q) / (2 * q);
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

pub fn sequence_report(alpha: Alpha, imax: u32, budget: u64) -> Result<Vec<SequenceRow>> {
    if imax < 2 {
        return Err(Error::input(format!("imax must be at least 2, got {imax}")));
    }
    (2..=imax)
        .map(|i| {
            let (n, t) = padded_size(i, alpha)?;
            if n > budget {
                return Ok(SequenceRow {
                    i,
                    t,
                    n,
                    strength: 0,
                    max_degree: 0,
                    ratio: String::new(),
                    ratio_decimal: String::new(),
                    skipped: true,
                    pass: true,
                });
            }
            let padded = build_padded_with_budget(i, alpha, budget)?;
            let strength = solve(&padded.tree).strength;
            let max_degree = tree_stats(&padded.tree).max_degree as u64;
            let ratio = Ratio::new(strength, max_degree);
            Ok(SequenceRow {
                i,
                t,
                n,
                strength,
                max_degree,
                ratio: format!("{}/{}", ratio.numer(), ratio.denom()),
                ratio_decimal: decimal6(ratio),
                skipped: false,
                pass: strength == u64::from(i) && max_degree == 2 * u64::from(i) - 2 + t,
            })
        })
        .collect()
}

/// CSV with header `i,t,n,strength,max_degree,ratio`; skipped rows omitted.
pub fn sequence_csv(rows: &[SequenceRow]) -> String {
    let mut out = String::from("i,t,n,strength,max_degree,ratio\n");
    for r in rows.iter().filter(|r| !r.skipped) {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.i, r.t, r.n, r.strength, r.max_degree, r.ratio_decimal
        ));
    }
    out
}
