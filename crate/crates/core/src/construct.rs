//! The strength-extremal tree family.
//!
//! For each index pair `(i, j)` there is a rooted tree `T(i, j)` with a
//! canonical coloring `f(i, j)`. `T(1, 1)` is a single vertex colored 1.
//! Otherwise the root is colored `i` and, for every `k` in `1..i+j` other
//! than `i`, receives two copies of `T(k, m)` with `m = ceil((i + j - k) / 2)`.
//! Pairs are built in [`PairIndex`] order, which guarantees every subtree has
//! been defined before it is used.
//!
//! Vertex ids are assigned in depth-first preorder with the root's children
//! in ascending `k`, first copy then second.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::treebank::{Coloring, RootedTree};

pub const DEFAULT_VERTEX_BUDGET: u64 = 1_000_000;

/// An index pair `(i, j)` with `i, j >= 1`.
///
/// Ordered by `i + j` first and then by `j`, so the sequence runs
/// `(1,1), (2,1), (1,2), (3,1), (2,2), (1,3), ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PairIndex {
    pub i: u32,
    pub j: u32,
}

impl PairIndex {
    pub fn new(i: u32, j: u32) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::input(format!(
                "pair ({i},{j}) needs i >= 1 and j >= 1"
            )));
        }
        Ok(PairIndex { i, j })
    }

    pub fn sum(self) -> u64 {
        u64::from(self.i) + u64::from(self.j)
    }

    /// The pairs hanging under the root, in attachment order. Each appears
    /// twice in the tree.
    pub fn child_pairs(self) -> impl Iterator<Item = PairIndex> {
        let s = self.i + self.j;
        (1..s)
            .filter(move |&k| k != self.i)
            .map(move |k| PairIndex {
                i: k,
                j: (s - k).div_ceil(2),
            })
    }

    /// Every pair with `i + j <= max_sum`, in order.
    pub fn all_up_to(max_sum: u32) -> Vec<PairIndex> {
        (2..=max_sum)
            .flat_map(|s| (1..s).map(move |j| PairIndex { i: s - j, j }))
            .collect()
    }
}

impl Ord for PairIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.sum(), self.j).cmp(&(other.sum(), other.j))
    }
}

impl PartialOrd for PairIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

pub fn pair_less(a: PairIndex, b: PairIndex) -> bool {
    a < b
}

/// Closed-form properties the construction is claimed to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExpectedProps {
    pub strength: u64,
    pub max_degree: u64,
    pub max_color: u64,
    pub root_color: u64,
    /// Lower bound on the extra cost of any coloring that recolors the root.
    pub gap: u64,
}

impl ExpectedProps {
    pub fn for_pair(p: PairIndex) -> Self {
        let (i, j) = (u64::from(p.i), u64::from(p.j));
        ExpectedProps {
            strength: i + j - 1,
            max_degree: if j == 1 { 2 * i - 2 } else { 2 * (i + j) - 3 },
            max_color: i + j - 1,
            root_color: i,
            gap: j,
        }
    }
}

/// Size data for `T(i, j)` computed from the recurrences alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub n: u64,
    pub sigma_f: u64,
    /// Maximum degree, derived structurally from the subtree recurrence
    /// rather than from `expected.max_degree`.
    pub max_degree: u64,
    pub root_degree: u64,
    pub expected: ExpectedProps,
}

#[derive(Clone, Copy)]
struct Raw {
    n: u64,
    sigma: u64,
    root_degree: u64,
    /// Largest degree among non-root vertices, 0 if there are none.
    inner_max_degree: u64,
}

fn catalog() -> &'static Mutex<HashMap<PairIndex, Raw>> {
    static CATALOG: OnceLock<Mutex<HashMap<PairIndex, Raw>>> = OnceLock::new();
    CATALOG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn compute_raw(p: PairIndex, memo: &mut HashMap<PairIndex, Raw>) -> Result<Raw> {
    if let Some(&r) = memo.get(&p) {
        return Ok(r);
    }
    let overflow = || Error::Overflow(format!("the size of T{p}"));
    let raw = if p == (PairIndex { i: 1, j: 1 }) {
        Raw {
            n: 1,
            sigma: 1,
            root_degree: 0,
            inner_max_degree: 0,
        }
    } else {
        let mut n = 1u64;
        let mut sigma = u64::from(p.i);
        let mut root_degree = 0u64;
        let mut inner = 0u64;
        for c in p.child_pairs() {
            let sub = compute_raw(c, memo)?;
            n = sub
                .n
                .checked_mul(2)
                .and_then(|x| x.checked_add(n))
                .ok_or_else(overflow)?;
            sigma = sub
                .sigma
                .checked_mul(2)
                .and_then(|x| x.checked_add(sigma))
                .ok_or_else(overflow)?;
            root_degree += 2;
            inner = inner.max(sub.root_degree + 1).max(sub.inner_max_degree);
        }
        Raw {
            n,
            sigma,
            root_degree,
            inner_max_degree: inner,
        }
    };
    memo.insert(p, raw);
    Ok(raw)
}

/// Vertex count, color sum and maximum degree of `T(i, j)` without building it.
pub fn stats_only(i: u32, j: u32) -> Result<CatalogEntry> {
    let p = PairIndex::new(i, j)?;
    let raw = {
        let mut memo = catalog().lock().unwrap_or_else(|e| e.into_inner());
        compute_raw(p, &mut memo)?
    };
    Ok(CatalogEntry {
        n: raw.n,
        sigma_f: raw.sigma,
        max_degree: raw.root_degree.max(raw.inner_max_degree),
        root_degree: raw.root_degree,
        expected: ExpectedProps::for_pair(p),
    })
}

fn check_budget(what: impl FnOnce() -> String, required: u64, budget: u64) -> Result<()> {
    if required > budget {
        return Err(Error::Budget {
            what: what(),
            required,
            limit: budget,
        });
    }
    Ok(())
}

struct Emitter {
    parent: Vec<Option<usize>>,
    colors: Vec<u64>,
}

impl Emitter {
    fn with_capacity(n: usize) -> Self {
        Emitter {
            parent: Vec::with_capacity(n),
            colors: Vec::with_capacity(n),
        }
    }

    fn emit(&mut self, p: PairIndex, attach_to: Option<usize>) {
        let id = self.parent.len();
        self.parent.push(attach_to);
        self.colors.push(u64::from(p.i));
        for c in p.child_pairs() {
            assert!(c < p, "subtree T{c} is not built before T{p}");
            assert!(c.sum() <= p.sum() && (c.sum() < p.sum() || c.j < p.j));
            self.emit(c, Some(id));
            self.emit(c, Some(id));
        }
    }

    fn finish(self) -> (RootedTree, Coloring) {
        let tree = RootedTree::from_parents(self.parent).expect("construction yields a tree");
        let coloring = Coloring::new(self.colors).expect("construction colors are positive");
        (tree, coloring)
    }
}

/// `T(i, j)` with its canonical coloring, within the default vertex budget.
pub fn build(i: u32, j: u32) -> Result<(RootedTree, Coloring)> {
    build_with_budget(i, j, DEFAULT_VERTEX_BUDGET)
}

pub fn build_with_budget(i: u32, j: u32, budget: u64) -> Result<(RootedTree, Coloring)> {
    let p = PairIndex::new(i, j)?;
    let n = stats_only(i, j)?.n;
    check_budget(|| format!("T{p}"), n, budget)?;
    let mut e = Emitter::with_capacity(n as usize);
    e.emit(p, None);
    debug_assert_eq!(e.parent.len() as u64, n);
    Ok(e.finish())
}

/// A rational strictly between 0 and 1/2, parsed from `P/Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alpha(Ratio<u64>);

impl Alpha {
    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::input("alpha has a zero denominator"));
        }
        let r = Ratio::new(numer, denom);
        // 0 < p/q < 1/2  <=>  p > 0 and 2p < q
        if *r.numer() == 0
            || r.numer()
                .checked_mul(2)
                .is_none_or(|twice| twice >= *r.denom())
        {
            return Err(Error::input(format!(
                "alpha = {numer}/{denom} must lie strictly between 0 and 1/2"
            )));
        }
        Ok(Alpha(r))
    }

    pub fn ratio(self) -> Ratio<u64> {
        self.0
    }

    /// Number of extra subtrees for index `i`: `floor((1/alpha - 2) * i) + 2`.
    pub fn extra_copies(self, i: u32) -> Result<u64> {
        let (p, q) = (u128::from(*self.0.numer()), u128::from(*self.0.denom()));
        let t = (q - 2 * p) * u128::from(i) / p + 2;
        u64::try_from(t).map_err(|_| Error::Overflow("the number of extra subtrees".into()))
    }
}

impl FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::input(format!("alpha `{s}` is not of the form P/Q"));
        let (p, q) = s.split_once('/').ok_or_else(bad)?;
        let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
        if !digits(p) || !digits(q) {
            return Err(bad());
        }
        Alpha::new(p.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// `T(i, 1)` padded with extra copies of `T(i-1, 1)` under the root.
#[derive(Debug, Clone)]
pub struct PaddedTree {
    pub tree: RootedTree,
    pub coloring: Coloring,
    pub extra_copies: u64,
}

/// Vertex count of the padded tree, without building it.
pub fn padded_size(i: u32, alpha: Alpha) -> Result<(u64, u64)> {
    if i < 2 {
        return Err(Error::input(format!("padded trees need i >= 2, got {i}")));
    }
    let t = alpha.extra_copies(i)?;
    let base = stats_only(i, 1)?.n;
    let sub = stats_only(i - 1, 1)?.n;
    let n = t
        .checked_mul(sub)
        .and_then(|x| x.checked_add(base))
        .ok_or_else(|| Error::Overflow(format!("the size of the padded tree for i = {i}")))?;
    Ok((n, t))
}

pub fn build_padded(i: u32, alpha: Alpha) -> Result<PaddedTree> {
    build_padded_with_budget(i, alpha, DEFAULT_VERTEX_BUDGET)
}

pub fn build_padded_with_budget(i: u32, alpha: Alpha, budget: u64) -> Result<PaddedTree> {
    let (n, t) = padded_size(i, alpha)?;
    check_budget(
        || format!("padded T({i},1) with alpha = {alpha}"),
        n,
        budget,
    )?;
    let mut e = Emitter::with_capacity(n as usize);
    e.emit(PairIndex { i, j: 1 }, None);
    let sub = PairIndex { i: i - 1, j: 1 };
    for _ in 0..t {
        e.emit(sub, Some(0));
    }
    let (tree, coloring) = e.finish();
    Ok(PaddedTree {
        tree,
        coloring,
        extra_copies: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::{coloring_sum, is_proper, tree_stats};

    fn pair(i: u32, j: u32) -> PairIndex {
        PairIndex::new(i, j).unwrap()
    }

    #[test]
    fn pair_order_examples() {
        assert!(pair_less(pair(1, 1), pair(2, 1)));
        assert!(pair_less(pair(2, 1), pair(1, 2)));
        assert!(!pair_less(pair(1, 2), pair(1, 2)));
        assert_eq!(
            PairIndex::all_up_to(3),
            vec![pair(1, 1), pair(2, 1), pair(1, 2)]
        );
        assert!(PairIndex::new(0, 1).is_err());
    }

    #[test]
    fn child_pairs_of_three_one() {
        let c: Vec<_> = pair(3, 1).child_pairs().collect();
        assert_eq!(c, vec![pair(1, 2), pair(2, 1)]);
    }

    #[test]
    fn build_small_examples() {
        let (t, f) = build(1, 1).unwrap();
        assert_eq!(t, RootedTree::singleton());
        assert_eq!(f.colors(), &[1]);

        let (t, f) = build(2, 1).unwrap();
        assert_eq!(t.parents(), &[None, Some(0), Some(0)]);
        assert_eq!(f.colors(), &[2, 1, 1]);
        assert_eq!(coloring_sum(&f), 4);

        let (t, f) = build(1, 2).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(
            t.parents(),
            &[None, Some(0), Some(1), Some(1), Some(0), Some(4), Some(4)]
        );
        assert_eq!(f.colors(), &[1, 2, 1, 1, 2, 1, 1]);
        assert_eq!(coloring_sum(&f), 9);
        assert!(is_proper(&t, &f).unwrap());
        let s = tree_stats(&t);
        assert_eq!(s.max_degree, 3);
        assert_eq!(s.max_degree_vertices, vec![1, 4]);
    }

    #[test]
    fn three_one_degree_at_root() {
        let (t, _) = build(3, 1).unwrap();
        let s = tree_stats(&t);
        assert_eq!(s.max_degree, 4);
        assert_eq!(s.max_degree_vertices, vec![0]);
    }

    #[test]
    fn stats_only_examples() {
        let e = stats_only(1, 1).unwrap();
        assert_eq!((e.n, e.sigma_f, e.max_degree), (1, 1, 0));
        let e = stats_only(3, 1).unwrap();
        assert_eq!((e.n, e.sigma_f, e.max_degree), (21, 29, 4));
        let e = stats_only(4, 1).unwrap();
        assert_eq!((e.n, e.sigma_f), (171, 236));
        assert_eq!(stats_only(1, 6).unwrap().n, 39295);
    }

    #[test]
    fn stats_only_overflow_is_reported() {
        assert!(matches!(stats_only(60, 60), Err(Error::Overflow(_))));
    }

    #[test]
    fn materialized_trees_match_catalog() {
        for p in PairIndex::all_up_to(6) {
            let (t, f) = build(p.i, p.j).unwrap();
            let e = stats_only(p.i, p.j).unwrap();
            assert_eq!(t.len() as u64, e.n, "n of T{p}");
            assert_eq!(coloring_sum(&f), e.sigma_f, "sigma of T{p}");
            assert_eq!(
                tree_stats(&t).max_degree as u64,
                e.max_degree,
                "degree of T{p}"
            );
            assert_eq!(e.max_degree, e.expected.max_degree, "closed form for T{p}");
            assert!(is_proper(&t, &f).unwrap());
            assert_eq!(f.get(0), u64::from(p.i));
            assert_eq!(f.max_color(), e.expected.max_color);
            assert_eq!(t.preorder(), (0..t.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn budget_error_names_size() {
        match build_with_budget(4, 1, 100) {
            Err(Error::Budget {
                required, limit, ..
            }) => assert_eq!((required, limit), (171, 100)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn alpha_parsing() {
        assert_eq!("1/4".parse::<Alpha>().unwrap(), Alpha::new(1, 4).unwrap());
        assert_eq!("2/8".parse::<Alpha>().unwrap().to_string(), "1/4");
        for bad in [
            "1/2", "0/3", "3/5", "1/0", "0.25", "1/-4", "+1/4", "1 /4", "a/b", "1/4/2",
        ] {
            assert!(bad.parse::<Alpha>().is_err(), "{bad}");
        }
    }

    #[test]
    fn extra_copy_counts() {
        let a = Alpha::new(1, 4).unwrap();
        assert_eq!(a.extra_copies(2).unwrap(), 6);
        assert_eq!(a.extra_copies(4).unwrap(), 10);
        assert_eq!(Alpha::new(1, 10).unwrap().extra_copies(3).unwrap(), 26);
        // (1/(2/5) - 2) * 3 = 1.5, floor 1
        assert_eq!(Alpha::new(2, 5).unwrap().extra_copies(3).unwrap(), 3);
    }

    #[test]
    fn padded_star() {
        let pt = build_padded(2, Alpha::new(1, 4).unwrap()).unwrap();
        assert_eq!(pt.extra_copies, 6);
        assert_eq!(pt.tree.len(), 9);
        assert_eq!(pt.tree.children(0).len(), 8);
        assert_eq!(pt.coloring.colors(), &[2, 1, 1, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn padded_degree() {
        let pt = build_padded(4, Alpha::new(1, 4).unwrap()).unwrap();
        assert_eq!(pt.extra_copies, 10);
        let s = tree_stats(&pt.tree);
        assert_eq!(s.max_degree, 16);
        assert_eq!(
            pt.tree.len() as u64,
            padded_size(4, Alpha::new(1, 4).unwrap()).unwrap().0
        );
        assert!(build_padded(1, Alpha::new(1, 4).unwrap()).is_err());
    }
}
