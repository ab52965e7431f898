//! Exact chromatic sums of trees.
//!
//! Every minimum-sum proper coloring of a tree, and every minimum under a
//! fixed root color, gives each non-forced vertex `v` a color in
//! `1..=deg(v)+1`: a larger color could be swapped for a free one in that
//! range, lowering the sum. The tabulation therefore keeps one [`DpCell`]
//! per vertex and per color in that box.
//!
//! Cells minimize `(sum, max color)` lexicographically. Because the colors
//! used by a minimal coloring always form a prefix `1..=t`, the smallest max
//! color among minimal colorings is the strength.

mod brute;
mod count;
mod search;

pub use brute::{solve_brute, solve_brute_with_cap, BRUTE_MAX_N};
pub use count::Count;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::treebank::{Coloring, RootedTree, VertexId};
use search::MinimalSearch;

/// Best subtree colorings for one vertex and one color of that vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DpCell {
    /// `u64::MAX` when no proper coloring of the subtree exists.
    pub min_sum: u64,
    pub min_max_color: u64,
    pub count: Count,
}

impl DpCell {
    const INFEASIBLE: DpCell = DpCell {
        min_sum: u64::MAX,
        min_max_color: 0,
        count: Count::ZERO,
    };

    pub fn is_feasible(&self) -> bool {
        self.min_sum != u64::MAX
    }

    /// The better of two alternatives; ties on the sum pool their counts.
    fn or(self, other: DpCell) -> DpCell {
        use std::cmp::Ordering::*;
        match self.min_sum.cmp(&other.min_sum) {
            Less => self,
            Greater => other,
            Equal => DpCell {
                min_sum: self.min_sum,
                min_max_color: self.min_max_color.min(other.min_max_color),
                count: self.count + other.count,
            },
        }
    }
}

/// Summary of the minimal colorings of one tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub sigma: u64,
    pub strength: u64,
    pub count: Count,
    /// Lexicographically least minimal coloring among those whose largest
    /// color equals the strength.
    pub witness: Coloring,
}

/// Bottom-up table of [`DpCell`]s, optionally with every color capped.
#[derive(Debug, Clone)]
pub struct Tabulation<'t> {
    tree: &'t RootedTree,
    boxes: Vec<u64>,
    cells: Vec<Vec<DpCell>>,
    /// `excluded[x][c-1]`: best over colors of `x` other than `c`.
    excluded: Vec<Vec<DpCell>>,
    best: Vec<DpCell>,
}

impl<'t> Tabulation<'t> {
    pub fn new(tree: &'t RootedTree) -> Self {
        Self::build(tree, u64::MAX)
    }

    /// Restricts every vertex to colors `<= cap` on top of its degree box.
    pub fn with_color_cap(tree: &'t RootedTree, cap: u64) -> Self {
        Self::build(tree, cap.max(1))
    }

    fn build(tree: &'t RootedTree, cap: u64) -> Self {
        let n = tree.len();
        let boxes: Vec<u64> = (0..n)
            .map(|v| (tree.degree(v) as u64 + 1).min(cap))
            .collect();
        let mut tab = Tabulation {
            tree,
            boxes,
            cells: vec![Vec::new(); n],
            excluded: vec![Vec::new(); n],
            best: vec![DpCell::INFEASIBLE; n],
        };
        for v in tree.preorder().into_iter().rev() {
            tab.fill(v);
        }
        tab
    }

    fn fill(&mut self, v: VertexId) {
        let kids = self.tree.children(v);
        let colors = self.boxes[v];
        let explicit = kids.iter().map(|&x| self.boxes[x]).max().unwrap_or(0);

        // Above every child's box no child is constrained by v's color.
        let shared = kids
            .iter()
            .try_fold((0u64, 0u64, Count::ONE), |(s, m, k), &x| {
                let b = self.best[x];
                b.is_feasible()
                    .then(|| (s + b.min_sum, m.max(b.min_max_color), k * b.count))
            });

        let mut row = Vec::with_capacity(colors as usize);
        for c in 1..=colors {
            let combined = if c > explicit {
                shared
            } else {
                kids.iter()
                    .try_fold((0u64, 0u64, Count::ONE), |(s, m, k), &x| {
                        let b = self.given_parent(x, c);
                        b.is_feasible()
                            .then(|| (s + b.min_sum, m.max(b.min_max_color), k * b.count))
                    })
            };
            row.push(match combined {
                Some((s, m, k)) => DpCell {
                    min_sum: s + c,
                    min_max_color: m.max(c),
                    count: k,
                },
                None => DpCell::INFEASIBLE,
            });
        }

        let mut prefix = Vec::with_capacity(row.len() + 1);
        prefix.push(DpCell::INFEASIBLE);
        for cell in &row {
            prefix.push(prefix.last().unwrap().or(*cell));
        }
        let mut excluded = vec![DpCell::INFEASIBLE; row.len()];
        let mut suffix = DpCell::INFEASIBLE;
        for idx in (0..row.len()).rev() {
            excluded[idx] = prefix[idx].or(suffix);
            suffix = suffix.or(row[idx]);
        }
        self.best[v] = *prefix.last().unwrap();
        self.excluded[v] = excluded;
        self.cells[v] = row;
    }

    pub fn tree(&self) -> &'t RootedTree {
        self.tree
    }

    /// Number of colors considered for `v`.
    pub fn box_size(&self, v: VertexId) -> u64 {
        self.boxes[v]
    }

    /// Cell for `v` colored `c`, `c` in `1..=box_size(v)`.
    pub fn cell(&self, v: VertexId, c: u64) -> DpCell {
        self.cells[v][(c - 1) as usize]
    }

    /// Best over all colors of `v`.
    pub fn best(&self, v: VertexId) -> DpCell {
        self.best[v]
    }

    /// Best subtree coloring of `x` when its parent has color `c`.
    pub fn given_parent(&self, x: VertexId, c: u64) -> DpCell {
        if c <= self.boxes[x] {
            self.excluded[x][(c - 1) as usize]
        } else {
            self.best[x]
        }
    }

    /// Minimum color sum with the root forced to `c`; `None` if impossible
    /// under the cap.
    pub fn forced_root(&self, c: u64) -> Option<u64> {
        assert!(c >= 1, "colors start at 1");
        let root = self.tree.root();
        self.tree.children(root).iter().try_fold(c, |acc, &x| {
            let b = self.given_parent(x, c);
            b.is_feasible().then(|| acc + b.min_sum)
        })
    }
}

/// Chromatic sum, strength, number of minimal colorings, and a witness.
pub fn solve(tree: &RootedTree) -> SolveReport {
    let tab = Tabulation::new(tree);
    let best = tab.best(tree.root());
    let (sigma, strength) = (best.min_sum, best.min_max_color);

    let capped = Tabulation::with_color_cap(tree, strength);
    debug_assert_eq!(capped.best(tree.root()).min_sum, sigma);
    let witness = MinimalSearch::new(&capped, sigma)
        .next_batch(1)
        .pop()
        .expect("a minimal coloring with the minimal top color exists");
    SolveReport {
        sigma,
        strength,
        count: best.count,
        witness,
    }
}

/// Least color sum over proper colorings with the root colored `c`.
pub fn forced_root_min_sum(tree: &RootedTree, c: u64) -> Result<u64> {
    if c == 0 {
        return Err(Error::input("forced root color must be at least 1"));
    }
    Ok(Tabulation::new(tree)
        .forced_root(c)
        .expect("uncapped boxes always admit a coloring"))
}

/// Minimal colorings listed in lexicographic order of the color sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub colorings: Vec<Coloring>,
    /// More minimal colorings exist beyond the limit.
    pub truncated: bool,
}

pub fn enumerate_minimal(tree: &RootedTree, limit: usize) -> Enumeration {
    let tab = Tabulation::new(tree);
    let sigma = tab.best(tree.root()).min_sum;
    let mut colorings = MinimalSearch::new(&tab, sigma).next_batch(limit.saturating_add(1));
    let truncated = colorings.len() > limit;
    colorings.truncate(limit);
    Enumeration {
        colorings,
        truncated,
    }
}

/// Cheapest proper coloring using only colors 1 and 2: the larger side of
/// the bipartition gets color 1.
pub fn best_two_coloring_sum(tree: &RootedTree) -> Result<u64> {
    if tree.len() < 2 {
        return Err(Error::input("a single vertex has no 2-coloring"));
    }
    let odd = tree.depths().iter().filter(|&&d| d % 2 == 1).count();
    let smaller = odd.min(tree.len() - odd);
    Ok((tree.len() + smaller) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build;
    use crate::treebank::tests::{path, star};
    use crate::treebank::{coloring_sum, is_proper, tree_stats};

    fn colors(c: &Coloring) -> Vec<u64> {
        c.colors().to_vec()
    }

    #[test]
    fn singleton() {
        let r = solve(&RootedTree::singleton());
        assert_eq!((r.sigma, r.strength, r.count), (1, 1, Count::ONE));
        assert_eq!(colors(&r.witness), vec![1]);
        assert_eq!(forced_root_min_sum(&RootedTree::singleton(), 5).unwrap(), 5);
    }

    #[test]
    fn path_of_four() {
        let r = solve(&path(4));
        assert_eq!((r.sigma, r.strength, r.count), (6, 2, Count::exact(2)));
        assert_eq!(colors(&r.witness), vec![1, 2, 1, 2]);
        let e = enumerate_minimal(&path(4), 10);
        assert!(!e.truncated);
        assert_eq!(
            e.colorings.iter().map(colors).collect::<Vec<_>>(),
            vec![vec![1, 2, 1, 2], vec![2, 1, 2, 1]]
        );
    }

    #[test]
    fn star_of_three() {
        let r = solve(&star(3));
        assert_eq!((r.sigma, r.strength, r.count), (5, 2, Count::ONE));
        assert_eq!(colors(&r.witness), vec![2, 1, 1, 1]);
    }

    #[test]
    fn three_one_needs_three_colors() {
        let (t, f) = build(3, 1).unwrap();
        let r = solve(&t);
        assert_eq!((r.sigma, r.strength, r.count), (29, 3, Count::ONE));
        assert_eq!(r.witness, f);
        assert_eq!(best_two_coloring_sum(&t).unwrap(), 30);
    }

    #[test]
    fn forced_root_on_one_two() {
        let (t, _) = build(1, 2).unwrap();
        assert_eq!(forced_root_min_sum(&t, 1).unwrap(), 9);
        assert_eq!(forced_root_min_sum(&t, 2).unwrap(), 12);
        assert_eq!(forced_root_min_sum(&t, 3).unwrap(), 11);
        assert!(forced_root_min_sum(&t, 0).is_err());
    }

    #[test]
    fn enumerate_two_one_is_unique() {
        let (t, _) = build(2, 1).unwrap();
        let e = enumerate_minimal(&t, 10);
        assert_eq!(
            e.colorings.iter().map(colors).collect::<Vec<_>>(),
            vec![vec![2, 1, 1]]
        );
        assert_eq!(
            colors(&enumerate_minimal(&RootedTree::singleton(), 10).colorings[0]),
            vec![1]
        );
    }

    #[test]
    fn enumeration_truncates() {
        // a path of 5 has a unique minimum (1,2,1,2,1); a path of 6 has two
        let e = enumerate_minimal(&path(6), 1);
        assert!(e.truncated);
        assert_eq!(e.colorings.len(), 1);
        assert!(!enumerate_minimal(&path(6), 2).truncated);
        assert!(enumerate_minimal(&path(6), 0).colorings.is_empty());
    }

    #[test]
    fn two_coloring_sums() {
        assert_eq!(best_two_coloring_sum(&path(2)).unwrap(), 3);
        assert_eq!(best_two_coloring_sum(&path(3)).unwrap(), 4);
        assert!(best_two_coloring_sum(&RootedTree::singleton()).is_err());
    }

    #[test]
    fn witness_respects_id_order_when_not_preorder() {
        // root 0 with child 2; 2 has child 1: ids are not preorder
        let t = RootedTree::from_parents(vec![None, Some(2), Some(0)]).unwrap();
        let r = solve(&t);
        assert_eq!((r.sigma, r.count), (4, Count::ONE));
        assert_eq!(colors(&r.witness), vec![1, 1, 2]);
        assert!(is_proper(&t, &r.witness).unwrap());
    }

    #[test]
    fn monotone_tail_on_constructed_trees() {
        for (i, j) in [(2, 1), (1, 2), (3, 1), (2, 2), (1, 3)] {
            let (t, _) = build(i, j).unwrap();
            let tab = Tabulation::new(&t);
            let d = tree_stats(&t).max_degree as u64;
            for c in d + 2..d + 8 {
                assert_eq!(tab.forced_root(c + 1), tab.forced_root(c).map(|s| s + 1));
            }
        }
    }

    #[test]
    fn witness_is_consistent() {
        let (t, _) = build(2, 2).unwrap();
        let r = solve(&t);
        assert!(is_proper(&t, &r.witness).unwrap());
        assert_eq!(coloring_sum(&r.witness), r.sigma);
        assert_eq!(r.witness.max_color(), r.strength);
    }

    #[test]
    fn cap_below_strength_is_infeasible_or_costlier() {
        let (t, _) = build(3, 1).unwrap();
        let capped = Tabulation::with_color_cap(&t, 2);
        assert_eq!(capped.best(0).min_sum, 30);
        assert_eq!(
            Tabulation::with_color_cap(&t, 1).best(0),
            DpCell::INFEASIBLE
        );
    }
}
