//! Exhaustive reference solver for small trees.
//!
//! Walks every proper coloring with `f(v) <= deg(v) + 1` in lexicographic
//! order. Strength is measured as the number of distinct colors, not the top
//! color, so agreement with [`super::solve`] also exercises the prefix
//! property of minimal colorings.

use super::{Count, SolveReport};
use crate::error::{Error, Result};
use crate::treebank::{Coloring, RootedTree};

pub const BRUTE_MAX_N: usize = 12;

pub fn solve_brute(tree: &RootedTree) -> Result<SolveReport> {
    solve_brute_with_cap(tree, BRUTE_MAX_N)
}

pub fn solve_brute_with_cap(tree: &RootedTree, max_n: usize) -> Result<SolveReport> {
    if tree.len() > max_n {
        return Err(Error::Budget {
            what: "exhaustive search".into(),
            required: tree.len() as u64,
            limit: max_n as u64,
        });
    }
    let n = tree.len();
    let mut colors = vec![0u64; n];
    let mut all = Vec::new();
    walk(tree, 0, &mut colors, &mut all);

    let sigma = all
        .iter()
        .map(|c| c.iter().sum::<u64>())
        .min()
        .expect("some coloring exists");
    let minimal: Vec<&Vec<u64>> = all
        .iter()
        .filter(|c| c.iter().sum::<u64>() == sigma)
        .collect();
    let distinct = |c: &[u64]| {
        let mut d = c.to_vec();
        d.sort_unstable();
        d.dedup();
        d.len() as u64
    };
    let strength = minimal.iter().map(|c| distinct(c)).min().unwrap();
    let witness = minimal
        .iter()
        .find(|c| distinct(c) == strength)
        .map(|c| Coloring::new(c.to_vec()).expect("colors start at 1"))
        .unwrap();
    Ok(SolveReport {
        sigma,
        strength,
        count: Count::exact(minimal.len() as u64),
        witness,
    })
}

fn walk(tree: &RootedTree, v: usize, colors: &mut [u64], out: &mut Vec<Vec<u64>>) {
    if v == colors.len() {
        out.push(colors.to_vec());
        return;
    }
    for c in 1..=tree.degree(v) as u64 + 1 {
        let clash = tree.parent(v).is_some_and(|p| p < v && colors[p] == c)
            || tree.children(v).iter().any(|&x| x < v && colors[x] == c);
        if !clash {
            colors[v] = c;
            walk(tree, v + 1, colors, out);
        }
    }
    colors[v] = 0;
}
