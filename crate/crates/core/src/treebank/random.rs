use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64Mcg;

use super::{RootedTree, VertexId};
use crate::error::{Error, Result};

/// A uniformly random labeled tree on `n` vertices, rooted at vertex 0.
///
/// The generator is `Pcg64Mcg` (PCG XSL-RR 128/64, MCG variant) from
/// `rand_pcg`, seeded through `SeedableRng::seed_from_u64`. It draws a Prüfer
/// sequence of length `n - 2` with `random_range(0..n)` per entry, in order,
/// and decodes it by repeatedly joining the smallest-labeled leaf to the next
/// sequence entry. Edges are then oriented away from vertex 0.
pub fn random_tree(n: usize, seed: u64) -> Result<RootedTree> {
    if n == 0 {
        return Err(Error::input("random_tree needs n >= 1"));
    }
    let mut rng = Pcg64Mcg::seed_from_u64(seed);
    let code: Vec<VertexId> = (0..n.saturating_sub(2))
        .map(|_| rng.random_range(0..n))
        .collect();
    let edges = prufer_decode(n, &code);
    Ok(orient(n, &edges))
}

/// Edge list of the labeled tree on `0..n` with the given Prüfer code.
pub(crate) fn prufer_decode(n: usize, code: &[VertexId]) -> Vec<(VertexId, VertexId)> {
    debug_assert_eq!(code.len(), n.saturating_sub(2));
    if n < 2 {
        return Vec::new();
    }
    let mut remaining = vec![1usize; n];
    for &c in code {
        remaining[c] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<VertexId>> =
        (0..n).filter(|&v| remaining[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer code always leaves a leaf");
        edges.push((leaf, c));
        remaining[c] -= 1;
        if remaining[c] == 1 {
            leaves.push(Reverse(c));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    edges
}

fn orient(n: usize, edges: &[(VertexId, VertexId)]) -> RootedTree {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    RootedTree::from_parents(parent).expect("a decoded Prüfer code is a spanning tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn tiny_sizes() {
        assert_eq!(random_tree(1, 99).unwrap(), RootedTree::singleton());
        for seed in 0..5 {
            let t = random_tree(2, seed).unwrap();
            assert_eq!(t.parents(), &[None, Some(0)]);
        }
        assert!(random_tree(0, 1).is_err());
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = random_tree(8, 12345).unwrap();
        let b = random_tree(8, 12345).unwrap();
        assert_eq!(a.parents(), b.parents());
        assert_eq!(a.root(), 0);
    }

    #[test]
    fn known_code_decodes() {
        // code (3,3,3) on 5 vertices is the star centred at 3
        let mut e: Vec<_> = prufer_decode(5, &[3, 3, 3])
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        e.sort();
        assert_eq!(e, vec![(0, 3), (1, 3), (2, 3), (3, 4)]);
    }

    #[test]
    fn all_labeled_trees_on_four_vertices_reached() {
        // Cayley: 4^(4-2) = 16 labeled trees, one per code
        let mut trees = HashSet::new();
        for a in 0..4 {
            for b in 0..4 {
                let mut e: Vec<_> = prufer_decode(4, &[a, b])
                    .into_iter()
                    .map(|(x, y)| (x.min(y), x.max(y)))
                    .collect();
                e.sort();
                trees.insert(e);
            }
        }
        assert_eq!(trees.len(), 16);
    }
}
