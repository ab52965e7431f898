//! Rooted trees, vertex colorings and the statistics shared by every other
//! module.
//!
//! Vertices are dense `usize` ids `0..n`. A tree is stored as a parent array
//! plus per-vertex child lists; child lists are ordered by ascending id, so a
//! tree whose ids were handed out in depth-first preorder keeps its
//! construction order after a serialization round trip.

mod format;
mod random;

pub use format::{parse, serialize, Format};
pub use random::random_tree;

use crate::error::{Error, Result};

pub type VertexId = usize;

/// An immutable rooted tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    root: VertexId,
    parent: Vec<Option<VertexId>>,
    children: Vec<Vec<VertexId>>,
}

impl RootedTree {
    /// The one-vertex tree.
    pub fn singleton() -> Self {
        RootedTree {
            root: 0,
            parent: vec![None],
            children: vec![Vec::new()],
        }
    }

    /// Builds a tree from a parent array. Exactly one entry must be `None`
    /// (the root) and every vertex must reach the root.
    pub fn from_parents(parent: Vec<Option<VertexId>>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::input("a tree needs at least one vertex"));
        }
        let mut root = None;
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            match *p {
                None => {
                    if let Some(r) = root {
                        return Err(Error::input(format!(
                            "vertices {r} and {v} both lack a parent"
                        )));
                    }
                    root = Some(v);
                }
                Some(p) if p >= n => {
                    return Err(Error::input(format!(
                        "parent of vertex {v} is {p}, outside 0..{n}"
                    )));
                }
                Some(p) if p == v => {
                    return Err(Error::input(format!("vertex {v} is its own parent")));
                }
                Some(p) => children[p].push(v),
            }
        }
        let root = root.ok_or_else(|| Error::input("no root: every vertex has a parent"))?;
        let tree = RootedTree {
            root,
            parent,
            children,
        };
        let reached = tree.preorder().len();
        if reached != n {
            return Err(Error::input(format!(
                "parent links contain a cycle: only {reached} of {n} vertices reach the root"
            )));
        }
        Ok(tree)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    /// Always false; a tree has at least one vertex.
    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<VertexId>] {
        &self.parent
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v]
    }

    /// Number of neighbours: children plus the parent, if any.
    pub fn degree(&self, v: VertexId) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    /// Vertices in depth-first preorder (children visited in stored order).
    pub fn preorder(&self) -> Vec<VertexId> {
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        order
    }

    /// Depth of every vertex, the root having depth 0.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        for v in self.preorder() {
            if let Some(p) = self.parent[v] {
                depth[v] = depth[p] + 1;
            }
        }
        depth
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
    }
}

/// Positive-integer colors indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring(Vec<u64>);

impl Coloring {
    pub fn new(colors: Vec<u64>) -> Result<Self> {
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(Error::input(format!(
                "vertex {v} has color 0; colors start at 1"
            )));
        }
        Ok(Coloring(colors))
    }

    pub fn colors(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: VertexId) -> u64 {
        self.0[v]
    }

    pub fn max_color(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }
}

/// Sum of all colors of a coloring.
pub fn coloring_sum(coloring: &Coloring) -> u64 {
    coloring
        .0
        .iter()
        .try_fold(0u64, |acc, &c| acc.checked_add(c))
        .expect("color sum overflows u64")
}

/// True iff no vertex shares its color with its parent.
pub fn is_proper(tree: &RootedTree, coloring: &Coloring) -> Result<bool> {
    if coloring.len() != tree.len() {
        return Err(Error::input(format!(
            "coloring has {} entries but the tree has {} vertices",
            coloring.len(),
            tree.len()
        )));
    }
    Ok(tree
        .edges()
        .all(|(p, v)| coloring.get(p) != coloring.get(v)))
}

/// Degree statistics and the two classical coloring bounds for a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeStats {
    pub max_degree: usize,
    /// Vertices of degree `max_degree`, ascending.
    pub max_degree_vertices: Vec<VertexId>,
    pub chromatic_number: u32,
    /// One plus the largest minimum degree of a subgraph.
    pub szekeres_wilf: u32,
}

pub fn tree_stats(tree: &RootedTree) -> TreeStats {
    let degrees: Vec<usize> = (0..tree.len()).map(|v| tree.degree(v)).collect();
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let max_degree_vertices = degrees
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d == max_degree)
        .map(|(v, _)| v)
        .collect();
    // Any tree with an edge contains K2 (min degree 1) and no subgraph with
    // min degree 2, and is bipartite.
    let nontrivial = tree.len() >= 2;
    let two_if_edge = if nontrivial { 2 } else { 1 };
    TreeStats {
        max_degree,
        max_degree_vertices,
        chromatic_number: two_if_edge,
        szekeres_wilf: two_if_edge,
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn path(n: usize) -> RootedTree {
        let parent = (0..n).map(|v| v.checked_sub(1)).collect();
        RootedTree::from_parents(parent).unwrap()
    }

    pub(crate) fn star(leaves: usize) -> RootedTree {
        let parent = (0..=leaves)
            .map(|v| if v == 0 { None } else { Some(0) })
            .collect();
        RootedTree::from_parents(parent).unwrap()
    }

    #[test]
    fn singleton_sum_and_stats() {
        let t = RootedTree::singleton();
        assert_eq!(coloring_sum(&Coloring::new(vec![1]).unwrap()), 1);
        let s = tree_stats(&t);
        assert_eq!(s.max_degree, 0);
        assert_eq!(s.max_degree_vertices, vec![0]);
        assert_eq!(s.chromatic_number, 1);
        assert_eq!(s.szekeres_wilf, 1);
    }

    #[test]
    fn star_coloring_sum() {
        let c = Coloring::new(vec![2, 1, 1]).unwrap();
        assert_eq!(coloring_sum(&c), 4);
        assert!(is_proper(&star(2), &c).unwrap());
    }

    #[test]
    fn monochrome_path_is_improper() {
        let c = Coloring::new(vec![1, 1, 1]).unwrap();
        assert!(!is_proper(&path(3), &c).unwrap());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let c = Coloring::new(vec![1, 2]).unwrap();
        assert!(matches!(is_proper(&path(3), &c), Err(Error::Input(_))));
    }

    #[test]
    fn zero_color_rejected() {
        assert!(Coloring::new(vec![1, 0]).is_err());
    }

    #[test]
    fn degree_counts_parent() {
        let t = path(4);
        assert_eq!(
            (0..4).map(|v| t.degree(v)).collect::<Vec<_>>(),
            vec![1, 2, 2, 1]
        );
        let s = tree_stats(&t);
        assert_eq!(s.max_degree, 2);
        assert_eq!(s.max_degree_vertices, vec![1, 2]);
        assert_eq!((s.chromatic_number, s.szekeres_wilf), (2, 2));
    }

    #[test]
    fn rejects_malformed_parent_arrays() {
        assert!(RootedTree::from_parents(vec![]).is_err());
        assert!(RootedTree::from_parents(vec![None, None]).is_err());
        assert!(RootedTree::from_parents(vec![Some(1), Some(0)]).is_err());
        assert!(RootedTree::from_parents(vec![None, Some(5)]).is_err());
        assert!(RootedTree::from_parents(vec![None, Some(1)]).is_err());
        // 1 -> 2 -> 1 cycle detached from root 0
        assert!(RootedTree::from_parents(vec![None, Some(2), Some(1)]).is_err());
    }

    #[test]
    fn root_need_not_be_zero() {
        let t = RootedTree::from_parents(vec![Some(2), Some(2), None]).unwrap();
        assert_eq!(t.root(), 2);
        assert_eq!(t.children(2), &[0, 1]);
        assert_eq!(t.preorder(), vec![2, 0, 1]);
        assert_eq!(t.depths(), vec![1, 1, 0]);
    }
}
