//! Lexicographic enumeration of minimal colorings.
//!
//! A coloring reaches the target sum exactly when the root takes a color
//! whose cell attains it and every other vertex takes a color that is optimal
//! given its parent's color. Vertices are fixed one at a time in id order;
//! for each vertex `w` and each color `c` we track how many children have no
//! optimal, still-completable color left when `w` has color `c`. Fixing a
//! vertex only changes those counters on the path towards the root, and the
//! update stops at the first ancestor whose status is unchanged.

use super::Tabulation;
use crate::treebank::{Coloring, VertexId};

enum Undo {
    Fixed(VertexId),
    Ok {
        x: VertexId,
        excl: Vec<bool>,
        any: bool,
    },
    Low {
        w: VertexId,
        idx: usize,
        delta: i32,
    },
    High {
        w: VertexId,
        delta: i32,
    },
}

pub(crate) struct MinimalSearch<'a, 't> {
    tab: &'a Tabulation<'t>,
    target: u64,
    fixed: Vec<Option<u64>>,
    /// For non-root `x`: whether `x` can be completed optimally when its
    /// parent has color `c <= box(x)` (`ok_excl`) or any larger color.
    ok_excl: Vec<Vec<bool>>,
    ok_any: Vec<bool>,
    /// Blocked-children counters for parent colors up to the largest child
    /// box, and one shared counter above it.
    bad_low: Vec<Vec<i32>>,
    bad_high: Vec<i32>,
    log: Vec<Undo>,
    marks: Vec<usize>,
}

impl<'a, 't> MinimalSearch<'a, 't> {
    pub(crate) fn new(tab: &'a Tabulation<'t>, target: u64) -> Self {
        let tree = tab.tree();
        let n = tree.len();
        let bad_low = (0..n)
            .map(|w| {
                let explicit = tree
                    .children(w)
                    .iter()
                    .map(|&x| tab.box_size(x))
                    .max()
                    .unwrap_or(0);
                vec![0; explicit.min(tab.box_size(w)) as usize]
            })
            .collect();
        let mut s = MinimalSearch {
            tab,
            target,
            fixed: vec![None; n],
            ok_excl: vec![Vec::new(); n],
            ok_any: vec![true; n],
            bad_low,
            bad_high: vec![0; n],
            log: Vec::new(),
            marks: Vec::new(),
        };
        for x in tree.preorder().into_iter().rev() {
            let Some(p) = tree.parent(x) else { continue };
            let (excl, any) = s.compute_ok(x);
            for (idx, slot) in s.bad_low[p].iter_mut().enumerate() {
                let c = idx as u64 + 1;
                let ok = if c <= tab.box_size(x) { excl[idx] } else { any };
                *slot += i32::from(!ok);
            }
            s.bad_high[p] += i32::from(!any);
            s.ok_excl[x] = excl;
            s.ok_any[x] = any;
        }
        s
    }

    fn feasible(&self, w: VertexId, c: u64) -> bool {
        if self.fixed[w].is_some_and(|f| f != c) {
            return false;
        }
        let idx = (c - 1) as usize;
        let bad = self.bad_low[w]
            .get(idx)
            .copied()
            .unwrap_or(self.bad_high[w]);
        bad == 0
    }

    /// Completability of `x` under each color of its parent.
    fn compute_ok(&self, x: VertexId) -> (Vec<bool>, bool) {
        let colors = self.tab.box_size(x);
        let usable =
            |c2: u64, want: u64| self.tab.cell(x, c2).min_sum == want && self.feasible(x, c2);
        let excl = (1..=colors)
            .map(|c| {
                let want = self.tab.given_parent(x, c);
                want.is_feasible() && (1..=colors).any(|c2| c2 != c && usable(c2, want.min_sum))
            })
            .collect();
        let want = self.tab.best(x);
        let any = want.is_feasible() && (1..=colors).any(|c2| usable(c2, want.min_sum));
        (excl, any)
    }

    fn root_ok(&self) -> bool {
        let root = self.tab.tree().root();
        (1..=self.tab.box_size(root))
            .any(|r| self.tab.cell(root, r).min_sum == self.target && self.feasible(root, r))
    }

    /// Fixes `v` to `c` if some minimal coloring still extends the current
    /// assignment; otherwise leaves the state untouched.
    fn try_fix(&mut self, v: VertexId, c: u64) -> bool {
        let mark = self.log.len();
        self.fixed[v] = Some(c);
        self.log.push(Undo::Fixed(v));

        let tree = self.tab.tree();
        let mut x = v;
        while let Some(p) = tree.parent(x) {
            let (excl, any) = self.compute_ok(x);
            let box_x = self.tab.box_size(x);
            if let Some(f) = self.fixed[p] {
                // Fixing only ever removes options. Once a fixed vertex has a
                // blocked child under its own color, nothing extends.
                let (old, new) = if f <= box_x {
                    (self.ok_excl[x][(f - 1) as usize], excl[(f - 1) as usize])
                } else {
                    (self.ok_any[x], any)
                };
                if old != new {
                    self.rewind(mark);
                    return false;
                }
                break;
            }
            if excl == self.ok_excl[x] && any == self.ok_any[x] {
                break;
            }
            for (idx, slot) in self.bad_low[p].iter_mut().enumerate() {
                let c = idx as u64 + 1;
                let (old, new) = if c <= box_x {
                    (self.ok_excl[x][idx], excl[idx])
                } else {
                    (self.ok_any[x], any)
                };
                if old != new {
                    let delta = if new { -1 } else { 1 };
                    *slot += delta;
                    self.log.push(Undo::Low { w: p, idx, delta });
                }
            }
            if self.ok_any[x] != any {
                let delta = if any { -1 } else { 1 };
                self.bad_high[p] += delta;
                self.log.push(Undo::High { w: p, delta });
            }
            let old_excl = std::mem::replace(&mut self.ok_excl[x], excl);
            let old_any = std::mem::replace(&mut self.ok_any[x], any);
            self.log.push(Undo::Ok {
                x,
                excl: old_excl,
                any: old_any,
            });
            x = p;
        }

        if self.root_ok() {
            self.marks.push(mark);
            true
        } else {
            self.rewind(mark);
            false
        }
    }

    fn unfix_last(&mut self) {
        let mark = self.marks.pop().expect("unfix without a matching fix");
        self.rewind(mark);
    }

    fn rewind(&mut self, mark: usize) {
        while self.log.len() > mark {
            match self.log.pop().unwrap() {
                Undo::Fixed(v) => self.fixed[v] = None,
                Undo::Ok { x, excl, any } => {
                    self.ok_excl[x] = excl;
                    self.ok_any[x] = any;
                }
                Undo::Low { w, idx, delta } => self.bad_low[w][idx] -= delta,
                Undo::High { w, delta } => self.bad_high[w] -= delta,
            }
        }
    }

    /// Up to `limit` colorings in lexicographic order, starting from the
    /// least. Iterative, so deep trees do not grow the call stack.
    pub(crate) fn next_batch(mut self, limit: usize) -> Vec<Coloring> {
        let n = self.tab.tree().len();
        let mut out = Vec::new();
        if limit == 0 || !self.root_ok() {
            return out;
        }
        // choice[d] is the color currently fixed at vertex d (0 = none yet)
        let mut choice = vec![0u64; n];
        let mut d = 0usize;
        loop {
            if d == n {
                out.push(Coloring::new(choice.clone()).expect("colors start at 1"));
                if out.len() >= limit {
                    break;
                }
                d -= 1;
                self.unfix_last();
            }
            let colors = self.tab.box_size(d);
            let next = (choice[d] + 1..=colors).find(|&c| self.try_fix(d, c));
            match next {
                Some(c) => {
                    choice[d] = c;
                    d += 1;
                    if d < n {
                        choice[d] = 0;
                    }
                }
                None => {
                    choice[d] = 0;
                    if d == 0 {
                        break;
                    }
                    d -= 1;
                    self.unfix_last();
                }
            }
        }
        out
    }
}
