//! Enumeration of all simple cycles of a directed multigraph.
//!
//! Backtracking over edges with blocked-set pruning, in the style of
//! Johnson's circuit enumeration: cycles are rooted at their smallest
//! vertex, each explored at most once. Loops and parallel edges count as
//! distinct cycles. A hard cap turns combinatorial explosions into an
//! explicit refusal instead of an endless run.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::overlap::Multigraph;

struct Search<'g, V, E, F> {
    g: &'g Multigraph<V, E>,
    root: usize,
    blocked: Vec<bool>,
    unblock_list: Vec<HashSet<usize>>,
    stack: Vec<usize>,
    found: usize,
    cap: usize,
    emit: F,
}

impl<'g, V, E, F: FnMut(&[usize])> Search<'g, V, E, F> {
    fn unblock(&mut self, v: usize) {
        self.blocked[v] = false;
        let pending: Vec<usize> = self.unblock_list[v].drain().collect();
        for w in pending {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }

    fn circuit(&mut self, v: usize) -> Result<bool> {
        let mut closed = false;
        self.blocked[v] = true;
        for idx in 0..self.g.out_edges(v).len() {
            let e = self.g.out_edges(v)[idx];
            let w = self.g.edges()[e].arrival;
            if w < self.root {
                continue;
            }
            if w == self.root {
                self.stack.push(e);
                self.found += 1;
                if self.found > self.cap {
                    return Err(Error::CapExceeded {
                        what: "simple cycle enumeration",
                        cap: self.cap,
                    });
                }
                (self.emit)(&self.stack);
                self.stack.pop();
                closed = true;
            } else if !self.blocked[w] {
                self.stack.push(e);
                if self.circuit(w)? {
                    closed = true;
                }
                self.stack.pop();
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for &e in self.g.out_edges(v) {
                let w = self.g.edges()[e].arrival;
                if w >= self.root {
                    self.unblock_list[w].insert(v);
                }
            }
        }
        Ok(closed)
    }
}

/// Visits every simple cycle exactly once, as a slice of edge indices in
/// traversal order starting at the cycle's smallest vertex. Returns the
/// cycle count; fails once the count would exceed `cap`.
pub fn for_each_simple_cycle<V, E, F: FnMut(&[usize])>(
    g: &Multigraph<V, E>,
    cap: usize,
    emit: F,
) -> Result<usize> {
    let n = g.vertex_count();
    let mut search = Search {
        g,
        root: 0,
        blocked: vec![false; n],
        unblock_list: vec![HashSet::new(); n],
        stack: Vec::new(),
        found: 0,
        cap,
        emit,
    };
    for root in 0..n {
        search.root = root;
        for b in search.blocked.iter_mut() {
            *b = false;
        }
        for l in search.unblock_list.iter_mut() {
            l.clear();
        }
        search.circuit(root)?;
    }
    Ok(search.found)
}

/// All simple cycles, each rotated so its smallest edge index comes first,
/// sorted by length then edge sequence.
pub fn simple_cycles<V, E>(g: &Multigraph<V, E>, cap: usize) -> Result<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for_each_simple_cycle(g, cap, |cycle| {
        out.push(canonical_rotation(cycle));
    })?;
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.dedup();
    Ok(out)
}

fn canonical_rotation(cycle: &[usize]) -> Vec<usize> {
    let min_pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, e)| e)
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut out = Vec::with_capacity(cycle.len());
    out.extend_from_slice(&cycle[min_pos..]);
    out.extend_from_slice(&cycle[..min_pos]);
    out
}

/// Affine dimension of the set of cycle vectors, streamed without storing
/// the cycles. Returns `(cycle count, affine dimension)`.
pub fn cycle_space_affine_dimension<V, E>(
    g: &Multigraph<V, E>,
    cap: usize,
) -> Result<(usize, usize)> {
    use num::{BigInt, BigRational, Zero};

    let m = g.edge_count();
    let mut first: Option<Vec<BigRational>> = None;
    let mut basis = super::linalg::EchelonBasis::new();
    let count = for_each_simple_cycle(g, cap, |cycle| {
        let mut vec = vec![BigRational::zero(); m];
        let share = BigRational::new(BigInt::from(1), BigInt::from(cycle.len()));
        for &e in cycle {
            vec[e] += &share;
        }
        match &first {
            None => first = Some(vec),
            Some(f) => {
                let diff: Vec<BigRational> =
                    vec.iter().zip(f).map(|(a, b)| a - b).collect();
                basis.insert(diff);
            }
        }
    })?;
    Ok((count, basis.rank()))
}
