//! Directed multigraphs of overlapping patterns, walks and their
//! decomposition into simple cycles, and constructive walk realization.
//!
//! The overlap graph of a class has the avoiders of size `k-1` as vertices
//! and one edge per avoider of size `k`, running from its prefix pattern to
//! its suffix pattern. A permutation of size `m >= k` in the class traces a
//! walk of length `m-k+1` whose edges are its consecutive windows.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::perm::{enumerate_avoiders_capped, PatternSet, Permutation, DEFAULT_ENUM_CAP};

/// An edge of a multigraph. Parallel edges with equal labels are told apart
/// by `ordinal`; in plain overlap graphs labels are unique so the ordinal is
/// always zero, but the coloured graph reuses this type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge<E> {
    pub label: E,
    pub start: usize,
    pub arrival: usize,
    pub ordinal: u32,
}

/// A directed multigraph with labelled vertices and edges. Loops and
/// parallel edges are permitted. Immutable once built.
#[derive(Debug, Clone)]
pub struct Multigraph<V, E> {
    vertices: Vec<V>,
    edges: Vec<Edge<E>>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    vertex_pos: HashMap<V, usize>,
    label_pos: HashMap<E, Vec<usize>>,
}

impl<V, E> Multigraph<V, E> {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, i: usize) -> &V {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn edge(&self, i: usize) -> &Edge<E> {
        &self.edges[i]
    }

    pub fn edges(&self) -> &[Edge<E>] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    /// Whether every vertex reaches and is reached by every other.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut count = 1;
            while let Some(v) = stack.pop() {
                let step = if forward { &self.out[v] } else { &self.inc[v] };
                for &e in step {
                    let w = if forward {
                        self.edges[e].arrival
                    } else {
                        self.edges[e].start
                    };
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            count == n
        };
        reach(true) && reach(false)
    }

    /// Reports whether the graph, viewed on the edge subset for which
    /// `keep` holds, contains a directed cycle.
    pub fn has_cycle_within<F: Fn(usize) -> bool>(&self, keep: F) -> bool {
        let n = self.vertices.len();
        let mut state = vec![0u8; n]; // 0 unseen, 1 on stack, 2 done
        for s in 0..n {
            if state[s] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
            state[s] = 1;
            while let Some(frame) = stack.last_mut() {
                let v = frame.0;
                if frame.1 < self.out[v].len() {
                    let e = self.out[v][frame.1];
                    frame.1 += 1;
                    if !keep(e) {
                        continue;
                    }
                    let w = self.edges[e].arrival;
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            stack.push((w, 0));
                        }
                        1 => return true,
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        false
    }
}

impl<V, E> Multigraph<V, E>
where
    V: Clone + Eq + Hash,
    E: Clone + Eq + Hash,
{
    pub fn new(vertices: Vec<V>) -> Result<Self> {
        let mut vertex_pos = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_pos.insert(v.clone(), i).is_some() {
                return Err(Error::InternalInconsistency(
                    "duplicate vertex label".into(),
                ));
            }
        }
        let n = vertices.len();
        Ok(Multigraph {
            vertices,
            edges: Vec::new(),
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
            vertex_pos,
            label_pos: HashMap::new(),
        })
    }

    pub fn add_edge(&mut self, label: E, start: usize, arrival: usize) -> Result<usize> {
        if start >= self.vertices.len() || arrival >= self.vertices.len() {
            return Err(Error::IndexOutOfRange("edge endpoint".into()));
        }
        let idx = self.edges.len();
        let slots = self.label_pos.entry(label.clone()).or_default();
        let ordinal = slots.len() as u32;
        slots.push(idx);
        self.edges.push(Edge {
            label,
            start,
            arrival,
            ordinal,
        });
        self.out[start].push(idx);
        self.inc[arrival].push(idx);
        Ok(idx)
    }

    pub fn vertex_index(&self, label: &V) -> Option<usize> {
        self.vertex_pos.get(label).copied()
    }

    pub fn edges_with_label(&self, label: &E) -> &[usize] {
        self.label_pos.get(label).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

impl<V: fmt::Display, E: fmt::Display> Multigraph<V, E> {
    /// GraphViz export. Vertex and edge labels use their display forms.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph overlap {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  v{} [label=\"{}\"];\n", i, v));
        }
        for e in &self.edges {
            s.push_str(&format!(
                "  v{} -> v{} [label=\"{}\"];\n",
                e.start, e.arrival, e.label
            ));
        }
        s.push_str("}\n");
        s
    }
}

/// A walk, stored as a sequence of edge indices of a specific graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub edges: Vec<usize>,
}

impl Walk {
    pub fn new(edges: Vec<usize>) -> Self {
        Walk { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Consecutive compatibility: each edge starts where the previous one
    /// arrived.
    pub fn is_valid<V, E>(&self, g: &Multigraph<V, E>) -> bool {
        self.edges.iter().all(|&e| e < g.edges().len())
            && self
                .edges
                .windows(2)
                .all(|w| g.edges()[w[0]].arrival == g.edges()[w[1]].start)
    }

    /// Number of traversals of each edge.
    pub fn edge_multiplicities<V, E>(&self, g: &Multigraph<V, E>) -> Vec<usize> {
        let mut mult = vec![0usize; g.edges().len()];
        for &e in &self.edges {
            mult[e] += 1;
        }
        mult
    }

    /// Whether the walk closes up into a cycle.
    pub fn is_cycle<V, E>(&self, g: &Multigraph<V, E>) -> bool {
        !self.is_empty()
            && self.is_valid(g)
            && g.edges()[self.edges[0]].start == g.edges()[*self.edges.last().unwrap()].arrival
    }
}

/// Splits a walk into a multiset of simple cycles plus a residual path that
/// repeats no vertex (so its length is below the vertex count). Cycles are
/// peeled greedily from the front: the moment the pending prefix revisits a
/// vertex, the enclosed stretch is extracted.
pub fn decompose_walk<V, E>(g: &Multigraph<V, E>, walk: &Walk) -> (Vec<Walk>, Walk) {
    let mut cycles = Vec::new();
    let mut stack: Vec<usize> = Vec::new(); // pending edges; start vertices pairwise distinct
    for &e in &walk.edges {
        stack.push(e);
        let arrived = g.edges()[e].arrival;
        if let Some(pos) = stack
            .iter()
            .position(|&pe| g.edges()[pe].start == arrived)
        {
            cycles.push(Walk::new(stack.split_off(pos)));
        }
    }
    (cycles, Walk::new(stack))
}

/// All walks of length between 1 and `max_len`, in depth-first order over
/// edge indices. Intended for exhaustive desk-scale tests.
pub fn walks_up_to<V, E>(g: &Multigraph<V, E>, max_len: usize) -> Vec<Walk> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    fn rec<V, E>(
        g: &Multigraph<V, E>,
        current: &mut Vec<usize>,
        max_len: usize,
        out: &mut Vec<Walk>,
    ) {
        if !current.is_empty() {
            out.push(Walk::new(current.clone()));
        }
        if current.len() == max_len {
            return;
        }
        let candidates: Vec<usize> = match current.last() {
            None => (0..g.edges().len()).collect(),
            Some(&e) => g.out_edges(g.edges()[e].arrival).to_vec(),
        };
        for e in candidates {
            current.push(e);
            rec(g, current, max_len, out);
            current.pop();
        }
    }
    rec(g, &mut current, max_len, &mut out);
    out
}

/// The overlap graph of a pattern-avoidance class, together with the data
/// needed to map permutations to walks.
#[derive(Debug, Clone)]
pub struct OverlapGraph {
    pub k: usize,
    pub basis: PatternSet,
    pub graph: Multigraph<Permutation, Permutation>,
}

impl OverlapGraph {
    /// Builds the overlap graph for window size `k` over the class avoiding
    /// `basis`. Vertices are the avoiders of size `k-1` in lexicographic
    /// order, edges the avoiders of size `k`.
    pub fn build(k: usize, basis: &PatternSet) -> Result<Self> {
        Self::build_capped(k, basis, DEFAULT_ENUM_CAP)
    }

    pub fn build_capped(k: usize, basis: &PatternSet, cap: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::Precondition("window size must be at least 2".into()));
        }
        let vertices = enumerate_avoiders_capped(k - 1, basis, cap)?;
        let mut graph = Multigraph::new(vertices)?;
        for pi in enumerate_avoiders_capped(k, basis, cap)? {
            let start = graph
                .vertex_index(&pi.prefix_pattern(k - 1)?)
                .ok_or_else(|| Error::InternalInconsistency("prefix not a vertex".into()))?;
            let arrival = graph
                .vertex_index(&pi.suffix_pattern(k - 1)?)
                .ok_or_else(|| Error::InternalInconsistency("suffix not a vertex".into()))?;
            graph.add_edge(pi, start, arrival)?;
        }
        Ok(OverlapGraph { k, basis: basis.clone(), graph })
    }

    /// The walk traced by `sigma`: its i-th edge is the pattern of the
    /// window starting at position i.
    pub fn walk_of(&self, sigma: &Permutation) -> Result<Walk> {
        if sigma.size() < self.k {
            return Err(Error::Precondition(format!(
                "permutation of size {} shorter than window {}",
                sigma.size(),
                self.k
            )));
        }
        if !sigma.avoids_all(&self.basis) {
            return Err(Error::OutOfClass(format!(
                "{sigma} does not avoid {{{}}}",
                self.basis
            )));
        }
        let mut edges = Vec::with_capacity(sigma.size() - self.k + 1);
        for start in 1..=sigma.size() - self.k + 1 {
            let idx: Vec<usize> = (start..start + self.k).collect();
            let label = sigma.pattern_at(&idx)?;
            let found = self.graph.edges_with_label(&label);
            let e = *found.first().ok_or_else(|| {
                Error::InternalInconsistency(format!("window {label} is not an edge"))
            })?;
            edges.push(e);
        }
        Ok(Walk::new(edges))
    }

    /// Realizes a walk by a permutation of the class, searching over
    /// single-value appends with backtracking. Works for any basis; the
    /// search cannot dead-end for the unrestricted class.
    pub fn realize_walk_search(&self, walk: &Walk, node_budget: usize) -> Result<Permutation> {
        if walk.is_empty() {
            return Err(Error::Precondition("empty walk".into()));
        }
        if !walk.is_valid(&self.graph) {
            return Err(Error::Precondition("incompatible walk".into()));
        }
        let labels: Vec<&Permutation> = walk
            .edges
            .iter()
            .map(|&e| &self.graph.edges()[e].label)
            .collect();
        let mut budget = node_budget;
        let sigma = labels[0].clone();
        if let Some(found) = self.search_extend(sigma, &labels[1..], &mut budget) {
            return Ok(found);
        }
        if budget == 0 {
            return Err(Error::CapExceeded {
                what: "realization search",
                cap: node_budget,
            });
        }
        Err(Error::Precondition("walk admits no realization".into()))
    }

    fn search_extend(
        &self,
        sigma: Permutation,
        rest: &[&Permutation],
        budget: &mut usize,
    ) -> Option<Permutation> {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let Some(&target) = rest.first() else {
            return Some(sigma);
        };
        for value in 1..=sigma.size() as u32 + 1 {
            let candidate = sigma.append(value).expect("value in range");
            if candidate.suffix_pattern(self.k).expect("large enough") != *target {
                continue;
            }
            let last = candidate.size();
            let escapes = self.basis.patterns().iter().any(|b| {
                crate::perm::occurs_with_pin(candidate.values(), b, b.size(), last)
            });
            if escapes {
                continue;
            }
            if let Some(found) = self.search_extend(candidate, &rest[1..], budget) {
                return Some(found);
            }
        }
        None
    }

    /// Deterministic walk realization for the class avoiding `312`,
    /// chaining [`extend_312`] from the first edge label.
    pub fn realize_walk_312(&self, walk: &Walk) -> Result<Permutation> {
        let expect = PatternSet::single(Permutation::new(vec![3, 1, 2])?);
        if self.basis != expect {
            return Err(Error::Precondition(
                "deterministic realization applies to the 312-avoiding class".into(),
            ));
        }
        if walk.is_empty() {
            return Err(Error::Precondition("empty walk".into()));
        }
        if !walk.is_valid(&self.graph) {
            return Err(Error::Precondition("incompatible walk".into()));
        }
        let mut sigma = self.graph.edges()[walk.edges[0]].label.clone();
        for &e in &walk.edges[1..] {
            sigma = extend_312(&sigma, &self.graph.edges()[e].label)?;
        }
        Ok(sigma)
    }
}

/// Given a 312-avoider whose suffix pattern is the start of `target` in the
/// overlap graph, appends one value so that the suffix pattern becomes
/// `target` while 312-avoidance is preserved.
///
/// When the new last value of `target` is extreme the append goes below or
/// above everything; otherwise the appended value slots in just below the
/// point of the suffix that sits directly above it.
pub fn extend_312(sigma: &Permutation, target: &Permutation) -> Result<Permutation> {
    let k = target.size();
    if sigma.size() < k - 1 {
        return Err(Error::Precondition("base permutation too short".into()));
    }
    let three_one_two = Permutation::new(vec![3, 1, 2])?;
    if sigma.contains(&three_one_two) || target.contains(&three_one_two) {
        return Err(Error::Precondition("inputs must avoid 312".into()));
    }
    if sigma.suffix_pattern(k - 1)? != target.prefix_pattern(k - 1)? {
        return Err(Error::Precondition(
            "target is not a continuation of the suffix".into(),
        ));
    }
    let last = target.at(k);
    let value = if last == 1 {
        1
    } else if last == k as u32 {
        sigma.size() as u32 + 1
    } else {
        // Point directly above the new last value of `target`, carried over
        // to the matching point among the last k-1 positions of `sigma`.
        let above = target.position_of(last + 1);
        debug_assert!(above < k, "312-avoidance keeps the cover inside the prefix");
        let i = sigma.size() - (k - 1) + above;
        sigma.at(i)
    };
    let extended = sigma.append(value)?;
    if extended.contains(&three_one_two) || extended.suffix_pattern(k)? != *target {
        return Err(Error::InternalInconsistency(format!(
            "append rule failed on {sigma} -> {target}"
        )));
    }
    Ok(extended)
}
