//! Layer colourings, inherited colourings, and the coloured overlap graph
//! for classes avoiding a decreasing pattern.
//!
//! The layer colouring paints the left-to-right maxima with colour one,
//! the left-to-right maxima of the remaining points with colour two, and so
//! on. Each colour class is an increasing subsequence, and a permutation
//! needs at most `n-1` colours exactly when it avoids the decreasing
//! pattern of size `n`.
//!
//! A coloured pattern of size `k` is *inherited* when it appears as the
//! coloured suffix of the layer colouring of some avoider. Inherited
//! colourings of sizes `k-1` and `k` are the vertices and edges of the
//! coloured overlap graph, whose cycle polytope projects onto the feasible
//! region of the class.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::overlap::{Multigraph, Walk};
use crate::perm::{enumerate_avoiders_capped, Permutation, PatternSet, DEFAULT_ENUM_CAP};

/// A permutation together with one colour per index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColouredPermutation {
    perm: Permutation,
    colours: Vec<u32>,
}

impl ColouredPermutation {
    pub fn new(perm: Permutation, colours: Vec<u32>) -> Result<Self> {
        if colours.len() != perm.size() {
            return Err(Error::Precondition(format!(
                "{} colours for a permutation of size {}",
                colours.len(),
                perm.size()
            )));
        }
        if colours.contains(&0) {
            return Err(Error::Precondition("colours start at 1".into()));
        }
        Ok(ColouredPermutation { perm, colours })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    pub fn size(&self) -> usize {
        self.perm.size()
    }

    /// Colour at 1-based position `i`.
    pub fn colour(&self, i: usize) -> u32 {
        self.colours[i - 1]
    }

    pub fn max_colour(&self) -> u32 {
        self.colours.iter().copied().max().unwrap_or(0)
    }

    /// Whether the colours used are exactly `1..=m`.
    pub fn is_rainbow(&self, m: u32) -> bool {
        let used: BTreeSet<u32> = self.colours.iter().copied().collect();
        used == (1..=m).collect()
    }

    /// Restriction to a strictly increasing set of 1-based indices, with
    /// colours carried along.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        let perm = self.perm.pattern_at(indices)?;
        let colours = indices.iter().map(|&i| self.colours[i - 1]).collect();
        Ok(ColouredPermutation { perm, colours })
    }

    pub fn prefix(&self, k: usize) -> Result<Self> {
        let idx: Vec<usize> = (1..=k).collect();
        self.restrict(&idx)
    }

    pub fn suffix(&self, k: usize) -> Result<Self> {
        if k > self.size() || k == 0 {
            return Err(Error::IndexOutOfRange(format!(
                "suffix length {k} outside 1..={}",
                self.size()
            )));
        }
        let idx: Vec<usize> = (self.size() - k + 1..=self.size()).collect();
        self.restrict(&idx)
    }

    /// Appends one point at height `y` with colour `f`.
    pub fn append_site(&self, y: u32, f: u32) -> Result<Self> {
        if f == 0 {
            return Err(Error::Precondition("colours start at 1".into()));
        }
        let perm = self.perm.append(y)?;
        let mut colours = self.colours.clone();
        colours.push(f);
        Ok(ColouredPermutation { perm, colours })
    }

    /// Text format `v1:c1 v2:c2 ...`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut colours = Vec::new();
        for tok in s.split_whitespace() {
            let (v, c) = tok
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected v:c, got {tok:?}")))?;
            values.push(
                v.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad value {v:?}")))?,
            );
            colours.push(
                c.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad colour {c:?}")))?,
            );
        }
        ColouredPermutation::new(Permutation::new(values)?, colours)
    }

    /// Human-readable form grouping runs of equal colour, with colour one
    /// rendered red, two blue, three green. Falls back to `v:c` pairs for
    /// sizes where one-line digits would be ambiguous.
    pub fn pretty(&self) -> String {
        if self.size() > 9 {
            return self.to_string();
        }
        fn colour_name(c: u32) -> String {
            match c {
                1 => "red".into(),
                2 => "blue".into(),
                3 => "green".into(),
                other => format!("c{other}"),
            }
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.size() {
            let c = self.colours[i];
            let mut j = i;
            while j < self.size() && self.colours[j] == c {
                j += 1;
            }
            out.push_str(&colour_name(c));
            for t in i..j {
                out.push_str(&self.perm.values()[t].to_string());
            }
            i = j;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "values": self.perm.values(),
            "colours": self.colours,
        })
    }
}

impl fmt::Display for ColouredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in self.perm.values().iter().zip(&self.colours) {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}:{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// Canonical order: permutation first, then colour sequences compared from
/// the last position backwards. All deterministic coordinate orders in the
/// library use this.
impl Ord for ColouredPermutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.perm
            .cmp(&other.perm)
            .then_with(|| self.colours.iter().rev().cmp(other.colours.iter().rev()))
    }
}

impl PartialOrd for ColouredPermutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The layer colouring: colour one for the left-to-right maxima, colour two
/// for the left-to-right maxima of the rest, and so on. Equivalently, each
/// value receives the least colour that creates no monochromatic descent
/// pair when values are processed from highest to lowest.
pub fn layer_colouring(sigma: &Permutation) -> ColouredPermutation {
    let n = sigma.size();
    let mut colours = vec![0u32; n];
    let mut remaining = n;
    let mut colour = 0u32;
    while remaining > 0 {
        colour += 1;
        let mut best = 0u32;
        for (c, &value) in colours.iter_mut().zip(sigma.values()) {
            if *c == 0 && value > best {
                *c = colour;
                best = value;
                remaining -= 1;
            }
        }
    }
    ColouredPermutation {
        perm: sigma.clone(),
        colours,
    }
}

/// Append-height thresholds per colour: appending a value `v` to `sigma`
/// receives colour `f` exactly when `threshold(f) <= v < threshold(f-1)`.
#[derive(Debug, Clone)]
pub struct ColourThresholds {
    size: u32,
    last_height: Vec<Option<u32>>,
}

impl ColourThresholds {
    /// Threshold for colour `f`; colour zero maps to `size + 2` and colours
    /// never used map to one.
    pub fn get(&self, f: u32) -> u32 {
        if f == 0 {
            return self.size + 2;
        }
        match self.last_height.get(f as usize - 1) {
            Some(Some(h)) => h + 1,
            _ => 1,
        }
    }
}

/// Computes the colour thresholds of `sigma` from its layer colouring: the
/// threshold of colour `f` is one above the height of the last point
/// coloured `f`.
pub fn colour_thresholds(sigma: &Permutation) -> ColourThresholds {
    let cp = layer_colouring(sigma);
    let mut last_height: Vec<Option<u32>> = vec![None; cp.max_colour() as usize];
    for i in 1..=sigma.size() {
        let f = cp.colour(i) as usize;
        last_height[f - 1] = Some(sigma.at(i));
    }
    ColourThresholds {
        size: sigma.size() as u32,
        last_height,
    }
}

/// Heights inside `sigma` of the points of its length-`j` suffix pattern,
/// indexed by the pattern height `0..=j+1` with the conventions that index
/// zero maps to zero and index `j+1` to `size+1`.
pub fn suffix_heights(sigma: &Permutation, j: usize) -> Result<Vec<u32>> {
    if j == 0 || j > sigma.size() {
        return Err(Error::Precondition(format!(
            "suffix length {j} outside 1..={}",
            sigma.size()
        )));
    }
    let pi = sigma.suffix_pattern(j)?;
    let mut out = vec![0u32; j + 2];
    for height in 1..=j as u32 {
        let pos_in_pi = pi.position_of(height);
        out[height as usize] = sigma.at(sigma.size() - j + pos_in_pi);
    }
    out[j + 1] = sigma.size() as u32 + 1;
    out
        .windows(2)
        .all(|w| w[0] < w[1])
        .then_some(out)
        .ok_or_else(|| Error::InternalInconsistency("suffix heights not increasing".into()))
}

/// An inherited coloured pattern together with an avoider realizing it as
/// its coloured suffix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessedState {
    pub state: ColouredPermutation,
    pub witness: Permutation,
    pub rainbow: bool,
}

/// Default cap on the number of inherited states tracked by the closure.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// All inherited `(n-1)`-colourings of size `k`, each with the first
/// witness found, sorted canonically.
///
/// The closure is seeded with the coloured suffixes of
/// the direct sums of `(n-1)...1` with the avoiders of size `k`, whose layer colourings are
/// rainbow, and repeatedly appends every value that keeps the witness in
/// the class. Appending never recolours a prefix, so the recorded witnesses
/// stay valid, and from a rainbow witness every inherited continuation is
/// reachable by a single append; the closure is therefore complete.
pub fn inherited_colourings(n: usize, k: usize) -> Result<Vec<WitnessedState>> {
    inherited_colourings_capped(n, k, DEFAULT_STATE_CAP)
}

pub fn inherited_colourings_capped(
    n: usize,
    k: usize,
    cap: usize,
) -> Result<Vec<WitnessedState>> {
    if n < 2 {
        return Err(Error::Precondition("monotone size must be at least 2".into()));
    }
    if k == 0 {
        return Err(Error::Precondition("state size must be at least 1".into()));
    }
    let max_colour = (n - 1) as u32;
    let basis = PatternSet::monotone_decreasing(n);
    let mut states: Vec<WitnessedState> = Vec::new();
    let mut seen: HashMap<ColouredPermutation, usize> = HashMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();

    let push = |cp: ColouredPermutation,
                    witness: Permutation,
                    states: &mut Vec<WitnessedState>,
                    seen: &mut HashMap<ColouredPermutation, usize>,
                    queue: &mut VecDeque<usize>|
     -> Result<()> {
        if seen.contains_key(&cp) {
            return Ok(());
        }
        if states.len() >= cap {
            return Err(Error::CapExceeded {
                what: "inherited colouring enumeration",
                cap,
            });
        }
        let rainbow = layer_colouring(&witness).is_rainbow(max_colour);
        seen.insert(cp.clone(), states.len());
        queue.push_back(states.len());
        states.push(WitnessedState {
            state: cp,
            witness,
            rainbow,
        });
        Ok(())
    };

    let head = Permutation::decreasing(n - 1);
    for pi in enumerate_avoiders_capped(k, &basis, cap)? {
        let witness = head.direct_sum(&pi);
        let state = layer_colouring(&witness).suffix(k)?;
        push(state, witness, &mut states, &mut seen, &mut queue)?;
    }

    while let Some(idx) = queue.pop_front() {
        let witness = states[idx].witness.clone();
        for value in 1..=witness.size() as u32 + 1 {
            let extended = witness.append(value)?;
            let coloured = layer_colouring(&extended);
            if coloured.max_colour() > max_colour {
                continue;
            }
            let state = coloured.suffix(k)?;
            push(state, extended, &mut states, &mut seen, &mut queue)?;
        }
    }

    states.sort_by(|a, b| a.state.cmp(&b.state));
    Ok(states)
}

/// The coloured overlap graph of the class avoiding the decreasing pattern
/// of size `n`: vertices are the inherited colourings of size `k-1`, edges
/// those of size `k`, each edge running from its coloured prefix to its
/// coloured suffix.
#[derive(Debug, Clone)]
pub struct ColouredOverlapGraph {
    pub n: usize,
    pub k: usize,
    pub graph: Multigraph<ColouredPermutation, ColouredPermutation>,
    edge_states: Vec<WitnessedState>,
}

impl ColouredOverlapGraph {
    pub fn build(n: usize, k: usize) -> Result<Self> {
        Self::build_capped(n, k, DEFAULT_STATE_CAP)
    }

    pub fn build_capped(n: usize, k: usize, cap: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::Precondition("window size must be at least 2".into()));
        }
        let vertex_states = inherited_colourings_capped(n, k - 1, cap)?;
        let edge_states = inherited_colourings_capped(n, k, cap)?;
        let mut graph =
            Multigraph::new(vertex_states.iter().map(|w| w.state.clone()).collect())?;
        for ws in &edge_states {
            let start = graph
                .vertex_index(&ws.state.prefix(k - 1)?)
                .ok_or_else(|| {
                    Error::InternalInconsistency(format!(
                        "prefix of edge {} is not inherited",
                        ws.state
                    ))
                })?;
            let arrival = graph
                .vertex_index(&ws.state.suffix(k - 1)?)
                .ok_or_else(|| {
                    Error::InternalInconsistency(format!(
                        "suffix of edge {} is not inherited",
                        ws.state
                    ))
                })?;
            graph.add_edge(ws.state.clone(), start, arrival)?;
        }
        Ok(ColouredOverlapGraph {
            n,
            k,
            graph,
            edge_states,
        })
    }

    pub fn basis(&self) -> PatternSet {
        PatternSet::monotone_decreasing(self.n)
    }

    /// Witnessed inherited states backing the edges, in edge order.
    pub fn edge_states(&self) -> &[WitnessedState] {
        &self.edge_states
    }

    /// The coloured walk traced by `sigma`: the coloured windows of its
    /// layer colouring.
    pub fn walk_of(&self, sigma: &Permutation) -> Result<Walk> {
        if sigma.size() < self.k {
            return Err(Error::Precondition(format!(
                "permutation of size {} shorter than window {}",
                sigma.size(),
                self.k
            )));
        }
        let coloured = layer_colouring(sigma);
        if coloured.max_colour() > (self.n - 1) as u32 {
            return Err(Error::OutOfClass(format!(
                "{sigma} contains the decreasing pattern of size {}",
                self.n
            )));
        }
        let mut edges = Vec::with_capacity(sigma.size() - self.k + 1);
        for start in 1..=sigma.size() - self.k + 1 {
            let idx: Vec<usize> = (start..start + self.k).collect();
            let label = coloured.restrict(&idx)?;
            let found = self.graph.edges_with_label(&label);
            let e = *found.first().ok_or_else(|| {
                Error::InternalInconsistency(format!(
                    "coloured window {label} is not an inherited edge"
                ))
            })?;
            edges.push(e);
        }
        Ok(Walk::new(edges))
    }

    /// The active sites of a vertex: one height/colour pair per out-edge.
    pub fn active_sites(&self, vertex: usize) -> BTreeSet<(u32, u32)> {
        self.graph
            .out_edges(vertex)
            .iter()
            .map(|&e| {
                let label = &self.graph.edges()[e].label;
                (label.perm().at(self.k), label.colour(self.k))
            })
            .collect()
    }

    /// A smallest avoider whose coloured suffix equals the given edge,
    /// breaking ties lexicographically.
    pub fn minimal_witness(&self, edge: usize) -> Result<Permutation> {
        // Edges were added in edge-state order, so the indices line up.
        let ws = &self.edge_states[edge];
        let target = &self.graph.edges()[edge].label;
        debug_assert_eq!(ws.state, *target);
        let ceiling = ws.witness.size();
        let basis = self.basis();
        for m in self.k..=ceiling {
            for sigma in enumerate_avoiders_capped(m, &basis, DEFAULT_ENUM_CAP)? {
                if layer_colouring(&sigma).suffix(self.k)? == *target {
                    return Ok(sigma);
                }
            }
        }
        Err(Error::InternalInconsistency(format!(
            "no witness up to recorded size for edge {target}"
        )))
    }

    /// The walk-realization constant: longest minimal witness plus
    /// `n - k - 1`. Every walk can be realized with a junk prefix of at
    /// most this length.
    pub fn realization_constant(&self) -> Result<usize> {
        let mut longest = 0usize;
        for e in 0..self.graph.edge_count() {
            longest = longest.max(self.minimal_witness(e)?.size());
        }
        Ok((longest + self.n).saturating_sub(self.k + 1))
    }

    /// Builds an avoider whose coloured walk ends with `walk`, returning it
    /// together with the prefix walk in front.
    pub fn realize_walk(&self, walk: &Walk) -> Result<(Permutation, Walk)> {
        if walk.is_empty() {
            return Err(Error::Precondition("empty walk".into()));
        }
        if !walk.is_valid(&self.graph) {
            return Err(Error::Precondition("incompatible walk".into()));
        }
        let head = Permutation::decreasing(self.n - 1);
        let mut sigma = head.direct_sum(&self.minimal_witness(walk.edges[0])?);
        for &e in &walk.edges[1..] {
            sigma = extend_monotone(&sigma, self.n, &self.graph.edges()[e].label)?;
        }
        let full = self.walk_of(&sigma)?;
        let split = full.len() - walk.len();
        if full.edges[split..] != walk.edges[..] {
            return Err(Error::InternalInconsistency(
                "realized walk does not end with the requested walk".into(),
            ));
        }
        Ok((sigma, Walk::new(full.edges[..split].to_vec())))
    }
}

/// Appends one value to a rainbow avoider so that its coloured suffix
/// becomes `target`. The admissible heights form the intersection of two
/// intervals: one pinning the suffix pattern, one pinning the new colour;
/// the smallest element is chosen.
pub fn extend_monotone(
    sigma: &Permutation,
    n: usize,
    target: &ColouredPermutation,
) -> Result<Permutation> {
    let k = target.size();
    if k < 2 {
        return Err(Error::Precondition("target must have size at least 2".into()));
    }
    if sigma.size() < k {
        return Err(Error::Precondition("base permutation too short".into()));
    }
    let max_colour = (n - 1) as u32;
    let coloured = layer_colouring(sigma);
    if coloured.max_colour() > max_colour {
        return Err(Error::OutOfClass(format!(
            "{sigma} contains the decreasing pattern of size {n}"
        )));
    }
    if !coloured.is_rainbow(max_colour) {
        return Err(Error::Precondition(
            "extension needs a rainbow base colouring".into(),
        ));
    }
    if coloured.suffix(k - 1)? != target.prefix(k - 1)? {
        return Err(Error::Precondition(
            "target is not a continuation of the coloured suffix".into(),
        ));
    }
    let y = target.perm().at(k);
    let f = target.colour(k);
    let tilde = suffix_heights(sigma, k - 1)?;
    let thresholds = colour_thresholds(sigma);
    let lo = (tilde[y as usize - 1] + 1).max(thresholds.get(f));
    let hi = tilde[y as usize].min(thresholds.get(f - 1) - 1);
    if lo > hi {
        return Err(Error::InternalInconsistency(format!(
            "empty extension interval for {sigma} -> {target}"
        )));
    }
    let extended = sigma.append(lo)?;
    if layer_colouring(&extended).suffix(k)? != *target {
        return Err(Error::InternalInconsistency(format!(
            "extension rule failed on {sigma} -> {target}"
        )));
    }
    Ok(extended)
}
