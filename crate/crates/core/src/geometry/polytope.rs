//! Cycle polytopes in vertex form and constraint form, the
//! colour-forgetting projection, and exact membership and optimization over
//! both.
//!
//! For a strongly connected graph the cycle polytope is cut out by flow
//! balance at every vertex, the normalization to total mass one, and
//! non-negativity; the vertex form lists one normalized edge-frequency
//! vector per simple cycle.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::overlap::Multigraph;

use super::cycles::for_each_simple_cycle;
use super::linalg::{EchelonBasis, Key, LabelSet, RatVector, ToKey};
use super::lp::{self, LpOutcome, Program};

/// A polytope as a list of labelled vertices.
#[derive(Debug, Clone)]
pub struct VPolytope {
    labels: Arc<LabelSet>,
    vertices: Vec<RatVector>,
}

impl PartialEq for VPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.labels.same_as(&other.labels) && self.vertices == other.vertices
    }
}
impl Eq for VPolytope {}

impl VPolytope {
    /// Deduplicates equal points; the result lists pairwise distinct
    /// vertices.
    pub fn from_points(labels: Arc<LabelSet>, points: Vec<RatVector>) -> Self {
        let mut seen: BTreeMap<Vec<String>, ()> = BTreeMap::new();
        let mut vertices = Vec::new();
        for p in points {
            let fingerprint: Vec<String> =
                p.entries().iter().map(super::linalg::rat_to_string).collect();
            if seen.insert(fingerprint, ()).is_none() {
                vertices.push(p);
            }
        }
        VPolytope { labels, vertices }
    }

    pub fn labels(&self) -> &Arc<LabelSet> {
        &self.labels
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn affine_dimension(&self) -> Result<usize> {
        super::linalg::affine_dimension(&self.vertices)
    }

    /// Removes every point that is a convex combination of the others, so
    /// that the remaining list is exactly the vertex set of the hull.
    pub fn filter_to_extreme(&mut self) -> Result<()> {
        let mut keep: Vec<bool> = vec![true; self.vertices.len()];
        for i in 0..self.vertices.len() {
            let others: Vec<&RatVector> = self
                .vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i && keep[j])
                .map(|(_, v)| v)
                .collect();
            if others.is_empty() {
                continue;
            }
            if in_convex_hull(&self.vertices[i], &others)? {
                keep[i] = false;
            }
        }
        let mut idx = 0;
        self.vertices.retain(|_| {
            let k = keep[idx];
            idx += 1;
            k
        });
        Ok(())
    }

    /// Checks that no listed point is a convex combination of the others.
    pub fn verify_vertices_extreme(&self) -> Result<()> {
        for i in 0..self.vertices.len() {
            let others: Vec<&RatVector> = self
                .vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v)
                .collect();
            if others.is_empty() {
                continue;
            }
            if in_convex_hull(&self.vertices[i], &others)? {
                return Err(Error::InternalInconsistency(format!(
                    "vertex {i} is a convex combination of the others"
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "coordinates": self.labels.keys().iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            "vertices": self.vertices.iter()
                .map(|v| v.entries().iter().map(super::linalg::rat_to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Whether `point` lies in the convex hull of `others` (exact LP).
fn in_convex_hull(point: &RatVector, others: &[&RatVector]) -> Result<bool> {
    let d = point.entries().len();
    let n = others.len();
    let mut equalities: Vec<(Vec<BigRational>, BigRational)> = Vec::with_capacity(d + 1);
    for coord in 0..d {
        let coeffs: Vec<BigRational> =
            others.iter().map(|o| o.entries()[coord].clone()).collect();
        equalities.push((coeffs, point.entries()[coord].clone()));
    }
    equalities.push((vec![BigRational::one(); n], BigRational::one()));
    let program = Program {
        vars: n,
        equalities,
    };
    Ok(lp::feasible_point(&program)?.is_some())
}

/// A polytope as equality constraints plus per-coordinate non-negativity.
#[derive(Debug, Clone)]
pub struct HPolytope {
    labels: Arc<LabelSet>,
    equalities: Vec<(Vec<BigRational>, BigRational)>,
    nonnegative: Vec<bool>,
}

impl HPolytope {
    pub fn labels(&self) -> &Arc<LabelSet> {
        &self.labels
    }

    pub fn equalities(&self) -> &[(Vec<BigRational>, BigRational)] {
        &self.equalities
    }

    /// Direct evaluation of the constraint system at a point over the same
    /// label set.
    pub fn satisfied_by(&self, point: &RatVector) -> Result<bool> {
        if !point.labels().same_as(&self.labels) {
            return Err(Error::LabelMismatch(
                "point indexed by different labels than the polytope".into(),
            ));
        }
        if point
            .entries()
            .iter()
            .zip(&self.nonnegative)
            .any(|(e, &nn)| nn && e < &BigRational::zero())
        {
            return Ok(false);
        }
        for (coeffs, rhs) in &self.equalities {
            let lhs: BigRational = coeffs
                .iter()
                .zip(point.entries())
                .map(|(c, x)| c * x)
                .sum();
            if lhs != *rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "coordinates": self.labels.keys().iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            "equalities": self.equalities.iter().map(|(coeffs, rhs)| serde_json::json!({
                "coefficients": coeffs.iter().map(super::linalg::rat_to_string).collect::<Vec<_>>(),
                "rhs": super::linalg::rat_to_string(rhs),
            })).collect::<Vec<_>>(),
            "nonnegative": self.nonnegative,
        })
    }
}

/// The coordinate space of a graph's edges. Fails when two edges carry the
/// same label, since coordinates are indexed by label.
pub fn edge_label_set<V, E: ToKey>(g: &Multigraph<V, E>) -> Result<Arc<LabelSet>> {
    LabelSet::new(g.edges().iter().map(|e| e.label.to_key()).collect())
}

/// The normalized edge-frequency vector of a cycle: each traversed edge
/// contributes one share of `1/length`.
pub fn cycle_vector<V, E: ToKey>(
    g: &Multigraph<V, E>,
    labels: &Arc<LabelSet>,
    cycle: &[usize],
) -> Result<RatVector> {
    if cycle.is_empty() {
        return Err(Error::Precondition("empty cycle".into()));
    }
    let mut v = RatVector::zero(labels.clone());
    let share = BigRational::new(BigInt::one(), BigInt::from(cycle.len()));
    for &e in cycle {
        let key = g.edges()[e].label.to_key();
        let current = v
            .get(&key)
            .cloned()
            .ok_or_else(|| Error::LabelMismatch(format!("edge label {key} not in space")))?;
        v.set(&key, current + &share)?;
    }
    Ok(v)
}

/// Vertex form of the cycle polytope: one point per simple cycle, with
/// duplicate points removed.
pub fn cycle_polytope<V, E: ToKey>(g: &Multigraph<V, E>, cap: usize) -> Result<VPolytope> {
    let labels = edge_label_set(g)?;
    let mut points = Vec::new();
    let mut failure: Option<Error> = None;
    for_each_simple_cycle(g, cap, |cycle| {
        if failure.is_some() {
            return;
        }
        match cycle_vector(g, &labels, cycle) {
            Ok(v) => points.push(v),
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(VPolytope::from_points(labels, points))
}

/// Constraint form of the cycle polytope: flow balance at every vertex,
/// total mass one, all coordinates non-negative. This describes the cycle
/// polytope exactly when the graph is strongly connected.
pub fn h_representation<V, E: ToKey>(g: &Multigraph<V, E>) -> Result<HPolytope> {
    let labels = edge_label_set(g)?;
    let m = labels.len();
    let mut equalities = Vec::with_capacity(g.vertex_count() + 1);
    for v in 0..g.vertex_count() {
        let mut coeffs = vec![BigRational::zero(); m];
        for (j, e) in g.edges().iter().enumerate() {
            if e.start == e.arrival {
                continue;
            }
            if e.start == v {
                coeffs[j] += BigRational::one();
            }
            if e.arrival == v {
                coeffs[j] -= BigRational::one();
            }
        }
        equalities.push((coeffs, BigRational::zero()));
    }
    equalities.push((vec![BigRational::one(); m], BigRational::one()));
    Ok(HPolytope {
        nonnegative: vec![true; m],
        labels,
        equalities,
    })
}

/// Aligns `point` onto `labels`: coordinates outside the target space must
/// be zero, missing coordinates default to zero.
fn align_point(point: &RatVector, labels: &Arc<LabelSet>) -> Result<Option<RatVector>> {
    let mut aligned = RatVector::zero(labels.clone());
    for (key, value) in point.labels().keys().iter().zip(point.entries()) {
        if labels.index_of(key).is_some() {
            aligned.set(key, value.clone())?;
        } else if !value.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(aligned))
}

/// Exact membership of `point` in the polytope: the constraint system plus
/// the coordinate pins form one feasibility program. Coordinates of the
/// point outside the polytope's space must be zero.
pub fn membership(h: &HPolytope, point: &RatVector) -> Result<bool> {
    let Some(aligned) = align_point(point, &h.labels)? else {
        return Ok(false);
    };
    let m = h.labels.len();
    let mut equalities = h.equalities.clone();
    for (j, value) in aligned.entries().iter().enumerate() {
        let mut pin = vec![BigRational::zero(); m];
        pin[j] = BigRational::one();
        equalities.push((pin, value.clone()));
    }
    let program = Program {
        vars: m,
        equalities,
    };
    Ok(lp::feasible_point(&program)?.is_some())
}

/// Forgets colours: the coordinate of a plain pattern is the sum of the
/// coordinates of all its colourings. Linear, and preserves coordinate
/// sums.
pub fn project_forget_colours(v: &RatVector) -> Result<RatVector> {
    let mut plain: Vec<Key> = v
        .labels()
        .keys()
        .iter()
        .map(|k| Key::Plain(k.forget_colours()))
        .collect();
    plain.sort();
    plain.dedup();
    let labels = LabelSet::new(plain)?;
    let mut out = RatVector::zero(labels);
    for (key, value) in v.labels().keys().iter().zip(v.entries()) {
        let target = Key::Plain(key.forget_colours());
        let current = out.get(&target).cloned().expect("projected label present");
        out.set(&target, current + value)?;
    }
    Ok(out)
}

/// Projects every vertex and deduplicates. The result may still list
/// non-extreme points; callers that need a minimal vertex list follow up
/// with [`VPolytope::filter_to_extreme`].
pub fn project_polytope(vp: &VPolytope) -> Result<VPolytope> {
    let projected: Vec<RatVector> = vp
        .vertices()
        .iter()
        .map(project_forget_colours)
        .collect::<Result<_>>()?;
    let Some(first) = projected.first() else {
        return Err(Error::Precondition("empty polytope".into()));
    };
    let labels = first.labels().clone();
    Ok(VPolytope::from_points(labels, projected))
}

/// Streamed affine dimension of the projected cycle polytope, without
/// materializing the cycles.
pub fn projected_cycle_dimension<V, E: ToKey>(
    g: &Multigraph<V, E>,
    cap: usize,
) -> Result<usize> {
    let labels = edge_label_set(g)?;
    let mut first: Option<RatVector> = None;
    let mut basis = EchelonBasis::new();
    let mut failure: Option<Error> = None;
    for_each_simple_cycle(g, cap, |cycle| {
        if failure.is_some() {
            return;
        }
        let projected = cycle_vector(g, &labels, cycle).and_then(|v| project_forget_colours(&v));
        match projected {
            Ok(v) => match &first {
                None => first = Some(v),
                Some(f) => match v.sub(f) {
                    Ok(diff) => {
                        basis.insert(diff.entries().to_vec());
                    }
                    Err(e) => failure = Some(e),
                },
            },
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(basis.rank())
}

/// Membership of a plain-pattern point in the colour-forgetting projection
/// of the cycle polytope: searches for a preimage satisfying the constraint
/// form, with the projection constraints appended.
pub fn membership_in_projection<V>(
    g: &Multigraph<V, crate::colouring::ColouredPermutation>,
    point: &RatVector,
) -> Result<bool> {
    let h = h_representation(g)?;
    let m = h.labels.len();
    let plain_space: Vec<Key> = {
        let mut v: Vec<Key> = h
            .labels
            .keys()
            .iter()
            .map(|k| Key::Plain(k.forget_colours()))
            .collect();
        v.sort();
        v.dedup();
        v
    };
    let plain_labels = LabelSet::new(plain_space)?;
    let Some(aligned) = align_point(point, &plain_labels)? else {
        return Ok(false);
    };
    let mut equalities = h.equalities.clone();
    for (key, value) in plain_labels.keys().iter().zip(aligned.entries()) {
        let mut coeffs = vec![BigRational::zero(); m];
        for (j, ek) in h.labels.keys().iter().enumerate() {
            if Key::Plain(ek.forget_colours()) == *key {
                coeffs[j] = BigRational::one();
            }
        }
        equalities.push((coeffs, value.clone()));
    }
    let program = Program {
        vars: m,
        equalities,
    };
    Ok(lp::feasible_point(&program)?.is_some())
}

/// Maximizes a labelled objective over the constraint form. Returns the
/// exact optimum and an optimizer.
pub fn maximize_over(h: &HPolytope, objective: &RatVector) -> Result<(BigRational, RatVector)> {
    let Some(obj) = align_point(objective, &h.labels)? else {
        return Err(Error::LabelMismatch(
            "objective supported outside the polytope's coordinates".into(),
        ));
    };
    let program = Program {
        vars: h.labels.len(),
        equalities: h.equalities.clone(),
    };
    match lp::maximize(&program, obj.entries())? {
        LpOutcome::Optimal { value, point } => Ok((
            value,
            RatVector::from_entries(h.labels.clone(), point)?,
        )),
        LpOutcome::Infeasible => Err(Error::InternalInconsistency(
            "cycle polytope reported empty".into(),
        )),
    }
}

/// Maximizes the coordinate of a plain pattern over the projection of the
/// cycle polytope, by pulling the objective back through the projection.
pub fn maximize_pattern_over_projection<V>(
    g: &Multigraph<V, crate::colouring::ColouredPermutation>,
    pattern: &crate::perm::Permutation,
) -> Result<(BigRational, RatVector)> {
    let h = h_representation(g)?;
    let mut objective = RatVector::zero(h.labels.clone());
    for key in h.labels.keys() {
        if key.forget_colours() == *pattern {
            objective.set(key, BigRational::one())?;
        }
    }
    let (value, preimage) = maximize_over(&h, &objective)?;
    Ok((value, project_forget_colours(&preimage)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::ColouredOverlapGraph;
    use crate::overlap::OverlapGraph;
    use crate::perm::{PatternSet, Permutation};

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn key(s: &str) -> Key {
        Key::Plain(p(s))
    }

    fn rq(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cycle_vector_examples() {
        let g = OverlapGraph::build(3, &PatternSet::empty()).unwrap();
        let labels = edge_label_set(&g.graph).unwrap();
        let loop123 = g.graph.edges_with_label(&p("123"))[0];
        let v = cycle_vector(&g.graph, &labels, &[loop123]).unwrap();
        assert_eq!(v.get(&key("123")).unwrap(), &rq(1, 1));
        assert_eq!(v.sum(), rq(1, 1));
        assert!(v
            .labels()
            .keys()
            .iter()
            .filter(|k| **k != key("123"))
            .all(|k| v.get(k).unwrap().is_zero()));

        let g = OverlapGraph::build(3, &PatternSet::parse("321").unwrap()).unwrap();
        let labels = edge_label_set(&g.graph).unwrap();
        let e231 = g.graph.edges_with_label(&p("231"))[0];
        let e312 = g.graph.edges_with_label(&p("312"))[0];
        let v = cycle_vector(&g.graph, &labels, &[e231, e312]).unwrap();
        assert_eq!(v.get(&key("231")).unwrap(), &rq(1, 2));
        assert_eq!(v.get(&key("312")).unwrap(), &rq(1, 2));
        assert_eq!(v.sum(), rq(1, 1));
    }

    #[test]
    fn polytope_dimensions() {
        let g = OverlapGraph::build(3, &PatternSet::empty()).unwrap();
        let vp = cycle_polytope(&g.graph, 1000).unwrap();
        assert_eq!(vp.vertices().len(), 6);
        assert_eq!(vp.affine_dimension().unwrap(), 4);
        vp.verify_vertices_extreme().unwrap();

        let g = OverlapGraph::build(3, &PatternSet::parse("312").unwrap()).unwrap();
        let vp = cycle_polytope(&g.graph, 1000).unwrap();
        assert_eq!(vp.affine_dimension().unwrap(), 3);
    }

    #[test]
    fn vertices_satisfy_h_form() {
        for basis in [PatternSet::empty(), PatternSet::parse("312").unwrap()] {
            let g = OverlapGraph::build(3, &basis).unwrap();
            let h = h_representation(&g.graph).unwrap();
            let vp = cycle_polytope(&g.graph, 1000).unwrap();
            for v in vp.vertices() {
                assert!(h.satisfied_by(v).unwrap());
                assert!(membership(&h, v).unwrap());
            }
        }
    }

    #[test]
    fn membership_pair_of_the_half_half_point() {
        let basis = PatternSet::parse("321").unwrap();
        let plain = OverlapGraph::build(3, &basis).unwrap();
        let h = h_representation(&plain.graph).unwrap();

        let space = LabelSet::new(vec![key("231"), key("312"), key("321")]).unwrap();
        let mut point = RatVector::zero(space);
        point.set(&key("231"), rq(1, 2)).unwrap();
        point.set(&key("312"), rq(1, 2)).unwrap();

        assert!(membership(&h, &point).unwrap());

        let coloured = ColouredOverlapGraph::build(3, 3).unwrap();
        assert!(!membership_in_projection(&coloured.graph, &point).unwrap());
    }

    #[test]
    fn support_outside_the_class_is_rejected() {
        let basis = PatternSet::parse("321").unwrap();
        let plain = OverlapGraph::build(3, &basis).unwrap();
        let h = h_representation(&plain.graph).unwrap();
        let space = LabelSet::new(vec![key("321")]).unwrap();
        let mut point = RatVector::zero(space);
        point.set(&key("321"), rq(1, 1)).unwrap();
        assert!(!membership(&h, &point).unwrap());
    }

    #[test]
    fn projection_is_linear_and_sum_preserving() {
        let coloured = ColouredOverlapGraph::build(3, 3).unwrap();
        let labels = edge_label_set(&coloured.graph).unwrap();
        let vp = cycle_polytope(&coloured.graph, 1000).unwrap();
        assert_eq!(vp.vertices().len(), 8);
        for v in vp.vertices() {
            let pv = project_forget_colours(v).unwrap();
            assert_eq!(pv.sum(), v.sum());
        }
        // the monochromatic loop projects to the plain loop vector
        let red_loop = crate::colouring::layer_colouring(&p("123"));
        let e = coloured.graph.edges_with_label(&red_loop)[0];
        let v = cycle_vector(&coloured.graph, &labels, &[e]).unwrap();
        let pv = project_forget_colours(&v).unwrap();
        assert_eq!(pv.get(&key("123")).unwrap(), &rq(1, 1));

        let proj = project_polytope(&vp).unwrap();
        assert_eq!(proj.affine_dimension().unwrap(), 3);
        assert_eq!(
            projected_cycle_dimension(&coloured.graph, 1000).unwrap(),
            3
        );
    }

    #[test]
    fn maximization_examples() {
        let g = OverlapGraph::build(3, &PatternSet::empty()).unwrap();
        let h = h_representation(&g.graph).unwrap();
        let mut obj = RatVector::zero(h.labels().clone());
        obj.set(&key("123"), rq(1, 1)).unwrap();
        let (value, point) = maximize_over(&h, &obj).unwrap();
        assert_eq!(value, rq(1, 1));
        assert!(h.satisfied_by(&point).unwrap());

        let coloured = ColouredOverlapGraph::build(3, 3).unwrap();
        let (value, optimizer) =
            maximize_pattern_over_projection(&coloured.graph, &p("312")).unwrap();
        assert_eq!(value, rq(1, 3));
        assert_eq!(optimizer.get(&key("312")).unwrap(), &rq(1, 3));
    }

    #[test]
    fn extreme_filtering_removes_interior_points() {
        let space = LabelSet::new(vec![key("12"), key("21")]).unwrap();
        let mk = |a: (i64, i64), b: (i64, i64)| {
            RatVector::from_entries(space.clone(), vec![rq(a.0, a.1), rq(b.0, b.1)]).unwrap()
        };
        let mut vp = VPolytope::from_points(
            space.clone(),
            vec![mk((0, 1), (0, 1)), mk((1, 1), (0, 1)), mk((1, 2), (0, 1))],
        );
        assert_eq!(vp.vertices().len(), 3);
        vp.filter_to_extreme().unwrap();
        assert_eq!(vp.vertices().len(), 2);
        vp.verify_vertices_extreme().unwrap();
    }
}
