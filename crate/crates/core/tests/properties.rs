//! Property tests: spec invariants run over random and exhaustive inputs.

use num::{BigInt, BigRational, One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use patfeas::colouring::{
    colour_thresholds, extend_monotone, inherited_colourings, layer_colouring,
    ColouredOverlapGraph,
};
use patfeas::geometry::{
    self, affine_dimension, cycle_polytope, cycle_space_affine_dimension,
    h_representation, incidence_matrix, project_forget_colours, Key, LabelSet, RatVector,
};
use patfeas::overlap::{decompose_walk, OverlapGraph, Walk};
use patfeas::perm::{
    all_patterns, consecutive_density_vector, consecutive_occurrences, enumerate_avoiders,
    PatternSet, Permutation,
};

fn p(s: &str) -> Permutation {
    Permutation::parse(s).unwrap()
}

fn ri(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut values: Vec<u32> = (1..=n as u32).collect();
        values.shuffle(&mut rng);
        Permutation::new(values).unwrap()
    })
}

proptest! {
    #[test]
    fn standardize_is_idempotent(sigma in arb_perm(10)) {
        prop_assert_eq!(Permutation::standardize(sigma.values()).unwrap(), sigma);
    }

    #[test]
    fn pattern_extraction_composes(sigma in arb_perm(10), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = sigma.size();
        let i_len = rng.gen_range(1..=n);
        let mut idx: Vec<usize> = (1..=n).collect();
        idx.shuffle(&mut rng);
        let mut outer: Vec<usize> = idx[..i_len].to_vec();
        outer.sort();
        let j_len = rng.gen_range(1..=i_len);
        let mut idx2: Vec<usize> = (1..=i_len).collect();
        idx2.shuffle(&mut rng);
        let mut inner: Vec<usize> = idx2[..j_len].to_vec();
        inner.sort();

        let two_step = sigma.pattern_at(&outer).unwrap().pattern_at(&inner).unwrap();
        let composed: Vec<usize> = inner.iter().map(|&j| outer[j - 1]).collect();
        prop_assert_eq!(two_step, sigma.pattern_at(&composed).unwrap());
    }

    #[test]
    fn avoidance_matches_naive_oracle(sigma in arb_perm(8), tau in arb_perm(4)) {
        prop_assert_eq!(
            sigma.avoids(&tau),
            !patfeas::perm::contains_naive(&sigma, &tau)
        );
    }

    #[test]
    fn density_vector_mass(sigma in arb_perm(9), k in 1usize..=4) {
        prop_assume!(k <= sigma.size());
        let dv = consecutive_density_vector(&sigma, k).unwrap();
        let m = sigma.size();
        prop_assert_eq!(dv.sum(), BigRational::new(BigInt::from(m - k + 1), BigInt::from(m)));
        prop_assert!(dv.entries().iter().all(|e| e >= &BigRational::zero()));
    }

    #[test]
    fn projection_is_linear(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labels = LabelSet::new(
            inherited_colourings(3, 3)
                .unwrap()
                .into_iter()
                .map(|w| Key::Coloured(w.state))
                .collect(),
        )
        .unwrap();
        let mut rand_vec = || {
            let entries = (0..labels.len())
                .map(|_| BigRational::new(BigInt::from(rng.gen_range(-20i64..=20)), BigInt::from(rng.gen_range(1i64..=9))))
                .collect();
            RatVector::from_entries(labels.clone(), entries).unwrap()
        };
        let x = rand_vec();
        let y = rand_vec();
        let a = ri(3);
        let b = ri(-2);
        let lhs = project_forget_colours(&x.scale(&a).add(&y.scale(&b)).unwrap()).unwrap();
        let rhs = project_forget_colours(&x).unwrap().scale(&a)
            .add(&project_forget_colours(&y).unwrap().scale(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
        // and it preserves coordinate sums
        prop_assert_eq!(project_forget_colours(&x).unwrap().sum(), x.sum());
    }

    #[test]
    fn convex_combinations_stay_feasible(weights in proptest::collection::vec(0u32..100, 6)) {
        let og = OverlapGraph::build(3, &PatternSet::empty()).unwrap();
        let h = h_representation(&og.graph).unwrap();
        let vp = cycle_polytope(&og.graph, 100).unwrap();
        let total: u32 = weights.iter().sum();
        prop_assume!(total > 0);
        let mut combo = RatVector::zero(vp.labels().clone());
        for (w, v) in weights.iter().zip(vp.vertices()) {
            let factor = BigRational::new(BigInt::from(*w), BigInt::from(total));
            combo = combo.add(&v.scale(&factor)).unwrap();
        }
        prop_assert!(h.satisfied_by(&combo).unwrap());
        prop_assert!(geometry::membership(&h, &combo).unwrap());
    }

    #[test]
    fn lp_maximum_is_attained_at_a_vertex(coeffs in proptest::collection::vec(-30i64..=30, 6)) {
        let og = OverlapGraph::build(3, &PatternSet::empty()).unwrap();
        let h = h_representation(&og.graph).unwrap();
        let vp = cycle_polytope(&og.graph, 100).unwrap();
        let objective =
            RatVector::from_entries(h.labels().clone(), coeffs.iter().map(|&c| ri(c)).collect())
                .unwrap();
        let (value, point) = geometry::maximize_over(&h, &objective).unwrap();
        let vertex_best = vp
            .vertices()
            .iter()
            .map(|v| {
                v.entries()
                    .iter()
                    .zip(objective.entries())
                    .map(|(a, b)| a * b)
                    .fold(BigRational::zero(), |acc, t| acc + t)
            })
            .max()
            .unwrap();
        prop_assert_eq!(value.clone(), vertex_best);
        prop_assert!(h.satisfied_by(&point).unwrap());
    }
}

/// Walks map into the overlap graph and decompose conservatively; the
/// residual path is shorter than the vertex count. One thousand random
/// walks over both graph families.
#[test]
fn decomposition_conserves_edges_on_random_walks() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfea5);
    let og = OverlapGraph::build(3, &PatternSet::empty()).unwrap();
    let cog = ColouredOverlapGraph::build(3, 3).unwrap();

    fn random_walk<V, E>(
        g: &patfeas::overlap::Multigraph<V, E>,
        rng: &mut ChaCha8Rng,
        len: usize,
    ) -> Walk {
        let mut edges = Vec::with_capacity(len);
        let mut e = rng.gen_range(0..g.edge_count());
        edges.push(e);
        for _ in 1..len {
            let outs = g.out_edges(g.edges()[e].arrival);
            e = outs[rng.gen_range(0..outs.len())];
            edges.push(e);
        }
        Walk::new(edges)
    }

    for i in 0..1000 {
        let len = 1 + (i % 40);
        let (cycles, rest, edge_count, vertex_count, mults) = if i % 2 == 0 {
            let w = random_walk(&og.graph, &mut rng, len);
            assert!(w.is_valid(&og.graph));
            let (c, r) = decompose_walk(&og.graph, &w);
            (
                c,
                r.clone(),
                og.graph.edge_count(),
                og.graph.vertex_count(),
                w.edge_multiplicities(&og.graph),
            )
        } else {
            let w = random_walk(&cog.graph, &mut rng, len);
            assert!(w.is_valid(&cog.graph));
            let (c, r) = decompose_walk(&cog.graph, &w);
            (
                c,
                r.clone(),
                cog.graph.edge_count(),
                cog.graph.vertex_count(),
                w.edge_multiplicities(&cog.graph),
            )
        };
        let mut combined = vec![0usize; edge_count];
        for walk in cycles.iter().chain(std::iter::once(&rest)) {
            for &e in &walk.edges {
                combined[e] += 1;
            }
        }
        assert_eq!(combined, mults);
        assert!(rest.len() < vertex_count);
    }
}

/// Every avoider traces a valid walk of the right length, and the
/// deterministic 312 realization inverts it edge for edge. The coloured
/// walk map has the same validity guarantees.
#[test]
fn walks_of_avoiders_are_valid_and_realizable() {
    let basis = PatternSet::parse("312").unwrap();
    let og = OverlapGraph::build(3, &basis).unwrap();
    for m in 3..=7 {
        for sigma in enumerate_avoiders(m, &basis).unwrap() {
            let w = og.walk_of(&sigma).unwrap();
            assert!(w.is_valid(&og.graph));
            assert_eq!(w.len(), m - 2);
            let rebuilt = og.realize_walk_312(&w).unwrap();
            assert_eq!(og.walk_of(&rebuilt).unwrap(), w);
        }
    }
    let monotone = PatternSet::parse("321").unwrap();
    let cog = ColouredOverlapGraph::build(3, 3).unwrap();
    for m in 3..=7 {
        for sigma in enumerate_avoiders(m, &monotone).unwrap() {
            let w = cog.walk_of(&sigma).unwrap();
            assert!(w.is_valid(&cog.graph));
            assert_eq!(w.len(), m - 2);
        }
    }
}

/// Prefixes never recolour: the layer colouring of a prefix is the prefix
/// of the layer colouring. Exhaustive to size nine.
#[test]
fn prefix_colouring_commutes_exhaustively() {
    for m in 1..=9usize {
        for sigma in all_patterns(m) {
            let coloured = layer_colouring(&sigma);
            for j in 1..=m {
                assert_eq!(
                    coloured.prefix(j).unwrap(),
                    layer_colouring(&sigma.prefix_pattern(j).unwrap()),
                    "sigma={sigma} j={j}"
                );
            }
        }
    }
}

/// The layer count detects monotone avoidance: at most n-1 colours exactly
/// when the decreasing pattern of size n is avoided. Exhaustive to size 8.
#[test]
fn layer_count_characterizes_monotone_avoidance() {
    for n in [3usize, 4] {
        let forbidden = Permutation::decreasing(n);
        for m in 1..=8 {
            for sigma in all_patterns(m) {
                let max_colour = layer_colouring(&sigma).max_colour();
                assert_eq!(
                    max_colour <= (n - 1) as u32,
                    sigma.avoids(&forbidden),
                    "sigma={sigma} n={n}"
                );
            }
        }
    }
}

/// Colour classes of the layer colouring are increasing subsequences, and
/// the layering agrees with the literal highest-to-lowest greedy rule.
#[test]
fn layer_colouring_matches_greedy_definition() {
    fn greedy(sigma: &Permutation) -> Vec<u32> {
        let n = sigma.size();
        let mut colours = vec![0u32; n];
        let mut by_value: Vec<usize> = (1..=n).collect();
        by_value.sort_by_key(|&i| std::cmp::Reverse(sigma.at(i)));
        for &i in &by_value {
            let mut c = 1;
            loop {
                let blocked = (1..i).any(|j| colours[j - 1] == c && sigma.at(j) > sigma.at(i));
                if !blocked {
                    break;
                }
                c += 1;
            }
            colours[i - 1] = c;
        }
        colours
    }
    for m in 1..=8 {
        for sigma in all_patterns(m) {
            let fast = layer_colouring(&sigma);
            assert_eq!(fast.colours(), &greedy(&sigma)[..], "sigma={sigma}");
            // each colour class increases left to right
            for c in 1..=fast.max_colour() {
                let class: Vec<u32> = (1..=m)
                    .filter(|&i| fast.colour(i) == c)
                    .map(|i| sigma.at(i))
                    .collect();
                assert!(class.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }
}

/// Ten thousand random extension steps across three graph shapes: every
/// step keeps the witness rainbow and in the class, and lands on the
/// requested edge.
#[test]
fn random_monotone_extensions_replay() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut steps = 0usize;
    let shapes = [(3usize, 3usize), (4, 3), (3, 4)];
    let graphs: Vec<ColouredOverlapGraph> = shapes
        .iter()
        .map(|&(n, k)| ColouredOverlapGraph::build(n, k).unwrap())
        .collect();
    while steps < 10_000 {
        let cog = &graphs[rng.gen_range(0..graphs.len())];
        let max_colour = (cog.n - 1) as u32;
        let start = rng.gen_range(0..cog.graph.edge_count());
        let mut walk = vec![start];
        for _ in 0..rng.gen_range(1..=8) {
            let outs = cog.graph.out_edges(cog.graph.edges()[*walk.last().unwrap()].arrival);
            walk.push(outs[rng.gen_range(0..outs.len())]);
        }
        let head = Permutation::decreasing(cog.n - 1);
        let mut sigma = head.direct_sum(&cog.minimal_witness(walk[0]).unwrap());
        for &e in &walk[1..] {
            sigma = extend_monotone(&sigma, cog.n, &cog.graph.edges()[e].label).unwrap();
            let coloured = layer_colouring(&sigma);
            assert!(coloured.is_rainbow(max_colour));
            assert!(coloured.max_colour() <= max_colour);
            assert_eq!(
                coloured.suffix(cog.k).unwrap(),
                cog.graph.edges()[e].label
            );
            steps += 1;
        }
    }
}

/// Direct-sum mixing: gluing many copies of two avoiders lands the density
/// vector within the stated distance of the convex combination.
#[test]
fn direct_sum_mixing_respects_the_bound() {
    let basis = PatternSet::parse("312").unwrap();
    let k = 3usize;
    let pool5 = enumerate_avoiders(5, &basis).unwrap();
    let pool6 = enumerate_avoiders(6, &basis).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..40 {
        let s1 = &pool5[rng.gen_range(0..pool5.len())];
        let s2 = &pool6[rng.gen_range(0..pool6.len())];
        let s = rng.gen_range(1..=3usize);
        let t = rng.gen_range(1..=3usize);
        let glued = s1
            .repeated_direct_sum(s * s2.size())
            .unwrap()
            .direct_sum(&s2.repeated_direct_sum(t * s1.size()).unwrap());
        assert!(glued.avoids_all(&basis));

        let d_glued = consecutive_density_vector(&glued, k).unwrap();
        let d1 = consecutive_density_vector(s1, k).unwrap();
        let d2 = consecutive_density_vector(s2, k).unwrap();
        let st = BigRational::new(BigInt::from(s), BigInt::from(s + t));
        let tt = BigRational::new(BigInt::from(t), BigInt::from(s + t));

        let mut norm1 = BigRational::zero();
        for ((g, a), b) in d_glued.entries().iter().zip(d1.entries()).zip(d2.entries()) {
            let combined = &st * a + &tt * b;
            let diff = g - combined;
            norm1 += if diff < BigRational::zero() { -diff } else { diff };
        }
        let bound = ri(2 * k as i64)
            * (BigRational::new(BigInt::one(), BigInt::from(s1.size()))
                + BigRational::new(BigInt::one(), BigInt::from(s2.size())));
        assert!(
            norm1 <= bound,
            "norm {norm1} exceeds bound {bound} for s={s} t={t}"
        );
    }
}

/// Incidence matrices of connected graphs have rank one less than the
/// vertex count; cycle polytopes of strongly connected graphs have affine
/// dimension edges minus vertices.
#[test]
fn rank_and_dimension_invariants_across_the_menagerie() {
    // (graph, expected |V|, expected |E|)
    let plain: Vec<(OverlapGraph, usize, usize)> = vec![
        (OverlapGraph::build(3, &PatternSet::empty()).unwrap(), 2, 6),
        (OverlapGraph::build(4, &PatternSet::empty()).unwrap(), 6, 24),
        (OverlapGraph::build(3, &PatternSet::parse("312").unwrap()).unwrap(), 2, 5),
        (OverlapGraph::build(4, &PatternSet::parse("312").unwrap()).unwrap(), 5, 14),
        (OverlapGraph::build(3, &PatternSet::parse("4321").unwrap()).unwrap(), 2, 6),
    ];
    for (og, v, e) in &plain {
        assert_eq!((og.graph.vertex_count(), og.graph.edge_count()), (*v, *e));
        assert!(og.graph.is_strongly_connected());
        assert_eq!(incidence_matrix(&og.graph).unwrap().rank(), v - 1);
        let (_, dim) = cycle_space_affine_dimension(&og.graph, 1_000_000).unwrap();
        assert_eq!(dim, e - v, "plain graph {v}/{e}");
    }
    for (n, k, v, e) in [(3usize, 3usize, 4usize, 9usize), (4, 3, 9, 29)] {
        let cog = ColouredOverlapGraph::build(n, k).unwrap();
        assert_eq!((cog.graph.vertex_count(), cog.graph.edge_count()), (v, e));
        assert!(cog.graph.is_strongly_connected());
        assert_eq!(incidence_matrix(&cog.graph).unwrap().rank(), v - 1);
        let (_, dim) = cycle_space_affine_dimension(&cog.graph, 1_000_000).unwrap();
        assert_eq!(dim, e - v, "coloured graph ({n},{k})");
    }
}

/// Cycle vectors really are the extreme points on desk-scale graphs.
#[test]
fn cycle_vectors_are_extreme() {
    for vp in [
        cycle_polytope(&OverlapGraph::build(3, &PatternSet::empty()).unwrap().graph, 100).unwrap(),
        cycle_polytope(
            &OverlapGraph::build(3, &PatternSet::parse("312").unwrap()).unwrap().graph,
            100,
        )
        .unwrap(),
        cycle_polytope(&ColouredOverlapGraph::build(3, 3).unwrap().graph, 100).unwrap(),
    ] {
        vp.verify_vertices_extreme().unwrap();
    }
}

/// Streamed affine dimension agrees with the stored-vertex computation.
#[test]
fn streamed_and_stored_dimensions_agree() {
    let og = OverlapGraph::build(4, &PatternSet::parse("312").unwrap()).unwrap();
    let vp = cycle_polytope(&og.graph, 1_000_000).unwrap();
    let stored = affine_dimension(vp.vertices()).unwrap();
    let (_, streamed) = cycle_space_affine_dimension(&og.graph, 1_000_000).unwrap();
    assert_eq!(stored, streamed);
    assert_eq!(stored, 9);
}

/// Appending one value selects colours exactly at the documented
/// thresholds; spot check across random permutations.
#[test]
fn append_colours_follow_thresholds_randomly() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(1..=9usize);
        let mut values: Vec<u32> = (1..=n as u32).collect();
        values.shuffle(&mut rng);
        let sigma = Permutation::new(values).unwrap();
        let z = colour_thresholds(&sigma);
        for v in 1..=n as u32 + 1 {
            let f = layer_colouring(&sigma.append(v).unwrap()).colour(n + 1);
            assert!(z.get(f) <= v && v < z.get(f - 1), "sigma={sigma} v={v} f={f}");
        }
    }
}

/// Window statistics of long identity-like avoiders stay close to the
/// projected region, mirroring the distance law used by the acceptance
/// suite on the full class.
#[test]
fn density_distance_law_spot_checks() {
    let cog = ColouredOverlapGraph::build(3, 3).unwrap();
    for sigma in [
        p("1 2 3 4 5 6 7 8 9 10"),
        p("2 1 3 5 4 6 8 7 9"),
        p("3 1 2 6 4 5 9 7 8"),
    ] {
        let d2 = patfeas::analysis::density_distance_sq_projected(&cog, &sigma).unwrap();
        let m = sigma.size();
        let bound = BigRational::new(BigInt::from(18), BigInt::from(m));
        assert!(d2 <= &bound * &bound, "sigma={sigma}");
    }
}

/// Every avoider of either size-three class sits within 18/m of both its
/// own cycle polytope and the unrestricted one, exhaustively to size 11.
#[test]
fn density_distance_law_for_both_classes() {
    let unrestricted = OverlapGraph::build(3, &PatternSet::empty()).unwrap();
    for basis in ["312", "321"] {
        let basis = PatternSet::parse(basis).unwrap();
        let og = OverlapGraph::build(3, &basis).unwrap();
        for m in 3..=11usize {
            let bound = BigRational::new(BigInt::from(18), BigInt::from(m));
            let bound_sq = &bound * &bound;
            for sigma in enumerate_avoiders(m, &basis).unwrap() {
                let to_class = patfeas::analysis::density_distance_sq_plain(&og, &sigma).unwrap();
                assert!(to_class <= bound_sq, "class distance of {sigma}");
                let to_full =
                    patfeas::analysis::density_distance_sq_plain(&unrestricted, &sigma).unwrap();
                assert!(to_full <= bound_sq, "unrestricted distance of {sigma}");
            }
        }
    }
}

/// Consecutive counts respect symmetry relabellings used by the CLI.
#[test]
fn reverse_and_complement_relabel_window_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let n = rng.gen_range(3..=9usize);
        let mut values: Vec<u32> = (1..=n as u32).collect();
        values.shuffle(&mut rng);
        let sigma = Permutation::new(values).unwrap();
        for pattern in all_patterns(3) {
            let base = consecutive_occurrences(&pattern, &sigma);
            assert_eq!(
                consecutive_occurrences(&pattern.reverse(), &sigma.reverse()),
                base
            );
            assert_eq!(
                consecutive_occurrences(&pattern.complement(), &sigma.complement()),
                base
            );
        }
    }
}
