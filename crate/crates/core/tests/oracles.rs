//! Independent reference implementations pitted against the library.
//!
//! Everything here recomputes answers by brute force or by a second,
//! structurally different route, so regressions in the clever paths cannot
//! hide.

use std::collections::BTreeSet;

use patfeas::colouring::{inherited_colourings, layer_colouring, ColouredOverlapGraph};
use patfeas::geometry::simple_cycles;
use patfeas::overlap::{extend_312, OverlapGraph};
use patfeas::perm::{
    contains_naive, count_monotone_avoiders, enumerate_avoiders, PatternSet, Permutation,
};

fn p(s: &str) -> Permutation {
    Permutation::parse(s).unwrap()
}

/// All permutations of each size up to `max`, by brute-force generation.
fn all_perms_up_to(max: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for m in 1..=max {
        out.extend(patfeas::perm::all_patterns(m));
    }
    out
}

#[test]
fn pruned_containment_agrees_with_subset_oracle() {
    let patterns: Vec<Permutation> = ["21", "132", "213", "231", "312", "321", "1234", "2143"]
        .iter()
        .map(|s| p(s))
        .collect();
    for sigma in all_perms_up_to(7) {
        for tau in &patterns {
            assert_eq!(
                sigma.contains(tau),
                contains_naive(&sigma, tau),
                "sigma={sigma} tau={tau}"
            );
        }
    }
    // exhaustive at size 8 for the patterns of size three
    for sigma in patfeas::perm::all_patterns(8) {
        for tau in &patterns[..6] {
            assert_eq!(sigma.contains(tau), contains_naive(&sigma, tau));
        }
    }
}

#[test]
fn enumeration_agrees_with_direct_filtering() {
    for basis in ["312", "321", "132,4321", "2143"] {
        let basis = PatternSet::parse(basis).unwrap();
        for m in 1..=6 {
            let fast: Vec<Permutation> = enumerate_avoiders(m, &basis).unwrap();
            let slow: Vec<Permutation> = patfeas::perm::all_patterns(m)
                .into_iter()
                .filter(|s| s.avoids_all(&basis))
                .collect();
            assert_eq!(fast, slow, "basis={basis} m={m}");
        }
    }
}

#[test]
fn hook_length_counts_match_enumeration_for_size_four_pattern() {
    let basis = PatternSet::monotone_decreasing(4);
    for k in 1..=7 {
        let enumerated = enumerate_avoiders(k, &basis).unwrap().len();
        assert_eq!(
            count_monotone_avoiders(4, k).unwrap(),
            enumerated as u128,
            "k={k}"
        );
    }
}

/// The append rule for 312-avoiders, with its reading of "the point just
/// above the new last value", checked against the full search oracle for
/// every window size up to five.
#[test]
fn extend_rule_matches_search_oracle_up_to_k5() {
    let three_one_two = p("312");
    let basis = PatternSet::single(three_one_two.clone());
    for k in 3..=5usize {
        let edges = enumerate_avoiders(k, &basis).unwrap();
        for base_size in k..=k + 2 {
            for sigma in enumerate_avoiders(base_size, &basis).unwrap() {
                for target in &edges {
                    if target.prefix_pattern(k - 1).unwrap() != sigma.suffix_pattern(k - 1).unwrap()
                    {
                        continue;
                    }
                    // oracle: every admissible append value
                    let admissible: Vec<u32> = (1..=sigma.size() as u32 + 1)
                        .filter(|&v| {
                            let ext = sigma.append(v).unwrap();
                            ext.avoids(&three_one_two)
                                && ext.suffix_pattern(k).unwrap() == *target
                        })
                        .collect();
                    assert!(
                        !admissible.is_empty(),
                        "no admissible append for {sigma} -> {target}"
                    );
                    let chosen = extend_312(&sigma, target).unwrap();
                    let appended = chosen.at(chosen.size());
                    assert!(
                        admissible.contains(&appended),
                        "rule chose {appended} outside {admissible:?} for {sigma} -> {target}"
                    );
                    // prefix preservation
                    assert_eq!(chosen.prefix_pattern(sigma.size()).unwrap(), sigma);
                }
            }
        }
    }
}

/// Inherited colourings recomputed by sheer enumeration of avoiders, with
/// no closure argument: the coloured suffixes of every avoider up to size
/// eight. Pins the closure's completeness for both class sizes.
#[test]
fn inherited_closure_matches_brute_force() {
    for (n, k) in [(3usize, 2usize), (3, 3), (4, 2), (4, 3)] {
        let basis = PatternSet::monotone_decreasing(n);
        let mut brute: BTreeSet<String> = BTreeSet::new();
        for m in k..=8 {
            for sigma in enumerate_avoiders(m, &basis).unwrap() {
                brute.insert(layer_colouring(&sigma).suffix(k).unwrap().to_string());
            }
        }
        let closure: BTreeSet<String> = inherited_colourings(n, k)
            .unwrap()
            .into_iter()
            .map(|w| w.state.to_string())
            .collect();
        assert_eq!(closure, brute, "(n,k)=({n},{k})");
    }
}

#[test]
fn minimal_witnesses_are_minimal_and_lex_first() {
    let cog = ColouredOverlapGraph::build(3, 3).unwrap();
    let basis = PatternSet::monotone_decreasing(3);
    for e in 0..cog.graph.edge_count() {
        let target = &cog.graph.edges()[e].label;
        let witness = cog.minimal_witness(e).unwrap();
        let mut expected = None;
        'sizes: for m in 3..=witness.size() {
            for sigma in enumerate_avoiders(m, &basis).unwrap() {
                if layer_colouring(&sigma).suffix(3).unwrap() == *target {
                    expected = Some(sigma);
                    break 'sizes;
                }
            }
        }
        assert_eq!(witness, expected.unwrap(), "edge {target}");
    }
}

/// Cycle census of the coloured graph for n=3, k=3, against an explicit
/// depth-first enumeration.
#[test]
fn coloured_cycle_census() {
    let cog = ColouredOverlapGraph::build(3, 3).unwrap();
    let cycles = simple_cycles(&cog.graph, 1000).unwrap();
    assert_eq!(cycles.len(), 8);
    let mut by_len = [0usize; 5];
    for c in &cycles {
        by_len[c.len()] += 1;
    }
    assert_eq!(by_len[1..], [2, 1, 3, 2]);

    // brute-force: vertex sequences that cycle without repeats
    fn rec(
        g: &patfeas::overlap::Multigraph<
            patfeas::colouring::ColouredPermutation,
            patfeas::colouring::ColouredPermutation,
        >,
        root: usize,
        v: usize,
        visited: &mut Vec<bool>,
        count: &mut usize,
    ) {
        for &e in g.out_edges(v) {
            let w = g.edges()[e].arrival;
            if w == root {
                *count += 1;
            } else if w > root && !visited[w] {
                visited[w] = true;
                rec(g, root, w, visited, count);
                visited[w] = false;
            }
        }
    }
    let mut count = 0;
    for root in 0..cog.graph.vertex_count() {
        let mut visited = vec![false; cog.graph.vertex_count()];
        visited[root] = true;
        rec(&cog.graph, root, root, &mut visited, &mut count);
    }
    assert_eq!(count, 8);
}

/// The overlap graph of the unrestricted class realizes every walk up to
/// length six, exhaustively.
#[test]
fn unrestricted_realization_is_total() {
    let og = OverlapGraph::build(3, &PatternSet::empty()).unwrap();
    let walks = patfeas::overlap::walks_up_to(&og.graph, 6);
    for walk in &walks {
        let sigma = og.realize_walk_search(walk, 1_000_000).unwrap();
        assert_eq!(&og.walk_of(&sigma).unwrap(), walk);
        assert_eq!(sigma.size(), walk.len() + 2);
    }
    assert!(walks.len() > 2000, "exhaustive sweep covers all walks");
}
