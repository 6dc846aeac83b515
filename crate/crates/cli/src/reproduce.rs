//! The reproduction registry: recomputes reference facts from scratch and
//! diffs them against the embedded fixtures. `reproduce all` is the
//! top-level regression gate; exit 0 means every fact matched exactly.

use std::process::ExitCode;

use num::{BigInt, BigRational};

use patfeas::analysis::{dimension_matrix, triangular_minor_certificate};
use patfeas::colouring::{inherited_colourings, ColouredOverlapGraph};
use patfeas::error::{Error, Result};
use patfeas::geometry::{
    self, cycle_polytope, h_representation, Key, LabelSet, RatMatrix, RatVector,
};
use patfeas::golden;
use patfeas::overlap::OverlapGraph;
use patfeas::perm::PatternSet;

const FACTS: [&str; 8] = [
    "fig-1",
    "fig-4",
    "fig-6",
    "table-1",
    "matrix-a-3-3",
    "minor-3-3",
    "matrix-a-4-3",
    "fact-1-10",
];

pub fn run(fact: &str) -> Result<ExitCode> {
    let selected: Vec<&str> = if fact == "all" {
        FACTS.to_vec()
    } else if FACTS.contains(&fact) {
        vec![fact]
    } else {
        return Err(Error::Parse(format!(
            "unknown fact {fact:?}; known facts: {}, all",
            FACTS.join(", ")
        )));
    };
    let mut all_ok = true;
    for id in selected {
        let ok = check(id)?;
        println!("fact {id}: {}", if ok { "ok" } else { "MISMATCH" });
        all_ok &= ok;
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn check(id: &str) -> Result<bool> {
    match id {
        "fig-1" => fig1(),
        "fig-4" => fig4(),
        "fig-6" => fig6(),
        "table-1" => table1(),
        "matrix-a-3-3" => diff_matrix(&golden::MATRIX_A_3_3, &dimension_matrix(3, 3)?),
        "minor-3-3" => {
            let cert = triangular_minor_certificate(3, 3)?;
            let mut ok = cert.upper_triangular;
            ok &= diff_matrix(&golden::MINOR_3_3, &cert.matrix)?;
            Ok(ok)
        }
        "matrix-a-4-3" => diff_matrix(&golden::MATRIX_A_4_3, &dimension_matrix(4, 3)?),
        "fact-1-10" => fact_1_10(),
        _ => unreachable!("filtered by the registry"),
    }
}

fn fig1() -> Result<bool> {
    let og = OverlapGraph::build(3, &PatternSet::empty())?;
    let vp = cycle_polytope(&og.graph, 1000)?;
    let got = (
        og.graph.vertex_count(),
        og.graph.edge_count(),
        vp.vertices().len(),
        vp.affine_dimension()?,
    );
    println!(
        "  unrestricted window-3 overlap graph: {} vertices, {} edges, {} simple cycles, polytope dimension {}",
        got.0, got.1, got.2, got.3
    );
    Ok(got == golden::FIG1_COUNTS)
}

fn fig4() -> Result<bool> {
    let og = OverlapGraph::build(3, &PatternSet::parse("312")?)?;
    let dim312 = cycle_polytope(&og.graph, 1000)?.affine_dimension()?;
    let cog = ColouredOverlapGraph::build(3, 3)?;
    let dim_projected = geometry::projected_cycle_dimension(&cog.graph, 1000)?;
    println!(
        "  312-avoiding cycle polytope dimension {dim312}; projected 321-avoiding region dimension {dim_projected}"
    );
    Ok((dim312, dim_projected) == golden::FIG4_DIMENSIONS)
}

fn fig6() -> Result<bool> {
    let cog = ColouredOverlapGraph::build(3, 3)?;
    let want_vertices = golden::label_keys(&golden::COLOURED_GRAPH_3_3_VERTICES)?;
    let got_vertices: Vec<Key> = cog
        .graph
        .vertices()
        .iter()
        .cloned()
        .map(Key::Coloured)
        .collect();
    let mut ok = got_vertices == want_vertices;
    for (spec, start, arrival) in golden::COLOURED_GRAPH_3_3_EDGES {
        let Key::Coloured(label) = golden::label_key(&spec)? else {
            unreachable!("edge fixtures are coloured")
        };
        let found = cog.graph.edges_with_label(&label);
        let matches = found.len() == 1 && {
            let e = &cog.graph.edges()[found[0]];
            (e.start, e.arrival) == (start, arrival)
        };
        println!(
            "  edge {:<16} {} -> {} : {}",
            label.pretty(),
            cog.graph.vertex(start).pretty(),
            cog.graph.vertex(arrival).pretty(),
            if matches { "ok" } else { "MISSING" }
        );
        ok &= matches;
    }
    ok &= cog.graph.edge_count() == golden::COLOURED_GRAPH_3_3_EDGES.len();
    Ok(ok)
}

fn table1() -> Result<bool> {
    let states = inherited_colourings(3, 3)?;
    let cog = ColouredOverlapGraph::build(3, 3)?;
    let want = golden::label_keys(&golden::INHERITED_2_3)?;
    let got: Vec<Key> = states
        .iter()
        .map(|w| Key::Coloured(w.state.clone()))
        .collect();
    for (i, ws) in states.iter().enumerate() {
        let witness = cog.minimal_witness(i)?;
        println!(
            "  {:<16} minimal witness {}",
            ws.state.pretty(),
            witness
        );
    }
    let excluded = golden::label_key(&golden::NOT_INHERITED_2_3)?;
    let excluded_ok = !got.contains(&excluded);
    if !excluded_ok {
        println!("  non-inherited colouring unexpectedly present");
    }
    Ok(got == want && excluded_ok)
}

fn fact_1_10() -> Result<bool> {
    let basis = PatternSet::parse("321")?;
    let plain = OverlapGraph::build(3, &basis)?;
    let h = h_representation(&plain.graph)?;
    let cog = ColouredOverlapGraph::build(3, 3)?;

    let mut keys = Vec::new();
    let mut entries = Vec::new();
    for (pattern, value) in golden::SEPARATING_POINT_SUPPORT {
        keys.push(golden::label_key(&(pattern, ""))?);
        entries.push(geometry::rat_from_str(value)?);
    }
    let point = RatVector::from_entries(LabelSet::new(keys)?, entries)?;

    let in_plain = geometry::membership(&h, &point)?;
    let in_projected = geometry::membership_in_projection(&cog.graph, &point)?;
    println!(
        "  point in plain 321-avoiding cycle polytope: {in_plain}; in projected region: {in_projected}"
    );
    Ok((in_plain, in_projected) == golden::SEPARATING_POINT_ANSWERS)
}

fn diff_matrix(fixture: &golden::GoldenMatrix, computed: &RatMatrix) -> Result<bool> {
    let rows = golden::label_keys(fixture.rows)?;
    let cols = golden::label_keys(fixture.cols)?;
    if computed.row_labels().keys() != &rows[..] || computed.col_labels().keys() != &cols[..] {
        println!("  row or column labels differ");
        return Ok(false);
    }
    let entries = golden::parse_entries(fixture);
    let mut mismatches = 0usize;
    for (i, row) in entries.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let want = BigRational::from_integer(BigInt::from(v));
            if computed.get(i, j) != &want {
                if mismatches < 5 {
                    println!(
                        "  entry ({}, {}) differs: computed {}, reference {v}",
                        rows[i],
                        cols[j],
                        geometry::rat_to_string(computed.get(i, j)),
                    );
                }
                mismatches += 1;
            }
        }
    }
    println!(
        "  {}x{} matrix, {} mismatching entries",
        rows.len(),
        cols.len(),
        mismatches
    );
    Ok(mismatches == 0)
}
