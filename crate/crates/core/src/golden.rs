//! Reference fixtures for the reproduction suite: small graphs, matrices
//! and membership answers with known exact values. The `reproduce` command
//! of the CLI and the acceptance tests both diff recomputed objects against
//! these.

use crate::colouring::ColouredPermutation;
use crate::error::Result;
use crate::geometry::Key;
use crate::perm::Permutation;

/// A coordinate label: a plain permutation when `colours` is empty,
/// otherwise a coloured one with one colour digit per position.
pub type LabelSpec = (&'static str, &'static str);

/// A matrix fixture with fully ordered row and column labels.
pub struct GoldenMatrix {
    pub rows: &'static [LabelSpec],
    pub cols: &'static [LabelSpec],
    /// One space-separated row of integer entries per row label.
    pub entries: &'static [&'static str],
}

pub fn label_key(spec: &LabelSpec) -> Result<Key> {
    let perm = Permutation::parse(spec.0)?;
    if spec.1.is_empty() {
        Ok(Key::Plain(perm))
    } else {
        let colours: Vec<u32> = spec
            .1
            .chars()
            .map(|c| c.to_digit(10).unwrap_or(0))
            .collect();
        Ok(Key::Coloured(ColouredPermutation::new(perm, colours)?))
    }
}

pub fn label_keys(specs: &[LabelSpec]) -> Result<Vec<Key>> {
    specs.iter().map(label_key).collect()
}

pub fn parse_entries(gm: &GoldenMatrix) -> Vec<Vec<i64>> {
    gm.entries
        .iter()
        .map(|row| {
            row.split_whitespace()
                .map(|t| t.parse::<i64>().expect("fixture entries are integers"))
                .collect()
        })
        .collect()
}

/// Display order of the size-three pattern coordinates used by the text
/// interface, matching the classical picture of the unrestricted polytope.
pub const S3_DISPLAY_ORDER: [&str; 6] = ["123", "231", "312", "213", "132", "321"];

/// The unrestricted overlap graph for windows of size three: vertex count,
/// edge count, simple-cycle count and polytope dimension.
pub const FIG1_COUNTS: (usize, usize, usize, usize) = (2, 6, 6, 4);

/// Cycle-polytope dimensions of the two restricted pictures for windows of
/// size three: the 312-avoiding polytope and the projected region of the
/// 321-avoiding class.
pub const FIG4_DIMENSIONS: (usize, usize) = (3, 3);

/// The inherited 2-colourings of size-three patterns.
pub const INHERITED_2_3: [LabelSpec; 9] = [
    ("123", "111"),
    ("123", "211"),
    ("123", "221"),
    ("123", "222"),
    ("132", "112"),
    ("132", "212"),
    ("213", "121"),
    ("231", "112"),
    ("312", "122"),
];

/// A colouring that is not inherited.
pub const NOT_INHERITED_2_3: LabelSpec = ("213", "122");

/// The coloured overlap graph for windows of size three over the class
/// avoiding the decreasing pattern of size three: vertices in canonical
/// order, edges as (label, start, arrival) vertex indices.
pub const COLOURED_GRAPH_3_3_VERTICES: [LabelSpec; 4] =
    [("12", "11"), ("12", "21"), ("12", "22"), ("21", "12")];

pub const COLOURED_GRAPH_3_3_EDGES: [(LabelSpec, usize, usize); 9] = [
    (("123", "111"), 0, 0),
    (("123", "211"), 1, 0),
    (("123", "221"), 2, 1),
    (("123", "222"), 2, 2),
    (("132", "112"), 0, 3),
    (("132", "212"), 1, 3),
    (("213", "121"), 3, 1),
    (("231", "112"), 0, 3),
    (("312", "122"), 3, 2),
];

/// The stacked constraint matrix for the class avoiding the decreasing
/// pattern of size three, windows of size three: pattern-indicator rows on
/// top of the coloured incidence rows.
pub const MATRIX_A_3_3: GoldenMatrix = GoldenMatrix {
    rows: &[
        ("123", ""),
        ("132", ""),
        ("213", ""),
        ("231", ""),
        ("312", ""),
        ("12", "11"),
        ("12", "21"),
        ("12", "22"),
        ("21", "12"),
    ],
    cols: &[
        ("123", "111"),
        ("123", "211"),
        ("123", "221"),
        ("123", "222"),
        ("132", "112"),
        ("132", "212"),
        ("213", "121"),
        ("231", "112"),
        ("312", "122"),
    ],
    entries: &[
        "1 1 1 1 0 0 0 0 0",
        "0 0 0 0 1 1 0 0 0",
        "0 0 0 0 0 0 1 0 0",
        "0 0 0 0 0 0 0 1 0",
        "0 0 0 0 0 0 0 0 1",
        "0 -1 0 0 1 0 0 1 0",
        "0 1 -1 0 0 1 -1 0 0",
        "0 0 1 0 0 0 0 0 -1",
        "0 0 0 0 -1 -1 1 -1 1",
    ],
};

pub const RANK_A_3_3: usize = 7;

/// The upper-triangular certificate minor of [`MATRIX_A_3_3`].
pub const MINOR_3_3: GoldenMatrix = GoldenMatrix {
    rows: &[
        ("123", ""),
        ("12", "21"),
        ("12", "22"),
        ("21", "12"),
        ("132", ""),
        ("231", ""),
        ("312", ""),
    ],
    cols: &[
        ("123", "111"),
        ("123", "211"),
        ("123", "221"),
        ("213", "121"),
        ("132", "112"),
        ("231", "112"),
        ("312", "122"),
    ],
    entries: &[
        "1 1 1 0 0 0 0",
        "0 1 -1 -1 0 0 0",
        "0 0 1 0 0 0 -1",
        "0 0 0 1 -1 -1 1",
        "0 0 0 0 1 0 0",
        "0 0 0 0 0 1 0",
        "0 0 0 0 0 0 1",
    ],
};

/// The stacked constraint matrix for the class avoiding the decreasing
/// pattern of size four, windows of size three.
///
/// The colouring `(231, (2,2,3))` in the 24th column is the one inherited
/// colouring of `231` with a two-coloured prefix pair; exhaustive search
/// over avoiders confirms that `(231, (3,2,3))` is not inherited, since a
/// descent pair can never share a colour under the layer colouring.
pub const MATRIX_A_4_3: GoldenMatrix = GoldenMatrix {
    rows: &[
        ("123", ""),
        ("132", ""),
        ("213", ""),
        ("231", ""),
        ("312", ""),
        ("321", ""),
        ("12", "11"),
        ("12", "21"),
        ("12", "31"),
        ("12", "22"),
        ("12", "32"),
        ("12", "33"),
        ("21", "12"),
        ("21", "13"),
        ("21", "23"),
    ],
    cols: &[
        ("123", "111"),
        ("123", "211"),
        ("123", "311"),
        ("123", "221"),
        ("123", "321"),
        ("123", "331"),
        ("123", "222"),
        ("123", "322"),
        ("123", "332"),
        ("123", "333"),
        ("132", "112"),
        ("132", "212"),
        ("132", "312"),
        ("132", "313"),
        ("132", "223"),
        ("132", "323"),
        ("213", "121"),
        ("213", "131"),
        ("213", "231"),
        ("213", "232"),
        ("231", "112"),
        ("231", "113"),
        ("231", "213"),
        ("231", "223"),
        ("312", "122"),
        ("312", "132"),
        ("312", "133"),
        ("312", "233"),
        ("321", "123"),
    ],
    entries: &[
        "1 1 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0",
        "0 0 0 0 0 0 0 0 0 0 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0",
        "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1 0 0 0 0 0 0 0 0 0",
        "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1 0 0 0 0 0",
        "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1 0",
        "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1",
        "0 -1 -1 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 0 1 1 0 0 0 0 0 0 0",
        "0 1 0 -1 -1 0 0 0 0 0 0 1 0 0 0 0 -1 0 0 0 0 0 1 0 0 0 0 0 0",
        "0 0 1 0 0 -1 0 0 0 0 0 0 1 1 0 0 0 -1 -1 0 0 0 0 0 0 0 0 0 0",
        "0 0 0 1 0 0 0 -1 0 0 0 0 0 0 1 0 0 0 0 0 0 0 0 1 -1 0 0 0 0",
        "0 0 0 0 1 0 0 1 -1 0 0 0 0 0 0 1 0 0 0 -1 0 0 0 0 0 -1 0 0 0",
        "0 0 0 0 0 1 0 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 -1 -1 0",
        "0 0 0 0 0 0 0 0 0 0 -1 -1 -1 0 0 0 1 0 0 0 -1 0 0 0 1 0 0 0 1",
        "0 0 0 0 0 0 0 0 0 0 0 0 0 -1 0 0 0 1 0 0 0 -1 -1 0 0 1 1 0 0",
        "0 0 0 0 0 0 0 0 0 0 0 0 0 0 -1 -1 0 0 1 1 0 0 0 -1 0 0 0 1 -1",
    ],
};

pub const RANK_A_4_3: usize = 13;

/// The membership pair separating the plain cycle polytope of the class
/// avoiding `321` from the projected feasible region: the half/half point
/// on the two-cycle lies in the former but not the latter.
pub const SEPARATING_POINT_SUPPORT: [(&str, &str); 2] = [("231", "1/2"), ("312", "1/2")];
pub const SEPARATING_POINT_ANSWERS: (bool, bool) = (true, false);

/// Dimension answers checked three ways for monotone classes:
/// `(n, k, dimension)`.
pub const MONOTONE_DIMENSIONS: [(usize, usize, usize); 3] = [(3, 3, 3), (3, 4, 9), (4, 3, 4)];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        for spec in INHERITED_2_3 {
            label_key(&spec).unwrap();
        }
        let rows = label_keys(MATRIX_A_4_3.rows).unwrap();
        let cols = label_keys(MATRIX_A_4_3.cols).unwrap();
        assert_eq!(rows.len(), 15);
        assert_eq!(cols.len(), 29);
        let entries = parse_entries(&MATRIX_A_4_3);
        assert!(entries.iter().all(|r| r.len() == 29));
        // every indicator column sums to one, every incidence column to zero
        for j in 0..29 {
            let top: i64 = entries[..6].iter().map(|r| r[j]).sum();
            let bottom: i64 = entries[6..].iter().map(|r| r[j]).sum();
            assert_eq!(top, 1);
            assert_eq!(bottom, 0);
        }
    }
}
