//! Parsing of plain-CSV coordinate points.
//!
//! A point for pattern size three may list all six coordinates in the
//! classical display order (123, 231, 312, 213, 132, 321); for any other
//! size the full listing is lexicographic. Alternatively a point may list
//! exactly the coordinates of the target space, in that space's own label
//! order. JSON output elsewhere always carries labels, so this ordering
//! convention only concerns the flag syntax.

use std::sync::Arc;

use num::BigRational;

use patfeas::colouring::ColouredOverlapGraph;
use patfeas::error::{Error, Result};
use patfeas::geometry::{rat_from_str, Key, LabelSet, RatVector};
use patfeas::perm::{all_patterns, Permutation};

/// The coordinate order used for full plain-CSV points of size `k`.
pub fn point_order(k: usize) -> Vec<Permutation> {
    if k == 3 {
        ["123", "231", "312", "213", "132", "321"]
            .iter()
            .map(|s| Permutation::parse(s).expect("fixed patterns parse"))
            .collect()
    } else {
        all_patterns(k)
    }
}

fn parse_values(s: &str) -> Result<Vec<BigRational>> {
    s.split(',')
        .map(|t| rat_from_str(t.trim()))
        .collect::<Result<Vec<_>>>()
}

/// Parses a plain-pattern point: either all `k!` coordinates in the display
/// order, or exactly the coordinates of `space` in its label order.
pub fn parse_plain_point(s: &str, k: usize, space: &Arc<LabelSet>) -> Result<RatVector> {
    let values = parse_values(s)?;
    let full = point_order(k);
    if values.len() == full.len() {
        let labels = LabelSet::new(full.into_iter().map(Key::Plain).collect())?;
        return RatVector::from_entries(labels, values);
    }
    if values.len() == space.len() {
        return RatVector::from_entries(space.clone(), values);
    }
    Err(Error::Parse(format!(
        "point has {} coordinates; expected {} (all size-{k} patterns, order {}) or {} ({})",
        values.len(),
        full.len(),
        full.iter()
            .map(|p| p.values().iter().map(|v| v.to_string()).collect::<String>())
            .collect::<Vec<_>>()
            .join(","),
        space.len(),
        space
            .keys()
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    )))
}

/// Parses a point listing exactly the coordinates of `space` in order.
pub fn parse_point_in_space(s: &str, space: &Arc<LabelSet>) -> Result<RatVector> {
    let values = parse_values(s)?;
    if values.len() != space.len() {
        return Err(Error::Parse(format!(
            "point has {} coordinates; this space has {} ({})",
            values.len(),
            space.len(),
            space
                .keys()
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        )));
    }
    RatVector::from_entries(space.clone(), values)
}

/// The plain-pattern space underlying the projection of a coloured graph.
pub fn projected_space(cog: &ColouredOverlapGraph) -> Result<Arc<LabelSet>> {
    let mut keys: Vec<Key> = cog
        .graph
        .edges()
        .iter()
        .map(|e| Key::Plain(e.label.perm().clone()))
        .collect();
    keys.sort();
    keys.dedup();
    LabelSet::new(keys)
}
