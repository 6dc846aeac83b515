//! Labelled exact-rational vectors and matrices.
//!
//! Coordinates are indexed by pattern keys, not positions: a coordinate is
//! either a plain permutation or a coloured one. Serialized forms always
//! carry the labels, so no consumer ever has to guess an ordering.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::{BigRational, Integer, One, Signed, Zero};

use crate::colouring::ColouredPermutation;
use crate::error::{Error, Result};
use crate::overlap::Multigraph;
use crate::perm::Permutation;

/// A coordinate label: a plain pattern or a coloured one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key {
    Plain(Permutation),
    Coloured(ColouredPermutation),
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Plain(p) => write!(f, "{p}"),
            Key::Coloured(c) => write!(f, "{c}"),
        }
    }
}

impl Key {
    pub fn plain(&self) -> Option<&Permutation> {
        match self {
            Key::Plain(p) => Some(p),
            Key::Coloured(_) => None,
        }
    }

    /// The underlying permutation, colours forgotten.
    pub fn forget_colours(&self) -> Permutation {
        match self {
            Key::Plain(p) => p.clone(),
            Key::Coloured(c) => c.perm().clone(),
        }
    }
}

pub trait ToKey {
    fn to_key(&self) -> Key;
}

impl ToKey for Permutation {
    fn to_key(&self) -> Key {
        Key::Plain(self.clone())
    }
}

impl ToKey for ColouredPermutation {
    fn to_key(&self) -> Key {
        Key::Coloured(self.clone())
    }
}

impl ToKey for Key {
    fn to_key(&self) -> Key {
        self.clone()
    }
}

/// An ordered set of distinct coordinate labels.
#[derive(Debug)]
pub struct LabelSet {
    keys: Vec<Key>,
    pos: HashMap<Key, usize>,
}

impl LabelSet {
    pub fn new(keys: Vec<Key>) -> Result<Arc<Self>> {
        let mut pos = HashMap::new();
        for (i, k) in keys.iter().enumerate() {
            if pos.insert(k.clone(), i).is_some() {
                return Err(Error::LabelMismatch(format!("duplicate label {k}")));
            }
        }
        Ok(Arc::new(LabelSet { keys, pos }))
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    pub fn index_of(&self, key: &Key) -> Option<usize> {
        self.pos.get(key).copied()
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || self.keys == other.keys
    }
}

pub fn rat_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_str(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator {num:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator {den:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

/// A labelled vector of exact rationals.
#[derive(Debug, Clone)]
pub struct RatVector {
    labels: Arc<LabelSet>,
    entries: Vec<BigRational>,
}

impl PartialEq for RatVector {
    fn eq(&self, other: &Self) -> bool {
        self.labels.same_as(&other.labels) && self.entries == other.entries
    }
}
impl Eq for RatVector {}

impl RatVector {
    pub fn zero(labels: Arc<LabelSet>) -> Self {
        let entries = vec![BigRational::zero(); labels.len()];
        RatVector { labels, entries }
    }

    pub fn from_entries(labels: Arc<LabelSet>, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != labels.len() {
            return Err(Error::LabelMismatch(format!(
                "{} entries for {} labels",
                entries.len(),
                labels.len()
            )));
        }
        Ok(RatVector { labels, entries })
    }

    pub fn labels(&self) -> &Arc<LabelSet> {
        &self.labels
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn get(&self, key: &Key) -> Option<&BigRational> {
        self.labels.index_of(key).map(|i| &self.entries[i])
    }

    pub fn set(&mut self, key: &Key, value: BigRational) -> Result<()> {
        let i = self
            .labels
            .index_of(key)
            .ok_or_else(|| Error::LabelMismatch(format!("unknown label {key}")))?;
        self.entries[i] = value;
        Ok(())
    }

    fn check_labels(&self, other: &Self) -> Result<()> {
        if self.labels.same_as(&other.labels) {
            Ok(())
        } else {
            Err(Error::LabelMismatch(
                "vectors indexed by different label sets".into(),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_labels(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(RatVector {
            labels: self.labels.clone(),
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_labels(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(RatVector {
            labels: self.labels.clone(),
            entries,
        })
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        RatVector {
            labels: self.labels.clone(),
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn sum(&self) -> BigRational {
        self.entries.iter().fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    pub fn norm1(&self) -> BigRational {
        self.entries
            .iter()
            .fold(BigRational::zero(), |a, b| a + b.abs())
    }

    pub fn norm2_sq(&self) -> BigRational {
        self.entries
            .iter()
            .fold(BigRational::zero(), |a, b| a + b * b)
    }

    pub fn distance_sq(&self, other: &Self) -> Result<BigRational> {
        Ok(self.sub(other)?.norm2_sq())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "labels": self.labels.keys().iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            "entries": self.entries.iter().map(rat_to_string).collect::<Vec<_>>(),
        })
    }
}

/// A labelled matrix of exact rationals, stored dense.
#[derive(Debug, Clone)]
pub struct RatMatrix {
    rows: Arc<LabelSet>,
    cols: Arc<LabelSet>,
    data: Vec<Vec<BigRational>>,
}

impl PartialEq for RatMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows.same_as(&other.rows) && self.cols.same_as(&other.cols) && self.data == other.data
    }
}
impl Eq for RatMatrix {}

impl RatMatrix {
    pub fn zeros(rows: Arc<LabelSet>, cols: Arc<LabelSet>) -> Self {
        let data = vec![vec![BigRational::zero(); cols.len()]; rows.len()];
        RatMatrix { rows, cols, data }
    }

    pub fn row_labels(&self) -> &Arc<LabelSet> {
        &self.rows
    }

    pub fn col_labels(&self) -> &Arc<LabelSet> {
        &self.cols
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.data[i][j] = value;
    }

    pub fn set_by_key(&mut self, row: &Key, col: &Key, value: BigRational) -> Result<()> {
        let i = self
            .rows
            .index_of(row)
            .ok_or_else(|| Error::LabelMismatch(format!("unknown row {row}")))?;
        let j = self
            .cols
            .index_of(col)
            .ok_or_else(|| Error::LabelMismatch(format!("unknown column {col}")))?;
        self.data[i][j] = value;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i]
    }

    /// Relabelled submatrix in the given row and column orders.
    pub fn submatrix(&self, rows: &[Key], cols: &[Key]) -> Result<RatMatrix> {
        let row_idx: Vec<usize> = rows
            .iter()
            .map(|k| {
                self.rows
                    .index_of(k)
                    .ok_or_else(|| Error::LabelMismatch(format!("unknown row {k}")))
            })
            .collect::<Result<_>>()?;
        let col_idx: Vec<usize> = cols
            .iter()
            .map(|k| {
                self.cols
                    .index_of(k)
                    .ok_or_else(|| Error::LabelMismatch(format!("unknown column {k}")))
            })
            .collect::<Result<_>>()?;
        let data = row_idx
            .iter()
            .map(|&i| col_idx.iter().map(|&j| self.data[i][j].clone()).collect())
            .collect();
        Ok(RatMatrix {
            rows: LabelSet::new(rows.to_vec())?,
            cols: LabelSet::new(cols.to_vec())?,
            data,
        })
    }

    /// Exact rank by fraction-free (Bareiss) elimination over the integers,
    /// after clearing denominators row by row.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = self
            .data
            .iter()
            .map(|row| {
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
                row.iter()
                    .map(|r| r.numer() * (&lcm / r.denom()))
                    .collect()
            })
            .collect();
        bareiss_rank(&mut m)
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.data
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().take(i.min(row.len())).all(|e| e.is_zero()))
    }

    pub fn diagonal_nonzero(&self) -> bool {
        let n = self.row_count().min(self.col_count());
        (0..n).all(|i| !self.data[i][i].is_zero())
    }

    /// CSV with a header row of column labels; each row starts with its row
    /// label. The header rows carry the orderings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("label");
        for k in self.cols.keys() {
            out.push(',');
            out.push_str(&format!("\"{k}\""));
        }
        out.push('\n');
        for (i, row) in self.data.iter().enumerate() {
            out.push_str(&format!("\"{}\"", self.rows.keys()[i]));
            for e in row {
                out.push(',');
                out.push_str(&rat_to_string(e));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": self.rows.keys().iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            "columns": self.cols.keys().iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            "entries": self.data.iter()
                .map(|row| row.iter().map(rat_to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let val = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = val;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Incrementally maintained row-echelon basis over the rationals, used to
/// rank large streamed families without materializing them.
#[derive(Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<BigRational>)>, // (pivot column, normalized row)
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the basis; inserts the remainder when nonzero.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut row: Vec<BigRational>) -> bool {
        for (pivot, basis_row) in &self.rows {
            if !row[*pivot].is_zero() {
                let factor = row[*pivot].clone();
                for (r, b) in row.iter_mut().zip(basis_row) {
                    *r -= &factor * b;
                }
            }
        }
        let Some(pivot) = row.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let lead = row[pivot].clone();
        for r in row.iter_mut() {
            *r /= &lead;
        }
        self.rows.push((pivot, row));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }

    /// Whether inserting `row` would grow the rank, without inserting it.
    pub fn would_grow(&self, row: &[BigRational]) -> bool {
        let mut row = row.to_vec();
        for (pivot, basis_row) in &self.rows {
            if !row[*pivot].is_zero() {
                let factor = row[*pivot].clone();
                for (r, b) in row.iter_mut().zip(basis_row) {
                    *r -= &factor * b;
                }
            }
        }
        row.iter().any(|e| !e.is_zero())
    }
}

/// Affine dimension of a point set: the rank of the differences against the
/// first point.
pub fn affine_dimension(points: &[RatVector]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Err(Error::Precondition("need at least one point".into()));
    };
    let mut basis = EchelonBasis::new();
    for p in &points[1..] {
        let diff = p.sub(first)?;
        basis.insert(diff.entries().to_vec());
    }
    Ok(basis.rank())
}

/// The incidence matrix of a directed multigraph: rows indexed by vertices,
/// columns by edge labels, `+1` at the start vertex, `-1` at the arrival,
/// and all-zero columns for loops. Requires distinct edge labels.
pub fn incidence_matrix<V: ToKey, E: ToKey>(g: &Multigraph<V, E>) -> Result<RatMatrix> {
    let rows = LabelSet::new(g.vertices().iter().map(|v| v.to_key()).collect())?;
    let cols = LabelSet::new(g.edges().iter().map(|e| e.label.to_key()).collect())?;
    let mut m = RatMatrix::zeros(rows, cols);
    for (j, e) in g.edges().iter().enumerate() {
        if e.start == e.arrival {
            continue;
        }
        m.set(e.start, j, BigRational::one());
        m.set(e.arrival, j, -BigRational::one());
    }
    Ok(m)
}
