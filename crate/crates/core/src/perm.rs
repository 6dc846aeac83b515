//! Permutations, patterns, avoidance classes and consecutive-occurrence
//! statistics.
//!
//! Permutations are stored in one-line notation with 1-based values. The text
//! format is space-separated values (`"2 4 6 3 7 1 8 5"`); compact digit
//! strings (`"213"`) are accepted on input for sizes up to nine, where they
//! are unambiguous.

use std::fmt;
use std::str::FromStr;

use num::BigRational;
use num::{BigInt, Zero};

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation from one-line values, validating that they form a
    /// bijection of `{1, ..., n}`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("size must be positive".into()));
        }
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if seen[v as usize - 1] {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { values })
    }

    /// The identity permutation `1 2 ... n`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u32).collect(),
        }
    }

    /// The decreasing permutation `n ... 2 1`.
    pub fn decreasing(n: usize) -> Self {
        Permutation {
            values: (1..=n as u32).rev().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    /// 1-based position of value `v`.
    pub fn position_of(&self, v: u32) -> usize {
        self.values.iter().position(|&x| x == v).unwrap() + 1
    }

    /// The unique permutation whose entries are in the same relative order as
    /// the given distinct numbers.
    pub fn standardize<T: PartialOrd + Copy + fmt::Debug>(values: &[T]) -> Result<Self> {
        let n = values.len();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        for w in idx.windows(2) {
            if values[w[0]] == values[w[1]] {
                return Err(Error::DuplicateValues(format!("{:?}", values[w[0]])));
            }
        }
        let mut out = vec![0u32; n];
        for (rank, &i) in idx.iter().enumerate() {
            out[i] = rank as u32 + 1;
        }
        Ok(Permutation { values: out })
    }

    /// The pattern induced by a set of 1-based indices.
    pub fn pattern_at(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::IndexOutOfRange("empty index set".into()));
        }
        let mut picked = Vec::with_capacity(indices.len());
        let mut last = 0usize;
        for &i in indices {
            if i == 0 || i > self.size() {
                return Err(Error::IndexOutOfRange(format!(
                    "index {i} outside 1..={}",
                    self.size()
                )));
            }
            if i <= last {
                return Err(Error::IndexOutOfRange(
                    "indices must be strictly increasing".into(),
                ));
            }
            last = i;
            picked.push(self.values[i - 1]);
        }
        Permutation::standardize(&picked)
    }

    /// Pattern of the first `k` positions.
    pub fn prefix_pattern(&self, k: usize) -> Result<Self> {
        if k > self.size() || k == 0 {
            return Err(Error::IndexOutOfRange(format!(
                "prefix length {k} outside 1..={}",
                self.size()
            )));
        }
        let idx: Vec<usize> = (1..=k).collect();
        self.pattern_at(&idx)
    }

    /// Pattern of the last `k` positions.
    pub fn suffix_pattern(&self, k: usize) -> Result<Self> {
        if k > self.size() || k == 0 {
            return Err(Error::IndexOutOfRange(format!(
                "suffix length {k} outside 1..={}",
                self.size()
            )));
        }
        let idx: Vec<usize> = (self.size() - k + 1..=self.size()).collect();
        self.pattern_at(&idx)
    }

    /// Whether some (not necessarily consecutive) index subset induces `pattern`.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        let k = pattern.size();
        if k > self.size() {
            return false;
        }
        if k == 0 {
            return true;
        }
        if let Some(dir) = pattern.monotone_direction() {
            return longest_monotone_run(&self.values, dir) >= k;
        }
        embed_search(&self.values, pattern, None)
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    pub fn avoids_all(&self, set: &PatternSet) -> bool {
        set.patterns().iter().all(|p| self.avoids(p))
    }

    /// `Some(true)` for increasing, `Some(false)` for decreasing, `None` otherwise.
    fn monotone_direction(&self) -> Option<bool> {
        if self.values.windows(2).all(|w| w[0] < w[1]) {
            Some(true)
        } else if self.values.windows(2).all(|w| w[0] > w[1]) {
            Some(false)
        } else {
            None
        }
    }

    /// Direct sum: `self` followed by `other` shifted above it.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let m = self.size() as u32;
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + m));
        Permutation { values }
    }

    /// Skew sum: `self` shifted above, followed by `other`.
    pub fn skew_sum(&self, other: &Permutation) -> Permutation {
        let n = other.size() as u32;
        let mut values: Vec<u32> = self.values.iter().map(|&v| v + n).collect();
        values.extend(other.values.iter().copied());
        Permutation { values }
    }

    /// Direct sum of `copies` copies of `self`.
    pub fn repeated_direct_sum(&self, copies: usize) -> Result<Permutation> {
        if copies < 1 {
            return Err(Error::Precondition("need at least one copy".into()));
        }
        let mut out = self.clone();
        for _ in 1..copies {
            out = out.direct_sum(self);
        }
        Ok(out)
    }

    /// Appends a new final value equal to `value`, shifting all existing
    /// values that are `>= value` up by one.
    pub fn append(&self, value: u32) -> Result<Permutation> {
        let n = self.size() as u32;
        if value == 0 || value > n + 1 {
            return Err(Error::IndexOutOfRange(format!(
                "appended value {value} outside 1..={}",
                n + 1
            )));
        }
        let mut values: Vec<u32> = self
            .values
            .iter()
            .map(|&v| if v >= value { v + 1 } else { v })
            .collect();
        values.push(value);
        Ok(Permutation { values })
    }

    /// Reverse of the diagram with respect to the vertical axis.
    pub fn reverse(&self) -> Permutation {
        let mut values = self.values.clone();
        values.reverse();
        Permutation { values }
    }

    /// Complement of the diagram with respect to the horizontal axis.
    pub fn complement(&self) -> Permutation {
        let n = self.size() as u32;
        Permutation {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// `true` when no proper prefix holds exactly the values `1..=i`.
    pub fn is_sum_indecomposable(&self) -> bool {
        let mut max = 0u32;
        for i in 0..self.size().saturating_sub(1) {
            max = max.max(self.values[i]);
            if max as usize == i + 1 {
                return false;
            }
        }
        true
    }

    /// `true` when no proper prefix holds exactly the top values.
    pub fn is_skew_indecomposable(&self) -> bool {
        let n = self.size() as u32;
        let mut min = u32::MAX;
        for i in 0..self.size().saturating_sub(1) {
            min = min.min(self.values[i]);
            if min == n - i as u32 {
                return false;
            }
        }
        true
    }

    /// Parses either space-separated values or, for sizes up to nine, a
    /// compact digit string.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        if s.starts_with('[') {
            let vals: Vec<u32> = serde_json::from_str(s)
                .map_err(|e| Error::Parse(format!("bad JSON array {s:?}: {e}")))?;
            return Permutation::new(vals);
        }
        if s.contains(char::is_whitespace) {
            let vals = s
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad value {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Permutation::new(vals);
        }
        // Compact form: each character one value. Only unambiguous below ten.
        let vals = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d > 0)
                    .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if vals.len() > 9 {
            return Err(Error::Parse(
                "compact form only allowed up to size 9; use spaces".into(),
            ));
        }
        Permutation::new(vals)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse(s)
    }
}

fn longest_monotone_run(values: &[u32], increasing: bool) -> usize {
    // Patience-style longest increasing/decreasing subsequence.
    let mut tails: Vec<u32> = Vec::new();
    for &raw in values {
        let v = if increasing { raw } else { u32::MAX - raw };
        match tails.binary_search(&v) {
            Ok(i) | Err(i) => {
                if i == tails.len() {
                    tails.push(v);
                } else {
                    tails[i] = v;
                }
            }
        }
    }
    tails.len()
}

/// Backtracking embedding search. When `pin` is `Some((p, i))`, pattern
/// position `p` is forced to use 1-based index `i` of the host.
fn embed_search(host: &[u32], pattern: &Permutation, pin: Option<(usize, usize)>) -> bool {
    let k = pattern.size();
    let n = host.len();
    if k > n {
        return false;
    }
    // chosen[j] = host index (0-based) used for pattern position j+1
    let mut chosen: Vec<usize> = Vec::with_capacity(k);

    fn consistent(host: &[u32], pattern: &Permutation, chosen: &[usize], cand: usize) -> bool {
        let j = chosen.len(); // 0-based pattern position being filled
        for (jj, &c) in chosen.iter().enumerate() {
            let pat_lt = pattern.values()[jj] < pattern.values()[j];
            let host_lt = host[c] < host[cand];
            if pat_lt != host_lt {
                return false;
            }
        }
        true
    }

    fn rec(
        host: &[u32],
        pattern: &Permutation,
        chosen: &mut Vec<usize>,
        start: usize,
        pin: Option<(usize, usize)>,
    ) -> bool {
        let k = pattern.size();
        let j = chosen.len();
        if j == k {
            return true;
        }
        if let Some((p, i)) = pin {
            if j + 1 == p {
                let cand = i - 1;
                if cand >= start && consistent(host, pattern, chosen, cand) {
                    chosen.push(cand);
                    if rec(host, pattern, chosen, cand + 1, pin) {
                        return true;
                    }
                    chosen.pop();
                }
                return false;
            }
        }
        let hi = match pin {
            // everything before the pinned position must fit below it
            Some((p, i)) if j + 1 < p => (i + j + 1).saturating_sub(p),
            _ => host.len() - (k - j) + 1,
        };
        for cand in start..hi {
            if consistent(host, pattern, chosen, cand) {
                chosen.push(cand);
                if rec(host, pattern, chosen, cand + 1, pin) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    rec(host, pattern, &mut chosen, 0, pin)
}

/// Occurrence test with pattern position `pattern_pos` pinned to the
/// 1-based host index `host_idx`. Used for incremental avoidance checks
/// where the candidate element can only play one role.
pub(crate) fn occurs_with_pin(
    host: &[u32],
    pattern: &Permutation,
    pattern_pos: usize,
    host_idx: usize,
) -> bool {
    embed_search(host, pattern, Some((pattern_pos, host_idx)))
}

/// A finite set of forbidden patterns. The empty set denotes the
/// unrestricted class.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
}

impl PatternSet {
    pub fn new(mut patterns: Vec<Permutation>) -> Self {
        patterns.sort();
        patterns.dedup();
        PatternSet { patterns }
    }

    pub fn empty() -> Self {
        PatternSet::default()
    }

    pub fn single(p: Permutation) -> Self {
        PatternSet { patterns: vec![p] }
    }

    /// The class avoiding the decreasing pattern of size `n`.
    pub fn monotone_decreasing(n: usize) -> Self {
        PatternSet::single(Permutation::decreasing(n))
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Parses a comma-separated list of permutations.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for item in s.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            out.push(Permutation::parse(item)?);
        }
        if out.is_empty() {
            return Err(Error::Parse("empty pattern list".into()));
        }
        Ok(PatternSet::new(out))
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.patterns {
            if !first {
                write!(f, ",")?;
            }
            let compact = p.size() <= 9;
            if compact {
                for v in p.values() {
                    write!(f, "{v}")?;
                }
            } else {
                write!(f, "{p}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Default cap for enumerations. Exceeding a cap is an explicit refusal,
/// never a truncation.
pub const DEFAULT_ENUM_CAP: usize = 2_000_000;

/// All permutations of size `m` avoiding every pattern in `basis`, in
/// lexicographic one-line order.
pub fn enumerate_avoiders(m: usize, basis: &PatternSet) -> Result<Vec<Permutation>> {
    enumerate_avoiders_capped(m, basis, DEFAULT_ENUM_CAP)
}

/// As [`enumerate_avoiders`], with an explicit cap on the number of
/// permutations held at any level.
pub fn enumerate_avoiders_capped(
    m: usize,
    basis: &PatternSet,
    cap: usize,
) -> Result<Vec<Permutation>> {
    if m == 0 {
        return Err(Error::Precondition("size must be at least 1".into()));
    }
    // Deleting the maximum value of an avoider leaves an avoider, so every
    // avoider of size s arises from one of size s-1 by inserting the new
    // maximum. Only occurrences through the inserted maximum need checking,
    // and there it can only play the pattern's maximum role.
    let one = Permutation::identity(1);
    let mut level: Vec<Permutation> = if one.avoids_all(basis) { vec![one] } else { vec![] };
    for s in 2..=m {
        let mut next: Vec<Permutation> = Vec::new();
        for p in &level {
            for pos in 1..=s {
                let mut values: Vec<u32> = p.values().to_vec();
                values.insert(pos - 1, s as u32);
                let candidate = Permutation { values };
                let bad = basis.patterns().iter().any(|b| {
                    let pin = (b.position_of(b.size() as u32), pos);
                    embed_search(candidate.values(), b, Some(pin))
                });
                if !bad {
                    next.push(candidate);
                    if next.len() > cap {
                        return Err(Error::CapExceeded {
                            what: "avoider enumeration",
                            cap,
                        });
                    }
                }
            }
        }
        level = next;
    }
    level.sort();
    Ok(level)
}

/// Number of permutations of size `k` avoiding the decreasing pattern of
/// size `n`, computed as a sum of squared standard-Young-tableau counts over
/// partitions of `k` with fewer than `n` parts (hook-length formula).
pub fn count_monotone_avoiders(n: usize, k: usize) -> Result<u128> {
    if n < 2 {
        return Err(Error::Precondition("pattern size must be at least 2".into()));
    }
    if k == 0 {
        return Err(Error::Precondition("size must be at least 1".into()));
    }
    if k > 25 {
        return Err(Error::Precondition(
            "hook-length evaluation is limited to sizes up to 25".into(),
        ));
    }
    let mut total: u128 = 0;
    let mut shape: Vec<usize> = Vec::new();
    fn rec(remaining: usize, max_part: usize, parts_left: usize, shape: &mut Vec<usize>, total: &mut u128) {
        if remaining == 0 {
            *total += tableaux_count(shape).pow(2);
            return;
        }
        if parts_left == 0 {
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            shape.push(part);
            rec(remaining - part, part, parts_left - 1, shape, total);
            shape.pop();
        }
    }
    rec(k, k, n - 1, &mut shape, &mut total);
    Ok(total)
}

fn tableaux_count(shape: &[usize]) -> u128 {
    let k: usize = shape.iter().sum();
    let mut numerator: u128 = 1;
    for i in 2..=k {
        numerator *= i as u128;
    }
    let mut hooks: u128 = 1;
    for (r, &row) in shape.iter().enumerate() {
        for c in 0..row {
            let arm = row - c - 1;
            let leg = shape[r + 1..].iter().take_while(|&&rr| rr > c).count();
            hooks *= (arm + leg + 1) as u128;
        }
    }
    numerator / hooks
}

/// Number of consecutive occurrences of `pattern` in `target`.
pub fn consecutive_occurrences(pattern: &Permutation, target: &Permutation) -> u64 {
    let k = pattern.size();
    let n = target.size();
    if k > n || k == 0 {
        return 0;
    }
    let mut count = 0;
    for start in 0..=n - k {
        if window_matches(&target.values()[start..start + k], pattern) {
            count += 1;
        }
    }
    count
}

/// Whether a window of distinct values induces exactly `pattern`.
pub(crate) fn window_matches(window: &[u32], pattern: &Permutation) -> bool {
    let k = window.len();
    debug_assert_eq!(k, pattern.size());
    for i in 0..k {
        for j in i + 1..k {
            if (window[i] < window[j]) != (pattern.values()[i] < pattern.values()[j]) {
                return false;
            }
        }
    }
    true
}

/// Number of (not necessarily consecutive) occurrences of `pattern`.
pub fn occurrences(pattern: &Permutation, target: &Permutation) -> u64 {
    let k = pattern.size();
    if k > target.size() {
        return 0;
    }
    fn rec(host: &[u32], pattern: &Permutation, chosen: &mut Vec<usize>, start: usize) -> u64 {
        let k = pattern.size();
        let j = chosen.len();
        if j == k {
            return 1;
        }
        let mut total = 0;
        for cand in start..host.len() - (k - j) + 1 {
            let ok = chosen.iter().enumerate().all(|(jj, &c)| {
                (pattern.values()[jj] < pattern.values()[j]) == (host[c] < host[cand])
            });
            if ok {
                chosen.push(cand);
                total += rec(host, pattern, chosen, cand + 1);
                chosen.pop();
            }
        }
        total
    }
    rec(target.values(), pattern, &mut Vec::new(), 0)
}

/// A vector of consecutive-pattern densities over a fixed ordering of the
/// size-`k` patterns. The normalisation denominator is the size of the host
/// permutation, not the window count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityVector {
    order: Vec<Permutation>,
    entries: Vec<BigRational>,
}

impl DensityVector {
    pub fn order(&self) -> &[Permutation] {
        &self.order
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn get(&self, pattern: &Permutation) -> Option<&BigRational> {
        self.order
            .iter()
            .position(|p| p == pattern)
            .map(|i| &self.entries[i])
    }

    pub fn sum(&self) -> BigRational {
        self.entries.iter().fold(BigRational::zero(), |a, b| a + b)
    }
}

/// All size-`k` patterns in lexicographic one-line order.
pub fn all_patterns(k: usize) -> Vec<Permutation> {
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut values: Vec<u32> = (1..=k as u32).collect();
    loop {
        out.push(Permutation {
            values: values.clone(),
        });
        if !next_lex(&mut values) {
            break;
        }
    }
    out
}

fn next_lex(values: &mut [u32]) -> bool {
    let n = values.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

/// Exact consecutive-density vector of `target` for pattern size `k`.
pub fn consecutive_density_vector(target: &Permutation, k: usize) -> Result<DensityVector> {
    if k == 0 || k > target.size() {
        return Err(Error::Precondition(format!(
            "pattern size {k} outside 1..={}",
            target.size()
        )));
    }
    let order = all_patterns(k);
    let mut counts = vec![0u64; order.len()];
    let n = target.size();
    for start in 0..=n - k {
        let window = &target.values()[start..start + k];
        let pat = Permutation::standardize(window).expect("window values distinct");
        let idx = order.binary_search(&pat).expect("pattern order is complete");
        counts[idx] += 1;
    }
    let denom = BigInt::from(n);
    let entries = counts
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), denom.clone()))
        .collect();
    Ok(DensityVector { order, entries })
}

/// Slow reference checker for containment, enumerating index subsets.
/// Kept as the oracle that anchors the pruned search.
pub fn contains_naive(target: &Permutation, pattern: &Permutation) -> bool {
    let n = target.size();
    let k = pattern.size();
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let window: Vec<u32> = idx.iter().map(|&i| target.values()[i]).collect();
        if window_matches(&window, pattern) {
            return true;
        }
        // next k-combination of 0..n
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// One-point deletions, occurrence counts and pattern orders all interact in
/// the tests; this helper renders values distinct for standardize oracles.
pub fn comparison_rank(values: &[u32], i: usize) -> usize {
    values.iter().filter(|&&v| v < values[i]).count() + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(Permutation::standardize(&[4, 3, 8]).unwrap(), p("213"));
        assert_eq!(Permutation::standardize(&[1, 2, 3]).unwrap(), p("123"));
        assert_eq!(Permutation::standardize(&[5, 1, 9, 6]).unwrap(), p("2143"));
    }

    #[test]
    fn standardize_rejects_duplicates() {
        assert!(matches!(
            Permutation::standardize(&[3, 1, 3]),
            Err(Error::DuplicateValues(_))
        ));
    }

    #[test]
    fn standardize_matches_comparison_rank_oracle() {
        let values = [5u32, 1, 9, 6];
        let expect: Vec<u32> = (0..values.len())
            .map(|i| comparison_rank(&values, i) as u32)
            .collect();
        assert_eq!(
            Permutation::standardize(&values).unwrap().values(),
            &expect[..]
        );
    }

    #[test]
    fn pattern_at_examples() {
        let sigma = p("2 4 6 3 7 1 8 5");
        assert_eq!(sigma.pattern_at(&[2, 4, 7]).unwrap(), p("213"));
        let sigma = p("1532467");
        assert_eq!(sigma.pattern_at(&[1, 2, 3, 5]).unwrap(), p("1423"));
        let idx: Vec<usize> = (1..=7).collect();
        assert_eq!(sigma.pattern_at(&idx).unwrap(), sigma);
        assert!(sigma.pattern_at(&[0]).is_err());
        assert!(sigma.pattern_at(&[8]).is_err());
    }

    #[test]
    fn prefix_suffix_patterns() {
        assert_eq!(p("24351").suffix_pattern(3).unwrap(), p("231"));
        let sigma = p("1243756");
        assert_eq!(sigma.prefix_pattern(7).unwrap(), sigma);
        assert_eq!(sigma.prefix_pattern(3).unwrap(), p("123"));
        assert!(sigma.prefix_pattern(8).is_err());
    }

    #[test]
    fn containment_examples() {
        assert!(p("1532467").contains(&p("1423")));
        assert!(p("1243756").avoids(&p("321")));
        assert!(p("321").contains(&p("21")));
        assert!(p("3142").contains(&p("312")));
        assert!(p("321").avoids(&p("312")));
    }

    #[test]
    fn enumerate_examples() {
        let av = enumerate_avoiders(3, &PatternSet::single(p("312"))).unwrap();
        assert_eq!(av.len(), 5);
        assert!(!av.contains(&p("312")));

        let monotone = PatternSet::parse("132,213,231,312").unwrap();
        let av = enumerate_avoiders(3, &monotone).unwrap();
        assert_eq!(av, vec![p("123"), p("321")]);

        let av = enumerate_avoiders(4, &PatternSet::single(p("321"))).unwrap();
        assert_eq!(av.len(), 14);
    }

    #[test]
    fn enumerate_is_lexicographic_and_capped() {
        let av = enumerate_avoiders(4, &PatternSet::single(p("321"))).unwrap();
        let mut sorted = av.clone();
        sorted.sort();
        assert_eq!(av, sorted);
        assert!(matches!(
            enumerate_avoiders_capped(6, &PatternSet::empty(), 100),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn monotone_count_examples() {
        assert_eq!(count_monotone_avoiders(3, 4).unwrap(), 14);
        assert_eq!(count_monotone_avoiders(2, 7).unwrap(), 1);
        assert_eq!(count_monotone_avoiders(4, 3).unwrap(), 6);
    }

    #[test]
    fn sums_and_append() {
        assert_eq!(p("21").direct_sum(&p("1")), p("213"));
        assert_eq!(p("21").skew_sum(&p("1")), p("321"));
        assert_eq!(p("1").repeated_direct_sum(3).unwrap(), p("123"));
        assert!(p("1").repeated_direct_sum(0).is_err());

        assert_eq!(p("132").append(2).unwrap(), p("1432"));
        assert_eq!(p("132").append(4).unwrap(), p("132").direct_sum(&p("1")));
        assert_eq!(p("12").append(1).unwrap(), p("231"));
        assert!(p("12").append(4).is_err());
        assert!(p("12").append(0).is_err());
    }

    #[test]
    fn consecutive_counts() {
        assert_eq!(consecutive_occurrences(&p("321"), &p("1532467")), 1);
        assert_eq!(consecutive_occurrences(&p("1423"), &p("1532467")), 0);
        // {1,2,3,5} and {1,2,4,5} both induce 1423
        assert_eq!(occurrences(&p("1423"), &p("1532467")), 2);
    }

    #[test]
    fn density_vector_sums_to_window_fraction() {
        for sigma in ["1532467", "24351", "123456"] {
            let sigma = p(sigma);
            let dv = consecutive_density_vector(&sigma, 3).unwrap();
            let m = sigma.size();
            let expect = BigRational::new(BigInt::from(m - 2), BigInt::from(m));
            assert_eq!(dv.sum(), expect);
            assert!(dv.entries().iter().all(|e| !e.lt(&BigRational::zero())));
        }
    }

    #[test]
    fn rsk_count_matches_enumeration() {
        for k in 1..=8 {
            let c312 = enumerate_avoiders(k, &PatternSet::single(p("312")))
                .unwrap()
                .len();
            let c321 = enumerate_avoiders(k, &PatternSet::single(p("321")))
                .unwrap()
                .len();
            let hook = count_monotone_avoiders(3, k).unwrap();
            assert_eq!(c312 as u128, hook, "k={k}");
            assert_eq!(c321 as u128, hook, "k={k}");
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        let sigma = p("2 4 6 3 7 1 8 5");
        assert_eq!(Permutation::parse(&sigma.to_string()).unwrap(), sigma);
        assert_eq!(p("[2,1,3]"), p("213"));
        assert!(Permutation::parse("2 2 1").is_err());
        assert!(Permutation::parse("10 1 2").is_err()); // value out of range for size 3
    }

    #[test]
    fn indecomposability() {
        assert!(p("312").is_sum_indecomposable());
        assert!(!p("2143").is_sum_indecomposable());
        assert!(p("2143").is_skew_indecomposable());
        assert!(!p("231").is_skew_indecomposable());
        assert!(!p("12").is_sum_indecomposable());
        assert!(p("12").is_skew_indecomposable());
    }

    #[test]
    fn monotone_identities() {
        assert_eq!(p("123").reverse(), p("321"));
        assert_eq!(p("312").complement(), p("132"));
        assert_eq!(p("312").reverse().complement(), p("231"));
    }
}
