//! Permutations, classical pattern containment and exhaustive generation of
//! permutation classes given by a finite basis.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default largest size accepted by the exhaustive generators.
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 11;

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Checks that `values` is a bijection on `1..=n`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for (i, &v) in values.iter().enumerate() {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} at position {} is outside 1..={n}",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} repeated at position {}",
                    i + 1
                )));
            }
        }
        Ok(Self { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok());
        Self { values }
    }

    pub fn empty() -> Self {
        Self { values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            values: (1..=n as u32).collect(),
        }
    }

    pub fn decreasing(n: usize) -> Self {
        Self {
            values: (1..=n as u32).rev().collect(),
        }
    }

    /// The permutation order-isomorphic to a sequence of distinct integers.
    pub fn standardize(seq: &[u32]) -> Self {
        let mut order: Vec<usize> = (0..seq.len()).collect();
        order.sort_by_key(|&i| seq[i]);
        let mut values = vec![0; seq.len()];
        for (rank, &i) in order.iter().enumerate() {
            values[i] = rank as u32 + 1;
        }
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Value at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> u32 {
        self.values[pos - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Self { values: inv }
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<u32>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.values
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Space-separated one-line notation.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Parses comma- or whitespace-separated positive integers.
///
/// A single token of digits with no separators (e.g. `4213`) is read one digit
/// per entry, which is the usual way short patterns are written.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let tokens: Vec<&str> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let values = if tokens.len() == 1 && tokens[0].len() > 1 {
            tokens[0]
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::InvalidPermutation(format!("'{c}' is not a digit")))
                })
                .collect::<Result<Vec<u32>>>()?
        } else {
            tokens
                .iter()
                .map(|t| {
                    t.parse::<u32>().map_err(|_| {
                        Error::InvalidPermutation(format!("'{t}' is not a positive integer"))
                    })
                })
                .collect::<Result<Vec<u32>>>()?
        };
        Self::new(values)
    }
}

/// A finite antichain of patterns defining the class `Av(B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternBasis {
    patterns: Vec<Permutation>,
}

impl PatternBasis {
    pub fn new(mut patterns: Vec<Permutation>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::InvalidBasis(
                "basis must contain at least one pattern".into(),
            ));
        }
        patterns.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        patterns.dedup();
        for (i, a) in patterns.iter().enumerate() {
            for b in &patterns[i + 1..] {
                if contains(b, a) {
                    return Err(Error::InvalidBasis(format!("{b} contains {a}")));
                }
            }
        }
        Ok(Self { patterns })
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    /// `{4213, 2143}`.
    pub fn class_d() -> Self {
        Self::parse_fixed(&["4213", "2143"])
    }

    /// `{4213, 2413, 2143}`.
    pub fn class_h() -> Self {
        Self::parse_fixed(&["4213", "2413", "2143"])
    }

    /// `{4213}`.
    pub fn av_4213() -> Self {
        Self::parse_fixed(&["4213"])
    }

    fn parse_fixed(patterns: &[&str]) -> Self {
        Self::new(
            patterns
                .iter()
                .map(|p| p.parse().expect("valid pattern"))
                .collect(),
        )
        .expect("valid basis")
    }
}

impl FromStr for PatternBasis {
    type Err = Error;

    /// Comma-separated patterns, e.g. `4213,2143`.
    fn from_str(s: &str) -> Result<Self> {
        let patterns = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Permutation>>>()?;
        Self::new(patterns)
    }
}

impl fmt::Display for PatternBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .patterns
            .iter()
            .map(|p| {
                p.values()
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(if p.len() > 9 { " " } else { "" })
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Precomputed neighbours used for value-interval pruning: for each pattern
/// index `j`, the earlier indices holding the nearest smaller and larger value.
struct Matcher<'a> {
    pattern: &'a [u32],
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
}

impl<'a> Matcher<'a> {
    fn new(pattern: &'a [u32]) -> Self {
        let k = pattern.len();
        let mut below = vec![None; k];
        let mut above = vec![None; k];
        for j in 0..k {
            let pj = pattern[j];
            below[j] = (0..j)
                .filter(|&a| pattern[a] < pj)
                .max_by_key(|&a| pattern[a]);
            above[j] = (0..j)
                .filter(|&a| pattern[a] > pj)
                .min_by_key(|&a| pattern[a]);
        }
        Self {
            pattern,
            below,
            above,
        }
    }

    /// Backtracking search; when `pin_last` is set the final pattern entry is
    /// forced onto the final host entry.
    fn search(
        &self,
        host: &[u32],
        j: usize,
        start: usize,
        chosen: &mut Vec<u32>,
        pin_last: bool,
    ) -> bool {
        let k = self.pattern.len();
        if j == k {
            return true;
        }
        let lo = self.below[j].map_or(0, |a| chosen[a]);
        let hi = self.above[j].map_or(u32::MAX, |a| chosen[a]);
        let n = host.len();
        let range = if pin_last && j == k - 1 {
            (n - 1).max(start)..n
        } else {
            let end = n - (k - j) + 1;
            start..end.max(start)
        };
        for i in range {
            let v = host[i];
            if v > lo && v < hi {
                chosen.push(v);
                if self.search(host, j + 1, i + 1, chosen, pin_last) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

fn occurs(host: &[u32], pattern: &[u32], pin_last: bool) -> bool {
    if pattern.is_empty() {
        return !pin_last;
    }
    if pattern.len() > host.len() {
        return false;
    }
    let matcher = Matcher::new(pattern);
    let mut chosen = Vec::with_capacity(pattern.len());
    matcher.search(host, 0, 0, &mut chosen, pin_last)
}

/// True iff some subsequence of `host` is order-isomorphic to `pattern`.
pub fn contains(host: &Permutation, pattern: &Permutation) -> bool {
    occurs(host.values(), pattern.values(), false)
}

/// Containment for an arbitrary sequence of distinct values.
pub fn sequence_contains(host: &[u32], pattern: &Permutation) -> bool {
    occurs(host, pattern.values(), false)
}

pub fn avoids_all(host: &Permutation, basis: &PatternBasis) -> bool {
    basis.patterns().iter().all(|p| !contains(host, p))
}

/// True iff appending the last entry of `seq` created an occurrence of some
/// basis pattern, i.e. there is an occurrence using the final entry.
fn last_entry_hits(seq: &[u32], basis: &PatternBasis) -> bool {
    basis
        .patterns()
        .iter()
        .any(|p| p.len() <= seq.len() && occurs(seq, p.values(), true))
}

/// Exhaustive-generation limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub max_size: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        Self {
            max_size: DEFAULT_EXHAUSTIVE_BOUND,
        }
    }
}

impl EnumerationConfig {
    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_size {
            Err(Error::ExhaustiveLimit {
                requested: n,
                limit: self.max_size,
            })
        } else {
            Ok(())
        }
    }
}

/// Counts indexed by size, starting at size 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    counts: Vec<BigInt>,
}

impl CountTable {
    pub fn new(counts: Vec<BigInt>) -> Self {
        Self { counts }
    }

    pub fn max_size(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.counts.get(n)
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    /// Counts for sizes `1..=max_size`.
    pub fn from_one(&self) -> &[BigInt] {
        self.counts.get(1..).unwrap_or(&[])
    }
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.from_one().iter().map(BigInt::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Depth-first extension of a prefix of distinct values from `1..=n`,
/// pruning as soon as the newest entry completes a basis occurrence.
fn count_extensions(
    prefix: &mut Vec<u32>,
    used: &mut [bool],
    n: usize,
    basis: &PatternBasis,
) -> u64 {
    if prefix.len() == n {
        return 1;
    }
    let mut total = 0;
    for v in 1..=n as u32 {
        if used[v as usize] {
            continue;
        }
        prefix.push(v);
        if !last_entry_hits(prefix, basis) {
            used[v as usize] = true;
            total += count_extensions(prefix, used, n, basis);
            used[v as usize] = false;
        }
        prefix.pop();
    }
    total
}

fn count_size(basis: &PatternBasis, n: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=n as u32)
        .into_par_iter()
        .map(|first| {
            let mut used = vec![false; n + 1];
            used[first as usize] = true;
            let mut prefix = vec![first];
            if last_entry_hits(&prefix, basis) {
                return 0;
            }
            count_extensions(&mut prefix, &mut used, n, basis)
        })
        .sum()
}

/// `|Av_n(B)|` for every `n <= n_max`, by pruned exhaustive generation.
pub fn enumerate_class(basis: &PatternBasis, n_max: usize) -> Result<CountTable> {
    enumerate_class_with(basis, n_max, &EnumerationConfig::default())
}

pub fn enumerate_class_with(
    basis: &PatternBasis,
    n_max: usize,
    config: &EnumerationConfig,
) -> Result<CountTable> {
    config.check(n_max)?;
    let counts = (0..=n_max)
        .map(|n| BigInt::from(count_size(basis, n)))
        .collect();
    Ok(CountTable::new(counts))
}

/// Members of `Av_n(B)` in lexicographic order of one-line notation.
pub fn iterate_class(basis: &PatternBasis, n: usize) -> Result<ClassIter> {
    iterate_class_with(basis, n, &EnumerationConfig::default())
}

/// Every permutation of length `n`, in lexicographic order.
pub fn all_permutations(n: usize) -> Result<ClassIter> {
    let basis = PatternBasis::new(vec![Permutation::identity(n + 1)])?;
    iterate_class(&basis, n)
}

pub fn iterate_class_with(
    basis: &PatternBasis,
    n: usize,
    config: &EnumerationConfig,
) -> Result<ClassIter> {
    config.check(n)?;
    Ok(ClassIter {
        n,
        basis: basis.clone(),
        prefix: Vec::with_capacity(n),
        used: vec![false; n + 1],
        cursor: vec![1; n + 1],
        finished: false,
    })
}

/// Lazy lexicographic generator returned by [`iterate_class`].
#[derive(Debug)]
pub struct ClassIter {
    n: usize,
    basis: PatternBasis,
    prefix: Vec<u32>,
    used: Vec<bool>,
    /// Next value to try at each depth.
    cursor: Vec<u32>,
    finished: bool,
}

impl ClassIter {
    fn pop(&mut self) {
        if let Some(v) = self.prefix.pop() {
            self.used[v as usize] = false;
        }
    }
}

impl Iterator for ClassIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.finished {
            return None;
        }
        if self.n == 0 {
            self.finished = true;
            return Some(Permutation::empty());
        }
        loop {
            let depth = self.prefix.len();
            if depth == self.n {
                let out = Permutation::from_vec_unchecked(self.prefix.clone());
                self.pop();
                return Some(out);
            }
            let mut extended = false;
            let mut v = self.cursor[depth];
            while v as usize <= self.n {
                if !self.used[v as usize] {
                    self.prefix.push(v);
                    if last_entry_hits(&self.prefix, &self.basis) {
                        self.prefix.pop();
                    } else {
                        self.used[v as usize] = true;
                        self.cursor[depth] = v + 1;
                        self.cursor[depth + 1] = 1;
                        extended = true;
                        break;
                    }
                }
                v += 1;
            }
            if !extended {
                if depth == 0 {
                    self.finished = true;
                    return None;
                }
                self.pop();
            }
        }
    }
}
