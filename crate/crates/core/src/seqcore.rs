//! Sequence and permutation types, their statistics, and the closeness
//! relation that consecutive subexcedant sequences of the Gray code satisfy.
//!
//! Positions are 1-based in every public contract (`DiffTuple::p`, error
//! positions, documentation); slices are stored 0-based.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest weight of a length-`n` subexcedant sequence, `n(n-1)/2`.
pub fn max_weight(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Smallest `j` with `j(j-1)/2 >= k`; `0` when `k == 0`.
pub fn triangular_ceil(k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    // float estimate, then fix up
    let mut j = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0).ceil() as usize;
    while j > 1 && max_weight(j - 1) >= k {
        j -= 1;
    }
    while max_weight(j) < k {
        j += 1;
    }
    j
}

/// Sum of the descent positions of `pi`.
pub fn major_index(pi: &[usize]) -> usize {
    pi.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i + 1)
        .sum()
}

pub fn weight(c: &[usize]) -> usize {
    c.iter().sum()
}

/// `c_i <= i - 1` for every 1-based position `i`.
pub fn is_subexcedant(c: &[usize]) -> bool {
    c.iter().enumerate().all(|(i, &v)| v <= i)
}

/// Whether `c` is a `b`-bounded composition of `k`.
pub fn is_bounded(c: &[usize], k: usize, b: &BoundingSequence) -> Result<bool> {
    if c.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: c.len(),
            right: b.len(),
        });
    }
    Ok(weight(c) == k && c.iter().zip(b.as_slice()).all(|(v, bound)| v <= bound))
}

/// Co-lex comparison: compare the reversed sequences lexicographically.
pub fn colex_cmp(a: &[usize], b: &[usize]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Writes the co-lex smallest subexcedant sequence of weight `k` into `buf`
/// (`0 1 2 ... (j-2) a_j 0 ... 0`). The caller guarantees
/// `k <= max_weight(buf.len())`.
pub(crate) fn fill_min_colex(buf: &mut [usize], k: usize) {
    buf.fill(0);
    let j = triangular_ceil(k);
    if j == 0 {
        return;
    }
    for (i, slot) in buf.iter_mut().enumerate().take(j - 1) {
        *slot = i;
    }
    buf[j - 1] = k - max_weight(j - 1);
}

/// The co-lex smallest element of `S(k, n)`.
pub fn min_colex(k: usize, n: usize) -> Result<SubexcedantSeq> {
    check_weight(k, n)?;
    let mut code = vec![0; n];
    fill_min_colex(&mut code, k);
    Ok(SubexcedantSeq { code, weight: k })
}

pub(crate) fn check_weight(k: usize, n: usize) -> Result<()> {
    let max = max_weight(n);
    if k > max {
        return Err(Error::WeightOutOfRange { k, n, max });
    }
    Ok(())
}

/// Per-position upper bounds. A zero bound may only appear in a prefix of
/// zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundingSequence(Vec<usize>);

impl BoundingSequence {
    pub fn new(bounds: Vec<usize>) -> Result<Self> {
        if let Some(first_positive) = bounds.iter().position(|&b| b > 0) {
            if let Some(off) = bounds[first_positive..].iter().position(|&b| b == 0) {
                return Err(Error::BadBounds {
                    pos: first_positive + off + 1,
                });
            }
        }
        Ok(Self(bounds))
    }

    /// `0 1 2 ... (n-1)`, whose bounded compositions are the subexcedant
    /// sequences.
    pub fn subexcedant(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of all bounds, the largest reachable weight.
    pub fn capacity(&self) -> usize {
        weight(&self.0)
    }
}

/// A sequence of non-negative integers together with its weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
    weight: usize,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        let weight = weight(&parts);
        Self { parts, weight }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn is_bounded_by(&self, b: &BoundingSequence) -> bool {
        is_bounded(&self.parts, self.weight, b).unwrap_or(false)
    }
}

/// A sequence with `0 <= c_i <= i - 1`; the McMahon code of a permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubexcedantSeq {
    code: Vec<usize>,
    weight: usize,
}

impl SubexcedantSeq {
    pub fn new(code: Vec<usize>) -> Result<Self> {
        if let Some((i, &v)) = code.iter().enumerate().find(|(i, &v)| v > *i) {
            return Err(Error::NotSubexcedant { pos: i + 1, value: v });
        }
        Ok(Self::from_vec_unchecked(code))
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            code: vec![0; n],
            weight: 0,
        }
    }

    pub(crate) fn from_vec_unchecked(code: Vec<usize>) -> Self {
        debug_assert!(is_subexcedant(&code));
        let weight = weight(&code);
        Self { code, weight }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.code
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.code
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.weight
    }
}

impl AsRef<[usize]> for SubexcedantSeq {
    fn as_ref(&self) -> &[usize] {
        &self.code
    }
}

impl fmt::Display for SubexcedantSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.code)
    }
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotPermutation { n });
            }
            seen[v] = true;
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Self(images)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn major_index(&self) -> usize {
        major_index(&self.0)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self(inv)
    }
}

impl AsRef<[usize]> for Permutation {
    fn as_ref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.0)
    }
}

fn write_spaced(f: &mut fmt::Formatter<'_>, values: &[usize]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Difference `s - t` over the window `p-2, p-1, p`, where `p` is the
/// rightmost position at which the two sequences differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiffTuple {
    /// 1-based rightmost differing position.
    pub p: usize,
    pub a: [i64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Difference {
    Identical,
    Window(DiffTuple),
    /// The differing positions do not fit in a window of three adjacent
    /// positions ending at `p >= 3`.
    Spread,
}

pub fn difference_and_pivot(s: &[usize], t: &[usize]) -> Result<Difference> {
    if s.len() != t.len() {
        return Err(Error::LengthMismatch {
            left: s.len(),
            right: t.len(),
        });
    }
    let (ws, wt) = (weight(s), weight(t));
    if ws != wt {
        return Err(Error::WeightMismatch { left: ws, right: wt });
    }
    let differs = |i: &usize| s[*i] != t[*i];
    let Some(lo) = (0..s.len()).find(differs) else {
        return Ok(Difference::Identical);
    };
    let hi = (0..s.len()).rev().find(differs).unwrap_or(lo);
    // p < 3 cannot happen for subexcedant sequences, but the window would
    // fall off the left end.
    if hi - lo > 2 || hi < 2 {
        return Ok(Difference::Spread);
    }
    let a = [hi - 2, hi - 1, hi].map(|i| s[i] as i64 - t[i] as i64);
    Ok(Difference::Window(DiffTuple { p: hi + 1, a }))
}

/// The twelve difference triples allowed between close sequences.
pub const CLOSE_TUPLES: [[i64; 3]; 12] = [
    [0, 1, -1],
    [0, -1, 1],
    [0, 2, -2],
    [0, -2, 2],
    [1, -2, 1],
    [-1, 2, -1],
    [1, -3, 2],
    [-1, 3, -2],
    [1, 1, -2],
    [-1, -1, 2],
    [1, 0, -1],
    [-1, 0, 1],
];

/// The set of admissible difference triples. The default table is
/// [`CLOSE_TUPLES`]; other tables exist so verification runs can be
/// exercised against a deliberately broken relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosenessTable {
    tuples: Vec<[i64; 3]>,
}

impl Default for ClosenessTable {
    fn default() -> Self {
        Self {
            tuples: CLOSE_TUPLES.to_vec(),
        }
    }
}

impl ClosenessTable {
    pub fn without(mut self, tuple: [i64; 3]) -> Self {
        self.tuples.retain(|t| *t != tuple);
        self
    }

    pub fn contains(&self, tuple: &[i64; 3]) -> bool {
        self.tuples.contains(tuple)
    }

    pub fn tuples(&self) -> &[[i64; 3]] {
        &self.tuples
    }

    pub fn are_close(&self, s: &[usize], t: &[usize]) -> bool {
        match difference_and_pivot(s, t) {
            Ok(Difference::Identical) => true,
            Ok(Difference::Window(d)) => self.contains(&d.a),
            Ok(Difference::Spread) | Err(_) => false,
        }
    }
}

/// Whether `s` and `t` are close. Sequences of different length or weight
/// are never close; identical sequences are.
pub fn are_close(s: &[usize], t: &[usize]) -> bool {
    match difference_and_pivot(s, t) {
        Ok(Difference::Identical) => true,
        Ok(Difference::Window(d)) => CLOSE_TUPLES.contains(&d.a),
        Ok(Difference::Spread) | Err(_) => false,
    }
}
