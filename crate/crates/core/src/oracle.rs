//! Slow reference implementations for cross-checking the generators.
//!
//! Nothing here shares code paths with the generators: sets are built by
//! plain counting and filtering, and counts come from a polynomial product.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::seqcore::{colex_cmp, major_index, max_weight, BoundingSequence, Permutation};

/// Largest `n` for which full permutation enumeration is allowed.
pub const MAX_BRUTE_N: usize = 9;

/// Every `b`-bounded composition of `k`, sorted in co-lex order.
pub fn brute_bounded(k: usize, b: &BoundingSequence) -> Vec<Vec<usize>> {
    let bounds = b.as_slice();
    let mut out = Vec::new();
    let mut digits = vec![0; bounds.len()];
    loop {
        if digits.iter().sum::<usize>() == k {
            out.push(digits.clone());
        }
        // odometer step, least significant digit first
        let mut i = 0;
        loop {
            if i == digits.len() {
                out.sort_by(|a, b| colex_cmp(a, b));
                return out;
            }
            if digits[i] < bounds[i] {
                digits[i] += 1;
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// `S(k, n)` in co-lex order.
pub fn brute_subexcedant(k: usize, n: usize) -> Vec<Vec<usize>> {
    brute_bounded(k, &BoundingSequence::subexcedant(n))
}

/// Every permutation of `S_n` with major index `k`, in lexicographic order.
pub fn brute_perms_by_maj(k: usize, n: usize) -> Result<Vec<Permutation>> {
    if n > MAX_BRUTE_N {
        return Err(Error::TooLarge {
            n,
            max: MAX_BRUTE_N,
        });
    }
    Ok((1..=n)
        .permutations(n)
        .filter(|p| major_index(p) == k)
        .map(|p| Permutation::new(p).expect("itertools yields permutations"))
        .collect())
}

/// `M[n][k]`: the number of permutations of `S_n` with major index `k`,
/// which is also `|S(k, n)|`.
#[derive(Debug, Clone)]
pub struct MahonianTable {
    rows: Vec<Vec<u64>>,
}

impl MahonianTable {
    /// Largest `n` whose row fits in `u64`.
    pub const MAX_N: usize = 20;

    /// Rows `0..=n_max`, from coefficients of
    /// `prod_{i=1}^{n} (1 + q + ... + q^{i-1})`.
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max > Self::MAX_N {
            return Err(Error::TooLarge {
                n: n_max,
                max: Self::MAX_N,
            });
        }
        let mut rows = vec![vec![1u64]];
        for i in 1..=n_max {
            let prev = &rows[i - 1];
            let mut next = vec![0u64; max_weight(i) + 1];
            for (k, &count) in prev.iter().enumerate() {
                for slot in &mut next[k..k + i] {
                    *slot += count;
                }
            }
            rows.push(next);
        }
        Ok(Self { rows })
    }

    pub fn get(&self, n: usize, k: usize) -> u64 {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .copied()
            .unwrap_or(0)
    }

    pub fn row(&self, n: usize) -> &[u64] {
        &self.rows[n]
    }
}

/// A single Mahonian number; zero for `k` above `n(n-1)/2`.
pub fn mahonian(n: usize, k: usize) -> Result<u64> {
    Ok(MahonianTable::new(n)?.get(n, k))
}

/// The least number of transpositions taking `sigma` to `tau`: `n` minus
/// the number of cycles of `sigma^{-1}·tau`.
pub fn transposition_distance(sigma: &[usize], tau: &[usize]) -> Result<usize> {
    if sigma.len() != tau.len() {
        return Err(Error::LengthMismatch {
            left: sigma.len(),
            right: tau.len(),
        });
    }
    let n = sigma.len();
    let mut position = vec![0; n + 1];
    for (i, &v) in sigma.iter().enumerate() {
        position[v] = i;
    }
    // rho = sigma^{-1}·tau as a 0-based map
    let rho: Vec<usize> = tau.iter().map(|&v| position[v]).collect();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = rho[i];
        }
    }
    Ok(n - cycles)
}
