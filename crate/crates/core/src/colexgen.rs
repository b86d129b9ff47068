//! Co-lex order generation of bounded compositions `C^b(k, n)`.
//!
//! The generating tree skips redundant nodes: on the leftmost branch the
//! leftmost increasable position `l` receives its minimal value
//! `k - (b_1 + ... + b_{l-1})` in a single step.

use std::ops::RangeInclusive;

use crate::bench::{NoProbe, Probe};
use crate::error::{Error, Result};
use crate::seqcore::{max_weight, weight, BoundingSequence};
use crate::Flow;

/// Prefix capacities of a bounding sequence and the leftmost position at
/// which each weight fits.
pub(crate) trait Capacity {
    /// Bound of the 1-based position `i`.
    fn bound(&self, i: usize) -> usize;
    /// `b_1 + ... + b_i`.
    fn prefix(&self, i: usize) -> usize;
    /// `min { s : prefix(s) >= k }`; `k` must not exceed the total.
    fn lmin(&self, k: usize) -> usize;
}

#[derive(Debug, Clone)]
pub struct PrefixSumTable {
    bounds: Vec<usize>,
    prefix: Vec<usize>,
    lmin: Vec<usize>,
}

impl PrefixSumTable {
    pub fn new(b: &BoundingSequence) -> Self {
        let mut bounds = Vec::with_capacity(b.len() + 1);
        bounds.push(0);
        bounds.extend_from_slice(b.as_slice());
        let mut prefix = Vec::with_capacity(bounds.len());
        let mut acc = 0;
        for &v in &bounds {
            acc += v;
            prefix.push(acc);
        }
        let total = acc;
        let mut lmin = Vec::with_capacity(total + 1);
        let mut s = 0;
        for k in 0..=total {
            while prefix[s] < k {
                s += 1;
            }
            lmin.push(s);
        }
        Self {
            bounds,
            prefix,
            lmin,
        }
    }

    pub fn total(&self) -> usize {
        *self.prefix.last().unwrap_or(&0)
    }

    /// `b_1 + ... + b_i`, with `prefix(0) == 0`.
    pub fn prefix(&self, i: usize) -> usize {
        self.prefix[i]
    }

    /// The leftmost position whose prefix capacity reaches `k`.
    pub fn lmin(&self, k: usize) -> Option<usize> {
        self.lmin.get(k).copied()
    }
}

impl Capacity for PrefixSumTable {
    #[inline]
    fn bound(&self, i: usize) -> usize {
        self.bounds[i]
    }

    #[inline]
    fn prefix(&self, i: usize) -> usize {
        self.prefix[i]
    }

    #[inline]
    fn lmin(&self, k: usize) -> usize {
        self.lmin[k]
    }
}

/// The bounding sequence `0 1 ... (n-1)`, with closed-form prefixes.
#[derive(Debug, Clone)]
pub(crate) struct Triangular {
    lmin: Vec<usize>,
}

impl Triangular {
    pub(crate) fn new(n: usize) -> Self {
        let total = max_weight(n);
        let mut lmin = Vec::with_capacity(total + 1);
        let mut s = 0;
        for k in 0..=total {
            while max_weight(s) < k {
                s += 1;
            }
            lmin.push(s);
        }
        Self { lmin }
    }
}

impl Capacity for Triangular {
    #[inline]
    fn bound(&self, i: usize) -> usize {
        i - 1
    }

    #[inline]
    fn prefix(&self, i: usize) -> usize {
        max_weight(i)
    }

    #[inline]
    fn lmin(&self, k: usize) -> usize {
        self.lmin[k]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Increasable {
    /// The sequence already has the target weight.
    Complete,
    /// 1-based range of increasable positions.
    Positions(RangeInclusive<usize>),
    /// No member of the target set extends this suffix.
    Stuck,
}

/// Increasable positions of the partial sequence `c` with respect to
/// `C^b(k, n)`.
pub fn increasable_positions(c: &[usize], k: usize, b: &BoundingSequence) -> Result<Increasable> {
    if c.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: c.len(),
            right: b.len(),
        });
    }
    if let Some((i, (&v, &bound))) = c
        .iter()
        .zip(b.as_slice())
        .enumerate()
        .find(|(_, (v, bound))| v > bound)
    {
        return Err(Error::ExceedsBound {
            pos: i + 1,
            value: v,
            bound,
        });
    }
    let placed = weight(c);
    if placed == k {
        return Ok(Increasable::Complete);
    }
    if placed > k || c.is_empty() {
        return Ok(Increasable::Stuck);
    }
    let remaining = k - placed;
    let table = PrefixSumTable::new(b);
    let n = c.len();
    // leftmost nonzero position, or n for the all-zero sequence
    let r = c.iter().position(|&v| v > 0).map_or(n, |i| i + 1);
    let (c_r, b_r) = (c[r - 1], b.as_slice()[r - 1]);
    let right = if c_r < b_r { r } else { r - 1 };
    let left = match table.lmin(remaining) {
        Some(l) if l < r => l,
        _ if c_r < b_r && table.prefix(r - 1) + (b_r - c_r) >= remaining => r,
        _ => return Ok(Increasable::Stuck),
    };
    if left > right {
        return Ok(Increasable::Stuck);
    }
    Ok(Increasable::Positions(left..=right))
}

struct ColexRun<'a, T, P, F> {
    cap: &'a T,
    c: Vec<usize>,
    probe: P,
    visit: F,
    count: u64,
    stopped: bool,
}

impl<T, P, F, R> ColexRun<'_, T, P, F>
where
    T: Capacity,
    P: Probe,
    F: FnMut(&[usize]) -> R,
    R: Flow,
{
    fn run(&mut self, k: usize, mut r: usize) {
        if k > 0 && self.c[r] == self.cap.bound(r) {
            r -= 1;
        }
        self.probe.enter(k, r, &self.c[1..]);
        if k == 0 {
            self.count += 1;
            self.stopped = (self.visit)(&self.c[1..]).should_stop();
        } else {
            let l = self.cap.lmin(k);
            for i in l..=r {
                self.probe.iteration();
                let e = if i == l {
                    k - self.cap.prefix(l - 1)
                } else {
                    1
                };
                self.c[i] += e;
                self.run(k - e, i);
                self.c[i] -= e;
                self.probe.writes(2);
                if self.stopped {
                    break;
                }
            }
        }
        self.probe.leave();
    }
}

pub(crate) fn colex_with<T: Capacity, P: Probe, F, R>(
    k: usize,
    n: usize,
    cap: &T,
    probe: P,
    visit: F,
) -> u64
where
    F: FnMut(&[usize]) -> R,
    R: Flow,
{
    let mut run = ColexRun {
        cap,
        c: vec![0; n + 1],
        probe,
        visit,
        count: 0,
        stopped: false,
    };
    run.run(k, n);
    run.count
}

/// Visits every element of `C^b(k, n)` in increasing co-lex order and
/// returns how many there were. `k` above the total capacity of `b` gives
/// an empty run.
pub fn gen_colex<F, R>(k: usize, b: &BoundingSequence, visit: F) -> u64
where
    F: FnMut(&[usize]) -> R,
    R: Flow,
{
    gen_colex_with_probe(k, b, NoProbe, visit)
}

pub fn gen_colex_with_probe<P: Probe, F, R>(k: usize, b: &BoundingSequence, probe: P, visit: F) -> u64
where
    F: FnMut(&[usize]) -> R,
    R: Flow,
{
    let table = PrefixSumTable::new(b);
    if k > table.total() {
        return 0;
    }
    colex_with(k, b.len(), &table, probe, visit)
}
