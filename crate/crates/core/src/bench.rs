//! Work-unit instrumentation and amortized-cost reporting.
//!
//! Generators are generic over a [`Probe`]. The default [`NoProbe`] compiles
//! to nothing; [`WorkCounter`] counts procedure entries, loop iterations and
//! buffer writes deterministically, without looking at the clock.

use std::fmt;
use std::ops::{ControlFlow, RangeInclusive};
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::seqcore::{max_weight, BoundingSequence};
use crate::{colexgen, graygen, permgen};

pub trait Probe {
    /// Entry into a recursive generating procedure with remaining weight `k`
    /// and candidate position `r`.
    #[inline(always)]
    fn enter(&mut self, _k: usize, _r: usize, _c: &[usize]) {}
    #[inline(always)]
    fn leave(&mut self) {}
    /// Entry into a non-recursive helper procedure.
    #[inline(always)]
    fn call(&mut self) {}
    #[inline(always)]
    fn iteration(&mut self) {}
    #[inline(always)]
    fn writes(&mut self, _count: u64) {}
}

#[derive(Debug, Default, Clone, Copy)]
pub struct NoProbe;

impl Probe for NoProbe {}

impl<P: Probe + ?Sized> Probe for &mut P {
    #[inline(always)]
    fn enter(&mut self, k: usize, r: usize, c: &[usize]) {
        (**self).enter(k, r, c)
    }
    #[inline(always)]
    fn leave(&mut self) {
        (**self).leave()
    }
    #[inline(always)]
    fn call(&mut self) {
        (**self).call()
    }
    #[inline(always)]
    fn iteration(&mut self) {
        (**self).iteration()
    }
    #[inline(always)]
    fn writes(&mut self, count: u64) {
        (**self).writes(count)
    }
}

/// Counts work units and tracks the longest chain of consecutive
/// q-terminal procedure entries along a root-to-leaf path.
///
/// An entry with remaining weight `k` at position `r` is q-terminal when
/// `k == 0` or `k == r(r-1)/2`: everything left to place is forced.
#[derive(Debug, Default, Clone)]
pub struct WorkCounter {
    pub entries: u64,
    pub iterations: u64,
    pub writes: u64,
    pub max_qterminal_run: u32,
    runs: Vec<u32>,
}

impl WorkCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn total(&self) -> u64 {
        self.entries + self.iterations + self.writes
    }
}

impl Probe for WorkCounter {
    fn enter(&mut self, k: usize, r: usize, _c: &[usize]) {
        self.entries += 1;
        let q_terminal = k == 0 || k == max_weight(r);
        let run = if q_terminal {
            self.runs.last().copied().unwrap_or(0) + 1
        } else {
            0
        };
        self.max_qterminal_run = self.max_qterminal_run.max(run);
        self.runs.push(run);
    }

    fn leave(&mut self) {
        self.runs.pop();
    }

    fn call(&mut self) {
        self.entries += 1;
    }

    fn iteration(&mut self) {
        self.iterations += 1;
    }

    fn writes(&mut self, count: u64) {
        self.writes += count;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorId {
    Colex,
    Gray1,
    Gray2,
    Perm,
}

impl GeneratorId {
    pub const ALL: [GeneratorId; 4] = [Self::Colex, Self::Gray1, Self::Gray2, Self::Perm];

    pub fn name(self) -> &'static str {
        match self {
            Self::Colex => "colex",
            Self::Gray1 => "gray1",
            Self::Gray2 => "gray2",
            Self::Perm => "perm",
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown generator `{s}` (colex, gray1, gray2, perm)"))
    }
}

/// How a sweep picks the weight `k` for each length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KPolicy {
    /// `n(n-1)/4`, rounded half up.
    Mid,
    /// `n - 1`.
    Linear,
    /// `n(n-1)/2 - 2`.
    NearMax,
    /// The largest `j(j-1)/2` not above the mid weight; heavy in
    /// q-terminal calls.
    Triangular,
    Fixed(usize),
}

impl KPolicy {
    pub fn weight_for(self, n: usize) -> usize {
        let max = max_weight(n);
        match self {
            Self::Mid => max.div_ceil(2),
            Self::Linear => n.saturating_sub(1),
            Self::NearMax => max.saturating_sub(2),
            Self::Triangular => {
                let mid = max.div_ceil(2);
                let mut j = 1;
                while max_weight(j + 1) <= mid {
                    j += 1;
                }
                max_weight(j)
            }
            Self::Fixed(k) => k,
        }
    }
}

impl FromStr for KPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "mid" => Ok(Self::Mid),
            "linear" => Ok(Self::Linear),
            "near-max" => Ok(Self::NearMax),
            "triangular" => Ok(Self::Triangular),
            other => other.parse().map(Self::Fixed).map_err(|_| {
                format!("unknown k policy `{other}` (mid, linear, near-max, triangular, or a number)")
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorkStats {
    pub generator: GeneratorId,
    pub n: usize,
    pub k: usize,
    pub objects: u64,
    pub entries: u64,
    pub iterations: u64,
    pub writes: u64,
    pub ratio: f64,
    pub elapsed_ns: u64,
    #[serde(skip)]
    pub max_qterminal_run: u32,
    /// False when the run was cut short by an object budget.
    #[serde(skip)]
    pub complete: bool,
}

impl WorkStats {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("stats serialize")
    }
}

pub fn measure(generator: GeneratorId, k: usize, n: usize) -> Result<WorkStats> {
    measure_with_budget(generator, k, n, None)
}

/// Like [`measure`], but stops after `budget` objects when given. Every
/// prefix of a depth-first traversal consists of whole subtrees plus one
/// root path, so the ratio of a long prefix tracks the ratio of the run.
pub fn measure_with_budget(
    generator: GeneratorId,
    k: usize,
    n: usize,
    budget: Option<u64>,
) -> Result<WorkStats> {
    let mut counter = WorkCounter::new();
    let mut objects = 0u64;
    let limit = budget.unwrap_or(u64::MAX);
    let mut tick = || {
        objects += 1;
        if objects >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    };
    let start = Instant::now();
    match generator {
        GeneratorId::Colex => {
            let b = BoundingSequence::subexcedant(n);
            colexgen::gen_colex_with_probe(k, &b, &mut counter, |_: &[usize]| tick());
        }
        GeneratorId::Gray1 => {
            graygen::gen1_gray_with_probe(
                k,
                n,
                graygen::Direction::Forward,
                &mut counter,
                |_: &[usize]| tick(),
            )?;
        }
        GeneratorId::Gray2 => {
            graygen::gen2_gray_with_probe(k, n, &mut counter, |_: graygen::DeltaEmission<'_>| {
                tick()
            })?;
        }
        GeneratorId::Perm => {
            permgen::gen_perm_major_with_probe(k, n, &mut counter, |_: permgen::PermEmission<'_>| {
                tick()
            })?;
        }
    }
    let elapsed_ns = start.elapsed().as_nanos().min(u64::MAX as u128) as u64;
    let ratio = if objects == 0 {
        0.0
    } else {
        counter.total() as f64 / objects as f64
    };
    Ok(WorkStats {
        generator,
        n,
        k,
        objects,
        entries: counter.entries,
        iterations: counter.iterations,
        writes: counter.writes,
        ratio,
        elapsed_ns,
        max_qterminal_run: counter.max_qterminal_run,
        complete: objects < limit || crate::oracle::mahonian(n, k).is_ok_and(|m| m == objects),
    })
}

/// One [`measure`] per `n` in `ns`, with `k` chosen by `policy`. Weights
/// that are out of range for a given `n` propagate as errors.
pub fn sweep(
    generator: GeneratorId,
    ns: RangeInclusive<usize>,
    policy: KPolicy,
) -> Result<Vec<WorkStats>> {
    ns.map(|n| measure(generator, policy.weight_for(n), n))
        .collect()
}

pub fn report_json(stats: &[WorkStats]) -> String {
    serde_json::to_string(stats).expect("stats serialize")
}
