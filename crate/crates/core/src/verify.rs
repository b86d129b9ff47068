//! Runs the property suites of every module over all `(n, k)` instances up
//! to a size limit, checking generators against the oracles.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::colexgen::gen_colex;
use crate::graygen::{gen1_gray, gen1_gray_directed, gen2_gray, reconstruct, DeltaEmission, Direction};
use crate::mcmahon::{alpha, psi, psi_inv};
use crate::oracle::{brute_perms_by_maj, brute_subexcedant, transposition_distance, MahonianTable, MAX_BRUTE_N};
use crate::permgen::{gen_perm_major, PermEmission};
use crate::seqcore::{major_index, max_weight, min_colex, BoundingSequence, ClosenessTable, SubexcedantSeq};

/// Largest `n` accepted by [`run`].
pub const MAX_VERIFY_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Colex,
    Gray,
    Mcmahon,
    Perm,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Colex => "colex",
            Suite::Gray => "gray",
            Suite::Mcmahon => "mcmahon",
            Suite::Perm => "perm",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Suite::All),
            "colex" => Ok(Suite::Colex),
            "gray" => Ok(Suite::Gray),
            "mcmahon" => Ok(Suite::Mcmahon),
            "perm" => Ok(Suite::Perm),
            _ => Err(format!("unknown suite `{s}` (expected all, colex, gray, mcmahon or perm)")),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    /// Relation used for the closeness checks of the gray suite.
    pub closeness: ClosenessTable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub suite: Suite,
    pub property: &'static str,
    pub n: usize,
    pub k: usize,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FAIL [{}] {} at n={} k={}: {}",
            self.suite, self.property, self.n, self.k, self.detail
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    /// Number of `(suite, n, k)` instances checked.
    pub instances: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Checker {
    suite: Suite,
    n: usize,
    k: usize,
    failures: Vec<Failure>,
}

impl Checker {
    fn new(suite: Suite, n: usize, k: usize) -> Self {
        Self {
            suite,
            n,
            k,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, property: &'static str, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(Failure {
                suite: self.suite,
                property,
                n: self.n,
                k: self.k,
                detail: detail(),
            });
        }
    }
}

fn join(c: &[usize]) -> String {
    c.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn colex_instance(n: usize, k: usize, _: &Options) -> Vec<Failure> {
    let mut ck = Checker::new(Suite::Colex, n, k);
    let mut got = Vec::new();
    gen_colex(k, &BoundingSequence::subexcedant(n), |c: &[usize]| got.push(c.to_vec()));
    let want = brute_subexcedant(k, n);
    ck.check(got == want, "colex order equals sorted oracle", || {
        format!("{} generated, {} expected", got.len(), want.len())
    });
    ck.failures
}

fn gray_instance(n: usize, k: usize, opts: &Options) -> Vec<Failure> {
    let mut ck = Checker::new(Suite::Gray, n, k);
    let mut list = Vec::new();
    if let Err(e) = gen1_gray(k, n, |c: &[usize]| list.push(c.to_vec())) {
        ck.check(false, "gen1 runs", || e.to_string());
        return ck.failures;
    }

    let got: BTreeSet<_> = list.iter().cloned().collect();
    let want: BTreeSet<_> = brute_subexcedant(k, n).into_iter().collect();
    ck.check(got.len() == list.len(), "no duplicates", || {
        format!("{} emitted, {} distinct", list.len(), got.len())
    });
    ck.check(got == want, "set equals oracle", || {
        format!("{} distinct generated, {} expected", got.len(), want.len())
    });

    if let Some(i) = (1..list.len()).find(|&i| !opts.closeness.are_close(&list[i - 1], &list[i])) {
        ck.check(false, "consecutive sequences are close", || {
            format!("{} -> {}", join(&list[i - 1]), join(&list[i]))
        });
    }

    // each block of a fixed suffix is contiguous
    for len in 1..n {
        let mut seen = BTreeSet::new();
        let mut prev: Option<&[usize]> = None;
        for c in &list {
            let suffix = &c[n - len..];
            if prev != Some(suffix) && !seen.insert(suffix) {
                ck.check(false, "suffix partitioned", || {
                    format!("suffix {} reappears", join(suffix))
                });
                break;
            }
            prev = Some(suffix);
        }
    }

    let mut backward = Vec::new();
    let _ = gen1_gray_directed(k, n, Direction::Backward, |c: &[usize]| backward.push(c.to_vec()));
    backward.reverse();
    ck.check(backward == list, "backward run is the reverse", || {
        format!("{} vs {} items", backward.len(), list.len())
    });

    let mut rebuilt = Vec::new();
    let _ = reconstruct(k, n, |c: &[usize]| rebuilt.push(c.to_vec()));
    ck.check(rebuilt == list, "delta stream reconstructs gen1", || {
        format!("{} rebuilt vs {} items", rebuilt.len(), list.len())
    });

    let mut idx = 0;
    let mut bad = None;
    let _ = gen2_gray(k, n, |e: DeltaEmission<'_>| {
        if idx > 0 && bad.is_none() && idx < list.len() {
            let (prev, cur) = (&list[idx - 1], &list[idx]);
            let p = (0..n).rev().find(|&i| prev[i] != cur[i]).map_or(0, |i| i + 1);
            let u: usize = cur[..e.p.min(n)].iter().sum();
            if e.p != p || e.u != u {
                bad = Some(format!("step {idx}: got p={} u={}, true p={p} u={u}", e.p, e.u));
            }
        }
        idx += 1;
    });
    if let Some(detail) = bad {
        ck.check(false, "delta p and u are exact", || detail);
    }
    ck.failures
}

fn mcmahon_instance(n: usize, k: usize, _: &Options) -> Vec<Failure> {
    let mut ck = Checker::new(Suite::Mcmahon, n, k);
    for t in brute_subexcedant(k, n) {
        let seq = SubexcedantSeq::new(t.clone()).expect("oracle output is subexcedant");
        let pi = psi(&seq);
        if pi.major_index() != k {
            ck.check(false, "maj(psi(t)) = weight(t)", || join(&t));
            break;
        }
        if psi_inv(&pi).as_slice() != t.as_slice() {
            ck.check(false, "psi_inv(psi(t)) = t", || join(&t));
            break;
        }
    }
    let a = alpha(n, k);
    let m = min_colex(k, n).map(|s| psi(&s));
    match (a, m) {
        (Ok(a), Ok(m)) => {
            ck.check(a == m, "alpha = psi(min_colex)", || {
                format!("{} vs {}", join(a.as_slice()), join(m.as_slice()))
            });
            let twice: Vec<usize> = (1..=n).map(|i| a.apply(a.apply(i))).collect();
            ck.check(twice.iter().copied().eq(1..=n), "alpha is an involution", || {
                join(a.as_slice())
            });
        }
        (a, m) => ck.check(false, "alpha defined", || format!("{a:?} / {m:?}")),
    }
    ck.failures
}

fn perm_instance(n: usize, k: usize, table: &MahonianTable) -> Vec<Failure> {
    let mut ck = Checker::new(Suite::Perm, n, k);
    let mut list: Vec<Vec<usize>> = Vec::new();
    let mut worst = 0;
    let result = gen_perm_major(k, n, |e: PermEmission<'_>| {
        if let Some(prev) = list.last() {
            worst = worst.max(transposition_distance(prev, e.sigma).unwrap_or(usize::MAX));
        }
        list.push(e.sigma.to_vec());
    });
    if let Err(e) = result {
        ck.check(false, "gen_perm_major runs", || e.to_string());
        return ck.failures;
    }
    ck.check(worst <= 3, "at most three transpositions per step", || {
        format!("distance {worst}")
    });
    ck.check(
        list.len() as u64 == table.get(n, k),
        "count equals Mahonian number",
        || format!("{} vs {}", list.len(), table.get(n, k)),
    );
    if let Some(p) = list.iter().find(|p| major_index(p) != k) {
        ck.check(false, "every permutation has major index k", || join(p));
    }
    if n <= MAX_BRUTE_N {
        let got: BTreeSet<_> = list.iter().cloned().collect();
        let want: BTreeSet<_> = brute_perms_by_maj(k, n)
            .expect("size checked")
            .into_iter()
            .map(|p| p.into_vec())
            .collect();
        ck.check(got == want, "set equals oracle", || {
            format!("{} distinct generated, {} expected", got.len(), want.len())
        });
    }
    ck.failures
}

/// Checks every instance with `1 <= n <= n_max` and `0 <= k <= n(n-1)/2`.
pub fn run(n_max: usize, suite: Suite, opts: &Options) -> crate::Result<Report> {
    if n_max > MAX_VERIFY_N {
        return Err(crate::Error::TooLarge {
            n: n_max,
            max: MAX_VERIFY_N,
        });
    }
    let table = MahonianTable::new(n_max)?;
    let mut jobs = Vec::new();
    for s in [Suite::Colex, Suite::Gray, Suite::Mcmahon, Suite::Perm] {
        if suite.includes(s) {
            for n in 1..=n_max {
                for k in 0..=max_weight(n) {
                    jobs.push((s, n, k));
                }
            }
        }
    }
    let mut failures: Vec<Failure> = jobs
        .par_iter()
        .flat_map_iter(|&(s, n, k)| match s {
            Suite::Colex => colex_instance(n, k, opts),
            Suite::Gray => gray_instance(n, k, opts),
            Suite::Mcmahon => mcmahon_instance(n, k, opts),
            _ => perm_instance(n, k, &table),
        })
        .collect();
    failures.sort_by_key(|f| (f.suite.name(), f.n, f.k, f.property));
    Ok(Report {
        instances: jobs.len(),
        failures,
    })
}
