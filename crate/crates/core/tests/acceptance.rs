//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use majordex::bench::{measure_with_budget, GeneratorId, KPolicy, WorkStats};
use majordex::graygen::{gen1_gray, gen1_gray_directed, gen2_gray, reconstruct, DeltaEmission, Direction};
use majordex::mcmahon::{alpha, compose, psi, psi_inv, rotation, transposition};
use majordex::oracle::{brute_perms_by_maj, brute_subexcedant, transposition_distance, MahonianTable};
use majordex::permgen::{gen_perm_major, PermEmission};
use majordex::seqcore::{are_close, max_weight, min_colex};
use majordex::{Permutation, SubexcedantSeq};

/// The list S(4,6), the rightmost changed position, and the
/// permutation with that McMahon code.
const S46_LIST: &str = "
0 1 2 1 0 0 | - | 2 1 4 3 5 6
0 1 0 3 0 0 | 4 | 3 2 4 1 5 6
0 0 1 3 0 0 | 3 | 4 2 3 1 5 6
0 0 2 2 0 0 | 4 | 4 1 3 2 5 6
0 1 1 2 0 0 | 3 | 3 1 4 2 5 6
0 1 2 0 1 0 | 5 | 2 1 5 3 4 6
0 1 1 1 1 0 | 4 | 3 1 5 2 4 6
0 0 2 1 1 0 | 3 | 5 1 3 2 4 6
0 0 0 3 1 0 | 4 | 1 2 3 5 4 6
0 0 1 2 1 0 | 4 | 5 2 3 1 4 6
0 1 0 2 1 0 | 3 | 3 2 5 1 4 6
0 1 0 0 3 0 | 5 | 4 3 5 1 2 6
0 0 1 0 3 0 | 3 | 5 3 4 1 2 6
0 0 0 1 3 0 | 4 | 1 3 4 5 2 6
0 0 0 0 4 0 | 5 | 2 3 4 5 1 6
0 0 0 2 2 0 | 5 | 1 2 4 5 3 6
0 0 1 1 2 0 | 4 | 5 2 4 1 3 6
0 1 0 1 2 0 | 3 | 4 2 5 1 3 6
0 0 2 0 2 0 | 4 | 5 1 4 2 3 6
0 1 1 0 2 0 | 3 | 4 1 5 2 3 6
0 1 1 0 0 2 | 6 | 5 1 6 2 3 4
0 0 2 0 0 2 | 3 | 6 1 5 2 3 4
0 0 0 2 0 2 | 4 | 1 2 5 6 3 4
0 0 1 1 0 2 | 4 | 6 2 5 1 3 4
0 1 0 1 0 2 | 3 | 5 2 6 1 3 4
0 1 0 0 1 2 | 5 | 5 3 6 1 2 4
0 0 1 0 1 2 | 3 | 6 3 5 1 2 4
0 0 0 1 1 2 | 4 | 1 3 5 6 2 4
0 0 0 0 2 2 | 5 | 2 3 5 6 1 4
0 0 0 0 0 4 | 6 | 3 4 5 6 1 2
0 0 0 0 1 3 | 6 | 2 4 5 6 1 3
0 0 0 1 0 3 | 5 | 1 4 5 6 2 3
0 0 1 0 0 3 | 4 | 6 4 5 1 2 3
0 1 0 0 0 3 | 3 | 5 4 6 1 2 3
0 1 0 0 2 1 | 6 | 4 3 6 1 2 5
0 0 1 0 2 1 | 3 | 6 3 4 1 2 5
0 0 0 1 2 1 | 4 | 1 3 4 6 2 5
0 0 0 0 3 1 | 5 | 2 3 4 6 1 5
0 0 0 2 1 1 | 5 | 1 2 4 6 3 5
0 0 1 1 1 1 | 4 | 6 2 4 1 3 5
0 1 0 1 1 1 | 3 | 4 2 6 1 3 5
0 0 2 0 1 1 | 4 | 6 1 4 2 3 5
0 1 1 0 1 1 | 3 | 4 1 6 2 3 5
0 1 1 1 0 1 | 5 | 3 1 6 2 4 5
0 0 2 1 0 1 | 3 | 6 1 3 2 4 5
0 0 0 3 0 1 | 4 | 1 2 3 6 4 5
0 0 1 2 0 1 | 4 | 6 2 3 1 4 5
0 1 0 2 0 1 | 3 | 3 2 6 1 4 5
0 1 2 0 0 1 | 4 | 2 1 6 3 4 5
";

type Outcome = Result<String, String>;

fn nums(s: &str) -> Vec<usize> {
    s.split_whitespace().map(|t| t.parse().unwrap()).collect()
}

fn join(c: &[usize]) -> String {
    c.iter().map(usize::to_string).join(" ")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gray_list(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    gen1_gray(k, n, |c: &[usize]| out.push(c.to_vec())).unwrap();
    out
}

fn perm_list(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    gen_perm_major(k, n, |e: PermEmission<'_>| out.push(e.sigma.to_vec())).unwrap();
    out
}

fn instances(n_max: usize) -> Vec<(usize, usize)> {
    (1..=n_max)
        .flat_map(|n| (0..=max_weight(n)).map(move |k| (n, k)))
        .collect()
}

/// First failure over all instances, checked in parallel.
fn all_instances<F>(n_max: usize, check: F) -> Result<usize, String>
where
    F: Fn(usize, usize) -> Result<(), String> + Sync,
{
    let jobs = instances(n_max);
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(n, k)| check(n, k).err().map(|e| format!("n={n} k={k}: {e}")))
        .collect();
    match failures.into_iter().next() {
        Some(f) => Err(f),
        None => Ok(jobs.len()),
    }
}

fn s46_list() -> Outcome {
    let start = Instant::now();
    let rows: Vec<(Vec<usize>, Option<usize>, Vec<usize>)> = S46_LIST
        .trim()
        .lines()
        .map(|line| {
            let parts: Vec<&str> = line.split('|').collect();
            (nums(parts[0]), parts[1].trim().parse().ok(), nums(parts[2]))
        })
        .collect();
    ensure(rows.len() == 49, || format!("fixture has {} rows", rows.len()))?;

    let seqs = gray_list(4, 6);
    ensure(seqs.len() == 49, || format!("gen1_gray(4,6) emitted {}", seqs.len()))?;
    for (i, (want, _, _)) in rows.iter().enumerate() {
        ensure(&seqs[i] == want, || {
            format!("sequence row {}: got {}, table {}", i + 1, join(&seqs[i]), join(want))
        })?;
    }

    let perms = perm_list(4, 6);
    ensure(perms.len() == 49, || format!("gen_perm_major(4,6) emitted {}", perms.len()))?;
    for (i, (_, _, want)) in rows.iter().enumerate() {
        ensure(&perms[i] == want, || {
            format!("permutation row {}: got {}, table {}", i + 1, join(&perms[i]), join(want))
        })?;
    }

    let mut ps = Vec::new();
    gen2_gray(4, 6, |e: DeltaEmission<'_>| ps.push(e.p)).unwrap();
    for (i, (_, want, _)) in rows.iter().enumerate() {
        let got = if ps[i] == 0 { None } else { Some(ps[i]) };
        ensure(got == *want, || format!("p column row {}: got {:?}, table {:?}", i + 1, got, want))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("49 sequences, permutations and p values byte-exact in {elapsed:.2?}"))
}

fn worked_examples() -> Outcome {
    let t = SubexcedantSeq::new(vec![0, 1, 2, 2, 4, 3]).map_err(|e| e.to_string())?;
    let pi = psi(&t);
    ensure(pi.as_slice() == [5, 2, 1, 6, 4, 3], || format!("psi gave {}", join(pi.as_slice())))?;
    ensure(pi.major_index() == 12, || format!("maj {}", pi.major_index()))?;
    let expected = [
        ((3, 1), [3, 1, 2, 4, 5]),
        ((3, 2), [2, 3, 1, 4, 5]),
        ((5, 3), [3, 4, 5, 1, 2]),
    ];
    for ((u, k), want) in expected {
        let got = rotation(5, u, k).map_err(|e| e.to_string())?;
        ensure(got.as_slice() == want, || format!("[[{u},{k}]] gave {}", join(got.as_slice())))?;
    }
    Ok("psi(0 1 2 2 4 3) = 5 2 1 6 4 3, maj 12; three rotations match".into())
}

fn oracle_equivalence() -> Outcome {
    let table = MahonianTable::new(8).map_err(|e| e.to_string())?;
    let count = all_instances(8, |n, k| {
        let seqs = gray_list(k, n);
        let m = table.get(n, k) as usize;
        ensure(seqs.len() == m, || format!("{} sequences, mahonian {m}", seqs.len()))?;
        let got: BTreeSet<_> = seqs.into_iter().collect();
        let want: BTreeSet<_> = brute_subexcedant(k, n).into_iter().collect();
        ensure(got == want, || "sequence set differs from brute force".into())?;

        let perms = perm_list(k, n);
        ensure(perms.len() == m, || format!("{} permutations, mahonian {m}", perms.len()))?;
        let got: BTreeSet<_> = perms.into_iter().collect();
        let want: BTreeSet<_> = brute_perms_by_maj(k, n)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(Permutation::into_vec)
            .collect();
        ensure(got == want, || "permutation set differs from brute force".into())
    })?;
    Ok(format!("{count} instances (n <= 8) agree with brute force and Mahonian counts"))
}

fn suffix_partitioned(list: &[Vec<usize>], n: usize) -> bool {
    (1..n).all(|len| {
        let mut seen = BTreeSet::new();
        let mut prev: Option<&[usize]> = None;
        for c in list {
            let suffix = &c[n - len..];
            if prev != Some(suffix) && !seen.insert(suffix) {
                return false;
            }
            prev = Some(suffix);
        }
        true
    })
}

fn gray_properties() -> Outcome {
    let count = all_instances(8, |n, k| {
        let seqs = gray_list(k, n);
        if let Some(w) = seqs.windows(2).find(|w| !are_close(&w[0], &w[1])) {
            return Err(format!("not close: {} -> {}", join(&w[0]), join(&w[1])));
        }
        ensure(suffix_partitioned(&seqs, n), || "not suffix-partitioned".into())?;
        let perms = perm_list(k, n);
        for w in perms.windows(2) {
            let d = transposition_distance(&w[0], &w[1]).map_err(|e| e.to_string())?;
            ensure(d <= 3, || format!("distance {d}: {} -> {}", join(&w[0]), join(&w[1])))?;
        }
        Ok(())
    })?;
    Ok(format!("{count} instances: close steps, <= 3 transpositions, suffix-partitioned"))
}

fn delta_fidelity() -> Outcome {
    let count = all_instances(8, |n, k| {
        let seqs = gray_list(k, n);
        let mut rebuilt = Vec::new();
        reconstruct(k, n, |c: &[usize]| rebuilt.push(c.to_vec())).map_err(|e| e.to_string())?;
        ensure(rebuilt == seqs, || "reconstruct differs from gen1_gray".into())?;
        let mut steps = Vec::new();
        gen2_gray(k, n, |e: DeltaEmission<'_>| steps.push((e.p, e.u))).map_err(|e| e.to_string())?;
        ensure(steps[0] == (0, 0), || format!("first emission {:?}", steps[0]))?;
        for i in 1..seqs.len() {
            let (prev, cur) = (&seqs[i - 1], &seqs[i]);
            let p = (1..=n).rev().find(|&j| prev[j - 1] != cur[j - 1]).unwrap_or(0);
            let u: usize = cur[..p].iter().sum();
            ensure(steps[i] == (p, u), || {
                format!("step {i}: emitted {:?}, true ({p}, {u})", steps[i])
            })?;
        }
        Ok(())
    })?;
    Ok(format!("{count} instances: reconstruct == gen1, every (p, u) exact"))
}

fn bijection_suite() -> Outcome {
    for n in 1..=7 {
        let mut images = BTreeSet::new();
        for t in (0..n).map(|i| 0..=i).multi_cartesian_product() {
            let seq = SubexcedantSeq::new(t.clone()).map_err(|e| e.to_string())?;
            let pi = psi(&seq);
            ensure(pi.major_index() == seq.weight(), || format!("maj(psi({})) != weight", join(&t)))?;
            ensure(psi_inv(&pi).as_slice() == t.as_slice(), || {
                format!("psi_inv(psi({})) differs", join(&t))
            })?;
            images.insert(pi.into_vec());
        }
        let factorial: usize = (1..=n).product();
        ensure(images.len() == factorial, || format!("n={n}: psi not injective"))?;
        for p in (1..=n).permutations(n) {
            let pi = Permutation::new(p.clone()).map_err(|e| e.to_string())?;
            ensure(psi(&psi_inv(&pi)) == pi, || format!("psi(psi_inv({})) differs", join(&p)))?;
        }
    }
    for n in 1..=10 {
        for k in 0..=max_weight(n) {
            let a = alpha(n, k).map_err(|e| e.to_string())?;
            let m = psi(&min_colex(k, n).map_err(|e| e.to_string())?);
            ensure(a == m, || format!("alpha({n},{k}) != psi(min_colex)"))?;
            let squared = compose(&a, &a).map_err(|e| e.to_string())?;
            ensure(squared == Permutation::identity(n), || {
                format!("alpha({n},{k}) not an involution")
            })?;
        }
    }
    Ok("psi bijective with inverse for n <= 7, maj preserved; alpha checks for n <= 10".into())
}

/// `[[n, u+1]]·[[n-1, v-1]] = [[n, u]]·[[n-1, v]]·<n, v>`.
fn first_trans_holds(n: usize, u: usize, v: usize) -> Result<(), String> {
    let e = |r: majordex::Result<Permutation>| r.map_err(|e| e.to_string());
    let lhs = e(compose(&e(rotation(n, n, u + 1))?, &e(rotation(n, n - 1, v - 1))?))?;
    let sigma = e(compose(&e(rotation(n, n, u))?, &e(rotation(n, n - 1, v))?))?;
    let rhs = e(compose(&sigma, &e(transposition(n, n, v))?))?;
    ensure(lhs == rhs, || format!("first_trans fails at n={n} u={u} v={v}"))
}

/// `pi^-1·<u,v>·pi = <pi^-1(u), pi^-1(v)>`.
fn before_th_holds(pi: &Permutation, u: usize, v: usize) -> Result<(), String> {
    let n = pi.len();
    let inv = pi.inverse();
    let e = |r: majordex::Result<Permutation>| r.map_err(|e| e.to_string());
    let lhs = e(compose(&e(compose(&inv, &e(transposition(n, u, v))?))?, pi))?;
    let rhs = e(transposition(n, inv.apply(u), inv.apply(v)))?;
    ensure(lhs == rhs, || {
        format!("before_th fails for pi={} u={u} v={v}", join(pi.as_slice()))
    })
}

fn algebraic_identities() -> Outcome {
    let mut checked = 0usize;
    for n in 3..=8 {
        for u in 0..=n - 2 {
            for v in 1..=n - 2 {
                first_trans_holds(n, u, v)?;
                checked += 1;
            }
        }
    }
    let exhaustive: Result<usize, String> = (2..=8usize)
        .into_par_iter()
        .map(|n| {
            let mut count = 0;
            for p in (1..=n).permutations(n) {
                let pi = Permutation::new(p).map_err(|e| e.to_string())?;
                for (u, v) in (1..=n).tuple_combinations() {
                    before_th_holds(&pi, u, v)?;
                    count += 1;
                }
            }
            Ok(count)
        })
        .sum();
    checked += exhaustive?;

    let n = 20;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d616a);
    let mut images: Vec<usize> = (1..=n).collect();
    for _ in 0..10_000 {
        first_trans_holds(n, rng.gen_range(0..=n - 2), rng.gen_range(1..=n - 2))?;
        images.shuffle(&mut rng);
        let pi = Permutation::new(images.clone()).map_err(|e| e.to_string())?;
        let u = rng.gen_range(1..n);
        let v = rng.gen_range(u + 1..=n);
        before_th_holds(&pi, u, v)?;
        checked += 2;
    }
    Ok(format!("{checked} instances (exhaustive n <= 8, 10^4 random at n = 20 for each)"))
}

const CAT_POLICIES: [KPolicy; 3] = [KPolicy::Mid, KPolicy::Linear, KPolicy::NearMax];
const CAT_BUDGET: u64 = 20_000_000;
const RATIO_BOUND: f64 = 10.0;
const MAX_QTERMINAL_RUN: u32 = 3;
const MAX_GROWTH: f64 = 0.25;

fn cat_evidence() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut summary = Vec::new();
    for generator in [GeneratorId::Gray2, GeneratorId::Perm] {
        for policy in CAT_POLICIES {
            let runs: Vec<WorkStats> = (10..=16)
                .map(|n| measure_with_budget(generator, policy.weight_for(n), n, Some(CAT_BUDGET)))
                .collect::<majordex::Result<_>>()
                .map_err(|e| e.to_string())?;
            let worst = runs.iter().map(|s| s.ratio).fold(0.0, f64::max);
            let qrun = runs.iter().map(|s| s.max_qterminal_run).max().unwrap_or(0);
            let growth = runs[6].ratio / runs[0].ratio - 1.0;
            let label = format!("{generator}/{policy:?}");
            summary.push(format!(
                "{label} ratio {:.2}..{:.2} growth {:+.1}% qrun {qrun}",
                runs[0].ratio,
                runs[6].ratio,
                growth * 100.0
            ));
            if worst > RATIO_BOUND {
                let over: Vec<String> = runs
                    .iter()
                    .filter(|s| s.ratio > RATIO_BOUND)
                    .map(|s| format!("n={} {:.2}", s.n, s.ratio))
                    .collect();
                problems.push(format!("{label} ratio > {RATIO_BOUND}: {}", over.join(", ")));
            }
            if qrun > MAX_QTERMINAL_RUN {
                problems.push(format!("{label} q-terminal run {qrun}"));
            }
            if growth >= MAX_GROWTH {
                problems.push(format!("{label} growth {:.1}%", growth * 100.0));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(120) {
        problems.push(format!("took {elapsed:?}"));
    }
    let summary = summary.join("; ");
    if problems.is_empty() {
        Ok(format!("{summary} ({elapsed:.1?})"))
    } else {
        Err(format!("{}. Measured: {summary}", problems.join("; ")))
    }
}

fn reversal() -> Outcome {
    let count = all_instances(7, |n, k| {
        let forward = gray_list(k, n);
        let mut backward = Vec::new();
        gen1_gray_directed(k, n, Direction::Backward, |c: &[usize]| backward.push(c.to_vec()))
            .map_err(|e| e.to_string())?;
        backward.reverse();
        ensure(backward == forward, || "backward list is not the reverse".into())
    })?;
    Ok(format!("{count} instances (n <= 7): dir=1 list is the exact reverse"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("S(4,6) list reproduction", s46_list),
        ("worked examples", worked_examples),
        ("oracle equivalence", oracle_equivalence),
        ("Gray properties", gray_properties),
        ("delta-stream fidelity", delta_fidelity),
        ("bijection suite", bijection_suite),
        ("algebraic identities", algebraic_identities),
        ("CAT evidence", cat_evidence),
        ("reversal property", reversal),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} [{name}]: PASS - {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL - {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
