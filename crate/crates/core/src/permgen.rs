//! Gray code for the permutations of `S_n` with major index `k`.
//!
//! The driver follows the delta stream of [`graygen::gen2_gray`] and keeps a
//! shadow pair `(s, σ)`: the current McMahon code and its permutation. Each
//! emission is turned into one to three [`McMahonState::transp`] calls, each
//! of which swaps two entries of `σ`.
//!
//! [`graygen::gen2_gray`]: crate::graygen::gen2_gray

use std::ops::ControlFlow;

use crate::bench::{NoProbe, Probe};
use crate::error::{Error, Result};
use crate::graygen::{gen2_core, DeltaEmission};
use crate::mcmahon::{McMahonState, Sign};
use crate::Flow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermEmission<'a> {
    pub sigma: &'a [usize],
    /// Number of transpositions applied since the previous emission.
    pub step_transpositions: u8,
}

/// Brings `state` from the previous sequence to the one described by a
/// delta emission: `window` holds the new `c_{p-2}, c_{p-1}, c_p` and
/// `u = c_1 + ... + c_p`. Returns the number of transpositions applied.
///
/// Triples here are aligned at the leftmost changed position `f`, so the
/// rightmost-aligned step `±(0, 1, -1)` shows up as `±(1, -1, 0)`.
pub fn update_perm(state: &mut McMahonState, window: &[usize; 3], p: usize, u: usize) -> Result<u8> {
    update_perm_with_probe(state, window, p, u, &mut NoProbe)
}

pub(crate) fn update_perm_with_probe<P: Probe>(
    state: &mut McMahonState,
    window: &[usize; 3],
    p: usize,
    u: usize,
    probe: &mut P,
) -> Result<u8> {
    probe.call();
    let n = state.len();
    if p < 3 || p > n || u < window[1] + window[2] {
        return Err(Error::Desync {
            f: p,
            triple: [0; 3],
        });
    }
    let c = |i: usize| window[i + 2 - p];
    let mut x = u - c(p) - c(p - 1);
    let f = if state.s(p - 2) == c(p - 2) {
        p - 1
    } else {
        x -= c(p - 2);
        p - 2
    };
    let diff = |i: usize| state.s(i) as i64 - c(i) as i64;
    // p is the rightmost change, so past it nothing differs
    let a3 = if f + 2 > p { 0 } else { diff(f + 2) };
    let triple = [diff(f), diff(f + 1), a3];
    let v = if triple[0] > 0 { Sign::Plus } else { Sign::Minus };

    let mut steps = 0u8;
    let mut t = |st: &mut McMahonState, sign: Sign, at: usize, x: usize| {
        st.transp_with_probe(sign, at, x, probe);
        steps += 1;
    };
    // `x + s_f` is read after the preceding moves, as written
    match triple {
        [1, -1, 0] | [-1, 1, 0] => t(state, v, f, x),
        [2, -2, 0] | [-2, 2, 0] => {
            t(state, v, f, x);
            t(state, v, f, x);
        }
        [1, -2, 1] | [-1, 2, -1] => {
            t(state, v, f, x);
            let y = x + state.s(f);
            t(state, v.negate(), f + 1, y);
        }
        [1, -3, 2] | [-1, 3, -2] => {
            t(state, v, f, x);
            let y = x + state.s(f);
            t(state, v.negate(), f + 1, y);
            let y = x + state.s(f);
            t(state, v.negate(), f + 1, y);
        }
        [1, 1, -2] | [-1, -1, 2] => {
            let y = x + state.s(f);
            t(state, v, f + 1, y);
            t(state, v, f, x);
            let y = x + state.s(f);
            t(state, v, f + 1, y);
        }
        [1, 0, -1] => {
            t(state, Sign::Plus, f, x);
            let y = x + state.s(f);
            t(state, Sign::Plus, f + 1, y);
        }
        [-1, 0, 1] => {
            let y = x + state.s(f);
            t(state, Sign::Minus, f + 1, y);
            t(state, Sign::Minus, f, x);
        }
        _ => return Err(Error::Desync { f, triple }),
    }
    Ok(steps)
}

/// Visits every permutation of `S_n` with major index `k`, consecutive ones
/// differing by at most three transpositions. Returns the number visited.
pub fn gen_perm_major<F, R>(k: usize, n: usize, visit: F) -> Result<u64>
where
    F: FnMut(PermEmission<'_>) -> R,
    R: Flow,
{
    gen_perm_major_with_probe(k, n, NoProbe, visit)
}

pub fn gen_perm_major_with_probe<P: Probe, F, R>(
    k: usize,
    n: usize,
    probe: P,
    mut visit: F,
) -> Result<u64>
where
    F: FnMut(PermEmission<'_>) -> R,
    R: Flow,
{
    let mut state = McMahonState::min_colex(k, n)?;
    let mut failure = None;
    let count = gen2_core(k, n, probe, |e: DeltaEmission<'_>, probe: &mut P| {
        let mut steps = 0;
        if let Some(w) = e.window {
            match update_perm_with_probe(&mut state, w, e.p, e.u, probe) {
                Ok(s) => steps = s,
                Err(err) => {
                    failure = Some(err);
                    return ControlFlow::Break(());
                }
            }
        }
        visit(PermEmission {
            sigma: state.sigma(),
            step_transpositions: steps,
        })
        .into_control()
    })?;
    match failure {
        Some(err) => Err(err),
        None => Ok(count),
    }
}

/// Like [`gen_perm_major`], but also hands out the shadow code `s` with each
/// permutation.
pub fn gen_perm_major_with_codes<F, R>(k: usize, n: usize, mut visit: F) -> Result<u64>
where
    F: FnMut(&[usize], PermEmission<'_>) -> R,
    R: Flow,
{
    let mut state = McMahonState::min_colex(k, n)?;
    let mut failure = None;
    let count = gen2_core(k, n, NoProbe, |e: DeltaEmission<'_>, _: &mut NoProbe| {
        let mut steps = 0;
        if let Some(w) = e.window {
            match update_perm(&mut state, w, e.p, e.u) {
                Ok(s) => steps = s,
                Err(err) => {
                    failure = Some(err);
                    return ControlFlow::Break(());
                }
            }
        }
        visit(
            state.code(),
            PermEmission {
                sigma: state.sigma(),
                step_transpositions: steps,
            },
        )
        .into_control()
    })?;
    match failure {
        Some(err) => Err(err),
        None => Ok(count),
    }
}
