//! The McMahon code: a bijection between subexcedant sequences and
//! permutations that maps weight to major index.
//!
//! A code `t_1 ... t_n` encodes `[[n, t_n]] · [[n-1, t_{n-1}]] · ... · [[1, t_1]]`,
//! where `[[u, k]]` rotates the length-`u` prefix of the identity `k` times to
//! the right and `(σ·τ)_i = σ_{τ_i}`. Multiplying on the right by `[[i, t]]`
//! therefore rotates the first `i` entries of the running product.

use crate::bench::{NoProbe, Probe};
use crate::error::{Error, Result};
use crate::seqcore::{
    check_weight, max_weight, min_colex, triangular_ceil, Permutation, SubexcedantSeq,
};

/// `[[u, k]]` in `S_n`: positions `1..=k` map to `u-k+1..=u`, positions
/// `k+1..=u` map to `1..=u-k`, the rest are fixed.
pub fn rotation(n: usize, u: usize, k: usize) -> Result<Permutation> {
    if u > n || (k >= u && !(k == 0 && u == 0)) {
        return Err(Error::BadRotation { n, u, k });
    }
    let mut images: Vec<usize> = (1..=n).collect();
    images[..u].rotate_right(k);
    Ok(Permutation::from_vec_unchecked(images))
}

/// The transposition `<a, b>` in `S_n`.
pub fn transposition(n: usize, a: usize, b: usize) -> Result<Permutation> {
    for pos in [a, b] {
        if pos == 0 || pos > n {
            return Err(Error::BadPosition { pos, n });
        }
    }
    let mut images: Vec<usize> = (1..=n).collect();
    images.swap(a - 1, b - 1);
    Ok(Permutation::from_vec_unchecked(images))
}

/// `σ·τ` with `(σ·τ)_i = σ_{τ_i}`.
pub fn compose(sigma: &Permutation, tau: &Permutation) -> Result<Permutation> {
    if sigma.len() != tau.len() {
        return Err(Error::LengthMismatch {
            left: sigma.len(),
            right: tau.len(),
        });
    }
    let images = tau.as_slice().iter().map(|&t| sigma.apply(t)).collect();
    Ok(Permutation::from_vec_unchecked(images))
}

fn psi_into(code: &[usize], acc: &mut [usize]) {
    for (i, v) in acc.iter_mut().enumerate() {
        *v = i + 1;
    }
    for i in (1..=code.len()).rev() {
        acc[..i].rotate_right(code[i - 1]);
    }
}

/// The permutation whose McMahon code is `t`.
pub fn psi(t: &SubexcedantSeq) -> Permutation {
    let mut images = vec![0; t.len()];
    psi_into(t.as_slice(), &mut images);
    Permutation::from_vec_unchecked(images)
}

/// [`psi`] on a raw slice, validating it first.
pub fn psi_slice(t: &[usize]) -> Result<Permutation> {
    Ok(psi(&SubexcedantSeq::new(t.to_vec())?))
}

/// The McMahon code of `pi`, peeled from position `n` down to `1`.
pub fn psi_inv(pi: &Permutation) -> SubexcedantSeq {
    let mut rest = pi.as_slice().to_vec();
    let mut code = vec![0; rest.len()];
    for i in (1..=rest.len()).rev() {
        let t = i - rest[i - 1];
        code[i - 1] = t;
        // undo [[i, t]] on the values of the remaining prefix
        for w in &mut rest[..i - 1] {
            *w = if *w <= i - t { *w + t } else { *w - (i - t) };
        }
    }
    SubexcedantSeq::from_vec_unchecked(code)
}

/// `φ_j(i)` for a prefix that is the co-lex minimum ending in `s_j` at
/// position `j`; `φ_0` is the identity.
pub fn phi(j: usize, sj: usize, i: usize) -> usize {
    if i > j {
        return i;
    }
    debug_assert!(sj < j, "s_j = {sj} is not below j = {j}");
    if i + sj < j {
        j - sj - i
    } else {
        2 * j - sj - i
    }
}

/// `ψ(min_colex(k, n))` in closed form. It is an involution.
pub fn alpha(n: usize, k: usize) -> Result<Permutation> {
    check_weight(k, n)?;
    if k == 0 {
        return Ok(Permutation::identity(n));
    }
    let j = triangular_ceil(k);
    let aj = k - max_weight(j - 1);
    let images = (1..=n).map(|i| phi(j, aj, i)).collect();
    Ok(Permutation::from_vec_unchecked(images))
}

/// Direction of a [`McMahonState::transp`] move: `Plus` moves one unit from
/// position `f` to `f + 1`, `Minus` moves it back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn negate(self) -> Self {
        match self {
            Self::Plus => Self::Minus,
            Self::Minus => Self::Plus,
        }
    }
}

/// A McMahon code together with its permutation, kept in sync by
/// single-transposition updates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McMahonState {
    s: Vec<usize>,
    sigma: Vec<usize>,
}

impl McMahonState {
    pub fn from_code(code: &SubexcedantSeq) -> Self {
        Self {
            s: code.as_slice().to_vec(),
            sigma: psi(code).into_vec(),
        }
    }

    /// Starts at the first sequence of the Gray code list of `S(k, n)`.
    pub fn min_colex(k: usize, n: usize) -> Result<Self> {
        Ok(Self::from_code(&min_colex(k, n)?))
    }

    pub fn code(&self) -> &[usize] {
        &self.s
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// 1-based code entry.
    #[inline]
    pub fn s(&self, i: usize) -> usize {
        self.s[i - 1]
    }

    /// Whether `sigma` is still the permutation of `s`.
    pub fn is_consistent(&self) -> bool {
        let mut expected = vec![0; self.s.len()];
        psi_into(&self.s, &mut expected);
        expected == self.sigma
    }

    /// Moves one unit between code positions `f` and `f + 1` and applies the
    /// matching transposition to `sigma`.
    ///
    /// Requires `s_1 ... s_{f-1}` to be the co-lex minimum of weight `x`;
    /// checked in debug builds only.
    pub fn transp(&mut self, v: Sign, f: usize, x: usize) {
        self.transp_with_probe(v, f, x, &mut NoProbe)
    }

    pub(crate) fn transp_with_probe<P: Probe>(&mut self, v: Sign, f: usize, x: usize, probe: &mut P) {
        probe.call();
        #[cfg(debug_assertions)]
        self.check_transp(v, f, x);
        let j = triangular_ceil(x);
        debug_assert_ne!(j, 1);
        let sj = if j == 0 { 0 } else { self.s[j - 1] };
        let sf = self.s[f - 1];
        let moved = match v {
            Sign::Plus => sf,
            Sign::Minus => sf + 1,
        };
        let a = phi(j, sj, f + 1);
        let b = phi(j, sj, moved);
        self.sigma.swap(a - 1, b - 1);
        match v {
            Sign::Plus => {
                self.s[f - 1] -= 1;
                self.s[f] += 1;
            }
            Sign::Minus => {
                self.s[f - 1] += 1;
                self.s[f] -= 1;
            }
        }
        probe.writes(4);
    }

    #[cfg(debug_assertions)]
    fn check_transp(&self, v: Sign, f: usize, x: usize) {
        let n = self.s.len();
        assert!(f >= 2 && f < n, "transp position f = {f} outside 2..{n}");
        let mut prefix = vec![0; f - 1];
        assert!(x <= max_weight(f - 1), "prefix weight {x} too large for f = {f}");
        crate::seqcore::fill_min_colex(&mut prefix, x);
        assert_eq!(
            &self.s[..f - 1],
            &prefix[..],
            "prefix before f = {f} is not the co-lex minimum of weight {x}"
        );
        // Inside one update step the receiving entry may briefly exceed its
        // bound; only the donor has to be positive.
        let (sf, sf1) = (self.s[f - 1], self.s[f]);
        match v {
            Sign::Plus => assert!(sf >= 1, "cannot move right at f = {f}"),
            Sign::Minus => assert!(sf1 >= 1, "cannot move left at f = {f}"),
        }
    }
}
