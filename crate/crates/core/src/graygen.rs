//! Gray code for the fixed-weight subexcedant sequences `S(k, n)`.
//!
//! [`gen1_gray`] reorders the co-lex generating tree by a direction flag so
//! that consecutive sequences are close (they differ in at most three
//! adjacent positions, by one of twelve difference triples).
//!
//! [`gen2_gray`] walks the same tree but cuts chains of more than three
//! q-terminal calls, which makes it constant amortized time. It no longer
//! materializes every sequence: each emission carries the rightmost changed
//! position `p`, the prefix sum `u = c_1 + ... + c_p`, and the three buffer
//! cells `c_{p-2}, c_{p-1}, c_p`. Those are enough to rebuild the list, see
//! [`reconstruct`].

use crate::bench::{NoProbe, Probe};
use crate::colexgen::{colex_with, Capacity, PrefixSumTable, Triangular};
use crate::error::Result;
use crate::seqcore::{check_weight, fill_min_colex, max_weight, BoundingSequence};
use crate::Flow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    fn from_parity(bit: usize) -> Self {
        if bit.is_multiple_of(2) {
            Self::Forward
        } else {
            Self::Backward
        }
    }

    fn flip(self) -> Self {
        match self {
            Self::Forward => Self::Backward,
            Self::Backward => Self::Forward,
        }
    }
}

/// One step of the delta stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaEmission<'a> {
    /// Rightmost position (1-based) where the sequence changed; `0` for the
    /// first sequence of the list.
    pub p: usize,
    /// `c_1 + ... + c_p` of the new sequence.
    pub u: usize,
    /// `c_{p-2}, c_{p-1}, c_p`; `None` for the first emission, whose
    /// sequence is the co-lex minimum of `S(k, n)`.
    pub window: Option<&'a [usize; 3]>,
}

struct Gray1Run<'a, T, P, F> {
    cap: &'a T,
    c: Vec<usize>,
    probe: P,
    visit: F,
    count: u64,
    stopped: bool,
}

impl<T, P, F, R> Gray1Run<'_, T, P, F>
where
    T: Capacity,
    P: Probe,
    F: FnMut(&[usize]) -> R,
    R: Flow,
{
    fn run(&mut self, k: usize, mut r: usize, dir: Direction) {
        if k > 0 && self.c[r] == self.cap.bound(r) {
            r -= 1;
        }
        self.probe.enter(k, r, &self.c[1..]);
        if k == 0 {
            self.count += 1;
            self.stopped = (self.visit)(&self.c[1..]).should_stop();
            self.probe.leave();
            return;
        }
        let l = self.cap.lmin(k);
        let e = k - self.cap.prefix(l - 1);
        match dir {
            Direction::Forward => {
                self.child(l, e, k, Direction::Forward);
                let mut d = Direction::from_parity(r - l);
                for i in l + 1..=r {
                    if self.stopped {
                        break;
                    }
                    self.probe.iteration();
                    self.child(i, 1, k, d);
                    d = d.flip();
                }
            }
            Direction::Backward => {
                let mut d = Direction::Forward;
                for i in (l + 1..=r).rev() {
                    self.probe.iteration();
                    self.child(i, 1, k, d);
                    d = d.flip();
                    if self.stopped {
                        break;
                    }
                }
                if !self.stopped {
                    self.child(l, e, k, Direction::Backward);
                }
            }
        }
        self.probe.leave();
    }

    #[inline]
    fn child(&mut self, i: usize, e: usize, k: usize, dir: Direction) {
        self.c[i] += e;
        self.run(k - e, i, dir);
        self.c[i] -= e;
        self.probe.writes(2);
    }
}

fn gray1_with<T: Capacity, P: Probe, F, R>(
    k: usize,
    n: usize,
    cap: &T,
    dir: Direction,
    probe: P,
    visit: F,
) -> u64
where
    F: FnMut(&[usize]) -> R,
    R: Flow,
{
    let mut run = Gray1Run {
        cap,
        c: vec![0; n + 1],
        probe,
        visit,
        count: 0,
        stopped: false,
    };
    run.run(k, n, dir);
    run.count
}

/// Visits the Gray code list of `S(k, n)` in order; returns its length.
pub fn gen1_gray<F, R>(k: usize, n: usize, visit: F) -> Result<u64>
where
    F: FnMut(&[usize]) -> R,
    R: Flow,
{
    gen1_gray_with_probe(k, n, Direction::Forward, NoProbe, visit)
}

/// The top-level call with an explicit direction. `Backward` visits the
/// reverse of the `Forward` list.
pub fn gen1_gray_directed<F, R>(k: usize, n: usize, dir: Direction, visit: F) -> Result<u64>
where
    F: FnMut(&[usize]) -> R,
    R: Flow,
{
    gen1_gray_with_probe(k, n, dir, NoProbe, visit)
}

pub fn gen1_gray_with_probe<P: Probe, F, R>(
    k: usize,
    n: usize,
    dir: Direction,
    probe: P,
    visit: F,
) -> Result<u64>
where
    F: FnMut(&[usize]) -> R,
    R: Flow,
{
    check_weight(k, n)?;
    Ok(gray1_with(k, n, &Triangular::new(n), dir, probe, visit))
}

/// The Gray code ordering applied to arbitrary bounded compositions.
///
/// Experimental: for bounds other than `0 1 ... (n-1)` consecutive outputs
/// are not guaranteed to be close.
pub fn gen1_gray_bounded<F, R>(k: usize, b: &BoundingSequence, visit: F) -> u64
where
    F: FnMut(&[usize]) -> R,
    R: Flow,
{
    let table = PrefixSumTable::new(b);
    if k > table.total() {
        return 0;
    }
    gray1_with(k, b.len(), &table, Direction::Forward, NoProbe, visit)
}

/// Co-lex order over `S(k, n)`, the order [`gen1_gray`] rearranges.
pub fn colex_subexcedant<F, R>(k: usize, n: usize, visit: F) -> Result<u64>
where
    F: FnMut(&[usize]) -> R,
    R: Flow,
{
    check_weight(k, n)?;
    Ok(colex_with(k, n, &Triangular::new(n), NoProbe, visit))
}

struct Gray2Run<'a, P, F> {
    cap: &'a Triangular,
    c: Vec<usize>,
    probe: P,
    emit: F,
    count: u64,
    stopped: bool,
}

impl<P, F, R> Gray2Run<'_, P, F>
where
    P: Probe,
    F: FnMut(DeltaEmission<'_>, &mut P) -> R,
    R: Flow,
{
    fn run(&mut self, k: usize, mut r: usize, dir: Direction, p: usize, u: usize) {
        // `r` is the rightmost position still open; the q-terminal test
        // below refers to it, as in the chain 0000401, 0003401, ...
        if k > 0 && self.c[r] == r - 1 {
            r -= 1;
        }
        self.probe.enter(k, r, &self.c[1..]);
        // `k == 0`, or a q-terminal call whose forced prefix lies at least
        // three positions left of `p`, so the window is already final. The
        // first emission has no window, so its path is cut short as well.
        if k == 0 || (k == max_weight(r) && (p == 0 || p >= r + 3)) {
            self.count += 1;
            let window = if p == 0 {
                None
            } else {
                debug_assert!(p >= 3, "p = {p}");
                Some(<&[usize; 3]>::try_from(&self.c[p - 2..=p]).expect("window of three"))
            };
            self.stopped = (self.emit)(DeltaEmission { p, u, window }, &mut self.probe).should_stop();
            self.probe.leave();
            return;
        }
        let l = self.cap.lmin(k);
        let e = k - max_weight(l - 1);
        match dir {
            Direction::Forward => {
                self.child(l, e, k, Direction::Forward, p, u);
                let mut d = Direction::from_parity(r - l);
                for i in l + 1..=r {
                    if self.stopped {
                        break;
                    }
                    self.probe.iteration();
                    // i is the rightmost change; all of k - 1 lands at or
                    // left of i
                    let v = k + self.c[i];
                    self.child(i, 1, k, d, i, v);
                    d = d.flip();
                }
            }
            Direction::Backward => {
                let mut d = Direction::Forward;
                for i in (l + 1..=r).rev() {
                    self.probe.iteration();
                    let (q, v) = if i == r {
                        (p, u)
                    } else {
                        (i + 1, self.c[i + 1] + k)
                    };
                    self.child(i, 1, k, d, q, v);
                    d = d.flip();
                    if self.stopped {
                        break;
                    }
                }
                if !self.stopped {
                    let (q, v) = if l == r {
                        (p, u)
                    } else {
                        (l + 1, self.c[l + 1] + k)
                    };
                    self.child(l, e, k, Direction::Backward, q, v);
                }
            }
        }
        self.probe.leave();
    }

    #[inline]
    fn child(&mut self, i: usize, e: usize, k: usize, dir: Direction, p: usize, u: usize) {
        self.c[i] += e;
        self.run(k - e, i, dir, p, u);
        self.c[i] -= e;
        self.probe.writes(2);
    }
}

/// Emits the delta stream of the Gray code list of `S(k, n)`; returns the
/// number of emissions, which is `|S(k, n)|`.
pub fn gen2_gray<F, R>(k: usize, n: usize, emit: F) -> Result<u64>
where
    F: FnMut(DeltaEmission<'_>) -> R,
    R: Flow,
{
    gen2_gray_with_probe(k, n, NoProbe, emit)
}

pub fn gen2_gray_with_probe<P: Probe, F, R>(k: usize, n: usize, probe: P, mut emit: F) -> Result<u64>
where
    F: FnMut(DeltaEmission<'_>) -> R,
    R: Flow,
{
    gen2_core(k, n, probe, move |e: DeltaEmission<'_>, _: &mut P| emit(e))
}

/// The emitter also receives the probe, so consumers can account for their
/// own work.
pub(crate) fn gen2_core<P: Probe, F, R>(k: usize, n: usize, probe: P, emit: F) -> Result<u64>
where
    F: FnMut(DeltaEmission<'_>, &mut P) -> R,
    R: Flow,
{
    check_weight(k, n)?;
    let cap = Triangular::new(n);
    let mut run = Gray2Run {
        cap: &cap,
        c: vec![0; n + 1],
        probe,
        emit,
        count: 0,
        stopped: false,
    };
    run.run(k, n, Direction::Forward, 0, 0);
    Ok(run.count)
}

/// Rebuilds the full Gray code list from the delta stream.
pub fn reconstruct<F, R>(k: usize, n: usize, mut visit: F) -> Result<u64>
where
    F: FnMut(&[usize]) -> R,
    R: Flow,
{
    check_weight(k, n)?;
    let mut d = vec![0; n];
    fill_min_colex(&mut d, k);
    gen2_gray(k, n, |e: DeltaEmission<'_>| {
        if let Some(w) = e.window {
            d[e.p - 3..e.p].copy_from_slice(w);
        }
        visit(&d)
    })
}
