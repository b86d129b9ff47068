//! Gray codes for fixed-weight subexcedant sequences, and through the
//! McMahon code, for permutations with a given major index.
//!
//! The generators are callback driven. Each visitor receives a borrowed view
//! of the generator's working buffer that is only valid for the duration of
//! the call; copy it if it has to outlive the callback. A visitor may return
//! `()` or [`std::ops::ControlFlow`] to stop a run early.
//!
//! ```
//! use majordex::{graygen, permgen};
//!
//! let mut codes = Vec::new();
//! graygen::gen1_gray(4, 6, |c: &[usize]| codes.push(c.to_vec())).unwrap();
//! assert_eq!(codes.len(), 49);
//! assert_eq!(codes[1], [0, 1, 0, 3, 0, 0]);
//!
//! let mut first = None;
//! permgen::gen_perm_major(4, 6, |e: permgen::PermEmission<'_>| {
//!     first.get_or_insert_with(|| e.sigma.to_vec());
//! })
//! .unwrap();
//! assert_eq!(first.unwrap(), [2, 1, 4, 3, 5, 6]);
//! ```

pub mod bench;
pub mod colexgen;
pub mod error;
pub mod graygen;
pub mod mcmahon;
pub mod oracle;
pub mod permgen;
pub mod seqcore;
pub mod verify;

use std::ops::ControlFlow;

pub use error::{Error, Result};
pub use seqcore::{BoundingSequence, Composition, Permutation, SubexcedantSeq};

/// Return type of a visitor callback: `()` to keep going, or a
/// `ControlFlow` to be able to stop.
pub trait Flow {
    fn should_stop(&self) -> bool;

    fn into_control(self) -> ControlFlow<()>
    where
        Self: Sized,
    {
        if self.should_stop() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }
}

impl Flow for () {
    #[inline]
    fn should_stop(&self) -> bool {
        false
    }
}

impl<B> Flow for ControlFlow<B> {
    #[inline]
    fn should_stop(&self) -> bool {
        self.is_break()
    }
}
