use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: usize, right: usize },

    #[error("weight {k} out of range for length {n} (maximum {max})")]
    WeightOutOfRange { k: usize, n: usize, max: usize },

    #[error("not a subexcedant sequence: position {pos} holds {value} (at most {})", pos - 1)]
    NotSubexcedant { pos: usize, value: usize },

    #[error("not a permutation of 1..={n}")]
    NotPermutation { n: usize },

    #[error("bounding sequence is zero at position {pos} after a positive entry")]
    BadBounds { pos: usize },

    #[error("position {pos} holds {value}, above its bound {bound}")]
    ExceedsBound { pos: usize, value: usize, bound: usize },

    #[error("rotation [[{u},{k}]] is not defined in S_{n}")]
    BadRotation { n: usize, u: usize, k: usize },

    #[error("position {pos} outside 1..={n}")]
    BadPosition { pos: usize, n: usize },

    #[error("n = {n} is too large here (maximum {max})")]
    TooLarge { n: usize, max: usize },

    #[error("difference triple {triple:?} at position {f} is not a Gray code step")]
    Desync { f: usize, triple: [i64; 3] },
}

pub type Result<T> = std::result::Result<T, Error>;
