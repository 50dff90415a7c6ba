//! Lightbulb toggle process: n bulbs start off, and stage r toggles a
//! uniformly random subset of s_r bulbs, independently across stages.
//!
//! The crate computes the exact law of the terminal on-count ([`chain`]),
//! the eigenvalue calculus of the per-stage transition operators
//! ([`spectral`]), bounded size-bias couplings for the on-count and its
//! odd-n symmetrized variant ([`coupling`]), and the normal-approximation
//! error bounds assembled from those ingredients ([`bounds`]).
//!
//! Conventions used throughout the public API:
//! - stage indices are 1-based: the standard pattern's stage r toggles
//!   exactly r bulbs;
//! - bulb indices are 1-based: bulbs are labeled 1..=n;
//! - all sampling operations take a caller-supplied [`rand::Rng`] state, so
//!   a (seed, stream) pair fully determines output.

pub mod bounds;
pub mod chain;
pub mod coupling;
pub mod numeric;
pub mod spectral;

use std::fmt;

/// Errors reported by fallible operations across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("bulb count must be at least 1")]
    InvalidBulbCount,
    #[error("bulb count {n} is below the minimum {min} for this operation")]
    BelowMinimum { n: u32, min: u32 },
    #[error("expected an even bulb count, got {0}")]
    ExpectedEven(u32),
    #[error("expected an odd bulb count, got {0}")]
    ExpectedOdd(u32),
    #[error("stage size {size} exceeds bulb count {n}")]
    StageSizeOutOfRange { size: u32, n: u32 },
    #[error("stage index {index} out of range 1..={k}")]
    StageIndexOutOfRange { index: usize, k: usize },
    #[error("stage indices must be distinct, both are {0}")]
    EqualStageIndices(usize),
    #[error("middle-stage offset must be 0 or 1, got {0}")]
    InvalidOffset(u32),
    #[error("row {row} has {len} entries, expected {n}")]
    RowWidthMismatch { row: usize, len: usize, n: u32 },
    #[error("matrix entry at row {row}, column {col} is not a bit")]
    NonBinaryEntry { row: usize, col: usize },
    #[error("matrix rows do not realize the standard pattern (1,...,n)")]
    NotStandardMatrix,
    #[error("probability masses must have length n+1 = {expected}, got {len}")]
    WrongMassLength { len: usize, expected: usize },
    #[error("probability mass at index {index} is negative ({value})")]
    NegativeMass { index: usize, value: f64 },
    #[error("probability masses sum to {sum}, not 1 within tolerance")]
    MassNotNormalized { sum: f64 },
    #[error("pmf has zero mean, size-biasing is undefined")]
    ZeroMeanPmf,
    #[error("standard deviation must be positive and finite, got {0}")]
    NonpositiveSd(f64),
    #[error("subset order {b} exceeds bulb count {n}")]
    OrderOutOfRange { b: u32, n: u32 },
    #[error("subset order must be at least 1")]
    ZeroOrder,
    #[error("subset order {b} exceeds the dense construction limit {limit}")]
    DenseLimit { b: u32, limit: u32 },
    #[error("group sizes {alpha} + {beta} exceed bulb count {n}")]
    GroupTooLarge { alpha: u32, beta: u32, n: u32 },
    #[error("bulb index {index} out of range 1..={n}")]
    BulbIndexOutOfRange { index: usize, n: u32 },
    #[error("bulb indices within a constraint group must be non-decreasing")]
    UnsortedBulbGroup,
    #[error("switch value must be 0 or 1, got {0}")]
    InvalidBit(u8),
    #[error("{field} must be nonnegative and finite, got {value}")]
    InvalidBoundInput { field: &'static str, value: f64 },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Parity of a bulb count; selects which coupling and bound apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Parity of `n`.
    pub fn of(n: u32) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}
