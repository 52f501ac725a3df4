//! Error type shared by all modules of this crate.

use crate::rational::Rational;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in exact computations and parsing.
///
/// Monte Carlo routines are infallible once their inputs validate, so this
/// enum is dominated by arithmetic domain errors (poles, vanishing
/// denominators) and input-validation failures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The Cauchy transform was evaluated at a concave corner, where it has
    /// a simple pole.
    #[error("Cauchy transform has a pole at {point}")]
    Pole { point: Rational },

    /// Corner sequences must strictly interlace (concave, convex, concave,
    /// …, starting and ending with a concave corner).
    #[error("corner sequences do not strictly interlace: {reason}")]
    InterlacingViolation { reason: String },

    /// Row insertion accepts values from the closed unit interval only.
    #[error("insertion value {value} lies outside [0, 1]")]
    OutOfUnitInterval { value: Rational },

    /// Diagram growth was requested at a coordinate that is not an addable
    /// corner.
    #[error("u-coordinate {u} is not an addable corner of the diagram")]
    NotACorner { u: i64 },

    /// A formula input had to be a concave corner of the diagram but is not.
    #[error("{u} is not a concave corner of the diagram")]
    NotAConcaveCorner { u: Rational },

    /// A multi-box growth block starting at `start` with `length` boxes
    /// runs into an existing concave corner at `collision`, so the product
    /// formula for its probability does not apply.
    #[error(
        "growth block of length {length} at {start} collides with the concave corner {collision}"
    )]
    CornerCollision {
        start: i64,
        length: u32,
        collision: i64,
    },

    /// A rational weight attached to the edge `(from, to)` of a graph has a
    /// vanishing denominator at the given decoration.
    #[error("edge ({from}, {to}) produces a zero denominator")]
    ZeroDenominator { from: usize, to: usize },

    /// A pairwise factor of the interaction product vanishes for the pair
    /// of indices `(i, j)`.
    #[error("interaction factor for the pair ({i}, {j}) has a zero denominator")]
    ZeroPairDenominator { i: usize, j: usize },

    /// A contiguous subsequence of the multiplicity vector sums to zero, so
    /// the multi-spine expansion is not defined.
    #[error("multiplicities at positions {positions:?} sum to zero")]
    ZeroSubsetSum { positions: Vec<usize> },

    /// Two concave corners differ by an integer; interlacing-sequence moment
    /// sums require a profile without such coincidences.
    #[error("concave corners {a} and {b} differ by an integer")]
    NonGenericProfile { a: Rational, b: Rational },

    /// The requested evaluation point must not be an integer.
    #[error("evaluation point {u0} must not be an integer")]
    IntegerPoint { u0: Rational },

    /// A partition string or row list failed validation.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// A rational literal failed to parse.
    #[error("invalid rational literal: {0}")]
    InvalidRational(String),

    /// A tableau (or its JSON form) failed validation.
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    /// A graph (or its JSON form) failed validation.
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// Miscellaneous precondition failure on a function argument.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
