//! Error type shared by all modules.

use thiserror::Error;

use crate::algebra::Mode;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Symbolic-in-alpha and numeric scalars never mix in one expression.
    #[error("scalar mode mismatch: {left:?} vs {right:?}")]
    ModeMismatch { left: Mode, right: Mode },

    #[error("composition mismatch: {left} vs {right}")]
    CompositionMismatch { left: String, right: String },

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },

    #[error("residue exponent mismatch: {left} vs {right}")]
    ResidueExpMismatch { left: u32, right: u32 },

    #[error("slot count mismatch: polynomial has {poly} slots, point has {point}")]
    SlotCountMismatch { poly: usize, point: usize },

    #[error("not homogeneous: monomial {first} has degree {first_degree}, monomial {second} has degree {second_degree}")]
    Inhomogeneous {
        first: String,
        first_degree: i64,
        second: String,
        second_degree: i64,
    },

    /// The degree of the zero element is undefined.
    #[error("degree of the zero element is undefined")]
    ZeroDegree,

    #[error("signature out of range: s = {s} must satisfy 1 <= s <= {n}")]
    SignatureOutOfRange { s: i64, n: u32 },

    /// Truncating the unit function (s = 0) is rejected; etale places
    /// contribute the unit factor upstream instead.
    #[error("compact truncation of the unit function (s = 0) is not defined; etale places contribute the unit factor")]
    DegenerateTruncation,

    #[error("degree {s} is not coprime to the rank {n}")]
    NotCoprime { s: i64, n: u32 },

    #[error("invalid datum: {0}")]
    InvalidDatum(String),

    /// Symbolic evaluation of P needs every ramified place split.
    #[error("symbolic mode needs the split regime: place '{place}' has residue degree {f} but e_E = {e_e}")]
    NotSplit { place: String, f: u32, e_e: u32 },

    #[error("need at least {needed} sample exponents, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("interpolation failed:\n{0}")]
    FitFailure(String),

    /// An integer power of q^alpha was required but an odd power of
    /// q^(1/2) appeared.
    #[error("exponent {halves}/2 is not an integer multiple of the expected unit")]
    OddExponent { halves: i64 },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
