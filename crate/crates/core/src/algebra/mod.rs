//! Exact arithmetic in Z[q^(±1/2)] and for block-symmetric Laurent
//! polynomials in X_1, ..., X_n.
//!
//! Two scalar modes exist and never mix inside one expression:
//!
//! * [`Mode::Symbolic`]: exponents count steps of q^(alpha/2) for a
//!   formal degree alpha; every local identity of the calculus is uniform
//!   in alpha and is computed once in this mode.
//! * [`Mode::Numeric`]: exponents count steps of q^(1/2) for a concrete
//!   residue cardinality q (the letter is p when a global datum indexes
//!   local fields by their degree over Q_p).
//!
//! In symbolic mode the variable exponents of a [`LeviPoly`] are stored in
//! multiples of alpha, so the stored integer `e` means X^(e*alpha); in
//! numeric mode it means X^e. Coefficients are exact integers; division
//! never occurs.

mod levi;
mod scalar;

use serde::{Deserialize, Serialize};

pub use levi::{HeckePoint, LeviPoly, OrbitKey};
pub use scalar::{LaurentScalar, QAlphaPoly};

/// Scalar mode flag; see the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Numeric,
}
