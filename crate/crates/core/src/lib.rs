//! Exact compact-trace calculus on the spherical Hecke algebra of GL_n
//! over a p-adic field, and the global invariants of the basic stratum of
//! simple PEL Shimura varieties assembled from it.
//!
//! Spherical functions are carried by their Satake transforms: symmetric
//! Laurent polynomials over Z[q^(±1/2)], symbolic in the Frobenius degree
//! alpha. The crate computes constant terms along standard parabolics,
//! Weyl-chamber truncations, compact traces on the trivial and Steinberg
//! representations, the polynomial P(q^alpha) of a local PEL datum, the
//! dimension of the basic stratum (two routes), and the point-count
//! assembly template. Every closed form is cross-checked against an
//! independent brute-force oracle.
//!
//! The core is generic over the exact coefficient ring (see [`coeff`]);
//! the aliases below fix arbitrary-precision integers.

pub mod algebra;
pub mod chambers;
pub mod coeff;
pub mod error;
pub mod hecke;
pub mod oracle;
pub mod pel;
pub mod render;
pub mod traces;
pub mod verify;

pub use chambers::{ChamberKind, Composition, ExtendedComposition};
pub use error::{Error, Result};

/// Default exact coefficient ring.
pub type Int = num_bigint::BigInt;

/// Exact scalar in Z[q^(±1/2)] with [`Int`] coefficients.
pub type LaurentScalar = algebra::LaurentScalar<Int>;

/// Laurent polynomial in q^(alpha/2) (or q^(1/2)); carries trace values
/// and P(q^alpha).
pub type QAlphaPoly = algebra::QAlphaPoly<Int>;

/// Block-symmetric Laurent polynomial with [`Int`] coefficients.
pub type LeviPoly = algebra::LeviPoly<Int>;

/// Spherical Hecke function, represented by its Satake transform.
pub type SphericalFunction = hecke::SphericalFunction<Int>;
