//! Coefficient scalars for the exact Laurent calculus.
//!
//! The whole calculus is Z-linear and never divides, so any signed exact
//! integer type works as the coefficient ring. The crate-root aliases fix
//! [`num_bigint::BigInt`], which is safe at every rank; `i64` or `i128`
//! can be substituted for speed on small parameter grids.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_traits::{One, Zero};

/// Exact coefficient ring.
///
/// `Zero`/`One` bring addition and multiplication; `Neg` gives subtraction;
/// `From<i64>` embeds orbit multiplicities and signs; `Display` renders the
/// canonical decimal form used in serialization.
pub trait Coeff:
    Clone + Eq + Ord + Debug + Display + Zero + One + Neg<Output = Self> + From<i64>
{
}

impl<T> Coeff for T where
    T: Clone + Eq + Ord + Debug + Display + Zero + One + Neg<Output = T> + From<i64>
{
}
