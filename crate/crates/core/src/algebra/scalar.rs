//! Laurent scalars: finitely supported Z-combinations of half-integral
//! q-powers, symbolic in alpha or numeric.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::Mode;
use crate::coeff::Coeff;
use crate::error::{Error, Result};

/// A scalar sum(c_k * q^(k*alpha/2)) in symbolic mode, or
/// sum(c_k * q^(k/2)) in numeric mode. No stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentScalar<C> {
    mode: Mode,
    terms: BTreeMap<i64, C>,
}

/// The carrier of P(q^alpha) and of every trace value: same algebra as
/// [`LaurentScalar`], with the polynomial-in-q^alpha predicates attached.
pub type QAlphaPoly<C> = LaurentScalar<C>;

impl<C: Coeff> LaurentScalar<C> {
    pub fn zero(mode: Mode) -> Self {
        LaurentScalar {
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(mode: Mode) -> Self {
        Self::term(mode, 0, C::one())
    }

    /// The single term c * q^(halves/2) (or its alpha-scaled reading).
    pub fn term(mode: Mode, halves: i64, coeff: C) -> Self {
        let mut s = Self::zero(mode);
        s.add_term(halves, coeff);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(mode: Mode, iter: I) -> Self {
        let mut s = Self::zero(mode);
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&0)
                .map(|c| *c == C::one())
                .unwrap_or(false)
    }

    /// Sorted (exponent, coefficient) pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coefficient(&self, halves: i64) -> Option<&C> {
        self.terms.get(&halves)
    }

    /// Add c * q^(halves/2) in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, halves: i64, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&halves) {
            None => {
                self.terms.insert(halves, coeff);
            }
            Some(old) => {
                let sum = old + coeff;
                if !sum.is_zero() {
                    self.terms.insert(halves, sum);
                }
            }
        }
    }

    fn check_mode(&self, other: &Self) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch {
                left: self.mode,
                right: other.mode,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_mode(other)?;
        let mut out = Self::zero(self.mode);
        for (ka, ca) in self.terms() {
            for (kb, cb) in other.terms() {
                out.add_term(ka + kb, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        LaurentScalar {
            mode: self.mode,
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    /// Multiply by the integer m.
    pub fn scale_int(&self, m: i64) -> Self {
        if m == 0 {
            return Self::zero(self.mode);
        }
        let f = C::from(m);
        LaurentScalar {
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.clone() * f.clone()))
                .collect(),
        }
    }

    /// Multiply by q^(halves/2).
    pub fn shifted(&self, halves: i64) -> Self {
        LaurentScalar {
            mode: self.mode,
            terms: self.terms.iter().map(|(k, c)| (k + halves, c.clone())).collect(),
        }
    }

    /// `self += other * q^(halves/2)`, assuming matching modes.
    pub(crate) fn add_shifted(&mut self, other: &Self, halves: i64) {
        debug_assert_eq!(self.mode, other.mode);
        for (k, c) in other.terms() {
            self.add_term(k + halves, c.clone());
        }
    }

    /// Specialize a symbolic scalar at a concrete degree: q^(k*alpha/2)
    /// becomes q^(k*alpha_value/2) in numeric mode.
    pub fn substitute_alpha(&self, alpha: u64) -> Result<Self> {
        if self.mode != Mode::Symbolic {
            return Err(Error::ModeMismatch {
                left: self.mode,
                right: Mode::Symbolic,
            });
        }
        let a = i64::try_from(alpha).expect("alpha fits in i64");
        Ok(LaurentScalar {
            mode: Mode::Numeric,
            terms: self.terms.iter().map(|(k, c)| (k * a, c.clone())).collect(),
        })
    }

    /// True iff every exponent is an even, nonnegative number of halves,
    /// i.e. the value is a genuine polynomial in q^alpha (resp. q).
    pub fn is_polynomial_in_q_alpha(&self) -> bool {
        self.terms.keys().all(|&k| k >= 0 && k % 2 == 0)
    }

    /// Top exponent in halves, if nonzero.
    pub fn top_halves(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Degree in the variable q^alpha (resp. q): top exponent / 2.
    pub fn degree_in_q_alpha(&self) -> Result<i64> {
        let top = self.top_halves().ok_or(Error::ZeroDegree)?;
        if top % 2 != 0 {
            return Err(Error::OddExponent { halves: top });
        }
        Ok(top / 2)
    }

    /// The constant value when the scalar is 0 or c * q^0.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Canonical JSON: sorted exponents, coefficients as decimal strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scalar serialization cannot fail")
    }
}

pub(crate) fn term_pairs<C: Coeff>(s: &LaurentScalar<C>) -> Vec<(i64, String)> {
    s.terms().map(|(k, c)| (k, c.to_string())).collect()
}

impl<C: Coeff> Serialize for LaurentScalar<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LaurentScalar", 2)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("terms", &term_pairs(self))?;
        st.end()
    }
}

impl<C: Coeff> fmt::Display for LaurentScalar<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::render::scalar_plain(self, "q"))
    }
}
