//! Compact traces on the trivial and Steinberg representations.
//!
//! The parabolic-sum route writes the compact trace of a spherical f as
//!
//!   Tr(chi_c f, pi) = sum over standard parabolics P = MN of
//!                     eps_P * Tr(obtuse-truncated f^(P), pi_N(delta_P^(-1/2))),
//!
//! and for one-dimensional unramified Jacquet data the right-hand traces
//! are evaluations of the truncated constant term at an explicit Hecke
//! matrix. Two matrices occur: the Steinberg route evaluates at the Hecke
//! matrix of delta_{P_0}^(1/2), with slot exponents (2i-1-n)/2, and the
//! trivial route at the Hecke matrix of the delta_P^(-1/2)-twisted trivial
//! representation of the Levi, with per-block exponents
//! (n_a+1-2i)/2 + r_a/2 where r_a = sum_{b>a} n_b - sum_{b<a} n_b.
//!
//! Sign conventions are pinned operationally: they are correct because
//! the two closed-form families
//!
//!   Tr(chi_c f_{n,alpha,1}, 1) = 1,
//!   Tr(chi_c f_{n,alpha,2}, 1) = 1 + q^alpha + ... + q^(alpha(floor(n/2)-1))
//!
//! reproduce exactly (see the acceptance suite).

use num_integer::Integer;

use crate::algebra::{HeckePoint, LeviPoly, Mode, QAlphaPoly};
use crate::chambers::{
    chamber_filter, enumerate_compositions, eps_parabolic, ChamberKind, Composition,
};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hecke::{constant_term, SphericalFunction};

/// The two evaluation points of the calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalConvention {
    /// Hecke matrix of delta_{P_0}^(1/2): slot i gets exponent (2i-1-n)/2.
    Steinberg,
    /// Hecke matrix of the trivial representation of the Levi twisted by
    /// delta_P^(-1/2): slot (a,i) gets (n_a+1-2i)/2 + r_a/2.
    TrivialTwist,
}

impl EvalConvention {
    /// The evaluation point over the given composition, in halves.
    pub fn point(self, c: &Composition) -> HeckePoint {
        let n = i64::from(c.n());
        let halves = match self {
            EvalConvention::Steinberg => (1..=n).map(|i| 2 * i - 1 - n).collect(),
            EvalConvention::TrivialTwist => {
                let parts = c.parts();
                let mut out = Vec::with_capacity(c.n() as usize);
                for (a, &na) in parts.iter().enumerate() {
                    let after: i64 = parts[a + 1..].iter().map(|&p| i64::from(p)).sum();
                    let before: i64 = parts[..a].iter().map(|&p| i64::from(p)).sum();
                    let r_a = after - before;
                    for i in 1..=i64::from(na) {
                        out.push(i64::from(na) + 1 - 2 * i + r_a);
                    }
                }
                out
            }
        };
        HeckePoint::new(c.clone(), halves).expect("slot count matches by construction")
    }
}

/// Compact trace of f on the Steinberg representation: the parabolic sum
/// collapses to the Borel term,
///
///   eps_{P_0} * (obtuse-filtered Borel constant term)(steinberg point).
pub fn compact_trace_steinberg<C: Coeff>(f: &SphericalFunction<C>) -> QAlphaPoly<C> {
    let borel = Composition::borel(f.rank());
    let ct = constant_term(f, &borel).expect("borel composition matches rank");
    let filtered = chamber_filter(&ct, ChamberKind::Obtuse);
    let point = EvalConvention::Steinberg.point(&borel).scaled(f.residue_exp());
    let value = filtered.eval(&point).expect("point matches rank");
    value.scale_int(eps_parabolic(&borel))
}

/// Compact trace of f on the trivial representation: the full parabolic
/// sum, one term per composition of the rank. No coprimality assumption.
pub fn compact_trace_trivial<C: Coeff>(f: &SphericalFunction<C>) -> QAlphaPoly<C> {
    let mut acc = QAlphaPoly::zero(f.mode());
    for c in enumerate_compositions(f.rank()) {
        let ct = constant_term(f, &c).expect("composition matches rank");
        let filtered = chamber_filter(&ct, ChamberKind::Obtuse);
        let point = EvalConvention::TrivialTwist.point(&c).scaled(f.residue_exp());
        let value = filtered.eval(&point).expect("point matches composition");
        acc = acc
            .try_add(&value.scale_int(eps_parabolic(&c)))
            .expect("uniform mode");
    }
    acc
}

/// Both routes for a function of degree coprime to the rank, which the
/// truncated-constant-term vanishing collapses to the same value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouteComparison<C> {
    /// The parabolic-sum trace on the trivial representation.
    pub trivial_route: QAlphaPoly<C>,
    /// eps_{P_0} times the Steinberg-route trace.
    pub steinberg_route: QAlphaPoly<C>,
    pub equal: bool,
}

/// Cross-check of the two compact-trace routes. Requires the (homogeneous)
/// degree of f to be coprime to the rank; otherwise only the parabolic-sum
/// route applies and an error is returned.
pub fn cttrivial_check<C: Coeff>(f: &SphericalFunction<C>) -> Result<RouteComparison<C>> {
    let degree = f.homogeneous_degree()?;
    let n = f.rank();
    if degree.unsigned_abs().gcd(&u64::from(n)) != 1 {
        return Err(Error::NotCoprime { s: degree, n });
    }
    let trivial_route = compact_trace_trivial(f);
    let eps0 = eps_parabolic(&Composition::borel(n));
    let steinberg_route = compact_trace_steinberg(f).scale_int(eps0);
    let equal = trivial_route == steinberg_route;
    Ok(RouteComparison {
        trivial_route,
        steinberg_route,
        equal,
    })
}

/// The explicit monomial family
///
///   q^(alpha s(n-s)/2) * sum X_{i_1}^alpha ... X_{i_s}^alpha
///
/// over strictly increasing index tuples with i_1 = 1 and, for j >= 2,
/// i_j < 1 + (n/s)(j-1). Returned over the Borel variable set; it equals
/// the obtuse-filtered Borel constant term of f_{n,alpha,s}.
pub fn intro_monomial_family<C: Coeff>(n: u32, s: u32) -> Result<LeviPoly<C>> {
    if s < 1 || s > n {
        return Err(Error::SignatureOutOfRange {
            s: i64::from(s),
            n,
        });
    }
    let borel = Composition::borel(n);
    let coeff_halves = i64::from(s) * i64::from(n - s);
    let mut tuples: Vec<Vec<u32>> = Vec::new();
    let mut stack = vec![1u32];
    collect_tuples(n, s, &mut stack, &mut tuples);
    let terms = tuples.into_iter().map(|tuple| {
        let blocks: Vec<Vec<i64>> = (1..=n)
            .map(|i| vec![i64::from(tuple.contains(&i))])
            .collect();
        (
            blocks,
            crate::algebra::LaurentScalar::term(Mode::Symbolic, coeff_halves, C::one()),
        )
    });
    LeviPoly::from_terms(borel, Mode::Symbolic, terms)
}

fn collect_tuples(n: u32, s: u32, stack: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let j = stack.len() as u32;
    if j == s {
        out.push(stack.clone());
        return;
    }
    // next index i_{j+1}: strictly above the last, and s(i - 1) < n*j
    let last = *stack.last().expect("stack starts with i_1 = 1");
    for i in (last + 1)..=n {
        if u64::from(s) * u64::from(i - 1) < u64::from(n) * u64::from(j) {
            stack.push(i);
            collect_tuples(n, s, stack, out);
            stack.pop();
        }
    }
}
