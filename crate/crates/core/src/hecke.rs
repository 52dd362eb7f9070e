//! Kottwitz functions and their constant terms.
//!
//! The Kottwitz function f_{n,alpha,s} is the spherical function on
//! GL_n(F) whose Satake transform is
//!
//!   q^(alpha s(n-s)/2) * sum over s-element subsets I of {1..n} of
//!   prod_{i in I} X_i^alpha,
//!
//! zero by convention when s < 0 or s > n. Constant terms along standard
//! parabolics are computed entirely on the Satake side (regrouping of
//! variables by blocks), and the closed form expresses them as a sum over
//! extended compositions (s_a) of s with an explicit q-power. The compact
//! truncation of a constant term collapses to at most one surviving
//! extended composition, determined by gcd(n, s).

use num_integer::Integer;

use crate::algebra::{LaurentScalar, LeviPoly, Mode};
use crate::chambers::{enumerate_extended, Composition};
use crate::coeff::Coeff;
use crate::error::{Error, Result};

/// A spherical Hecke function, held as its Satake transform (a fully
/// symmetric `LeviPoly` over the one-block composition). The Satake
/// representation is faithful, so equality of functions is equality here.
///
/// `residue_exp` records the residue cardinality q = p^f of the local
/// field; it defaults to 1 so that local results read literally in powers
/// of q^(1/2). Only global (PEL) computations thread a nontrivial value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalFunction<C> {
    rank: u32,
    residue_exp: u32,
    satake: LeviPoly<C>,
}

impl<C: Coeff> SphericalFunction<C> {
    /// Wrap a symmetric polynomial over the one-block composition.
    pub fn from_satake(satake: LeviPoly<C>) -> Result<Self> {
        if satake.composition().len() != 1 {
            return Err(Error::InvalidComposition(format!(
                "satake transform must live over the one-block composition, got {}",
                satake.composition()
            )));
        }
        Ok(SphericalFunction {
            rank: satake.n(),
            residue_exp: 1,
            satake,
        })
    }

    pub fn with_residue_exp(mut self, f: u32) -> Self {
        assert!(f >= 1);
        self.residue_exp = f;
        self
    }

    /// The unit of the spherical Hecke algebra.
    pub fn unit(n: u32, mode: Mode) -> Self {
        SphericalFunction {
            rank: n,
            residue_exp: 1,
            satake: LeviPoly::unit(Composition::single(n), mode),
        }
    }

    /// The Kottwitz function f_{n,alpha,s}, symbolic in alpha. Any integer
    /// s is accepted; outside 0 <= s <= n the zero function is returned.
    pub fn kottwitz(n: u32, s: i64) -> Self {
        Self::kottwitz_scaled(n, s, 1, Mode::Symbolic, 1)
    }

    /// Generalized builder used by global data: monomials X_I^(x_units)
    /// with coefficient q^(x_units * s(n-s)/2) over a residue field of
    /// cardinality p^(residue_exp). In numeric mode exponents count powers
    /// of p^(1/2), so the coefficient stores residue_exp * x_units * s(n-s)
    /// halves; in symbolic mode it stores x_units * s(n-s) halves of
    /// q^(alpha/2).
    pub fn kottwitz_scaled(n: u32, s: i64, x_units: i64, mode: Mode, residue_exp: u32) -> Self {
        assert!(n >= 1);
        assert!(x_units >= 1);
        let c = Composition::single(n);
        if s < 0 || s > i64::from(n) {
            return SphericalFunction {
                rank: n,
                residue_exp,
                satake: LeviPoly::zero(c, mode),
            };
        }
        let s = s as u32;
        let coeff_halves = match mode {
            Mode::Symbolic => x_units * i64::from(s) * i64::from(n - s),
            Mode::Numeric => {
                i64::from(residue_exp) * x_units * i64::from(s) * i64::from(n - s)
            }
        };
        let mut exps = vec![x_units; s as usize];
        exps.resize(n as usize, 0);
        let satake = LeviPoly::from_terms(
            c,
            mode,
            [(vec![exps], LaurentScalar::term(mode, coeff_halves, C::one()))],
        )
        .expect("kottwitz key is well formed");
        SphericalFunction {
            rank: n,
            residue_exp,
            satake,
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn residue_exp(&self) -> u32 {
        self.residue_exp
    }

    pub fn satake(&self) -> &LeviPoly<C> {
        &self.satake
    }

    pub fn mode(&self) -> Mode {
        self.satake.mode()
    }

    pub fn is_zero(&self) -> bool {
        self.satake.is_zero()
    }

    /// Hecke-algebra convolution, computed as the product of Satake
    /// transforms.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        if self.residue_exp != other.residue_exp {
            return Err(Error::ResidueExpMismatch {
                left: self.residue_exp,
                right: other.residue_exp,
            });
        }
        Ok(SphericalFunction {
            rank: self.rank,
            residue_exp: self.residue_exp,
            satake: self.satake.try_mul(&other.satake)?,
        })
    }

    /// Common degree of all Satake monomials, in alpha-units (symbolic) or
    /// X-exponent units (numeric); the function is then supported on
    /// {g : |det g| = q^(-degree)}.
    pub fn homogeneous_degree(&self) -> Result<i64> {
        self.satake.homogeneous_degree()
    }
}

/// Constant term of f along the standard parabolic of `c`: the same
/// polynomial regrouped as a `LeviPoly` over `c`. Transitive under
/// refinement.
pub fn constant_term<C: Coeff>(
    f: &SphericalFunction<C>,
    c: &Composition,
) -> Result<LeviPoly<C>> {
    if c.n() != f.rank() {
        return Err(Error::RankMismatch {
            left: f.rank(),
            right: c.n(),
        });
    }
    f.satake().refine(c)
}

/// Closed form of the constant term of f_{n,alpha,s} at the parabolic of
/// `c`: the sum over extended compositions (s_a) of s (terms with some
/// s_a > n_a are zero and dropped) of
///
///   q^(alpha C(n_a, s_a)) * (f_{n_1,alpha,s_1} (x) ... (x) f_{n_k,alpha,s_k}),
///
/// with C(n_a, s_a) = s(n-s)/2 - sum_a s_a(n_a - s_a)/2.
pub fn constant_term_closed_form<C: Coeff>(
    n: u32,
    s: u32,
    c: &Composition,
) -> Result<LeviPoly<C>> {
    if c.n() != n {
        return Err(Error::RankMismatch { left: n, right: c.n() });
    }
    if s > n {
        return Err(Error::SignatureOutOfRange {
            s: i64::from(s),
            n,
        });
    }
    let parts = c.parts().to_vec();
    let mut out = LeviPoly::zero(c.clone(), Mode::Symbolic);
    for ext in enumerate_extended(s, parts.len(), Some(&parts)) {
        let sa = ext.parts();
        // C(n_a, s_a) in halves of q^alpha, plus the factors' own
        // coefficients s_a(n_a - s_a)/2; together these recombine to
        // s(n-s)/2 on every surviving term.
        let c_halves = i64::from(s) * i64::from(n - s)
            - sa
                .iter()
                .zip(&parts)
                .map(|(&sv, &nv)| i64::from(sv) * i64::from(nv - sv))
                .sum::<i64>();
        let factor_halves: i64 = sa
            .iter()
            .zip(&parts)
            .map(|(&sv, &nv)| i64::from(sv) * i64::from(nv - sv))
            .sum();
        let blocks: Vec<Vec<i64>> = sa
            .iter()
            .zip(&parts)
            .map(|(&sv, &nv)| {
                let mut b = vec![1i64; sv as usize];
                b.resize(nv as usize, 0);
                b
            })
            .collect();
        let scalar = LaurentScalar::term(Mode::Symbolic, c_halves + factor_halves, C::one());
        let term = LeviPoly::from_terms(c.clone(), Mode::Symbolic, [(blocks, scalar)])?;
        out = out.try_add(&term)?;
    }
    Ok(out)
}

/// The compact truncation of a constant term, kept symbolic: the factors
/// chi_c f_{n_a,alpha,s_a} are not spherical, so only the q-power
/// coefficient and the (n_a, s_a) descriptors are materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedConstantTerm<C> {
    /// q^(alpha C(n_a, s_a)).
    pub coefficient: LaurentScalar<C>,
    /// The truncated Kottwitz descriptors (n_a, s_a), block by block.
    pub factors: Vec<(u32, u32)>,
}

/// Survival rule for chi_c f_{n,alpha,s}^(P): writing d = gcd(n, s), the
/// truncation is nonzero iff every n_a is a multiple of n/d, and then the
/// unique surviving extended composition is s_a = n_a s / n.
///
/// s = 0 is rejected: the truncation of the unit is handled upstream
/// (etale places contribute the unit factor).
pub fn compact_constant_term<C: Coeff>(
    n: u32,
    s: u32,
    c: &Composition,
) -> Result<Option<TruncatedConstantTerm<C>>> {
    if s == 0 {
        return Err(Error::DegenerateTruncation);
    }
    if s > n {
        return Err(Error::SignatureOutOfRange {
            s: i64::from(s),
            n,
        });
    }
    if c.n() != n {
        return Err(Error::RankMismatch { left: n, right: c.n() });
    }
    let d = n.gcd(&s);
    let step = n / d;
    if c.parts().iter().any(|&p| p % step != 0) {
        return Ok(None);
    }
    let factors: Vec<(u32, u32)> = c
        .parts()
        .iter()
        .map(|&p| {
            let sa = (u64::from(p) * u64::from(s) / u64::from(n)) as u32;
            (p, sa)
        })
        .collect();
    let c_halves = i64::from(s) * i64::from(n - s)
        - factors
            .iter()
            .map(|&(nv, sv)| i64::from(sv) * i64::from(nv - sv))
            .sum::<i64>();
    Ok(Some(TruncatedConstantTerm {
        coefficient: LaurentScalar::term(Mode::Symbolic, c_halves, C::one()),
        factors,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::OrbitKey;
    use crate::Int;

    type F = SphericalFunction<Int>;

    fn sym(halves: i64) -> LaurentScalar<Int> {
        LaurentScalar::term(Mode::Symbolic, halves, Int::from(1))
    }

    #[test]
    fn kottwitz_two_one() {
        // S(f_{2,alpha,1}) = q^(alpha/2) (X1^alpha + X2^alpha)
        let f = F::kottwitz(2, 1);
        assert_eq!(f.satake().num_terms(), 1);
        assert_eq!(
            f.satake().coefficient(&OrbitKey::new(vec![vec![1, 0]])),
            Some(&sym(1))
        );
        assert_eq!(f.homogeneous_degree().unwrap(), 1);
    }

    #[test]
    fn kottwitz_conventions() {
        // s = 0 is the unit
        let f = F::kottwitz(5, 0);
        assert_eq!(f.satake(), F::unit(5, Mode::Symbolic).satake());
        // s > n and s < 0 are zero
        assert!(F::kottwitz(3, 4).is_zero());
        assert!(F::kottwitz(3, -1).is_zero());
    }

    #[test]
    fn kottwitz_degree_and_monomial_count() {
        for n in 1..=8u32 {
            for s in 1..=n {
                let f = F::kottwitz(n, i64::from(s));
                assert_eq!(f.homogeneous_degree().unwrap(), i64::from(s));
                // C(n, s) monomials in the expansion
                let expanded = f.satake().expand();
                let mut binom = 1u64;
                for i in 1..=u64::from(s) {
                    binom = binom * (u64::from(n - s) + i) / i;
                }
                assert_eq!(expanded.len() as u64, binom);
            }
        }
    }

    #[test]
    fn kottwitz_product_square() {
        // S(f_{2,a,1})^2 = q^alpha (X1^(2a) + 2 X1^a X2^a + X2^(2a))
        let f = F::kottwitz(2, 1);
        let sq = f.try_mul(&f).unwrap();
        let p = sq.satake();
        assert_eq!(
            p.coefficient(&OrbitKey::new(vec![vec![2, 0]])),
            Some(&sym(2))
        );
        assert_eq!(
            p.coefficient(&OrbitKey::new(vec![vec![1, 1]])),
            Some(&sym(2).scale_int(2))
        );
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn constant_term_at_g_is_identity() {
        let f = F::kottwitz(4, 2);
        let ct = constant_term(&f, &Composition::single(4)).unwrap();
        assert_eq!(&ct, f.satake());
    }

    #[test]
    fn constant_term_two_one_at_borel() {
        // two orbit terms, each with coefficient q^(alpha/2)
        let f = F::kottwitz(2, 1);
        let ct = constant_term(&f, &Composition::borel(2)).unwrap();
        assert_eq!(ct.num_terms(), 2);
        assert_eq!(
            ct.coefficient(&OrbitKey::new(vec![vec![1], vec![0]])),
            Some(&sym(1))
        );
        assert_eq!(
            ct.coefficient(&OrbitKey::new(vec![vec![0], vec![1]])),
            Some(&sym(1))
        );
    }

    #[test]
    fn closed_form_single_block() {
        let f = F::kottwitz(5, 3);
        let cf = constant_term_closed_form::<Int>(5, 3, &Composition::single(5)).unwrap();
        assert_eq!(&cf, f.satake());
    }

    #[test]
    fn closed_form_matches_regrouping() {
        for n in 1..=5u32 {
            for s in 0..=n {
                let f = F::kottwitz(n, i64::from(s));
                for c in crate::chambers::enumerate_compositions(n) {
                    let a = constant_term(&f, &c).unwrap();
                    let b = constant_term_closed_form::<Int>(n, s, &c).unwrap();
                    assert_eq!(a, b, "n={n} s={s} c={c}");
                }
            }
        }
    }

    #[test]
    fn constant_term_transitive() {
        let f = F::kottwitz(4, 2);
        let c22 = Composition::new(vec![2, 2]).unwrap();
        let borel = Composition::borel(4);
        let direct = constant_term(&f, &borel).unwrap();
        let stepped = constant_term(&f, &c22).unwrap().refine(&borel).unwrap();
        assert_eq!(direct, stepped);
    }

    #[test]
    fn compact_constant_term_survival() {
        // (4,2) at (2,2): d = 2, coefficient q^(alpha), factors (2,1)x2
        let t = compact_constant_term::<Int>(4, 2, &Composition::new(vec![2, 2]).unwrap())
            .unwrap()
            .expect("survives");
        assert_eq!(t.coefficient, sym(2));
        assert_eq!(t.factors, vec![(2, 1), (2, 1)]);

        // (4,2) at (1,3): 1 is not a multiple of 2
        assert!(
            compact_constant_term::<Int>(4, 2, &Composition::new(vec![1, 3]).unwrap())
                .unwrap()
                .is_none()
        );

        // P = G always survives with coefficient 1
        let g = compact_constant_term::<Int>(6, 4, &Composition::single(6))
            .unwrap()
            .expect("survives");
        assert!(g.coefficient.is_one());
        assert_eq!(g.factors, vec![(6, 4)]);

        // s = 0 is rejected
        assert!(matches!(
            compact_constant_term::<Int>(3, 0, &Composition::single(3)),
            Err(Error::DegenerateTruncation)
        ));
    }

    #[test]
    fn rank_mismatch_rejected() {
        let f = F::kottwitz(3, 1);
        assert!(matches!(
            constant_term(&f, &Composition::single(4)),
            Err(Error::RankMismatch { .. })
        ));
    }
}
