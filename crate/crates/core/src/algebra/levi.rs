//! Block-symmetric Laurent polynomials stored by orbit representatives.
//!
//! A `LeviPoly` over a composition (n_a) is invariant under the product of
//! the per-block symmetric groups. Terms are keyed by one weakly
//! decreasing exponent vector per block (the orbit representative); the
//! stored scalar is the coefficient of every monomial in that orbit. The
//! trivial composition (n) recovers fully symmetric polynomials, the
//! Satake image of the spherical Hecke algebra.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::scalar::term_pairs;
use super::{LaurentScalar, Mode};
use crate::chambers::Composition;
use crate::coeff::Coeff;
use crate::error::{Error, Result};

/// One weakly decreasing exponent vector per block.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitKey(Vec<Vec<i64>>);

impl OrbitKey {
    pub fn new(blocks: Vec<Vec<i64>>) -> Self {
        debug_assert!(blocks.iter().all(|b| weakly_decreasing(b)));
        OrbitKey(blocks)
    }

    pub fn blocks(&self) -> &[Vec<i64>] {
        &self.0
    }

    /// Total X-degree per block.
    pub fn block_degrees(&self) -> Vec<i64> {
        self.0.iter().map(|b| b.iter().sum()).collect()
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().flatten().sum()
    }

    /// All monomials of the orbit, as flattened exponent vectors.
    fn expanded(&self) -> Vec<Vec<i64>> {
        let per_block: Vec<Vec<Vec<i64>>> =
            self.0.iter().map(|b| distinct_permutations(b)).collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; per_block.len()];
        loop {
            let mut mono = Vec::new();
            for (b, &i) in per_block.iter().zip(&idx) {
                mono.extend_from_slice(&b[i]);
            }
            out.push(mono);
            // odometer
            let mut pos = per_block.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < per_block[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    fn first_monomial(&self) -> Vec<i64> {
        self.0.iter().flatten().copied().collect()
    }
}

pub(crate) fn weakly_decreasing(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

/// Step to the previous permutation in lexicographic order; mirrors the
/// classical next-permutation algorithm.
fn prev_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] <= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] >= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All distinct rearrangements of a weakly decreasing vector, starting
/// from the vector itself (the lexicographically largest arrangement).
fn distinct_permutations(sorted_desc: &[i64]) -> Vec<Vec<i64>> {
    let mut v = sorted_desc.to_vec();
    let mut out = vec![v.clone()];
    while prev_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

/// Product of two per-block orbit sums, reported as (representative,
/// multiplicity) pairs: the multiplicity of the representative nu is the
/// number of (sigma, tau) rearrangement pairs with sigma + tau = nu. This
/// reads the coefficient off the representative monomial itself, so no
/// division by orbit sizes is ever needed.
fn block_orbit_products(lambda: &[i64], mu: &[i64]) -> Vec<(Vec<i64>, i64)> {
    let perms_l = distinct_permutations(lambda);
    let perms_m = distinct_permutations(mu);
    let mut counts: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for sigma in &perms_l {
        for tau in &perms_m {
            let sum: Vec<i64> = sigma.iter().zip(tau).map(|(a, b)| a + b).collect();
            if weakly_decreasing(&sum) {
                *counts.entry(sum).or_insert(0) += 1;
            }
        }
    }
    counts.into_iter().collect()
}

/// A per-block symmetric Laurent polynomial; see the module docs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviPoly<C> {
    composition: Composition,
    mode: Mode,
    terms: BTreeMap<OrbitKey, LaurentScalar<C>>,
}

impl<C: Coeff> LeviPoly<C> {
    pub fn zero(composition: Composition, mode: Mode) -> Self {
        LeviPoly {
            composition,
            mode,
            terms: BTreeMap::new(),
        }
    }

    /// The unit polynomial: coefficient one on the all-zero exponent.
    pub fn unit(composition: Composition, mode: Mode) -> Self {
        let key = OrbitKey::new(
            composition
                .parts()
                .iter()
                .map(|&p| vec![0i64; p as usize])
                .collect(),
        );
        let mut terms = BTreeMap::new();
        terms.insert(key, LaurentScalar::one(mode));
        LeviPoly {
            composition,
            mode,
            terms,
        }
    }

    /// Build from raw (blocks, scalar) terms, validating block lengths,
    /// weak decrease and scalar modes.
    pub fn from_terms<I>(composition: Composition, mode: Mode, iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<Vec<i64>>, LaurentScalar<C>)>,
    {
        let mut out = Self::zero(composition, mode);
        for (blocks, scalar) in iter {
            if blocks.len() != out.composition.len()
                || blocks
                    .iter()
                    .zip(out.composition.parts())
                    .any(|(b, &p)| b.len() != p as usize)
            {
                return Err(Error::InvalidComposition(format!(
                    "term blocks {blocks:?} do not match composition {}",
                    out.composition
                )));
            }
            if blocks.iter().any(|b| !weakly_decreasing(b)) {
                return Err(Error::InvalidComposition(format!(
                    "block exponents {blocks:?} are not weakly decreasing"
                )));
            }
            if scalar.mode() != mode {
                return Err(Error::ModeMismatch {
                    left: mode,
                    right: scalar.mode(),
                });
            }
            out.add_to_key(OrbitKey::new(blocks), &scalar);
        }
        Ok(out)
    }

    pub fn composition(&self) -> &Composition {
        &self.composition
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n(&self) -> u32 {
        self.composition.n()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OrbitKey, &LaurentScalar<C>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &OrbitKey) -> Option<&LaurentScalar<C>> {
        self.terms.get(key)
    }

    fn add_to_key(&mut self, key: OrbitKey, scalar: &LaurentScalar<C>) {
        if scalar.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, scalar.clone());
            }
            Some(old) => {
                let sum = old.try_add(scalar).expect("modes checked on insertion");
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch {
                left: self.mode,
                right: other.mode,
            });
        }
        if self.composition != other.composition {
            return Err(Error::CompositionMismatch {
                left: self.composition.to_string(),
                right: other.composition.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (key, scalar) in &other.terms {
            out.add_to_key(key.clone(), scalar);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LeviPoly {
            composition: self.composition.clone(),
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .map(|(k, s)| (k.clone(), s.neg()))
                .collect(),
        }
    }

    /// Multiply by a scalar.
    pub fn scale(&self, scalar: &LaurentScalar<C>) -> Result<Self> {
        if scalar.mode() != self.mode {
            return Err(Error::ModeMismatch {
                left: self.mode,
                right: scalar.mode(),
            });
        }
        let mut out = Self::zero(self.composition.clone(), self.mode);
        for (key, s) in &self.terms {
            out.add_to_key(key.clone(), &s.try_mul(scalar)?);
        }
        Ok(out)
    }

    pub fn scale_int(&self, m: i64) -> Self {
        if m == 0 {
            return Self::zero(self.composition.clone(), self.mode);
        }
        LeviPoly {
            composition: self.composition.clone(),
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .map(|(k, s)| (k.clone(), s.scale_int(m)))
                .collect(),
        }
    }

    /// Exact product; expands per block and re-normalizes to orbit
    /// representatives.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.composition.clone(), self.mode);
        for (ka, sa) in &self.terms {
            for (kb, sb) in &other.terms {
                let coeff = sa.try_mul(sb)?;
                // per-block orbit products, combined across blocks
                let per_block: Vec<Vec<(Vec<i64>, i64)>> = ka
                    .blocks()
                    .iter()
                    .zip(kb.blocks())
                    .map(|(a, b)| block_orbit_products(a, b))
                    .collect();
                let mut idx = vec![0usize; per_block.len()];
                'combos: loop {
                    let mut blocks = Vec::with_capacity(per_block.len());
                    let mut mult = 1i64;
                    for (b, &i) in per_block.iter().zip(&idx) {
                        blocks.push(b[i].0.clone());
                        mult *= b[i].1;
                    }
                    out.add_to_key(OrbitKey::new(blocks), &coeff.scale_int(mult));
                    let mut pos = per_block.len();
                    loop {
                        if pos == 0 {
                            break 'combos;
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < per_block[pos].len() {
                            break;
                        }
                        idx[pos] = 0;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Keep the orbit terms whose key satisfies the predicate.
    pub fn filter_terms<F: Fn(&OrbitKey) -> bool>(&self, pred: F) -> Self {
        LeviPoly {
            composition: self.composition.clone(),
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| pred(k))
                .map(|(k, s)| (k.clone(), s.clone()))
                .collect(),
        }
    }

    /// Fully expanded form: flattened exponent vector -> coefficient.
    pub fn expand(&self) -> BTreeMap<Vec<i64>, LaurentScalar<C>> {
        let mut out: BTreeMap<Vec<i64>, LaurentScalar<C>> = BTreeMap::new();
        for (key, scalar) in &self.terms {
            for mono in key.expanded() {
                match out.remove(&mono) {
                    None => {
                        out.insert(mono, scalar.clone());
                    }
                    Some(old) => {
                        let sum = old.try_add(scalar).expect("uniform mode");
                        if !sum.is_zero() {
                            out.insert(mono, sum);
                        }
                    }
                }
            }
        }
        out
    }

    /// Rebuild an orbit-keyed polynomial from an expanded form that is
    /// per-block symmetric for `composition`: only the representative
    /// monomials (per-block weakly decreasing) are read off.
    pub fn from_expanded(
        composition: Composition,
        mode: Mode,
        expanded: &BTreeMap<Vec<i64>, LaurentScalar<C>>,
    ) -> Self {
        let offsets = composition.offsets();
        let parts = composition.parts().to_vec();
        let mut out = Self::zero(composition, mode);
        'mono: for (mono, scalar) in expanded {
            let mut blocks = Vec::with_capacity(parts.len());
            for (a, &p) in parts.iter().enumerate() {
                let slice = &mono[offsets[a]..offsets[a] + p as usize];
                if !weakly_decreasing(slice) {
                    continue 'mono;
                }
                blocks.push(slice.to_vec());
            }
            out.add_to_key(OrbitKey::new(blocks), scalar);
        }
        out
    }

    /// Regroup the same polynomial over a refinement of its composition
    /// (the constant-term regrouping on the Satake side). Transitive under
    /// further refinement.
    pub fn refine(&self, target: &Composition) -> Result<Self> {
        if !target.refines(&self.composition) {
            return Err(Error::CompositionMismatch {
                left: target.to_string(),
                right: self.composition.to_string(),
            });
        }
        Ok(Self::from_expanded(target.clone(), self.mode, &self.expand()))
    }

    /// The common total degree of all monomials, in alpha-units for
    /// symbolic mode. Errors with two witness monomials if inhomogeneous.
    pub fn homogeneous_degree(&self) -> Result<i64> {
        let mut seen: Option<(&OrbitKey, i64)> = None;
        for key in self.terms.keys() {
            let d = key.total_degree();
            match seen {
                None => seen = Some((key, d)),
                Some((first, d0)) => {
                    if d != d0 {
                        return Err(Error::Inhomogeneous {
                            first: monomial_string(&first.first_monomial()),
                            first_degree: d0,
                            second: monomial_string(&key.first_monomial()),
                            second_degree: d,
                        });
                    }
                }
            }
        }
        match seen {
            Some((_, d)) => Ok(d),
            None => Err(Error::ZeroDegree),
        }
    }

    /// Substitute X_(a,i) = q^(h/2) slotwise. Linear, and multiplicative
    /// on products. In symbolic mode the stored exponent e means
    /// X^(e*alpha), so the result stays in powers of q^(alpha/2).
    pub fn eval(&self, point: &HeckePoint) -> Result<LaurentScalar<C>> {
        let halves = point.halves();
        if halves.len() != self.n() as usize {
            return Err(Error::SlotCountMismatch {
                poly: self.n() as usize,
                point: halves.len(),
            });
        }
        let mut acc = LaurentScalar::zero(self.mode);
        for (key, scalar) in &self.terms {
            for mono in key.expanded() {
                let shift: i64 = mono.iter().zip(halves).map(|(e, h)| e * h).sum();
                acc.add_shifted(scalar, shift);
            }
        }
        Ok(acc)
    }

    /// Specialize a symbolic polynomial at a concrete degree alpha:
    /// scalars pick up the factor alpha in their exponents and X^(e*alpha)
    /// becomes the literal X^(e*alpha_value).
    pub fn substitute_alpha(&self, alpha: u64) -> Result<Self> {
        if self.mode != Mode::Symbolic {
            return Err(Error::ModeMismatch {
                left: self.mode,
                right: Mode::Symbolic,
            });
        }
        let a = i64::try_from(alpha).expect("alpha fits in i64");
        let mut out = Self::zero(self.composition.clone(), Mode::Numeric);
        for (key, scalar) in &self.terms {
            let blocks = key
                .blocks()
                .iter()
                .map(|b| b.iter().map(|e| e * a).collect())
                .collect();
            out.add_to_key(OrbitKey::new(blocks), &scalar.substitute_alpha(alpha)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("levi serialization cannot fail")
    }
}

fn monomial_string(exps: &[i64]) -> String {
    let factors: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("X{}", i + 1)
            } else {
                format!("X{}^{}", i + 1, e)
            }
        })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

#[derive(serde::Serialize)]
struct TermRepr<'a> {
    exponents: &'a [Vec<i64>],
    coefficient: Vec<(i64, String)>,
}

impl<C: Coeff> Serialize for LeviPoly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr<'_>> = self
            .terms
            .iter()
            .map(|(k, s)| TermRepr {
                exponents: k.blocks(),
                coefficient: term_pairs(s),
            })
            .collect();
        let mut st = serializer.serialize_struct("LeviPoly", 3)?;
        st.serialize_field("composition", &self.composition)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<C: Coeff> fmt::Display for LeviPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::render::levi_plain(self, "q"))
    }
}

/// An evaluation point: one half-integer q-exponent per slot, standing
/// for the Hecke matrix with entries q^(h/2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckePoint {
    composition: Composition,
    halves: Vec<i64>,
}

impl HeckePoint {
    pub fn new(composition: Composition, halves: Vec<i64>) -> Result<Self> {
        if halves.len() != composition.n() as usize {
            return Err(Error::SlotCountMismatch {
                poly: composition.n() as usize,
                point: halves.len(),
            });
        }
        Ok(HeckePoint {
            composition,
            halves,
        })
    }

    pub fn composition(&self) -> &Composition {
        &self.composition
    }

    /// Entries as counts of q^(1/2) (numeric) or q^(alpha/2) (symbolic use).
    pub fn halves(&self) -> &[i64] {
        &self.halves
    }

    /// Rescale for a residue field of cardinality q = p^f: exponents over
    /// the local field become f times larger over the base.
    pub fn scaled(&self, f: u32) -> Self {
        HeckePoint {
            composition: self.composition.clone(),
            halves: self.halves.iter().map(|h| h * i64::from(f)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = LeviPoly<BigInt>;
    type S = LaurentScalar<BigInt>;

    fn sym_one() -> S {
        S::one(Mode::Symbolic)
    }

    #[test]
    fn distinct_permutations_basic() {
        assert_eq!(
            distinct_permutations(&[1, 0]),
            vec![vec![1, 0], vec![0, 1]]
        );
        assert_eq!(distinct_permutations(&[2, 2]), vec![vec![2, 2]]);
        assert_eq!(distinct_permutations(&[1, 1, 0]).len(), 3);
        assert_eq!(distinct_permutations(&[3, 2, 1]).len(), 6);
    }

    #[test]
    fn binomial_square_rank_two() {
        // (X1 + X2)^2 = X1^2 + 2 X1 X2 + X2^2 over the one-block composition
        let c = Composition::single(2);
        let p = P::from_terms(
            c.clone(),
            Mode::Symbolic,
            [(vec![vec![1, 0]], sym_one())],
        )
        .unwrap();
        let sq = p.try_mul(&p).unwrap();
        assert_eq!(
            sq.coefficient(&OrbitKey::new(vec![vec![2, 0]])),
            Some(&sym_one())
        );
        assert_eq!(
            sq.coefficient(&OrbitKey::new(vec![vec![1, 1]])),
            Some(&sym_one().scale_int(2))
        );
        assert_eq!(sq.num_terms(), 2);
    }

    #[test]
    fn unit_is_neutral() {
        let c = Composition::new(vec![2, 1]).unwrap();
        let f = P::from_terms(
            c.clone(),
            Mode::Symbolic,
            [
                (vec![vec![2, 1], vec![0]], S::term(Mode::Symbolic, 1, 3.into())),
                (vec![vec![1, 1], vec![2]], sym_one()),
            ],
        )
        .unwrap();
        let one = P::unit(c, Mode::Symbolic);
        assert_eq!(f.try_mul(&one).unwrap(), f);
        assert_eq!(one.try_mul(&f).unwrap(), f);
    }

    #[test]
    fn eval_single_substitution() {
        // X1^alpha at the point (q^(-1/2), q^(1/2)) -> q^(-alpha/2)
        let c = Composition::borel(2);
        let p = P::from_terms(
            c.clone(),
            Mode::Symbolic,
            [(vec![vec![1], vec![0]], sym_one())],
        )
        .unwrap();
        let pt = HeckePoint::new(c.clone(), vec![-1, 1]).unwrap();
        let v = p.eval(&pt).unwrap();
        assert_eq!(v, S::term(Mode::Symbolic, -1, 1.into()));

        // q^(alpha/2)(X1^alpha + X2^alpha) at the same point -> 1 + q^alpha
        let half = S::term(Mode::Symbolic, 1, 1.into());
        let sum = P::from_terms(
            c,
            Mode::Symbolic,
            [
                (vec![vec![1], vec![0]], half.clone()),
                (vec![vec![0], vec![1]], half),
            ],
        )
        .unwrap();
        assert_eq!(
            sum.eval(&pt).unwrap(),
            S::from_terms(Mode::Symbolic, [(0, 1.into()), (2, 1.into())])
        );
    }

    #[test]
    fn eval_constant_polynomial() {
        let c = Composition::single(3);
        let k = S::term(Mode::Symbolic, 5, 7.into());
        let p = P::unit(c.clone(), Mode::Symbolic).scale(&k).unwrap();
        let pt = HeckePoint::new(c, vec![2, 0, -2]).unwrap();
        assert_eq!(p.eval(&pt).unwrap(), k);
    }

    #[test]
    fn eval_slot_mismatch() {
        let c = Composition::single(2);
        let p = P::unit(c, Mode::Symbolic);
        let pt = HeckePoint::new(Composition::single(3), vec![0, 0, 0]).unwrap();
        assert!(matches!(
            p.eval(&pt),
            Err(Error::SlotCountMismatch { .. })
        ));
    }

    #[test]
    fn homogeneous_degree_and_witnesses() {
        let c = Composition::single(2);
        let hom = P::from_terms(
            c.clone(),
            Mode::Symbolic,
            [
                (vec![vec![1, 1]], sym_one()),
                (vec![vec![2, 0]], sym_one()),
            ],
        )
        .unwrap();
        assert_eq!(hom.homogeneous_degree().unwrap(), 2);

        let bad = P::from_terms(
            c,
            Mode::Symbolic,
            [
                (vec![vec![1, 0]], sym_one()),
                (vec![vec![1, 1]], sym_one()),
            ],
        )
        .unwrap();
        match bad.homogeneous_degree() {
            Err(Error::Inhomogeneous {
                first_degree,
                second_degree,
                ..
            }) => {
                assert_ne!(first_degree, second_degree);
            }
            other => panic!("expected inhomogeneity witnesses, got {other:?}"),
        }

        let zero = P::zero(Composition::single(2), Mode::Symbolic);
        assert!(matches!(zero.homogeneous_degree(), Err(Error::ZeroDegree)));
    }

    #[test]
    fn expand_normalize_roundtrip() {
        let c = Composition::new(vec![2, 2]).unwrap();
        let p = P::from_terms(
            c.clone(),
            Mode::Symbolic,
            [
                (vec![vec![2, 0], vec![1, 1]], S::term(Mode::Symbolic, 1, 2.into())),
                (vec![vec![1, 1], vec![3, -1]], sym_one()),
            ],
        )
        .unwrap();
        let back = P::from_expanded(c, Mode::Symbolic, &p.expand());
        assert_eq!(back, p);
    }

    #[test]
    fn refinement_regroups() {
        // X1 + X2 over (2) regrouped over (1,1) splits the orbit
        let p = P::from_terms(
            Composition::single(2),
            Mode::Symbolic,
            [(vec![vec![1, 0]], sym_one())],
        )
        .unwrap();
        let fine = p.refine(&Composition::borel(2)).unwrap();
        assert_eq!(fine.num_terms(), 2);
        assert_eq!(
            fine.coefficient(&OrbitKey::new(vec![vec![1], vec![0]])),
            Some(&sym_one())
        );
        assert_eq!(
            fine.coefficient(&OrbitKey::new(vec![vec![0], vec![1]])),
            Some(&sym_one())
        );
        // refinement in two steps agrees with one step
        let c22 = Composition::new(vec![2, 2]).unwrap();
        let q = P::from_terms(
            Composition::single(4),
            Mode::Symbolic,
            [(vec![vec![1, 1, 0, 0]], sym_one())],
        )
        .unwrap();
        let direct = q.refine(&Composition::borel(4)).unwrap();
        let stepped = q.refine(&c22).unwrap().refine(&Composition::borel(4)).unwrap();
        assert_eq!(direct, stepped);
    }

    #[test]
    fn composition_mismatch_rejected() {
        let a = P::unit(Composition::single(2), Mode::Symbolic);
        let b = P::unit(Composition::borel(2), Mode::Symbolic);
        assert!(matches!(
            a.try_mul(&b),
            Err(Error::CompositionMismatch { .. })
        ));
        let c = P::unit(Composition::single(2), Mode::Numeric);
        assert!(matches!(a.try_add(&c), Err(Error::ModeMismatch { .. })));
    }

    #[test]
    fn canonical_json_sorted() {
        let c = Composition::new(vec![1, 1]).unwrap();
        let p = P::from_terms(
            c,
            Mode::Symbolic,
            [
                (vec![vec![0], vec![1]], sym_one()),
                (vec![vec![1], vec![0]], S::term(Mode::Symbolic, 1, 1.into())),
            ],
        )
        .unwrap();
        assert_eq!(
            p.to_json(),
            r#"{"composition":[1,1],"mode":"symbolic","terms":[{"exponents":[[0],[1]],"coefficient":[[0,"1"]]},{"exponents":[[1],[0]],"coefficient":[[1,"1"]]}]}"#
        );
    }
}
