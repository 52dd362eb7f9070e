//! Compositions, standard parabolic data, and the chamber filters.
//!
//! A composition (n_a) of n indexes the standard (upper-triangular)
//! parabolic subgroup of GL_n with diagonal blocks of sizes n_a. On the
//! Satake side a monomial of a block-graded Laurent polynomial is
//! classified by its vector of block degrees (d_a), and membership of the
//! underlying group element in the acute or obtuse Weyl chamber depends
//! only on that vector. The three filters keep exactly the monomials
//! whose block degrees satisfy
//!
//! * acute: d_1/n_1 > d_2/n_2 > ... > d_k/n_k,
//! * obtuse: d_1 + ... + d_a > (D/n)(n_1 + ... + n_a) for all a < k, with
//!   D the total degree of the monomial,
//! * equal ratio: all d_a/n_a equal.
//!
//! All comparisons are exact (cross-multiplied integers). The chambers are
//! open, so every inequality is strict and boundary monomials are dropped.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::LeviPoly;
use crate::coeff::Coeff;
use crate::error::{Error, Result};

/// A composition (n_a) of n with all parts >= 1; stands for the standard
/// parabolic subgroup of GL_n with these block sizes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition {
    parts: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Vec<u32> {
        c.parts
    }
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(format!(
                "zero part in {parts:?}"
            )));
        }
        Ok(Composition { parts })
    }

    /// The one-block composition (n), i.e. P = G.
    pub fn single(n: u32) -> Self {
        Composition { parts: vec![n] }
    }

    /// The composition (1, ..., 1), i.e. the Borel subgroup.
    pub fn borel(n: u32) -> Self {
        assert!(n >= 1);
        Composition {
            parts: vec![1; n as usize],
        }
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Whether `self` refines `coarser`: the parts of `coarser` are
    /// consecutive sums of the parts of `self`.
    pub fn refines(&self, coarser: &Composition) -> bool {
        let mut it = self.parts.iter();
        for &big in &coarser.parts {
            let mut acc = 0u32;
            while acc < big {
                match it.next() {
                    Some(&p) => acc += p,
                    None => return false,
                }
            }
            if acc != big {
                return false;
            }
        }
        it.next().is_none()
    }

    /// Slot offsets of each block in the flattened variable list.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.parts.len());
        let mut acc = 0usize;
        for &p in &self.parts {
            out.push(acc);
            acc += p as usize;
        }
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// An extended composition (s_a) of s: parts >= 0, fixed length.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtendedComposition {
    parts: Vec<u32>,
}

impl ExtendedComposition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("no parts".into()));
        }
        Ok(ExtendedComposition { parts })
    }

    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }
}

impl fmt::Display for ExtendedComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All 2^(n-1) compositions of n, in a fixed deterministic order.
pub fn enumerate_compositions(n: u32) -> Vec<Composition> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    rec_compositions(n, &mut stack, &mut out);
    out
}

fn rec_compositions(rest: u32, stack: &mut Vec<u32>, out: &mut Vec<Composition>) {
    if rest == 0 {
        out.push(Composition {
            parts: stack.clone(),
        });
        return;
    }
    for first in 1..=rest {
        stack.push(first);
        rec_compositions(rest - first, stack, out);
        stack.pop();
    }
}

/// All extended compositions of s of length k, optionally bounded slotwise
/// by `caps`. Uncapped, there are C(s+k-1, k-1) of them. Infeasible caps
/// yield the empty list.
pub fn enumerate_extended(s: u32, k: usize, caps: Option<&[u32]>) -> Vec<ExtendedComposition> {
    assert!(k >= 1);
    if let Some(c) = caps {
        assert_eq!(c.len(), k, "caps length must match slot count");
    }
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(k);
    rec_extended(s, k, caps, &mut stack, &mut out);
    out
}

fn rec_extended(
    rest: u32,
    slots: usize,
    caps: Option<&[u32]>,
    stack: &mut Vec<u32>,
    out: &mut Vec<ExtendedComposition>,
) {
    if slots == 0 {
        if rest == 0 {
            out.push(ExtendedComposition {
                parts: stack.clone(),
            });
        }
        return;
    }
    let cap = caps.map_or(rest, |c| c[stack.len()].min(rest));
    // largest first, so (2,0) comes before (1,1) before (0,2)
    for v in (0..=cap).rev() {
        stack.push(v);
        rec_extended(rest - v, slots - 1, caps, stack, out);
        stack.pop();
    }
}

/// The sign eps_P = (-1)^(dim A_P/A_G) = (-1)^(k-1) of a standard
/// parabolic with k blocks.
pub fn eps_parabolic(c: &Composition) -> i64 {
    if c.len() % 2 == 1 {
        1
    } else {
        -1
    }
}

/// Which chamber a monomial's block-degree vector is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChamberKind {
    Acute,
    Obtuse,
    EqualRatio,
}

/// Membership of a block-degree vector in the (open) chamber, by the
/// explicit exact inequalities. Degrees may be negative; the obtuse test
/// uses the monomial's own total degree.
pub(crate) fn degrees_in_chamber(kind: ChamberKind, degrees: &[i64], parts: &[u32]) -> bool {
    debug_assert_eq!(degrees.len(), parts.len());
    let k = parts.len();
    match kind {
        ChamberKind::Acute => (0..k.saturating_sub(1)).all(|a| {
            // d_a/n_a > d_{a+1}/n_{a+1}, cross-multiplied (parts positive)
            degrees[a] * i64::from(parts[a + 1]) > degrees[a + 1] * i64::from(parts[a])
        }),
        ChamberKind::Obtuse => {
            let n: i64 = parts.iter().map(|&p| i64::from(p)).sum();
            let total: i64 = degrees.iter().sum();
            let mut deg_acc = 0i64;
            let mut part_acc = 0i64;
            for a in 0..k.saturating_sub(1) {
                deg_acc += degrees[a];
                part_acc += i64::from(parts[a]);
                if deg_acc * n <= total * part_acc {
                    return false;
                }
            }
            true
        }
        ChamberKind::EqualRatio => (0..k.saturating_sub(1)).all(|a| {
            degrees[a] * i64::from(parts[a + 1]) == degrees[a + 1] * i64::from(parts[a])
        }),
    }
}

/// Keep exactly the orbit terms whose block-degree vector lies in the
/// chamber. Linear and idempotent; inhomogeneous input is fine since the
/// test is per-monomial.
pub fn chamber_filter<C: Coeff>(p: &LeviPoly<C>, kind: ChamberKind) -> LeviPoly<C> {
    p.filter_terms(|key| degrees_in_chamber(kind, &key.block_degrees(), p.composition().parts()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_counts() {
        for n in 1..=8u32 {
            let all = enumerate_compositions(n);
            assert_eq!(all.len(), 1 << (n - 1));
            let dedup: std::collections::BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(dedup.len(), all.len());
            assert!(all.iter().all(|c| c.n() == n));
        }
    }

    #[test]
    fn compositions_of_three() {
        let all = enumerate_compositions(3);
        let want: Vec<Composition> = [vec![3], vec![1, 2], vec![2, 1], vec![1, 1, 1]]
            .into_iter()
            .map(|p| Composition::new(p).unwrap())
            .collect();
        assert_eq!(all.len(), 4);
        for c in &want {
            assert!(all.contains(c));
        }
    }

    #[test]
    fn extended_counts_and_order() {
        let e = enumerate_extended(2, 2, None);
        let parts: Vec<&[u32]> = e.iter().map(|x| x.parts()).collect();
        assert_eq!(parts, vec![&[2, 0][..], &[1, 1][..], &[0, 2][..]]);

        // C(s+k-1, k-1) without caps
        assert_eq!(enumerate_extended(4, 3, None).len(), 15);

        let capped = enumerate_extended(2, 2, Some(&[1, 1]));
        assert_eq!(capped.len(), 1);
        assert_eq!(capped[0].parts(), &[1, 1]);

        // infeasible caps give the empty list
        assert!(enumerate_extended(5, 2, Some(&[1, 1])).is_empty());
    }

    #[test]
    fn eps_values() {
        assert_eq!(eps_parabolic(&Composition::single(7)), 1);
        assert_eq!(eps_parabolic(&Composition::borel(6)), -1);
        assert_eq!(eps_parabolic(&Composition::borel(7)), 1);
        assert_eq!(eps_parabolic(&Composition::new(vec![2, 3]).unwrap()), -1);
    }

    #[test]
    fn refinement() {
        let c = Composition::new(vec![2, 2]).unwrap();
        assert!(Composition::borel(4).refines(&c));
        assert!(c.refines(&Composition::single(4)));
        assert!(!Composition::new(vec![1, 3]).unwrap().refines(&c));
        assert!(c.refines(&c));
    }

    #[test]
    fn zero_vector_is_on_every_boundary() {
        // the chambers are open, so 0 is never a member for proper parabolics
        for kind in [ChamberKind::Acute, ChamberKind::Obtuse] {
            assert!(!degrees_in_chamber(kind, &[0, 0], &[1, 1]));
        }
        assert!(degrees_in_chamber(ChamberKind::EqualRatio, &[0, 0], &[1, 1]));
        // and everything is a member for P = G
        for kind in [ChamberKind::Acute, ChamberKind::Obtuse, ChamberKind::EqualRatio] {
            assert!(degrees_in_chamber(kind, &[-3], &[4]));
        }
    }

    #[test]
    fn borel_acute_is_strict_decrease() {
        // on the Borel the acute inequalities are exactly strict decrease
        // of the exponent vector, and the obtuse ones are the partial sums
        // staying strictly above the average line
        let parts = vec![1u32; 4];
        let vectors = [
            (vec![3i64, 2, 1, 0], true),
            (vec![3, 3, 1, 0], false),
            (vec![0, 1, 2, 3], false),
        ];
        for (v, want) in vectors {
            let strict = v.windows(2).all(|w| w[0] > w[1]);
            assert_eq!(strict, want);
            assert_eq!(degrees_in_chamber(ChamberKind::Acute, &v, &parts), want);
        }
        let obtuse_cases = [
            (vec![1i64, 1, 0, 0], true), // sums 1,2,2 above 1/2, 1, 3/2
            (vec![1, 0, 1, 0], false),   // sum at a=2 hits the line
            (vec![3, -1, 0, 0], true),   // sums 3,2,2 above 1/2, 1, 3/2
            (vec![2, -1, 1, 0], false),  // sum at a=2 hits the line
        ];
        for (v, want) in obtuse_cases {
            assert_eq!(
                degrees_in_chamber(ChamberKind::Obtuse, &v, &parts),
                want,
                "{v:?}"
            );
        }
    }

    #[test]
    fn filter_on_split_kottwitz_example() {
        use crate::algebra::{LaurentScalar, LeviPoly, Mode, OrbitKey};
        use crate::Int;
        // q^(alpha/2)(X1^alpha (+) X2^alpha) over (1,1): both the obtuse
        // and the acute filter keep only the X1 term
        let c = Composition::borel(2);
        let half = LaurentScalar::<Int>::term(Mode::Symbolic, 1, Int::from(1));
        let p = LeviPoly::from_terms(
            c,
            Mode::Symbolic,
            [
                (vec![vec![1], vec![0]], half.clone()),
                (vec![vec![0], vec![1]], half.clone()),
            ],
        )
        .unwrap();
        for kind in [ChamberKind::Obtuse, ChamberKind::Acute] {
            let kept = chamber_filter(&p, kind);
            assert_eq!(kept.num_terms(), 1);
            assert_eq!(
                kept.coefficient(&OrbitKey::new(vec![vec![1], vec![0]])),
                Some(&half)
            );
        }
        // equal-ratio over (2,2) keeps balanced degrees only
        let c22 = Composition::new(vec![2, 2]).unwrap();
        let one = LaurentScalar::<Int>::one(Mode::Symbolic);
        let q = LeviPoly::from_terms(
            c22,
            Mode::Symbolic,
            [
                (vec![vec![1, 0], vec![1, 0]], one.clone()),
                (vec![vec![1, 1], vec![0, 0]], one.clone()),
            ],
        )
        .unwrap();
        let kept = chamber_filter(&q, ChamberKind::EqualRatio);
        assert_eq!(kept.num_terms(), 1);
        assert!(kept
            .coefficient(&OrbitKey::new(vec![vec![1, 0], vec![1, 0]]))
            .is_some());
    }

    #[test]
    fn invalid_compositions_rejected() {
        assert!(Composition::new(vec![]).is_err());
        assert!(Composition::new(vec![2, 0, 1]).is_err());
    }
}
