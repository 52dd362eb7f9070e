//! Definitional brute-force re-derivations used by the verification
//! suites. Nothing here shares a code path with the production modules:
//! chamber membership is decided by evaluating root/weight pairings built
//! from first principles, and constant terms are re-derived by expanding
//! subsets and regrouping monomials from scratch.

use num_rational::Ratio;
use num_traits::Zero;

use crate::algebra::{LaurentScalar, LeviPoly, Mode};
use crate::chambers::{ChamberKind, Composition};
use crate::coeff::Coeff;

type Rat = Ratio<i64>;

/// Exact pairing data for the standard parabolic of a composition.
///
/// The space a_P carries coordinates s_a = <det_a, .> (pairing against the
/// block determinant characters). In these coordinates:
///
/// * the restriction of the simple root at the block boundary a is the
///   functional s_a/n_a - s_{a+1}/n_{a+1};
/// * the image of its coroot is the vector e_a - e_{a+1};
/// * the fundamental weights are *solved for* as the basis of functionals
///   vanishing on the central line R*(n_a) and dual to the restricted
///   coroots; no closed form is copied in.
#[derive(Debug, Clone)]
pub struct PairingTable {
    parts: Vec<i64>,
    /// Simple-root functionals, one per block boundary.
    roots: Vec<Vec<Rat>>,
    /// Fundamental-weight functionals, dual to the restricted coroots.
    weights: Vec<Vec<Rat>>,
}

impl PairingTable {
    pub fn new(c: &Composition) -> Self {
        let k = c.len();
        let parts: Vec<i64> = c.parts().iter().map(|&p| i64::from(p)).collect();

        let mut roots = Vec::with_capacity(k.saturating_sub(1));
        for a in 0..k.saturating_sub(1) {
            let mut lambda = vec![Rat::zero(); k];
            lambda[a] = Rat::new(1, parts[a]);
            lambda[a + 1] = -Rat::new(1, parts[a + 1]);
            roots.push(lambda);
        }

        // weight_a: lambda_b - lambda_{b+1} = delta_{ab} for b < k-1,
        // and sum_b lambda_b n_b = 0
        let mut weights = Vec::with_capacity(k.saturating_sub(1));
        for a in 0..k.saturating_sub(1) {
            let mut matrix = Vec::with_capacity(k);
            let mut rhs = Vec::with_capacity(k);
            for b in 0..k - 1 {
                let mut row = vec![Rat::zero(); k];
                row[b] = Rat::new(1, 1);
                row[b + 1] = -Rat::new(1, 1);
                matrix.push(row);
                rhs.push(if a == b { Rat::new(1, 1) } else { Rat::zero() });
            }
            let central: Vec<Rat> = parts.iter().map(|&p| Rat::new(p, 1)).collect();
            matrix.push(central);
            rhs.push(Rat::zero());
            weights.push(solve_exact(matrix, rhs));
        }

        PairingTable {
            parts,
            roots,
            weights,
        }
    }

    fn pair(functional: &[Rat], s: &[Rat]) -> Rat {
        functional
            .iter()
            .zip(s)
            .map(|(f, x)| *f * *x)
            .fold(Rat::zero(), |a, b| a + b)
    }

    pub fn root_pairing(&self, a: usize, s: &[Rat]) -> Rat {
        Self::pair(&self.roots[a], s)
    }

    pub fn weight_pairing(&self, a: usize, s: &[Rat]) -> Rat {
        Self::pair(&self.weights[a], s)
    }

    /// Duality check: each weight pairs to delta against the restricted
    /// coroots e_b - e_{b+1}.
    pub fn duality_holds(&self) -> bool {
        let k = self.parts.len();
        for (a, w) in self.weights.iter().enumerate() {
            for b in 0..k - 1 {
                let mut coroot = vec![Rat::zero(); k];
                coroot[b] = Rat::new(1, 1);
                coroot[b + 1] = -Rat::new(1, 1);
                let want = if a == b { Rat::new(1, 1) } else { Rat::zero() };
                if Self::pair(w, &coroot) != want {
                    return false;
                }
            }
            // and every weight kills the central line
            let central: Vec<Rat> = self.parts.iter().map(|&p| Rat::new(p, 1)).collect();
            if !Self::pair(w, &central).is_zero() {
                return false;
            }
        }
        true
    }
}

/// Dense Gaussian elimination over exact rationals; the systems here are
/// tiny (k <= 8) and always nonsingular.
fn solve_exact(mut m: Vec<Vec<Rat>>, mut rhs: Vec<Rat>) -> Vec<Rat> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("duality system is nonsingular");
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col][col..].iter_mut() {
            *v *= inv;
        }
        rhs[col] *= inv;
        let pivot_row = m[col].clone();
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for (v, pv) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                    *v -= f * *pv;
                }
                let delta = f * rhs[col];
                rhs[r] -= delta;
            }
        }
    }
    rhs
}

/// Chamber membership decided by direct pairing evaluation. A monomial
/// with block degrees (d_a) maps to the point with det-coordinates
/// s_a = d_a; the acute chamber asks all root pairings positive, the
/// obtuse chamber all weight pairings positive, and the equal-ratio locus
/// is the preimage of zero in a_P^G (the central line).
pub fn oracle_chamber(degrees: &[i64], c: &Composition, kind: ChamberKind) -> bool {
    assert_eq!(degrees.len(), c.len());
    let table = PairingTable::new(c);
    let s: Vec<Rat> = degrees.iter().map(|&d| Rat::new(d, 1)).collect();
    let k = c.len();
    match kind {
        ChamberKind::Acute => (0..k - 1).all(|a| table.root_pairing(a, &s) > Rat::zero()),
        ChamberKind::Obtuse => (0..k - 1).all(|a| table.weight_pairing(a, &s) > Rat::zero()),
        ChamberKind::EqualRatio => {
            // s lies on the central line iff s - (D/n)(n_a) vanishes
            let n: i64 = table.parts.iter().sum();
            let total: i64 = degrees.iter().sum();
            let t = Rat::new(total, n);
            degrees
                .iter()
                .zip(&table.parts)
                .all(|(&d, &p)| Rat::new(d, 1) == t * Rat::new(p, 1))
        }
    }
}

/// Constant term of f_{n,alpha,s} re-derived from scratch: expand the sum
/// over s-element subsets, regroup the monomials by the blocks of `c`, and
/// keep the per-block sorted representatives. Shares only the data types
/// with the production route.
pub fn oracle_constant_term<C: Coeff>(n: u32, s: u32, c: &Composition) -> LeviPoly<C> {
    assert!(s <= n, "oracle expects 0 <= s <= n");
    assert_eq!(c.n(), n);
    let coeff_halves = i64::from(s) * i64::from(n - s);
    let offsets = c.offsets();
    let mut terms = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != s {
            continue;
        }
        let exps: Vec<i64> = (0..n).map(|i| i64::from((mask >> i) & 1)).collect();
        let mut blocks = Vec::with_capacity(c.len());
        let mut representative = true;
        for (a, &p) in c.parts().iter().enumerate() {
            let slice = &exps[offsets[a]..offsets[a] + p as usize];
            if slice.windows(2).any(|w| w[0] < w[1]) {
                representative = false;
                break;
            }
            blocks.push(slice.to_vec());
        }
        if representative {
            terms.push((
                blocks,
                LaurentScalar::term(Mode::Symbolic, coeff_halves, C::one()),
            ));
        }
    }
    LeviPoly::from_terms(c.clone(), Mode::Symbolic, terms)
        .expect("oracle terms are well formed")
}
