//! The local-at-p PEL datum and the global invariants built from it: the
//! basic slopes, the orbit combinatorics of the Kottwitz function, the
//! polynomial P(q^alpha), the dimension of the basic stratum (two routes),
//! and the point-count assembly template.
//!
//! Conventions: q = p^(e_E) is the residue cardinality of the reflex
//! prime. Numeric values are exact Laurent polynomials in p^(1/2).
//! Symbolic values are polynomials in q^(alpha/2) and are valid for the
//! degrees alpha at which every ramified place splits (f | e_E * alpha).
//! The similitude component of the Kottwitz function is the
//! characteristic function of a single unit translate and contributes the
//! factor 1 to every trace, so it never appears below.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Mode, QAlphaPoly};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hecke::SphericalFunction;
use crate::traces::compact_trace_trivial;

/// One F^+-place above p: its residue degree f (the place has f
/// embeddings into the p-adic closure) and one signature per embedding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Place {
    pub name: String,
    pub f: u32,
    pub signatures: Vec<u32>,
}

impl Place {
    /// s_p = sum of the signatures over the embeddings.
    pub fn s_p(&self) -> u32 {
        self.signatures.iter().sum()
    }

    pub fn is_ramified(&self) -> bool {
        self.s_p() > 0
    }
}

/// The local-at-p shape of the datum. JSON schema:
/// `{"n": int, "e_E": int, "places": [{"name": str, "f": int, "signatures": [int, ...]}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PELDatumP {
    pub n: u32,
    #[serde(rename = "e_E")]
    pub e_e: u32,
    pub places: Vec<Place>,
}

impl PELDatumP {
    /// Validate the datum. Structural defects are errors; a ramified place
    /// with gcd(s_p, n) > 1 only breaks the running simplicity hypothesis,
    /// so it is returned as a warning (P stays computable).
    pub fn validate(&self) -> Result<Vec<String>> {
        if self.n == 0 {
            return Err(Error::InvalidDatum("rank n must be >= 1".into()));
        }
        if self.e_e == 0 {
            return Err(Error::InvalidDatum("e_E must be >= 1".into()));
        }
        if self.places.is_empty() {
            return Err(Error::InvalidDatum("at least one place is required".into()));
        }
        let mut warnings = Vec::new();
        for place in &self.places {
            if place.f == 0 {
                return Err(Error::InvalidDatum(format!(
                    "place '{}': residue degree f must be >= 1",
                    place.name
                )));
            }
            if place.signatures.len() != place.f as usize {
                return Err(Error::InvalidDatum(format!(
                    "place '{}': expected {} signatures, got {}",
                    place.name,
                    place.f,
                    place.signatures.len()
                )));
            }
            if let Some(&bad) = place.signatures.iter().find(|&&s| s > self.n) {
                return Err(Error::InvalidDatum(format!(
                    "place '{}': signature {} exceeds the rank {}",
                    place.name, bad, self.n
                )));
            }
            // signatures must be constant on the Frobenius^(e_E)-orbits of
            // the embeddings (cyclic shift by e_E mod f)
            let f = place.f as usize;
            for i in 0..f {
                let j = (i + self.e_e as usize) % f;
                if place.signatures[i] != place.signatures[j] {
                    return Err(Error::InvalidDatum(format!(
                        "place '{}': signatures are not constant on Frobenius^(e_E)-orbits \
                         (slots {} and {} differ)",
                        place.name, i, j
                    )));
                }
            }
            let s_p = place.s_p();
            if s_p > 0 && s_p.gcd(&self.n) != 1 {
                warnings.push(format!(
                    "place '{}': s_p = {} is not coprime to n = {}; the basic isocrystal \
                     there is not simple and the simplicity hypothesis fails",
                    place.name, s_p, self.n
                ));
            }
        }
        Ok(warnings)
    }

    pub fn ramified(&self) -> impl Iterator<Item = &Place> {
        self.places.iter().filter(|p| p.is_ramified())
    }

    pub fn unramified(&self) -> impl Iterator<Item = &Place> {
        self.places.iter().filter(|p| !p.is_ramified())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let datum: PELDatumP = serde_json::from_str(text)?;
        datum.validate()?;
        Ok(datum)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("datum serialization cannot fail")
    }
}

/// Slope data of the basic isocrystal at one place.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeData {
    pub place: String,
    /// The single slope s_p/n, exact.
    pub slope: Ratio<u64>,
    /// Simple as an isocrystal iff gcd(n, s_p) = 1.
    pub simple: bool,
    /// All slopes zero.
    pub etale: bool,
}

/// The basic isocrystal has the single slope s_p/n at each place; it is
/// simple there iff gcd(n, s_p) = 1 and etale iff s_p = 0.
pub fn basic_slopes(d: &PELDatumP) -> Vec<SlopeData> {
    d.places
        .iter()
        .map(|place| {
            let s_p = place.s_p();
            SlopeData {
                place: place.name.clone(),
                slope: if s_p == 0 {
                    Ratio::new(0, 1)
                } else {
                    Ratio::new(u64::from(s_p), u64::from(d.n))
                },
                simple: d.n.gcd(&s_p) == 1,
                etale: s_p == 0,
            }
        })
        .collect()
}

/// One Galois orbit of embeddings at degree alpha.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Degree over Q_p of the field attached to the orbit:
    /// lcm(e_E * alpha, f).
    pub alpha_v: u64,
    /// The signature, constant on the orbit.
    pub s_v: u32,
    /// Number of embeddings in the orbit: f / gcd(f, e_E * alpha).
    pub size: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaceOrbits {
    pub place: String,
    pub orbit_count: u32,
    pub orbits: Vec<Orbit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitData {
    pub alpha: u64,
    pub places: Vec<PlaceOrbits>,
}

/// Orbits of the embeddings under Frobenius^(e_E * alpha): the cyclic
/// model makes them the congruence classes mod gcd(f, e_E * alpha), each
/// attached to the unramified field of degree lcm(e_E * alpha, f) over
/// Q_p. Block-dimension bookkeeping: sum over orbits of
/// alpha_v / (e_E * alpha) equals f.
pub fn orbit_data(d: &PELDatumP, alpha: u64) -> Result<OrbitData> {
    if alpha == 0 {
        return Err(Error::InvalidDatum("alpha must be >= 1".into()));
    }
    d.validate()?;
    let e_alpha = u64::from(d.e_e) * alpha;
    let places = d
        .places
        .iter()
        .map(|place| {
            let f = u64::from(place.f);
            let g = f.gcd(&e_alpha);
            let alpha_v = f.lcm(&e_alpha);
            let orbits = (0..g)
                .map(|r| Orbit {
                    alpha_v,
                    s_v: place.signatures[r as usize],
                    size: (f / g) as u32,
                })
                .collect();
            PlaceOrbits {
                place: place.name.clone(),
                orbit_count: g as u32,
                orbits,
            }
        })
        .collect();
    Ok(OrbitData { alpha, places })
}

/// Which residue cardinality enters the local Kottwitz factors when a
/// place has residue degree f > 1 (for f = 1 the two readings agree).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResidueConvention {
    /// Index the factor at an orbit v by its degree over the local field:
    /// exponent alpha_v / f on the variables, coefficient
    /// q_p^((alpha_v/f) s(n-s)/2) = p^(alpha_v s(n-s)/2). In the split
    /// regime this reproduces the single-q closed forms with q^alpha =
    /// p^(e_E alpha).
    #[default]
    LocalField,
    /// Read the index alpha_v literally against the local residue field:
    /// exponent alpha_v, coefficient q_p^(alpha_v s(n-s)/2).
    AbsoluteDegree,
}

/// The degree parameter of P.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alpha {
    /// Formal alpha; requires every ramified place split uniformly
    /// (f | e_E).
    Symbolic,
    Numeric(u64),
}

/// The local factor of P at one ramified place: the compact trace on the
/// trivial representation of the product of the orbit Kottwitz functions.
fn local_factor<C: Coeff>(
    d: &PELDatumP,
    place: &Place,
    alpha: Alpha,
    conv: ResidueConvention,
) -> Result<QAlphaPoly<C>> {
    let n = d.n;
    match alpha {
        Alpha::Symbolic => {
            // split regime: one singleton orbit per embedding. In the
            // symbolic unit q^alpha = p^(e_E alpha) the local-field
            // reading makes each factor exactly f_{n,alpha,s_v}; the
            // absolute reading scales the orbit degree by f.
            let x_units = match conv {
                ResidueConvention::LocalField => 1,
                ResidueConvention::AbsoluteDegree => i64::from(place.f),
            };
            let mut product = SphericalFunction::<C>::unit(n, Mode::Symbolic);
            for &s_v in &place.signatures {
                let factor = SphericalFunction::kottwitz_scaled(
                    n,
                    i64::from(s_v),
                    x_units,
                    Mode::Symbolic,
                    1,
                );
                product = product.try_mul(&factor)?;
            }
            Ok(compact_trace_trivial(&product))
        }
        Alpha::Numeric(alpha) => {
            let e_alpha = u64::from(d.e_e) * alpha;
            let f = u64::from(place.f);
            let g = f.gcd(&e_alpha);
            let alpha_v = f.lcm(&e_alpha);
            let x_units = match conv {
                ResidueConvention::LocalField => alpha_v / f,
                ResidueConvention::AbsoluteDegree => alpha_v,
            };
            let mut product = SphericalFunction::<C>::unit(n, Mode::Numeric)
                .with_residue_exp(place.f);
            for r in 0..g {
                let s_v = place.signatures[r as usize];
                let factor = SphericalFunction::kottwitz_scaled(
                    n,
                    i64::from(s_v),
                    i64::try_from(x_units).expect("orbit degree fits i64"),
                    Mode::Numeric,
                    place.f,
                );
                product = product.try_mul(&factor)?;
            }
            Ok(compact_trace_trivial(&product))
        }
    }
}

/// P(q^alpha): the product over ramified places of the compact trace on
/// the trivial representation of the local Kottwitz factor. Unramified
/// places and the similitude component contribute 1. Symbolic mode
/// returns powers of q^(alpha/2) with q = p^(e_E); numeric mode returns
/// powers of p^(1/2).
pub fn polynomial_p<C: Coeff>(
    d: &PELDatumP,
    alpha: Alpha,
    conv: ResidueConvention,
) -> Result<QAlphaPoly<C>> {
    d.validate()?;
    let mode = match alpha {
        Alpha::Symbolic => {
            for place in d.ramified() {
                if !d.e_e.is_multiple_of(place.f) {
                    return Err(Error::NotSplit {
                        place: place.name.clone(),
                        f: place.f,
                        e_e: d.e_e,
                    });
                }
            }
            Mode::Symbolic
        }
        Alpha::Numeric(a) => {
            if a == 0 {
                return Err(Error::InvalidDatum("alpha must be >= 1".into()));
            }
            Mode::Numeric
        }
    };
    let mut acc = QAlphaPoly::<C>::one(mode);
    for place in d.ramified() {
        let factor = local_factor(d, place, alpha, conv)?;
        acc = acc.try_mul(&factor)?;
    }
    Ok(acc)
}

/// The least M such that every place splits at all degrees divisible by M
/// (f | e_E * alpha whenever M | alpha): lcm over places of
/// f / gcd(f, e_E).
pub fn split_modulus(d: &PELDatumP) -> u64 {
    d.places
        .iter()
        .map(|p| {
            let f = u64::from(p.f);
            f / f.gcd(&u64::from(d.e_e))
        })
        .fold(1u64, |acc, m| acc.lcm(&m))
}

/// An exact polynomial in X = q^alpha fitted through numeric P values on
/// one residue class of alpha.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpolation<C> {
    pub modulus: u64,
    pub residue_class: u64,
    pub samples: Vec<u64>,
    /// Coefficient of X^j at index j, trailing zeros trimmed.
    pub coefficients: Vec<C>,
}

impl<C: Coeff> Interpolation<C> {
    pub fn degree(&self) -> i64 {
        self.coefficients.len() as i64 - 1
    }

    /// The fitted polynomial as a symbolic value in q^alpha.
    pub fn as_q_alpha_poly(&self) -> QAlphaPoly<C> {
        QAlphaPoly::from_terms(
            Mode::Symbolic,
            self.coefficients
                .iter()
                .enumerate()
                .map(|(j, c)| (2 * j as i64, c.clone())),
        )
    }
}

impl<C: Coeff> fmt::Display for Interpolation<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "q^α")?,
                1 => write!(f, "{c} q^α")?,
                _ if c.is_one() => write!(f, "q^({j}α)")?,
                _ => write!(f, "{c} q^({j}α)")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Read the candidate polynomial off one numeric P value: the value is an
/// exact Laurent polynomial in p^(1/2), and a fit in X = q^alpha =
/// p^(e_E alpha) exists iff every exponent is a nonnegative multiple of
/// e_E * alpha. Returns coefficient-by-degree.
fn read_off_candidate<C: Coeff>(
    value: &QAlphaPoly<C>,
    e_e: u32,
    alpha: u64,
) -> std::result::Result<Vec<C>, String> {
    let unit = 2 * i64::from(e_e) * i64::try_from(alpha).expect("alpha fits i64");
    let mut by_degree: std::collections::BTreeMap<usize, C> = Default::default();
    for (halves, c) in value.terms() {
        if halves < 0 || !halves.is_multiple_of(&unit) {
            return Err(format!(
                "term p^({halves}/2) is not a nonnegative power of q^alpha at alpha = {alpha}"
            ));
        }
        by_degree.insert((halves / unit) as usize, c.clone());
    }
    let top = by_degree.keys().next_back().copied().unwrap_or(0);
    let mut out = vec![C::zero(); top + 1];
    for (j, c) in by_degree {
        out[j] = c;
    }
    while out.len() > 1 && out.last().map(|c| c.is_zero()).unwrap_or(false) {
        out.pop();
    }
    Ok(out)
}

/// Fit one exact polynomial in q^alpha through the numeric P values at
/// the sampled degrees, which must all lie in the residue class
/// `class mod split_modulus`. Every sample must read off the *same*
/// polynomial, with the last sample acting as the held-out checksum; any
/// disagreement is reported, never silently accepted.
pub fn interpolate_p<C: Coeff>(
    d: &PELDatumP,
    residue_class: u64,
    samples: &[u64],
    conv: ResidueConvention,
) -> Result<Interpolation<C>> {
    d.validate()?;
    if samples.len() < 2 {
        return Err(Error::InsufficientSamples {
            needed: 2,
            got: samples.len(),
        });
    }
    let modulus = split_modulus(d);
    let mut seen = std::collections::BTreeSet::new();
    for &a in samples {
        if a == 0 {
            return Err(Error::InvalidDatum("sample alpha must be >= 1".into()));
        }
        if a % modulus != residue_class % modulus {
            return Err(Error::InvalidDatum(format!(
                "sample alpha = {a} is not congruent to {residue_class} mod {modulus}"
            )));
        }
        if !seen.insert(a) {
            return Err(Error::InvalidDatum(format!("duplicate sample alpha = {a}")));
        }
    }

    let mut candidates: Vec<(u64, Vec<C>)> = Vec::with_capacity(samples.len());
    for &a in samples {
        let value = polynomial_p::<C>(d, Alpha::Numeric(a), conv)?;
        match read_off_candidate(&value, d.e_e, a) {
            Ok(cand) => candidates.push((a, cand)),
            Err(msg) => {
                return Err(Error::FitFailure(format!(
                    "value at alpha = {a} is not a polynomial in q^alpha: {msg}"
                )))
            }
        }
    }

    let (first_alpha, reference) = candidates[0].clone();
    for (a, cand) in &candidates[1..candidates.len() - 1] {
        if *cand != reference {
            return Err(Error::FitFailure(fit_report(
                d, first_alpha, &reference, *a, cand,
            )));
        }
    }
    let (checksum_alpha, checksum) = &candidates[candidates.len() - 1];
    if *checksum != reference {
        return Err(Error::FitFailure(format!(
            "held-out checksum failed:\n{}",
            fit_report(d, first_alpha, &reference, *checksum_alpha, checksum)
        )));
    }

    Ok(Interpolation {
        modulus,
        residue_class: residue_class % modulus,
        samples: samples.to_vec(),
        coefficients: reference,
    })
}

fn fit_report<C: Coeff>(
    d: &PELDatumP,
    alpha_a: u64,
    cand_a: &[C],
    alpha_b: u64,
    cand_b: &[C],
) -> String {
    let mut lines = vec![format!(
        "polynomials read off at alpha = {alpha_a} and alpha = {alpha_b} differ \
         (n = {}, e_E = {}); residuals by degree:",
        d.n, d.e_e
    )];
    let len = cand_a.len().max(cand_b.len());
    for j in 0..len {
        let a = cand_a.get(j).cloned().unwrap_or_else(C::zero);
        let b = cand_b.get(j).cloned().unwrap_or_else(C::zero);
        if a != b {
            lines.push(format!("  X^{j}: {a} vs {b}"));
        }
    }
    lines.join("\n")
}

/// The closed dimension formula, evaluated verbatim:
///
///   sum over ramified places of
///     [ sum_v s_v(1 - s_v)/2 + sum_{j=0}^{s_p - 1} ceil(j n / s_p) ].
///
/// Each s_v(1 - s_v) is even, so the value is an exact integer. The
/// degree-of-P route is the authoritative dimension; this formula is kept
/// for the audit (they disagree for s_p >= 2).
pub fn dimension_paper(d: &PELDatumP) -> Result<i64> {
    d.validate()?;
    let n = i64::from(d.n);
    let mut total = 0i64;
    for place in d.ramified() {
        let mut twice = 0i64;
        for &s_v in &place.signatures {
            let s = i64::from(s_v);
            twice += s * (1 - s);
        }
        if !twice.is_multiple_of(&2) {
            return Err(Error::InvalidDatum(
                "signature sum s_v(1 - s_v) is odd; dimension formula is not integral".into(),
            ));
        }
        let s_p = i64::from(place.s_p());
        let ceil_sum: i64 = (0..s_p).map(|j| (j * n + s_p - 1).div_euclid(s_p)).sum();
        total += twice / 2 + ceil_sum;
    }
    Ok(total)
}

/// Dimension of the basic stratum as the q^alpha-degree of P. Uses the
/// symbolic polynomial when the datum splits uniformly, otherwise fits
/// the residue class 0 mod split_modulus numerically and takes the degree
/// of the fitted polynomial.
pub fn dimension_degree<C: Coeff>(d: &PELDatumP, conv: ResidueConvention) -> Result<i64> {
    d.validate()?;
    if d.ramified().next().is_none() {
        return Ok(0);
    }
    let symbolic_ok = d.ramified().all(|p| d.e_e.is_multiple_of(p.f));
    if symbolic_ok {
        let p = polynomial_p::<C>(d, Alpha::Symbolic, conv)?;
        return p.degree_in_q_alpha();
    }
    let m = split_modulus(d);
    let probe = polynomial_p::<C>(d, Alpha::Numeric(m), conv)?;
    let top = probe.top_halves().ok_or(Error::ZeroDegree)?;
    let bound = top.max(0) as u64 / (2 * u64::from(d.e_e) * m) + 2;
    let samples: Vec<u64> = (1..=bound + 1).map(|t| t * m).collect();
    let fit = interpolate_p::<C>(d, 0, &samples, conv)?;
    Ok(fit.degree())
}

/// One row of the dimension audit: both routes, their difference, and the
/// difference conjectured by re-evaluating the top monomial of the
/// truncated Satake polynomial at the principal point, which is
/// sum over ramified places of (s_p - 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionAudit {
    pub degree_route: i64,
    pub paper_route: i64,
    pub difference: i64,
    pub conjectured_difference: i64,
}

pub fn dimension_audit<C: Coeff>(d: &PELDatumP, conv: ResidueConvention) -> Result<DimensionAudit> {
    let degree_route = dimension_degree::<C>(d, conv)?;
    let paper_route = dimension_paper(d)?;
    let conjectured: i64 = d.ramified().map(|p| i64::from(p.s_p()) - 1).sum();
    Ok(DimensionAudit {
        degree_route,
        paper_route,
        difference: paper_route - degree_route,
        conjectured_difference: conjectured,
    })
}

/// The representation type of one spectral term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermKind {
    OneDimUnramified,
    SteinbergType,
}

/// Caller-supplied spectral data for one automorphic term: the kind, the
/// weight bookkeeping of its Weil number, the exact value of zeta^alpha,
/// and the exact prime-to-p Hecke trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphicTermInput {
    pub kind: TermKind,
    /// Weight w: |zeta| corresponds to weight w/n.
    pub weight: i64,
    pub zeta_pow_alpha: BigRational,
    pub hecke_trace: BigRational,
}

impl AutomorphicTermInput {
    /// Weight-zero terms carry roots of unity; the only rational ones are
    /// +-1.
    pub fn validate(&self) -> Result<()> {
        if self.weight == 0 && self.zeta_pow_alpha.abs() != BigRational::one() {
            return Err(Error::InvalidDatum(format!(
                "weight-0 term has |zeta^alpha| = {} instead of a root of unity",
                self.zeta_pow_alpha
            )));
        }
        Ok(())
    }

    /// Parse a JSON array of terms; rationals are decimal strings,
    /// optionally "a/b".
    pub fn from_json_array(text: &str) -> Result<Vec<Self>> {
        #[derive(Deserialize)]
        struct Raw {
            kind: TermKind,
            #[serde(default)]
            weight: i64,
            zeta_pow_alpha: String,
            hecke_trace: String,
        }
        let raw: Vec<Raw> = serde_json::from_str(text)?;
        raw.into_iter()
            .map(|r| {
                Ok(AutomorphicTermInput {
                    kind: r.kind,
                    weight: r.weight,
                    zeta_pow_alpha: parse_rational(&r.zeta_pow_alpha)?,
                    hecke_trace: parse_rational(&r.hecke_trace)?,
                })
            })
            .collect()
    }
}

/// The assembled point-count expression, kept factored:
/// P(q^alpha) * [ sum_one_dim + sign * sum_steinberg ].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCount<C> {
    pub p_factor: QAlphaPoly<C>,
    pub one_dim_sum: BigRational,
    pub steinberg_sum: BigRational,
    /// (-1)^((n-1) * #ramified places).
    pub sign: i64,
}

impl<C: Coeff> PointCount<C> {
    pub fn bracket(&self) -> BigRational {
        &self.one_dim_sum + BigRational::from(BigInt::from(self.sign)) * &self.steinberg_sum
    }

    pub fn is_zero(&self) -> bool {
        self.p_factor.is_zero() || self.bracket().is_zero()
    }
}

impl<C: Coeff> fmt::Display for PointCount<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let base = match self.p_factor.mode() {
            Mode::Symbolic => "q",
            Mode::Numeric => "p",
        };
        write!(
            f,
            "({}) * ({})",
            crate::render::scalar_plain(&self.p_factor, base),
            self.bracket()
        )
    }
}

/// Point-count template: P(q^alpha) times the one-dimensional sum plus
/// the signed Steinberg-type sum. Pure plumbing over the supplied
/// spectral data.
pub fn assemble_point_count<C: Coeff>(
    p: &QAlphaPoly<C>,
    d: &PELDatumP,
    terms: &[AutomorphicTermInput],
) -> Result<PointCount<C>> {
    d.validate()?;
    let ram_count = d.ramified().count() as u32;
    let sign = if ((d.n - 1) * ram_count).is_multiple_of(2) { 1 } else { -1 };
    let mut one_dim_sum = BigRational::zero();
    let mut steinberg_sum = BigRational::zero();
    for term in terms {
        term.validate()?;
        let contribution = &term.zeta_pow_alpha * &term.hecke_trace;
        match term.kind {
            TermKind::OneDimUnramified => one_dim_sum += contribution,
            TermKind::SteinbergType => steinberg_sum += contribution,
        }
    }
    Ok(PointCount {
        p_factor: p.clone(),
        one_dim_sum,
        steinberg_sum,
        sign,
    })
}

/// Parse an exact rational from "a", "-a" or "a/b".
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let parse_int = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::InvalidDatum(format!("bad integer '{s}': {e}")))
    };
    match text.split_once('/') {
        None => Ok(BigRational::from(parse_int(text)?)),
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::InvalidDatum(format!("zero denominator in '{text}'")));
            }
            Ok(BigRational::new(parse_int(num)?, den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    fn datum(n: u32, e_e: u32, places: &[(&str, u32, &[u32])]) -> PELDatumP {
        PELDatumP {
            n,
            e_e,
            places: places
                .iter()
                .map(|&(name, f, sigs)| Place {
                    name: name.into(),
                    f,
                    signatures: sigs.to_vec(),
                })
                .collect(),
        }
    }

    /// One ramified place with a single embedding of signature s, plus an
    /// etale place.
    fn split_datum(n: u32, s: u32) -> PELDatumP {
        datum(n, 1, &[("v1", 1, &[s]), ("v2", 1, &[0])])
    }

    fn qa(pairs: &[(i64, i64)]) -> QAlphaPoly<Int> {
        QAlphaPoly::from_terms(Mode::Symbolic, pairs.iter().map(|&(k, c)| (k, Int::from(c))))
    }

    #[test]
    fn validation_rules() {
        assert!(split_datum(5, 2).validate().unwrap().is_empty());

        // non-coprime signature sum warns but validates
        let w = split_datum(4, 2).validate().unwrap();
        assert_eq!(w.len(), 1);
        assert!(w[0].contains("coprime"));

        // wrong signature count
        let bad = datum(3, 1, &[("v", 2, &[1])]);
        assert!(bad.validate().is_err());

        // orbit constancy: f = 2, e_E = 1 forces equal signatures
        let bad = datum(3, 1, &[("v", 2, &[1, 0])]);
        assert!(bad.validate().is_err());
        let good = datum(3, 1, &[("v", 2, &[1, 1])]);
        assert!(good.validate().is_ok());

        // f = 2, e_E = 2: the orbits are singletons, unequal signatures fine
        let good = datum(3, 2, &[("v", 2, &[1, 0])]);
        assert!(good.validate().is_ok());
    }

    #[test]
    fn json_roundtrip() {
        let d = split_datum(5, 2);
        let text = d.to_json();
        let back = PELDatumP::from_json(&text).unwrap();
        assert_eq!(back, d);
        assert!(text.contains("\"e_E\""));
    }

    #[test]
    fn slopes() {
        let d = datum(3, 1, &[("a", 1, &[2]), ("b", 1, &[0])]);
        let s = basic_slopes(&d);
        assert_eq!(s[0].slope, Ratio::new(2, 3));
        assert!(s[0].simple && !s[0].etale);
        assert_eq!(s[1].slope, Ratio::new(0, 1));
        assert!(s[1].etale);

        let d = datum(4, 1, &[("a", 1, &[2])]);
        let s = basic_slopes(&d);
        assert_eq!(s[0].slope, Ratio::new(1, 2));
        assert!(!s[0].simple);
    }

    #[test]
    fn orbits_split_completely() {
        let d = datum(3, 2, &[("v", 1, &[1])]);
        let o = orbit_data(&d, 5).unwrap();
        assert_eq!(o.places[0].orbit_count, 1);
        assert_eq!(o.places[0].orbits[0].alpha_v, 10);
        assert_eq!(o.places[0].orbits[0].size, 1);
    }

    #[test]
    fn orbits_inert_and_split_cases() {
        let d = datum(3, 1, &[("v", 2, &[1, 1])]);
        // alpha = 1: one orbit of size 2, alpha_v = 2
        let o = orbit_data(&d, 1).unwrap();
        assert_eq!(o.places[0].orbit_count, 1);
        assert_eq!(o.places[0].orbits[0].alpha_v, 2);
        assert_eq!(o.places[0].orbits[0].size, 2);
        // alpha = 2: two singleton orbits, alpha_v = 2; bookkeeping
        // 2 * (2/2) = 2 = f
        let o = orbit_data(&d, 2).unwrap();
        assert_eq!(o.places[0].orbit_count, 2);
        for orbit in &o.places[0].orbits {
            assert_eq!(orbit.alpha_v, 2);
            assert_eq!(orbit.size, 1);
        }
    }

    #[test]
    fn orbit_bookkeeping_invariant() {
        for f in 1..=12u32 {
            for e_e in 1..=4u32 {
                for alpha in 1..=24u64 {
                    let d = datum(2, e_e, &[("v", f, &vec![1u32; f as usize])]);
                    let o = orbit_data(&d, alpha).unwrap();
                    let e_alpha = u64::from(e_e) * alpha;
                    let total: u64 = o.places[0]
                        .orbits
                        .iter()
                        .map(|orb| orb.alpha_v / e_alpha)
                        .sum();
                    assert_eq!(total, u64::from(f), "f={f} e_E={e_e} alpha={alpha}");
                }
            }
        }
    }

    #[test]
    fn harris_taylor_polynomial_is_one() {
        let d = datum(5, 1, &[("v1", 1, &[1]), ("v2", 1, &[0])]);
        let p = polynomial_p::<Int>(&d, Alpha::Symbolic, ResidueConvention::LocalField).unwrap();
        assert!(p.is_one());
        assert_eq!(
            dimension_degree::<Int>(&d, ResidueConvention::LocalField).unwrap(),
            0
        );
    }

    #[test]
    fn example_five_two() {
        let d = split_datum(5, 2);
        let p = polynomial_p::<Int>(&d, Alpha::Symbolic, ResidueConvention::LocalField).unwrap();
        assert_eq!(p, qa(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn two_ramified_places_multiply() {
        let d = datum(5, 1, &[("a", 1, &[1]), ("b", 1, &[1])]);
        let p = polynomial_p::<Int>(&d, Alpha::Symbolic, ResidueConvention::LocalField).unwrap();
        assert!(p.is_one());
    }

    #[test]
    fn symbolic_outside_split_regime_rejected() {
        let d = datum(3, 1, &[("v", 2, &[1, 1])]);
        assert!(matches!(
            polynomial_p::<Int>(&d, Alpha::Symbolic, ResidueConvention::LocalField),
            Err(Error::NotSplit { .. })
        ));
    }

    #[test]
    fn split_moduli() {
        assert_eq!(split_modulus(&split_datum(5, 2)), 1);
        assert_eq!(split_modulus(&datum(3, 1, &[("v", 2, &[1, 1])])), 2);
        assert_eq!(split_modulus(&datum(3, 2, &[("v", 2, &[1, 0])])), 1);
        assert_eq!(
            split_modulus(&datum(3, 1, &[("a", 2, &[1, 1]), ("b", 3, &[0, 0, 0])])),
            6
        );
    }

    #[test]
    fn interpolation_on_split_datum_is_constant_in_class() {
        // split datum: classes coincide and the fit equals the symbolic P
        let d = split_datum(5, 2);
        let fit =
            interpolate_p::<Int>(&d, 0, &[1, 2, 3, 4], ResidueConvention::LocalField).unwrap();
        assert_eq!(fit.modulus, 1);
        assert_eq!(fit.coefficients, vec![Int::from(1), Int::from(1)]);
        assert_eq!(fit.degree(), 1);
        let symbolic =
            polynomial_p::<Int>(&d, Alpha::Symbolic, ResidueConvention::LocalField).unwrap();
        assert_eq!(fit.as_q_alpha_poly(), symbolic);
    }

    #[test]
    fn symbolic_matches_numeric_in_the_split_regime() {
        // f = 2 with e_E = 2 splits uniformly; at each alpha the symbolic
        // polynomial (in halves of q^alpha, q = p^(e_E)) must reproduce
        // the numeric value (in halves of p) under k -> k * e_E * alpha,
        // for both residue conventions.
        let d = datum(3, 2, &[("w", 2, &[1, 1])]);
        for conv in [ResidueConvention::LocalField, ResidueConvention::AbsoluteDegree] {
            let symbolic = polynomial_p::<Int>(&d, Alpha::Symbolic, conv).unwrap();
            for alpha in 1..=4u64 {
                let numeric = polynomial_p::<Int>(&d, Alpha::Numeric(alpha), conv).unwrap();
                let scale = i64::from(d.e_e) * alpha as i64;
                let mapped = QAlphaPoly::from_terms(
                    Mode::Numeric,
                    symbolic.terms().map(|(k, c)| (k * scale, c.clone())),
                );
                assert_eq!(numeric, mapped, "conv={conv:?} alpha={alpha}");
            }
        }
    }

    #[test]
    fn dimension_degree_numeric_fallback() {
        // f = 2 with e_E = 1 cannot be done symbolically; the class-0 fit
        // 1 + 2 q^alpha gives degree 1
        let d = datum(3, 1, &[("w", 2, &[1, 1])]);
        assert_eq!(
            dimension_degree::<Int>(&d, ResidueConvention::LocalField).unwrap(),
            1
        );
    }

    #[test]
    fn interpolation_needs_samples() {
        let d = split_datum(5, 2);
        assert!(matches!(
            interpolate_p::<Int>(&d, 0, &[4], ResidueConvention::LocalField),
            Err(Error::InsufficientSamples { .. })
        ));
        assert!(matches!(
            interpolate_p::<Int>(&d, 0, &[4, 4], ResidueConvention::LocalField),
            Err(Error::InvalidDatum(_))
        ));
    }

    #[test]
    fn dimension_paper_examples() {
        // Harris-Taylor: both sums vanish term by term
        assert_eq!(
            dimension_paper(&datum(5, 1, &[("v", 1, &[1])])).unwrap(),
            0
        );
        // n=3, one embedding s_v=2: -1 + (0 + 2) = 1
        assert_eq!(dimension_paper(&split_datum(3, 2)).unwrap(), 1);
        // n=5, one embedding s_v=2: -1 + (0 + 3) = 2
        assert_eq!(dimension_paper(&split_datum(5, 2)).unwrap(), 2);
    }

    #[test]
    fn dimension_degree_examples() {
        assert_eq!(
            dimension_degree::<Int>(&split_datum(3, 2), ResidueConvention::LocalField).unwrap(),
            0
        );
        assert_eq!(
            dimension_degree::<Int>(&split_datum(5, 2), ResidueConvention::LocalField).unwrap(),
            1
        );
    }

    #[test]
    fn assemble_examples() {
        let d = split_datum(5, 2);
        let p = polynomial_p::<Int>(&d, Alpha::Symbolic, ResidueConvention::LocalField).unwrap();

        // empty term list -> 0
        let empty = assemble_point_count(&p, &d, &[]).unwrap();
        assert!(empty.is_zero());
        assert_eq!(empty.to_string(), "0");

        // one one-dimensional term with zeta = 1, Tr = 1, P = 1 -> 1
        let one = QAlphaPoly::<Int>::one(Mode::Symbolic);
        let term = AutomorphicTermInput {
            kind: TermKind::OneDimUnramified,
            weight: 0,
            zeta_pow_alpha: BigRational::one(),
            hecke_trace: BigRational::one(),
        };
        let pc = assemble_point_count(&one, &d, &[term]).unwrap();
        assert_eq!(pc.bracket(), BigRational::one());
        assert!(pc.p_factor.is_one());

        // one Steinberg-type term, n even, one ramified place: sign -1
        let d_even = datum(4, 1, &[("v", 1, &[1])]);
        let st = AutomorphicTermInput {
            kind: TermKind::SteinbergType,
            weight: 0,
            zeta_pow_alpha: BigRational::one(),
            hecke_trace: BigRational::one(),
        };
        let pc = assemble_point_count(&one, &d_even, &[st]).unwrap();
        assert_eq!(pc.sign, -1);
        assert_eq!(pc.bracket(), -BigRational::one());
    }

    #[test]
    fn weight_zero_terms_must_be_signs() {
        let d = split_datum(5, 2);
        let one = QAlphaPoly::<Int>::one(Mode::Symbolic);
        let bad = AutomorphicTermInput {
            kind: TermKind::OneDimUnramified,
            weight: 0,
            zeta_pow_alpha: parse_rational("3/2").unwrap(),
            hecke_trace: BigRational::one(),
        };
        assert!(assemble_point_count(&one, &d, &[bad]).is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("7").unwrap(), BigRational::from(BigInt::from(7)));
        assert_eq!(
            parse_rational("-3/6").unwrap(),
            BigRational::new(BigInt::from(-1), BigInt::from(2))
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
