//! Plain-text and LaTeX rendering of scalars and block-symmetric
//! polynomials. Output is deterministic: terms appear in the canonical
//! (sorted) order of the underlying maps.

use crate::algebra::{LaurentScalar, LeviPoly, Mode};
use crate::coeff::Coeff;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Style {
    Plain,
    Latex,
}

/// q-power for `halves` counts of q^(1/2) (numeric) or q^(alpha/2)
/// (symbolic); `None` for the trivial power.
fn q_power(halves: i64, mode: Mode, style: Style, base: &str) -> Option<String> {
    if halves == 0 {
        return None;
    }
    let exp = match mode {
        Mode::Symbolic => {
            if halves % 2 == 0 {
                let m = halves / 2;
                match (style, m) {
                    (Style::Plain, 1) => "α".to_string(),
                    (Style::Plain, -1) => "(-α)".to_string(),
                    (Style::Plain, _) => format!("({m}α)"),
                    (Style::Latex, 1) => "\\alpha".to_string(),
                    (Style::Latex, _) => format!("{m}\\alpha"),
                }
            } else {
                match (style, halves) {
                    (Style::Plain, 1) => "(α/2)".to_string(),
                    (Style::Plain, -1) => "(-α/2)".to_string(),
                    (Style::Plain, _) => format!("({halves}α/2)"),
                    (Style::Latex, 1) => "\\alpha/2".to_string(),
                    (Style::Latex, -1) => "-\\alpha/2".to_string(),
                    (Style::Latex, _) => format!("{halves}\\alpha/2"),
                }
            }
        }
        Mode::Numeric => {
            if halves % 2 == 0 {
                let m = halves / 2;
                if m == 1 {
                    return Some(base.to_string());
                }
                match style {
                    Style::Plain if m < 0 => format!("({m})"),
                    Style::Plain => format!("{m}"),
                    Style::Latex => format!("{m}"),
                }
            } else {
                match style {
                    Style::Plain => format!("({halves}/2)"),
                    Style::Latex => format!("{halves}/2"),
                }
            }
        }
    };
    Some(match style {
        Style::Plain => format!("{base}^{exp}"),
        Style::Latex => format!("{base}^{{{exp}}}"),
    })
}

/// X-power for a slot (1-based index) and stored exponent e, which reads
/// X^(e*alpha) in symbolic mode and X^e otherwise.
fn x_power(slot: usize, e: i64, mode: Mode, style: Style) -> Option<String> {
    if e == 0 {
        return None;
    }
    let var = match style {
        Style::Plain => format!("X{slot}"),
        Style::Latex => format!("X_{{{slot}}}"),
    };
    let exp = match mode {
        Mode::Symbolic => match (style, e) {
            (Style::Plain, 1) => "α".to_string(),
            (Style::Plain, -1) => "(-α)".to_string(),
            (Style::Plain, _) => format!("({e}α)"),
            (Style::Latex, 1) => "\\alpha".to_string(),
            (Style::Latex, _) => format!("{e}\\alpha"),
        },
        Mode::Numeric => {
            if e == 1 {
                return Some(var);
            }
            match style {
                Style::Plain if e < 0 => format!("({e})"),
                Style::Plain => format!("{e}"),
                Style::Latex => format!("{e}"),
            }
        }
    };
    Some(match style {
        Style::Plain => format!("{var}^{exp}"),
        Style::Latex => format!("{var}^{{{exp}}}"),
    })
}

/// One signed product term; the leading sign is handled by the caller.
struct Term {
    negative: bool,
    body: String,
}

fn scalar_terms<C: Coeff>(s: &LaurentScalar<C>, style: Style, base: &str) -> Vec<Term> {
    s.terms()
        .map(|(k, c)| {
            let negative = *c < C::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            let power = q_power(k, s.mode(), style, base);
            let body = match power {
                None => mag.to_string(),
                Some(p) => {
                    if mag == num_traits::One::one() {
                        p
                    } else {
                        format!("{mag} {p}")
                    }
                }
            };
            Term { negative, body }
        })
        .collect()
}

fn join_terms(terms: Vec<Term>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            if t.negative {
                out.push('-');
            }
        } else {
            out.push_str(if t.negative { " - " } else { " + " });
        }
        out.push_str(&t.body);
    }
    out
}

pub fn scalar_plain<C: Coeff>(s: &LaurentScalar<C>, base: &str) -> String {
    join_terms(scalar_terms(s, Style::Plain, base))
}

pub fn scalar_latex<C: Coeff>(s: &LaurentScalar<C>, base: &str) -> String {
    join_terms(scalar_terms(s, Style::Latex, base))
}

fn levi_terms<C: Coeff>(p: &LeviPoly<C>, style: Style, base: &str) -> Vec<Term> {
    let sep = match style {
        Style::Plain => " ",
        Style::Latex => " ",
    };
    // descending exponent order, so X1-leading monomials print first
    let mut out = Vec::new();
    for (mono, scalar) in p.expand().into_iter().rev() {
        let vars: Vec<String> = mono
            .iter()
            .enumerate()
            .filter_map(|(i, &e)| x_power(i + 1, e, p.mode(), style))
            .collect();
        let mono_str = vars.join(sep);
        let coeff_terms = scalar_terms(&scalar, style, base);
        if mono_str.is_empty() {
            out.extend(coeff_terms);
            continue;
        }
        if coeff_terms.len() == 1 {
            let t = coeff_terms.into_iter().next().expect("one term");
            let body = if t.body == "1" {
                mono_str
            } else {
                format!("{} {}", t.body, mono_str)
            };
            out.push(Term {
                negative: t.negative,
                body,
            });
        } else {
            let inner = join_terms(coeff_terms);
            let body = match style {
                Style::Plain => format!("({inner}) {mono_str}"),
                Style::Latex => format!("\\left({inner}\\right) {mono_str}"),
            };
            out.push(Term {
                negative: false,
                body,
            });
        }
    }
    out
}

pub fn levi_plain<C: Coeff>(p: &LeviPoly<C>, base: &str) -> String {
    join_terms(levi_terms(p, Style::Plain, base))
}

pub fn levi_latex<C: Coeff>(p: &LeviPoly<C>, base: &str) -> String {
    join_terms(levi_terms(p, Style::Latex, base))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Mode;
    use num_bigint::BigInt;

    type S = LaurentScalar<BigInt>;

    #[test]
    fn scalar_rendering() {
        let s = S::from_terms(
            Mode::Symbolic,
            [(0, BigInt::from(1)), (2, BigInt::from(1)), (4, BigInt::from(3))],
        );
        assert_eq!(scalar_plain(&s, "q"), "1 + q^α + 3 q^(2α)");
        assert_eq!(scalar_latex(&s, "q"), "1 + q^{\\alpha} + 3 q^{2\\alpha}");

        let m = S::from_terms(Mode::Numeric, [(-2, BigInt::from(-1)), (1, BigInt::from(2))]);
        assert_eq!(scalar_plain(&m, "p"), "-p^(-1) + 2 p^(1/2)");
        assert_eq!(scalar_latex(&m, "p"), "-p^{-1} + 2 p^{1/2}");

        assert_eq!(scalar_plain(&S::zero(Mode::Numeric), "q"), "0");
    }
}
