//! stratum: compact traces of Kottwitz functions and basic-stratum
//! invariants from the command line.
//!
//! Every subcommand maps to one library operation; output is exact and
//! byte-identical across runs. Exit codes: 0 success, 1 domain or usage
//! error, 2 verification failure (the `verify` subcommand, for CI).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stratum_core::chambers::{chamber_filter, ChamberKind, Composition};
use stratum_core::hecke::{constant_term, constant_term_closed_form};
use stratum_core::pel::{
    assemble_point_count, basic_slopes, dimension_audit, interpolate_p, orbit_data, polynomial_p,
    split_modulus, Alpha, AutomorphicTermInput, PELDatumP, ResidueConvention,
};
use stratum_core::render::{levi_latex, levi_plain, scalar_latex, scalar_plain};
use stratum_core::traces::{compact_trace_steinberg, compact_trace_trivial, intro_monomial_family};
use stratum_core::verify::{
    suite_chambers, suite_chicfp, suite_constant_terms, suite_constant_vanish, suite_traces,
    SuiteReport,
};
use stratum_core::{Int, LeviPoly, QAlphaPoly, SphericalFunction};

#[derive(Parser)]
#[command(
    name = "stratum",
    version,
    about = "Exact compact traces on the spherical Hecke algebra of GL_n and basic-stratum invariants"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    /// Satake-side regrouping of variables by blocks.
    Regroup,
    /// The closed form as a sum over extended compositions.
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Acute,
    Obtuse,
    EqualRatio,
}

impl From<Kind> for ChamberKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Acute => ChamberKind::Acute,
            Kind::Obtuse => ChamberKind::Obtuse,
            Kind::EqualRatio => ChamberKind::EqualRatio,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Convention {
    /// Index local factors by their degree over the local field (default).
    Local,
    /// Read the orbit degree literally against the local residue field.
    Absolute,
}

impl From<Convention> for ResidueConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Local => ResidueConvention::LocalField,
            Convention::Absolute => ResidueConvention::AbsoluteDegree,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    ConstantTerms,
    Chambers,
    Chicfp,
    ConstantVanish,
    Traces,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Satake transform of the Kottwitz function f_{n,alpha,s}.
    Satake {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        /// Substitute a concrete degree alpha.
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// Constant term of f_{n,alpha,s} along the standard parabolic with
    /// the given block sizes.
    ConstantTerm {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        /// Comma-separated block sizes, e.g. 2,1.
        #[arg(long, value_delimiter = ',')]
        blocks: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Route::Regroup)]
        route: Route,
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// Chamber truncation of a constant term.
    Truncate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        #[arg(long, value_delimiter = ',')]
        blocks: Vec<u32>,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// Compact trace of f_{n,alpha,s} on the Steinberg representation.
    TraceSteinberg {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// Compact trace of f_{n,alpha,s} on the trivial representation.
    TraceTrivial {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// The explicit monomial family equal to the obtuse-truncated Borel
    /// constant term of f_{n,alpha,s}.
    IntroFamily {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
    },
    /// Galois-orbit data and basic slopes of a datum at a degree alpha.
    Orbits {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long)]
        alpha: u64,
    },
    /// The polynomial P(q^alpha) of a datum (symbolic unless --alpha).
    PolyP {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long)]
        alpha: Option<u64>,
        #[arg(long, value_enum, default_value_t = Convention::Local)]
        convention: Convention,
    },
    /// Fit P as a polynomial in q^alpha on one residue class of alpha,
    /// holding the last sample out as a checksum.
    Interpolate {
        #[arg(long)]
        datum: PathBuf,
        /// Residue class of alpha modulo the split modulus.
        #[arg(long)]
        class: u64,
        /// Number of samples (fit through all but the last).
        #[arg(long, default_value_t = 4)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Convention::Local)]
        convention: Convention,
    },
    /// Dimension of the basic stratum: degree-of-P route (authoritative)
    /// and the closed formula, with their difference.
    Dimension {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long, value_enum, default_value_t = Convention::Local)]
        convention: Convention,
    },
    /// Assemble the point-count expression from caller-supplied spectral
    /// terms (JSON array with kind, weight, zeta_pow_alpha, hecke_trace).
    Assemble {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long)]
        terms: PathBuf,
        #[arg(long)]
        alpha: Option<u64>,
        #[arg(long, value_enum, default_value_t = Convention::Local)]
        convention: Convention,
    },
    /// Run the cross-route verification suites (exit 2 on failure).
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Override the default rank bound of the chosen suites.
        #[arg(long)]
        max_n: Option<u32>,
        /// Worker threads for the parameter sweeps.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are not errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let format = cli.format;
    match cli.command {
        Command::Satake { n, s, alpha } => {
            require(n >= 1, "n must be >= 1")?;
            let f = SphericalFunction::kottwitz(n, s);
            let poly = maybe_alpha_levi(f.satake().clone(), alpha)?;
            emit_levi(format, "satake", json!({"n": n, "s": s, "alpha": alpha}), &poly);
        }
        Command::ConstantTerm {
            n,
            s,
            blocks,
            route,
            alpha,
        } => {
            let c = composition(blocks)?;
            let poly = match route {
                Route::Regroup => {
                    constant_term(&SphericalFunction::kottwitz(n, i64::from(s)), &c)
                        .map_err(|e| e.to_string())?
                }
                Route::Closed => {
                    constant_term_closed_form::<Int>(n, s, &c).map_err(|e| e.to_string())?
                }
            };
            let poly = maybe_alpha_levi(poly, alpha)?;
            emit_levi(
                format,
                "constant-term",
                json!({"n": n, "s": s, "blocks": c.parts(), "route": format!("{route:?}").to_lowercase(), "alpha": alpha}),
                &poly,
            );
        }
        Command::Truncate {
            n,
            s,
            blocks,
            kind,
            alpha,
        } => {
            let c = composition(blocks)?;
            let ct = constant_term(&SphericalFunction::kottwitz(n, i64::from(s)), &c)
                .map_err(|e| e.to_string())?;
            let poly = maybe_alpha_levi(chamber_filter(&ct, kind.into()), alpha)?;
            emit_levi(
                format,
                "truncate",
                json!({"n": n, "s": s, "blocks": c.parts(), "kind": format!("{kind:?}").to_lowercase(), "alpha": alpha}),
                &poly,
            );
        }
        Command::TraceSteinberg { n, s, alpha } => {
            require(n >= 1, "n must be >= 1")?;
            let value = compact_trace_steinberg(&SphericalFunction::kottwitz(n, s));
            let value = maybe_alpha_scalar(value, alpha)?;
            emit_scalar(
                format,
                "trace-steinberg",
                json!({"n": n, "s": s, "alpha": alpha}),
                &value,
                "q",
            );
        }
        Command::TraceTrivial { n, s, alpha } => {
            require(n >= 1, "n must be >= 1")?;
            let value = compact_trace_trivial(&SphericalFunction::kottwitz(n, s));
            let value = maybe_alpha_scalar(value, alpha)?;
            emit_scalar(
                format,
                "trace-trivial",
                json!({"n": n, "s": s, "alpha": alpha}),
                &value,
                "q",
            );
        }
        Command::IntroFamily { n, s } => {
            let poly = intro_monomial_family::<Int>(n, s).map_err(|e| e.to_string())?;
            emit_levi(format, "intro-family", json!({"n": n, "s": s}), &poly);
        }
        Command::Orbits { datum, alpha } => {
            let d = load_datum(&datum)?;
            let orbits = orbit_data(&d, alpha).map_err(|e| e.to_string())?;
            let slopes = basic_slopes(&d);
            match format {
                Format::Json => {
                    print_json(json!({
                        "command": "orbits",
                        "alpha": alpha,
                        "places": orbits.places,
                        "slopes": slopes,
                    }));
                }
                Format::Plain | Format::Latex => {
                    let mut out = String::new();
                    for (po, sl) in orbits.places.iter().zip(&slopes) {
                        let _ = writeln!(
                            out,
                            "place {}: slope {}{}{}, {} orbit(s)",
                            po.place,
                            sl.slope,
                            if sl.simple { ", simple" } else { "" },
                            if sl.etale { ", etale" } else { "" },
                            po.orbit_count
                        );
                        for (i, orb) in po.orbits.iter().enumerate() {
                            let _ = writeln!(
                                out,
                                "  orbit {}: alpha_v = {}, s_v = {}, size = {}",
                                i + 1,
                                orb.alpha_v,
                                orb.s_v,
                                orb.size
                            );
                        }
                    }
                    emit(out.trim_end());
                }
            }
        }
        Command::PolyP {
            datum,
            alpha,
            convention,
        } => {
            let d = load_datum(&datum)?;
            let mode = match alpha {
                None => Alpha::Symbolic,
                Some(a) => Alpha::Numeric(a),
            };
            let p = polynomial_p::<Int>(&d, mode, convention.into()).map_err(|e| e.to_string())?;
            let base = if alpha.is_some() { "p" } else { "q" };
            emit_scalar(
                format,
                "poly-p",
                json!({"datum": datum.display().to_string(), "alpha": alpha}),
                &p,
                base,
            );
        }
        Command::Interpolate {
            datum,
            class,
            samples,
            convention,
        } => {
            let d = load_datum(&datum)?;
            require(samples >= 2, "need at least 2 samples")?;
            let m = split_modulus(&d);
            // alphas in the class: class, class+M, ... (starting at class
            // or M when the representative is 0)
            let start = if class % m == 0 { m } else { class % m };
            let alphas: Vec<u64> = (0..samples as u64).map(|t| start + t * m).collect();
            let fit = interpolate_p::<Int>(&d, class, &alphas, convention.into())
                .map_err(|e| e.to_string())?;
            let poly = fit.as_q_alpha_poly();
            match format {
                Format::Json => print_json(json!({
                    "command": "interpolate",
                    "modulus": fit.modulus,
                    "residue_class": fit.residue_class,
                    "samples": fit.samples,
                    "coefficients": fit.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "degree": fit.degree(),
                    "value": poly,
                })),
                Format::Plain => emit(&format!(
                    "class {} mod {}: {}   (degree {}, samples {:?}, last held out)",
                    fit.residue_class,
                    fit.modulus,
                    scalar_plain(&poly, "q"),
                    fit.degree(),
                    fit.samples
                )),
                Format::Latex => emit(&scalar_latex(&poly, "q")),
            }
        }
        Command::Dimension { datum, convention } => {
            let d = load_datum(&datum)?;
            let audit = dimension_audit::<Int>(&d, convention.into()).map_err(|e| e.to_string())?;
            if audit.degree_route < 0 {
                eprintln!(
                    "warning: P has negative degree {}; the datum violates the nonnegativity expectation",
                    audit.degree_route
                );
            }
            match format {
                Format::Json => print_json(json!({
                    "command": "dimension",
                    "degree_route": audit.degree_route,
                    "paper_route": audit.paper_route,
                    "difference": audit.difference,
                    "conjectured_difference": audit.conjectured_difference,
                })),
                Format::Plain => {
                    let mut out = format!(
                        "dimension (degree of P): {}\nclosed formula:          {}",
                        audit.degree_route, audit.paper_route
                    );
                    if audit.difference != 0 {
                        let _ = write!(
                            out,
                            "\nthe closed formula disagrees by {} (conjectured {}); the degree route is authoritative",
                            audit.difference, audit.conjectured_difference
                        );
                    }
                    emit(&out);
                }
                Format::Latex => emit(&format!(
                    "\\dim B = {} \\quad (\\text{{closed formula: }} {})",
                    audit.degree_route, audit.paper_route
                )),
            }
        }
        Command::Assemble {
            datum,
            terms,
            alpha,
            convention,
        } => {
            let d = load_datum(&datum)?;
            let text = std::fs::read_to_string(&terms)
                .map_err(|e| format!("cannot read {}: {e}", terms.display()))?;
            let terms = AutomorphicTermInput::from_json_array(&text).map_err(|e| e.to_string())?;
            let mode = match alpha {
                None => Alpha::Symbolic,
                Some(a) => Alpha::Numeric(a),
            };
            let p = polynomial_p::<Int>(&d, mode, convention.into()).map_err(|e| e.to_string())?;
            let pc = assemble_point_count(&p, &d, &terms).map_err(|e| e.to_string())?;
            match format {
                Format::Json => print_json(json!({
                    "command": "assemble",
                    "p_factor": pc.p_factor,
                    "one_dim_sum": pc.one_dim_sum.to_string(),
                    "steinberg_sum": pc.steinberg_sum.to_string(),
                    "sign": pc.sign,
                    "bracket": pc.bracket().to_string(),
                })),
                Format::Plain => emit(&pc.to_string()),
                Format::Latex => {
                    let base = if alpha.is_some() { "p" } else { "q" };
                    emit(&format!(
                        "\\left({}\\right)\\cdot\\left({}\\right)",
                        scalar_latex(&pc.p_factor, base),
                        pc.bracket()
                    ));
                }
            }
        }
        Command::Verify { suite, max_n, jobs } => {
            if let Some(j) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build_global()
                    .map_err(|e| e.to_string())?;
            }
            let reports = run_suites(suite, max_n);
            let failed = reports.iter().any(|r| !r.passed());
            match format {
                Format::Json => print_json(json!({
                    "command": "verify",
                    "suites": reports.iter().map(|r| json!({
                        "name": r.name,
                        "cases": r.cases,
                        "failures": r.failures,
                        "warnings": r.warnings,
                    })).collect::<Vec<_>>(),
                    "passed": !failed,
                })),
                Format::Plain | Format::Latex => {
                    let mut out = String::new();
                    for r in &reports {
                        let _ = writeln!(
                            out,
                            "suite {}: {} cases, {} failure(s) [{}]",
                            r.name,
                            r.cases,
                            r.failures.len(),
                            if r.passed() { "PASS" } else { "FAIL" }
                        );
                        for f in &r.failures {
                            let _ = writeln!(out, "  failure: {f}");
                        }
                        for w in &r.warnings {
                            let _ = writeln!(out, "  warning: {w}");
                        }
                    }
                    emit(out.trim_end());
                }
            }
            if failed {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_suites(which: Suite, max_n: Option<u32>) -> Vec<SuiteReport> {
    let pick = |default: u32| max_n.unwrap_or(default);
    match which {
        Suite::ConstantTerms => vec![suite_constant_terms(pick(6))],
        Suite::Chambers => vec![suite_chambers(pick(5), 3)],
        Suite::Chicfp => vec![suite_chicfp(pick(6))],
        Suite::ConstantVanish => vec![suite_constant_vanish(pick(7))],
        Suite::Traces => vec![suite_traces(pick(8))],
        Suite::All => vec![
            suite_constant_terms(pick(6)),
            suite_chambers(pick(5), 3),
            suite_chicfp(pick(6)),
            suite_constant_vanish(pick(7)),
            suite_traces(pick(8)),
        ],
    }
}

fn require(cond: bool, message: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message.to_string())
    }
}

fn composition(blocks: Vec<u32>) -> Result<Composition, String> {
    Composition::new(blocks).map_err(|e| e.to_string())
}

fn load_datum(path: &PathBuf) -> Result<PELDatumP, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let datum = PELDatumP::from_json(&text).map_err(|e| e.to_string())?;
    for warning in datum.validate().map_err(|e| e.to_string())? {
        eprintln!("warning: {warning}");
    }
    Ok(datum)
}

fn maybe_alpha_levi(poly: LeviPoly, alpha: Option<u64>) -> Result<LeviPoly, String> {
    match alpha {
        None => Ok(poly),
        Some(a) => poly.substitute_alpha(a).map_err(|e| e.to_string()),
    }
}

fn maybe_alpha_scalar(value: QAlphaPoly, alpha: Option<u64>) -> Result<QAlphaPoly, String> {
    match alpha {
        None => Ok(value),
        Some(a) => value.substitute_alpha(a).map_err(|e| e.to_string()),
    }
}

fn emit_levi(format: Format, command: &str, params: Value, poly: &LeviPoly) {
    match format {
        Format::Json => print_json(json!({"command": command, "params": params, "value": poly})),
        Format::Plain => emit(&levi_plain(poly, "q")),
        Format::Latex => emit(&levi_latex(poly, "q")),
    }
}

fn emit_scalar(format: Format, command: &str, params: Value, value: &QAlphaPoly, base: &str) {
    match format {
        Format::Json => print_json(json!({"command": command, "params": params, "value": value})),
        Format::Plain => emit(&scalar_plain(value, base)),
        Format::Latex => emit(&scalar_latex(value, base)),
    }
}

fn print_json(value: Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("valid json"));
}

/// Print, soft-wrapping plain text when STRATUM_WIDTH is set.
fn emit(text: &str) {
    match output_width() {
        None => println!("{text}"),
        Some(width) => {
            for line in text.lines() {
                let mut rest = line;
                while rest.chars().count() > width {
                    let cut = rest
                        .char_indices()
                        .take(width + 1)
                        .filter(|&(_, ch)| ch == ' ')
                        .map(|(i, _)| i)
                        .last();
                    match cut {
                        Some(i) if i > 0 => {
                            println!("{}", &rest[..i]);
                            rest = &rest[i + 1..];
                        }
                        _ => break,
                    }
                }
                println!("{rest}");
            }
        }
    }
}

fn output_width() -> Option<usize> {
    std::env::var("STRATUM_WIDTH")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w >= 20)
}
