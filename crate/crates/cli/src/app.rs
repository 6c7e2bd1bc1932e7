//! Command definitions and dispatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use orelab_core::idealfactor::dedekind_factorization;
use orelab_core::intsupport::{is_squarefree_int, Prime};
use orelab_core::monogeny::{
    analyze_polynomial, analyze_pure60, detect_shifted_pure, perfect_power, pure60_power_case, Reason,
};
use orelab_core::polygon::{phi_expand, principal_polygon, residual_polys};
use orelab_core::polyalg::fq_factor;
use orelab_core::{Error as CoreError, IntPoly};

use crate::parse::{parse_poly, ParseError};
use crate::render::render_polygon;
use crate::report::{
    dedekind_doc, polygon_doc, shape_docs, DedekindDoc, FactorDoc, InputDoc, PolygonDoc, ReportDocument,
    ShapeEntryDoc, SCHEMA_VERSION,
};
use crate::scan::{rows_to_csv, rows_to_text, scan, ScanRange};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "orelab", version, about = "Prime splitting, index valuations and monogeneity of number fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized equal-degree factorization.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyse a monic polynomial at the primes that can divide its index.
    Analyze {
        #[arg(long)]
        poly: String,
        /// Comma-separated primes to examine instead of the discriminant's.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        #[command(flatten)]
        common: Common,
    },
    /// Draw the principal φ-Newton polygon of a polynomial at a prime.
    Polygon {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        phi: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run Dedekind's criterion at a prime.
    Dedekind {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Classify the pure field of x^60 - m, or of x^60 - a^u.
    Pure60 {
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["a", "u"], required_unless_present = "a")]
        m: Option<i64>,
        #[arg(long, allow_hyphen_values = true, requires = "u")]
        a: Option<i64>,
        #[arg(long, requires = "a")]
        u: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Classify x^60 - m for every m in an inclusive range.
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        range: ScanRange,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Inconsistent(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Inconsistent(_) => EXIT_INCONSISTENT,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Inconsistent(m) => write!(f, "internal inconsistency: {m}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        match e {
            CoreError::Inconsistent(m) => CliError::Inconsistent(m),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> CliError {
        CliError::Invalid(format!("cannot parse polynomial {e}"))
    }
}

type CliResult<T> = Result<T, CliError>;

fn prime(p: u64) -> CliResult<Prime> {
    Ok(Prime::new(p)?)
}

fn monic(src: &str) -> CliResult<IntPoly> {
    let f = parse_poly(src)?;
    match f.degree() {
        Some(d) if d > 0 && f.is_monic() => Ok(f),
        _ => Err(CliError::Invalid(format!("{f} is not monic of positive degree"))),
    }
}

fn render(doc: &ReportDocument, format: Format) -> CliResult<String> {
    match format {
        Format::Text => Ok(doc.to_text()),
        Format::Json => Ok(doc.to_json()),
        Format::Csv => Err(csv_unsupported()),
    }
}

fn csv_unsupported() -> CliError {
    CliError::Invalid("csv output is only available for scan".into())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("document serializes") + "\n"
}

/// Report for the field of `x^60 − a^u`, computed through `x^60 − a`.
fn power_report(input: InputDoc, a: i64, u: u64, seed: u64, mut notes: Vec<String>) -> CliResult<ReportDocument> {
    let reduction = pure60_power_case(a, u)?;
    let report = analyze_pure60(a, seed)?;
    let mut verdict = report.verdict.clone();
    if u != 1 {
        if let Some(r @ Reason::PowerReduction { .. }) = reduction.reasons.first() {
            verdict.reasons.insert(0, r.clone());
        }
        notes.push(format!("prime data below is for x^60 - ({a}), whose root θ generates the same field"));
    }
    Ok(ReportDocument::from_analysis(input, &report, &verdict, notes))
}

/// `a` as a squarefree `i64` with `|a| ≥ 2`.
fn squarefree_i64(a: &BigInt) -> Option<i64> {
    let a = a.to_i64()?;
    (a.unsigned_abs() >= 2 && is_squarefree_int(a).ok()?).then_some(a)
}

pub fn cmd_analyze(src: &str, primes: Option<&[u64]>, seed: u64) -> CliResult<ReportDocument> {
    let f = monic(src)?;
    let primes = primes.map(|ps| ps.iter().map(|&p| prime(p)).collect::<CliResult<Vec<_>>>()).transpose()?;
    let input = InputDoc::Poly { source: src.to_string(), poly: f.to_string() };
    let mut notes = Vec::new();
    let mut g = f.clone();
    if let Some((c, n, b)) = detect_shifted_pure(&f) {
        if !c.is_zero() {
            g = f.shift(&c);
            notes.push(format!("normalized by x -> x + {c}"));
        }
        if n == 60 && primes.is_none() {
            let (a, u) = perfect_power(&b);
            if let Some(a) = squarefree_i64(&a) {
                if u.gcd(&30) == 1 {
                    return power_report(input, a, u, seed, notes);
                }
            }
        }
    }
    let report = analyze_polynomial(&g, primes.as_deref(), seed)?;
    Ok(ReportDocument::from_analysis(input, &report, &report.verdict, notes))
}

pub fn cmd_pure60_m(m: i64, seed: u64) -> CliResult<ReportDocument> {
    let f = IntPoly::pure(60, &BigInt::from(m));
    let report = analyze_pure60(m, seed)?;
    let input = InputDoc::Pure60 { m: m.to_string(), poly: f.to_string() };
    Ok(ReportDocument::from_analysis(input, &report, &report.verdict, Vec::new()))
}

pub fn cmd_pure60_power(a: i64, u: u64, seed: u64) -> CliResult<ReportDocument> {
    let input = InputDoc::Power { a: a.to_string(), u, poly: format!("x^60 - ({a})^{u}") };
    power_report(input, a, u, seed, Vec::new())
}

#[derive(Debug, Serialize)]
struct DedekindDocument {
    schema_version: String,
    input: String,
    prime: u64,
    dedekind: DedekindDoc,
    shape: Option<Vec<ShapeEntryDoc>>,
}

fn cmd_dedekind(src: &str, p: u64, common: &Common) -> CliResult<String> {
    let f = monic(src)?;
    let p = prime(p)?;
    let report = orelab_core::idealfactor::dedekind_test(&f, p, common.seed)?;
    let shape = if report.passes { Some(dedekind_factorization(&f, p, common.seed)?) } else { None };
    match common.format {
        Format::Json => Ok(to_json(&DedekindDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            input: f.to_string(),
            prime: p.get(),
            dedekind: dedekind_doc(&report),
            shape: shape.as_ref().map(shape_docs),
        })),
        Format::Text => {
            let mut out = String::new();
            let fs: Vec<String> = report
                .factors
                .iter()
                .map(|(g, l)| if *l == 1 { format!("({g})") } else { format!("({g})^{l}") })
                .collect();
            let _ = writeln!(out, "F = {f}");
            let _ = writeln!(out, "F mod {p} = {}", fs.join(" · "));
            let _ = writeln!(out, "M = {}", report.m_poly);
            for (g, l) in &report.failing_factors {
                let _ = writeln!(out, "{g} (multiplicity {l}) divides M mod {p}");
            }
            if report.passes {
                let _ = writeln!(out, "dedekind: passes; {p} does not divide the index");
            } else {
                let _ = writeln!(out, "dedekind: fails; {p} divides the index");
            }
            if let Some(s) = shape {
                let _ = writeln!(out, "shape: {s}");
            }
            Ok(out)
        }
        Format::Csv => Err(csv_unsupported()),
    }
}

#[derive(Debug, Serialize)]
struct ResidualEntry {
    slope: String,
    polynomial: String,
    factors: Vec<FactorDoc>,
}

#[derive(Debug, Serialize)]
struct PolygonDocument {
    schema_version: String,
    input: String,
    prime: u64,
    expansion: Vec<String>,
    polygon: PolygonDoc,
    residuals: Option<Vec<ResidualEntry>>,
}

fn cmd_polygon(src: &str, p: u64, phi_src: &str, common: &Common) -> CliResult<String> {
    let f = parse_poly(src)?;
    let phi = monic(phi_src)?;
    let p = prime(p)?;
    let exp = phi_expand(&f, &phi)?;
    let poly = principal_polygon(&exp, p)?;
    let multiplicity = poly.sides.last().map_or(0, |s| s.end.x);
    // Residual polynomials need φ irreducible modulo p.
    let residuals = match residual_polys(&exp, &poly) {
        Ok(rs) => Some(
            rs.into_iter()
                .map(|r| {
                    let factors = fq_factor(&r.poly, common.seed)
                        .map(|fs| {
                            fs.iter()
                                .map(|(g, l)| FactorDoc { phi: g.format_with("y", "t"), multiplicity: *l })
                                .collect()
                        })
                        .unwrap_or_default();
                    ResidualEntry { slope: r.side.slope(), polynomial: r.poly.format_with("y", "t"), factors }
                })
                .collect::<Vec<_>>(),
        ),
        Err(CoreError::InvalidArgument(_)) => None,
        Err(e) => return Err(e.into()),
    };
    match common.format {
        Format::Json => Ok(to_json(&PolygonDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            input: f.to_string(),
            prime: p.get(),
            expansion: exp.terms().iter().map(ToString::to_string).collect(),
            polygon: polygon_doc(&poly, multiplicity),
            residuals,
        })),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "F = {f}, phi = {phi}, p = {p}");
            out.push_str(&render_polygon(&poly));
            match residuals {
                Some(rs) => {
                    for r in rs {
                        let _ = writeln!(out, "residual for slope {}: {}", r.slope, r.polynomial);
                    }
                }
                None => {
                    let _ = writeln!(out, "phi is not irreducible modulo {p}; residual polynomials are not defined");
                }
            }
            Ok(out)
        }
        Format::Csv => Err(csv_unsupported()),
    }
}

fn cmd_scan(range: ScanRange, jobs: Option<usize>, common: &Common) -> CliResult<String> {
    let run = || scan(range, common.seed);
    let rows = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| CliError::Invalid(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    Ok(match common.format {
        Format::Csv => rows_to_csv(&rows),
        Format::Json => to_json(&rows),
        Format::Text => rows_to_text(&rows),
    })
}

pub fn execute(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Analyze { poly, primes, common } => render(&cmd_analyze(poly, primes.as_deref(), common.seed)?, common.format),
        Command::Polygon { poly, prime, phi, common } => cmd_polygon(poly, *prime, phi, common),
        Command::Dedekind { poly, prime, common } => cmd_dedekind(poly, *prime, common),
        Command::Pure60 { m, a, u, common } => {
            let doc = match (m, a, u) {
                (Some(m), _, _) => cmd_pure60_m(*m, common.seed)?,
                (None, Some(a), Some(u)) => cmd_pure60_power(*a, *u, common.seed)?,
                _ => return Err(CliError::Invalid("give either --m or both --a and --u".into())),
            };
            render(&doc, common.format)
        }
        Command::Scan { range, jobs, common } => cmd_scan(*range, *jobs, common),
    }
}

/// Parses arguments, runs the command and writes its output. Returns the
/// process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "orelab: {e}");
            e.exit_code()
        }
    }
}
