//! The `affperm` command line.
//!
//! Exit codes: `0` success, `2` usage or validation error, `3` internal
//! invariant violation.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::affine::{finite_oscillation, AffinePerm, OscVariant};
use crate::enumerate::{
    bounded_affine_counts_a, bounded_affine_counts_b, count_bounded_affine, count_bounded_avoiders,
    count_ordinary_avoiders, Method, DEFAULT_CAP,
};
use crate::error::Error;
use crate::perm::Perm;
use crate::series::{
    affine_from_class, affine_from_class_convolution, bounded_total_diagnostics, schema_classify,
    subcritical_diagnostics, supercritical_diagnostics, ClassSpec, DiagnosticsReport, SchemaReport,
};

/// Default size cap for ordinary avoider enumeration.
pub const ORDINARY_CAP: usize = 12;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "affperm", version, about = "Bounded affine permutations: counts, decompositions, series")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Override the brute-force size cap.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count bounded affine permutations or pattern avoiders.
    Count {
        #[command(subcommand)]
        what: CountWhat,
    },
    /// Standard decomposition or block structure of an affine permutation.
    Decompose {
        /// Window, e.g. "2,7,-2,-1,9,6", optionally with ";size=N".
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, value_enum, default_value_t = Mode::Std)]
        mode: Mode,
    },
    /// Generating-function tools for sum-closed classes.
    Series {
        #[command(subcommand)]
        what: SeriesWhat,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SizeArg {
    /// A single size.
    #[arg(long)]
    n: Option<usize>,
    /// Every size from 1 to N.
    #[arg(long)]
    upto: Option<usize>,
}

impl SizeArg {
    fn sizes(&self) -> (usize, bool) {
        match (self.n, self.upto) {
            (Some(n), _) => (n, false),
            (None, Some(n)) => (n, true),
            (None, None) => unreachable!("clap requires one of --n/--upto"),
        }
    }
}

#[derive(Subcommand, Debug)]
enum CountWhat {
    BoundedAffine {
        #[command(flatten)]
        size: SizeArg,
        #[arg(long, value_enum, default_value_t = MethodArg::A)]
        method: MethodArg,
    },
    Avoiders {
        #[command(flatten)]
        size: SizeArg,
        /// Comma-separated patterns in one-line digit form, e.g. "231,312".
        #[arg(long)]
        patterns: String,
        #[arg(long, value_enum, default_value_t = Universe::BoundedAffine)]
        universe: Universe,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    A,
    B,
    Brute,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::A => Method::FormulaA,
            MethodArg::B => Method::FormulaB,
            MethodArg::Brute => Method::Brute,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Universe {
    BoundedAffine,
    Ordinary,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Std,
    Blocks,
}

#[derive(Subcommand, Debug)]
enum SeriesWhat {
    /// Coefficients f̃₁ … f̃_N of the decomposable affine class.
    Affine {
        #[arg(long)]
        class: String,
        #[arg(long)]
        terms: usize,
    },
    /// Sub-, super- or critical sequence schema.
    Classify {
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 64)]
        terms: usize,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Convergence diagnostics.
    Diagnose {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long)]
        class: Option<String>,
        #[arg(long, default_value_t = 60)]
        terms: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Enasym,
    Subcritical,
    Supercritical,
}

/// One `(n, value)` pair; values are full decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub universe: Universe,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub method: Option<Method>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub patterns: Vec<String>,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DecomposeReport {
    Standard { flat: String, word: Vec<i64> },
    Decomposable { r: i64, pi: String },
    Indecomposable { oscillation: String, size: usize, positions: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceReport {
    pub class: String,
    pub sequence: String,
    pub rows: Vec<Row>,
}

/// Everything a command can print.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Count(CountReport),
    Decompose(DecomposeReport),
    Sequence(SequenceReport),
    Schema(SchemaReport),
    Diagnostics(DiagnosticsReport),
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    let parts: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
    parts.join(",") + "\n"
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
            Format::Plain => self.plain(),
            Format::Csv => self.csv(),
        }
    }

    fn plain(&self) -> String {
        match self {
            Report::Count(c) => c.rows.iter().map(|r| format!("{}\n", r.value)).collect(),
            Report::Sequence(s) => s.rows.iter().map(|r| format!("{}\n", r.value)).collect(),
            Report::Decompose(DecomposeReport::Standard { flat, word }) => {
                let w: Vec<String> = word.iter().map(i64::to_string).collect();
                format!("flat={flat} word={}\n", w.join(","))
            }
            Report::Decompose(DecomposeReport::Decomposable { r, pi }) => format!("decomposable r={r} pi={pi}\n"),
            Report::Decompose(DecomposeReport::Indecomposable { oscillation, size, positions }) => {
                let p: Vec<String> = positions.iter().map(i64::to_string).collect();
                format!("indecomposable oscillation={oscillation} size={size} at={}\n", p.join(","))
            }
            Report::Schema(s) => format!("{s}\n"),
            Report::Diagnostics(d) => d.to_string(),
        }
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Count(CountReport { rows, .. }) | Report::Sequence(SequenceReport { rows, .. }) => {
                out += "n,value\n";
                for r in rows {
                    out += &csv_line(&[r.n.to_string(), r.value.clone()]);
                }
            }
            Report::Decompose(DecomposeReport::Standard { flat, word }) => {
                let w: Vec<String> = word.iter().map(i64::to_string).collect();
                out += "flat,word\n";
                out += &csv_line(&[flat.clone(), w.join(",")]);
            }
            Report::Decompose(DecomposeReport::Decomposable { r, pi }) => {
                out += "decomposable,r,pi\n";
                out += &csv_line(&["true".into(), r.to_string(), pi.clone()]);
            }
            Report::Decompose(DecomposeReport::Indecomposable { oscillation, size, positions }) => {
                let p: Vec<String> = positions.iter().map(i64::to_string).collect();
                out += "decomposable,oscillation,size,positions\n";
                out += &csv_line(&["false".into(), oscillation.clone(), size.to_string(), p.join(",")]);
            }
            Report::Schema(s) => {
                out += "class,classification,r,tau,rho,alpha,beta,tolerance,terms\n";
                out += &csv_line(&[
                    s.class.clone(),
                    s.classification.to_string(),
                    s.r.to_string(),
                    s.tau.to_string(),
                    opt(s.rho),
                    opt(s.alpha),
                    opt(s.beta),
                    s.tolerance.to_string(),
                    s.terms.to_string(),
                ]);
            }
            Report::Diagnostics(d) => {
                out += "sequence,n,value,target,deviation\n";
                for s in &d.sequences {
                    for c in &s.checkpoints {
                        out += &csv_line(&[
                            s.name.clone(),
                            c.n.to_string(),
                            c.value.to_string(),
                            s.target.to_string(),
                            c.deviation.to_string(),
                        ]);
                    }
                }
            }
        }
        out
    }
}

/// A failed command: exit code and message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_INVALID, message: e.to_string() }
    }
}

fn invariant(message: String) -> Failure {
    Failure { code: EXIT_INVARIANT, message }
}

fn rows(start: usize, values: impl IntoIterator<Item = impl ToString>) -> Vec<Row> {
    values.into_iter().enumerate().map(|(i, v)| Row { n: start + i, value: v.to_string() }).collect()
}

fn count_bounded(size: &SizeArg, method: Method, cap: usize) -> Result<CountReport, Failure> {
    let (n, upto) = size.sizes();
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 }.into());
    }
    let values: Vec<BigUint> = match method {
        Method::FormulaA | Method::FormulaB => {
            let a = bounded_affine_counts_a(n);
            let b = bounded_affine_counts_b(n);
            if a != b {
                let k = a.iter().zip(&b).position(|(x, y)| x != y).unwrap_or(0) + 1;
                return Err(invariant(format!("formulas (a) and (b) disagree at n={k}")));
            }
            if method == Method::FormulaA {
                a
            } else {
                b
            }
        }
        Method::Brute => {
            let lo = if upto { 1 } else { n };
            (lo..=n).map(|m| count_bounded_affine(m, Method::Brute, cap)).collect::<Result<_, _>>()?
        }
    };
    let (start, values) = if upto || method == Method::Brute {
        (if upto { 1 } else { n }, values)
    } else {
        (n, values[n - 1..].to_vec())
    };
    Ok(CountReport {
        universe: Universe::BoundedAffine,
        method: Some(method),
        patterns: vec![],
        rows: rows(start, values),
    })
}

fn parse_patterns(s: &str) -> Result<Vec<Perm>, Error> {
    let pats: Vec<Perm> =
        s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect::<Result<_, _>>()?;
    if pats.is_empty() {
        return Err(Error::Parse("no patterns given".into()));
    }
    if pats.iter().any(Perm::is_empty) {
        return Err(Error::EmptyPermutation);
    }
    Ok(pats)
}

fn count_avoiders(
    size: &SizeArg,
    patterns: &str,
    universe: Universe,
    cap: Option<usize>,
) -> Result<CountReport, Failure> {
    let (n, upto) = size.sizes();
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 }.into());
    }
    let pats = parse_patterns(patterns)?;
    let lo = if upto { 1 } else { n };
    let values: Vec<BigUint> = match universe {
        Universe::BoundedAffine => {
            (lo..=n).map(|m| count_bounded_avoiders(m, &pats, cap.unwrap_or(DEFAULT_CAP))).collect::<Result<_, _>>()?
        }
        Universe::Ordinary => {
            let cap = cap.unwrap_or(ORDINARY_CAP);
            if n > cap {
                return Err(Error::CapExceeded { n, cap }.into());
            }
            (lo..=n).map(|m| count_ordinary_avoiders(m, &pats)).collect()
        }
    };
    Ok(CountReport {
        universe,
        method: None,
        patterns: pats.iter().map(Perm::to_string).collect(),
        rows: rows(lo, values),
    })
}

fn decompose(window: &str, mode: Mode) -> Result<DecomposeReport, Failure> {
    let w: AffinePerm = window.parse()?;
    Ok(match mode {
        Mode::Std => {
            let d = w.standard_decomposition();
            DecomposeReport::Standard { flat: d.flat.to_string(), word: d.word }
        }
        Mode::Blocks => match w.is_decomposable() {
            Some(d) => DecomposeReport::Decomposable { r: d.shift, pi: d.block.to_string() },
            None => {
                let size = (w.size() + 1).max(3);
                let found = [OscVariant::First, OscVariant::Second]
                    .into_iter()
                    .map(|v| finite_oscillation(size, v))
                    .find_map(|osc| w.find_finite_pattern(&osc, None).ok().flatten().map(|pos| (osc, pos)));
                let (osc, positions) = found.ok_or_else(|| {
                    invariant(format!("no cut found, yet no oscillation of size {size} is contained"))
                })?;
                DecomposeReport::Indecomposable { oscillation: osc.to_string(), size, positions }
            }
        },
    })
}

fn series_affine(class: &str, terms: usize) -> Result<SequenceReport, Failure> {
    let spec = ClassSpec::parse(class)?;
    let f = spec.f_series(terms)?;
    let a = affine_from_class(&f)?;
    if a != affine_from_class_convolution(&f)? {
        return Err(invariant("log-derivative and convolution disagree".into()));
    }
    let ints = a.to_integers().ok_or_else(|| invariant("non-integral coefficients".into()))?;
    Ok(SequenceReport {
        class: spec.name().to_string(),
        sequence: "affine".into(),
        rows: rows(1, ints.into_iter().skip(1)),
    })
}

fn diagnose(target: Target, class: Option<&str>, terms: usize) -> Result<DiagnosticsReport, Failure> {
    let spec = || -> Result<ClassSpec, Failure> {
        let name = class
            .ok_or_else(|| Failure { code: EXIT_INVALID, message: "--class is required for this target".into() })?;
        Ok(ClassSpec::parse(name)?)
    };
    Ok(match target {
        Target::Enasym => bounded_total_diagnostics(terms)?,
        Target::Subcritical => subcritical_diagnostics(&spec()?, terms)?,
        Target::Supercritical => supercritical_diagnostics(&spec()?, terms)?,
    })
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let cap = cli.cap.unwrap_or(DEFAULT_CAP);
    Ok(match &cli.command {
        Command::Count { what: CountWhat::BoundedAffine { size, method } } => {
            Report::Count(count_bounded(size, (*method).into(), cap)?)
        }
        Command::Count { what: CountWhat::Avoiders { size, patterns, universe } } => {
            Report::Count(count_avoiders(size, patterns, *universe, cli.cap)?)
        }
        Command::Decompose { window, mode } => Report::Decompose(decompose(window, *mode)?),
        Command::Series { what: SeriesWhat::Affine { class, terms } } => {
            Report::Sequence(series_affine(class, *terms)?)
        }
        Command::Series { what: SeriesWhat::Classify { class, terms, tolerance } } => {
            Report::Schema(schema_classify(&ClassSpec::parse(class)?, *terms, *tolerance)?)
        }
        Command::Series { what: SeriesWhat::Diagnose { target, class, terms } } => {
            Report::Diagnostics(diagnose(*target, class.as_deref(), *terms)?)
        }
    })
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run_with<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INVALID
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    if let Some(cap) = cli.cap {
        let _ = writeln!(err, "warning: brute-force size cap overridden to {cap}");
    }
    match execute(&cli) {
        Ok(report) => {
            let _ = write!(out, "{}", report.render(cli.format));
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Run with the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
