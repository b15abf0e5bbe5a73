//! Command-line front end for the `riemann-mono` library.
//!
//! The binary exposes six commands:
//!
//! - `sum` — evaluate a Riemann-sum variant of a function spec over a range
//!   of `n` and judge the sequence's monotonicity;
//! - `certify` — run every certification rule on a spec and report the
//!   resulting certificates (exit 1 if two certificates contradict);
//! - `poly-decide` — decide the monotonicity of a rational polynomial's sums
//!   exactly, for all `n`, with a printable proof trace;
//! - `fourier-sum` — evaluate left/right sums through a cosine-coefficient
//!   series and compare against direct summation;
//! - `scan-fb` — sweep the family `f_b(x) = 1/(1 − b·x + x²)` over a `b`
//!   grid, reporting per-`b` monotonicity and violation witnesses;
//! - `verify` — re-run library verification suites (`majorization`,
//!   `fb-identities`), exiting 1 when a check fails.
//!
//! Exit codes: `0` success (all checks passed), `1` check failures, `2`
//! usage or domain errors. Output is byte-deterministic for fixed arguments
//! and seed; the environment variable `RIEMANN_MONO_THREADS` caps internal
//! parallelism (`0` or unset = automatic).
//!
//! This crate is a thin shell: [`parse_args`] validates arguments into a
//! [`RunConfig`], and [`run`] writes the primary output to the supplied
//! writer (or `--out` file) and returns the exit code.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use riemann_mono::certify::{certify_with_horizon, find_contradiction, Certificate};
use riemann_mono::fb;
use riemann_mono::fourier::{sum_from_coeffs, FourierSpec};
use riemann_mono::funcspec::FunctionSpec;
use riemann_mono::majorize;
use riemann_mono::polyexact::{decide_monotone, Rational};
use riemann_mono::sums::{monotonicity_scan, sum_sequence, sum_value, ScanDirection, SumKind};
use riemann_mono::{Error, Result};

/// Default seed for randomized oracles; fixed so repeated runs are
/// byte-identical without flags.
pub const DEFAULT_SEED: u64 = 0x5EED_0001;

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// Primary output format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
    Svg,
}

/// Fully validated invocation: one command plus output routing.
#[derive(Debug)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    /// Primary output goes to this file when set, else to the writer
    /// passed to [`run`].
    pub out_path: Option<PathBuf>,
    /// Seed for randomized oracles (HLP trials).
    pub seed: u64,
}

/// One validated command with its inputs.
#[derive(Debug)]
pub enum Command {
    Sum {
        spec_text: String,
        spec: FunctionSpec,
        kind: SumKind,
        n_from: u32,
        n_to: u32,
        /// Monotonicity-judgment tolerance; defaults to the spec's own.
        tolerance: Option<f64>,
    },
    Certify {
        spec_text: String,
        spec: FunctionSpec,
        kind: SumKind,
        horizon: u64,
    },
    PolyDecide {
        spec_text: String,
        spec: FunctionSpec,
        kind: SumKind,
    },
    FourierSum {
        builtin: FourierSpec,
        kind: SumKind,
        n: u32,
        tolerance: f64,
    },
    ScanFb {
        b_from: f64,
        b_to: f64,
        b_step: f64,
        n_max: u32,
        tolerance: f64,
        /// Optional side output: one CSV row per `(b, kind)`.
        csv: Option<PathBuf>,
    },
    VerifyMajorization {
        n_max: u32,
    },
    VerifyFbIdentities,
}

// ---------------------------------------------------------------------------
// Argument parsing
// ---------------------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(
    name = "riemann-mono",
    version,
    about = "Riemann-sum monotonicity toolkit: evaluate, certify, decide, scan"
)]
struct Cli {
    /// Key = value defaults file; explicit flags override its entries.
    /// Recognized keys: format, seed, tolerance, horizon, b-step, n-max.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output format (commands support text and json; `sum` adds csv and svg).
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Write the primary output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Seed for randomized oracles.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args, Debug)]
struct SpecKindArgs {
    /// Function spec (grammar: `poly:c0,c1,...` ascending coefficients,
    /// `fb:<b>`, `fourier:<expcos|cos:m|const:c>`, `blackbox:<name>`,
    /// `reflect(<f>)`, `neg(<f>)`, `sum(c1,<f>,c2,<g>)`).
    #[arg(long)]
    spec: String,
    /// Sum kind: left | right | central | bilateral | midpoint | trapezium |
    /// symmetric | shifted:<k>:<left|right> | nodes:<k|k2>:<left|right>:<per-n|per-an>.
    #[arg(long)]
    kind: String,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Evaluate Riemann-sum values over a range of n.
    Sum {
        #[command(flatten)]
        target: SpecKindArgs,
        /// Index or inclusive range, e.g. `7` or `1..50`.
        #[arg(long, value_name = "A[..B]")]
        n: String,
        /// Monotonicity-judgment tolerance (defaults to the spec's own).
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Run every certification rule on a spec and report certificates.
    Certify {
        #[command(flatten)]
        target: SpecKindArgs,
        /// Horizon for numeric sequence hypotheses.
        #[arg(long)]
        horizon: Option<u64>,
    },
    /// Decide monotonicity exactly for a rational polynomial spec.
    PolyDecide {
        #[command(flatten)]
        target: SpecKindArgs,
        /// Shorthand for `--format json`.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a left/right sum through its cosine-series coefficients.
    FourierSum {
        /// Coefficient provider: `expcos`, `cos:<m>`, or `const:<c>`.
        #[arg(long)]
        builtin: String,
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: u32,
        /// Tail-bound tolerance for series truncation.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Scan the f_b family for sum monotonicity over a grid of b.
    ScanFb {
        #[arg(long, allow_negative_numbers = true)]
        b_from: f64,
        #[arg(long, allow_negative_numbers = true)]
        b_to: f64,
        #[arg(long)]
        b_step: Option<f64>,
        #[arg(long)]
        n_max: Option<u32>,
        /// Monotonicity tolerance per consecutive step.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Also write one CSV row per (b, kind) to this path.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Re-run a library verification suite; exits 1 on any failed check.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
}

#[derive(Subcommand, Debug)]
enum VerifySuite {
    /// Brute-force the split-interval majorization lemma and the HLP oracle.
    Majorization {
        /// Largest n for the lemma-vector checks.
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Re-check the f_b constants, closed forms, identities and inequalities.
    FbIdentities,
}

/// Reads a `key = value` defaults file (one pair per line, `#` comments).
fn read_config_file(path: &PathBuf) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parameter(format!("cannot read config file {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!(
                "config file {} line {}: expected `key = value`",
                path.display(),
                idx + 1
            ))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Fetches `key` from the config map parsed as `T`, if present.
fn config_get<T: FromStr>(cfg: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
    match cfg.get(key) {
        None => Ok(None),
        Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
            Error::Parse(format!("config key `{key}`: cannot parse value `{raw}`"))
        }),
    }
}

fn parse_n_range(text: &str) -> Result<(u32, u32)> {
    let parse_one = |s: &str| -> Result<u32> {
        s.trim()
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("flag --n: `{s}` is not a positive integer")))
    };
    let (from, to) = match text.split_once("..") {
        Some((a, b)) => (parse_one(a)?, parse_one(b)?),
        None => {
            let n = parse_one(text)?;
            (n, n)
        }
    };
    if from == 0 || from > to {
        return Err(Error::Parse(format!(
            "flag --n: range `{text}` must satisfy 1 <= from <= to"
        )));
    }
    Ok((from, to))
}

fn parse_target(target: &SpecKindArgs) -> Result<(FunctionSpec, SumKind)> {
    let spec: FunctionSpec = target
        .spec
        .parse()
        .map_err(|e| Error::Parse(format!("flag --spec: {e}")))?;
    let kind: SumKind = target
        .kind
        .parse()
        .map_err(|e| Error::Parse(format!("flag --kind: {e}")))?;
    Ok((spec, kind))
}

fn require_positive(name: &str, value: Option<f64>) -> Result<Option<f64>> {
    match value {
        Some(t) if t.is_nan() || t <= 0.0 => Err(Error::Parse(format!(
            "flag --{name}: tolerance must be positive, got {t}"
        ))),
        other => Ok(other),
    }
}

/// Parses and validates command-line arguments into a [`RunConfig`].
///
/// All grammar, kind, and range validation happens here so that failures are
/// uniform usage errors (exit code 2); messages name the offending flag.
/// `--help` and `--version` are not failures: they print to stdout and exit 0.
pub fn parse_args<I, S>(argv: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            e.exit()
        }
        Err(e) => return Err(Error::Parse(e.to_string())),
    };
    let cfg = match &cli.config {
        Some(path) => read_config_file(path)?,
        None => BTreeMap::new(),
    };
    let format = match cli.format {
        Some(f) => Some(f),
        None => match config_get::<String>(&cfg, "format")?.as_deref() {
            None => None,
            Some("text") => Some(OutputFormat::Text),
            Some("json") => Some(OutputFormat::Json),
            Some("csv") => Some(OutputFormat::Csv),
            Some("svg") => Some(OutputFormat::Svg),
            Some(other) => {
                return Err(Error::Parse(format!(
                    "config key `format`: unknown format `{other}`"
                )))
            }
        },
    }
    .unwrap_or(OutputFormat::Text);
    let seed = match cli.seed {
        Some(s) => s,
        None => config_get::<u64>(&cfg, "seed")?.unwrap_or(DEFAULT_SEED),
    };

    let command = match &cli.command {
        CliCommand::Sum { target, n, tolerance } => {
            let (spec, kind) = parse_target(target)?;
            let (n_from, n_to) = parse_n_range(n)?;
            let tolerance =
                require_positive("tolerance", tolerance.or(config_get(&cfg, "tolerance")?))?;
            Command::Sum {
                spec_text: target.spec.clone(),
                spec,
                kind,
                n_from,
                n_to,
                tolerance,
            }
        }
        CliCommand::Certify { target, horizon } => {
            let (spec, kind) = parse_target(target)?;
            let horizon = horizon
                .or(config_get(&cfg, "horizon")?)
                .unwrap_or(riemann_mono::certify::DEFAULT_HORIZON);
            if matches!(format, OutputFormat::Csv | OutputFormat::Svg) {
                return Err(Error::Parse(
                    "flag --format: certify supports text and json only".into(),
                ));
            }
            Command::Certify {
                spec_text: target.spec.clone(),
                spec,
                kind,
                horizon,
            }
        }
        CliCommand::PolyDecide { target, json } => {
            let (spec, kind) = parse_target(target)?;
            if spec.as_polynomial().is_none() {
                return Err(Error::Parse(
                    "flag --spec: poly-decide requires an exact polynomial spec (poly:... or a \
                     polynomial combinator)"
                        .into(),
                ));
            }
            if matches!(format, OutputFormat::Csv | OutputFormat::Svg) {
                return Err(Error::Parse(
                    "flag --format: poly-decide supports text and json only".into(),
                ));
            }
            return Ok(RunConfig {
                command: Command::PolyDecide {
                    spec_text: target.spec.clone(),
                    spec,
                    kind,
                },
                format: if *json { OutputFormat::Json } else { format },
                out_path: cli.out.clone(),
                seed,
            });
        }
        CliCommand::FourierSum {
            builtin,
            kind,
            n,
            tolerance,
        } => {
            let builtin = FourierSpec::parse(builtin)
                .map_err(|e| Error::Parse(format!("flag --builtin: {e}")))?;
            let kind: SumKind = kind
                .parse()
                .map_err(|e| Error::Parse(format!("flag --kind: {e}")))?;
            if *n == 0 {
                return Err(Error::Parse("flag --n: must be >= 1".into()));
            }
            let tolerance =
                require_positive("tolerance", tolerance.or(config_get(&cfg, "tolerance")?))?
                    .unwrap_or(1e-12);
            if matches!(format, OutputFormat::Csv | OutputFormat::Svg) {
                return Err(Error::Parse(
                    "flag --format: fourier-sum supports text and json only".into(),
                ));
            }
            Command::FourierSum {
                builtin,
                kind,
                n: *n,
                tolerance,
            }
        }
        CliCommand::ScanFb {
            b_from,
            b_to,
            b_step,
            n_max,
            tolerance,
            csv,
        } => {
            let b_step = require_positive("b-step", b_step.or(config_get(&cfg, "b-step")?))?
                .unwrap_or(0.01);
            let n_max = n_max.or(config_get(&cfg, "n-max")?).unwrap_or(2000);
            let tolerance =
                require_positive("tolerance", tolerance.or(config_get(&cfg, "tolerance")?))?
                    .unwrap_or(1e-12);
            if b_from.is_nan() || b_to.is_nan() || *b_from > *b_to || *b_to >= 2.0 {
                return Err(Error::Parse(format!(
                    "flags --b-from/--b-to: need b_from <= b_to < 2, got [{b_from}, {b_to}]"
                )));
            }
            if n_max < 2 {
                return Err(Error::Parse("flag --n-max: must be >= 2".into()));
            }
            if matches!(format, OutputFormat::Csv | OutputFormat::Svg) {
                return Err(Error::Parse(
                    "flag --format: scan-fb emits text or json (use --csv PATH for the CSV table)"
                        .into(),
                ));
            }
            Command::ScanFb {
                b_from: *b_from,
                b_to: *b_to,
                b_step,
                n_max,
                tolerance,
                csv: csv.clone(),
            }
        }
        CliCommand::Verify { suite } => {
            if matches!(format, OutputFormat::Csv | OutputFormat::Svg) {
                return Err(Error::Parse(
                    "flag --format: verify supports text and json only".into(),
                ));
            }
            match suite {
                VerifySuite::Majorization { n_max } => Command::VerifyMajorization {
                    n_max: n_max.or(config_get(&cfg, "n-max")?).unwrap_or(60),
                },
                VerifySuite::FbIdentities => Command::VerifyFbIdentities,
            }
        }
    };
    Ok(RunConfig {
        command,
        format,
        out_path: cli.out.clone(),
        seed,
    })
}

// ---------------------------------------------------------------------------
// Output helpers
// ---------------------------------------------------------------------------

/// CSV real formatting: `.` decimal, 17 significant digits.
fn csv_real(v: f64) -> String {
    format!("{v:.16e}")
}

fn json_line<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Verification(format!("JSON serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Minimal SVG line plot: fixed 800x480 viewport, one polyline, axis frame,
/// and range labels. No external plotting semantics.
fn svg_polyline(title: &str, points: &[(u32, f64)]) -> String {
    const W: f64 = 800.0;
    const H: f64 = 480.0;
    const ML: f64 = 70.0;
    const MR: f64 = 20.0;
    const MT: f64 = 30.0;
    const MB: f64 = 40.0;
    let plot_w = W - ML - MR;
    let plot_h = H - MT - MB;
    let (n0, n1) = match points {
        [] => (0.0, 1.0),
        [only] => (f64::from(only.0) - 0.5, f64::from(only.0) + 0.5),
        _ => (
            f64::from(points.first().unwrap().0),
            f64::from(points.last().unwrap().0),
        ),
    };
    let (mut v0, mut v1) = points.iter().fold(
        (f64::INFINITY, f64::NEG_INFINITY),
        |(lo, hi), &(_, v)| (lo.min(v), hi.max(v)),
    );
    if points.is_empty() || v0 > v1 {
        v0 = 0.0;
        v1 = 1.0;
    }
    if v1 - v0 < 1e-300 {
        v0 -= 0.5;
        v1 += 0.5;
    }
    let x_of = |n: f64| ML + (n - n0) / (n1 - n0).max(1e-300) * plot_w;
    let y_of = |v: f64| MT + (1.0 - (v - v0) / (v1 - v0)) * plot_h;
    let mut path = String::new();
    for (i, &(n, v)) in points.iter().enumerate() {
        if i > 0 {
            path.push(' ');
        }
        let _ = write!(path, "{:.2},{:.2}", x_of(f64::from(n)), y_of(v));
    }
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"480\" ",
            "viewBox=\"0 0 800 480\">\n",
            "<rect x=\"0\" y=\"0\" width=\"800\" height=\"480\" fill=\"white\"/>\n",
            "<text x=\"{ml}\" y=\"20\" font-family=\"monospace\" font-size=\"13\">{title}</text>\n",
            "<line x1=\"{ml}\" y1=\"{yb}\" x2=\"{xr}\" y2=\"{yb}\" stroke=\"black\"/>\n",
            "<line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{yb}\" stroke=\"black\"/>\n",
            "<text x=\"{ml}\" y=\"{ybl}\" font-family=\"monospace\" font-size=\"11\">n={n0}</text>\n",
            "<text x=\"{xr}\" y=\"{ybl}\" text-anchor=\"end\" font-family=\"monospace\" ",
            "font-size=\"11\">n={n1}</text>\n",
            "<text x=\"5\" y=\"{yt}\" font-family=\"monospace\" font-size=\"11\">{v1:.6}</text>\n",
            "<text x=\"5\" y=\"{yb}\" font-family=\"monospace\" font-size=\"11\">{v0:.6}</text>\n",
            "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"{path}\"/>\n",
            "</svg>\n"
        ),
        ml = ML,
        mt = MT,
        xr = W - MR,
        yb = H - MB,
        ybl = H - MB + 15.0,
        yt = MT + 4.0,
        title = title,
        n0 = n0,
        n1 = n1,
        v0 = v0,
        v1 = v1,
        path = path,
    )
}

// ---------------------------------------------------------------------------
// Command execution
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SumValueRow {
    n: u32,
    value: f64,
}

#[derive(Serialize)]
struct SumOutput<'a> {
    spec: &'a str,
    kind: String,
    n_from: u32,
    n_to: u32,
    tolerance: f64,
    values: Vec<SumValueRow>,
    monotonicity: riemann_mono::sums::MonotonicityStatus,
}

#[derive(Serialize)]
struct CertifyOutput<'a> {
    spec: &'a str,
    kind: String,
    horizon: u64,
    certificates: &'a [Certificate],
    /// Rule ids of a contradicting pair, when found.
    contradiction: Option<[String; 2]>,
}

#[derive(Serialize)]
struct PolyDecideOutput<'a> {
    spec: &'a str,
    kind: String,
    #[serde(flatten)]
    verdict: &'a riemann_mono::polyexact::ExactVerdict,
}

#[derive(Serialize)]
struct FourierOutput {
    builtin: String,
    kind: String,
    n: u32,
    tolerance: f64,
    series_value: f64,
    direct_value: f64,
    residual: f64,
}

#[derive(Serialize)]
struct Check {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct VerifyOutput {
    suite: String,
    seed: u64,
    checks: Vec<Check>,
    pass: bool,
}

fn emit(config: &RunConfig, out: &mut dyn Write, payload: &str) -> Result<()> {
    match &config.out_path {
        Some(path) => std::fs::write(path, payload).map_err(|e| {
            Error::Parameter(format!("cannot write output file {}: {e}", path.display()))
        }),
        None => out
            .write_all(payload.as_bytes())
            .map_err(|e| Error::Verification(format!("write failed: {e}"))),
    }
}

fn run_sum(
    config: &RunConfig,
    out: &mut dyn Write,
    target: (&str, &FunctionSpec, &SumKind),
    n_from: u32,
    n_to: u32,
    tolerance: Option<f64>,
) -> Result<i32> {
    let (spec_text, spec, kind) = target;
    let seq = sum_sequence(spec, kind, n_from, n_to)?;
    let tol = tolerance.unwrap_or_else(|| spec.default_tolerance());
    let status = monotonicity_scan(&seq, tol);
    let payload = match config.format {
        OutputFormat::Text => {
            let mut s = format!("sum `{spec_text}` kind {kind} for n = {n_from}..{n_to}\n");
            for &(n, v) in &seq {
                let _ = writeln!(s, "  n = {n}: {v}");
            }
            let _ = writeln!(
                s,
                "monotonicity: {} (strict: {}, tolerance {:e}, violations {})",
                status.direction,
                status.strict,
                status.tolerance,
                status.violations.len()
            );
            s
        }
        OutputFormat::Json => json_line(&SumOutput {
            spec: spec_text,
            kind: kind.to_string(),
            n_from,
            n_to,
            tolerance: tol,
            values: seq.iter().map(|&(n, value)| SumValueRow { n, value }).collect(),
            monotonicity: status,
        })?,
        OutputFormat::Csv => {
            let mut s = String::from("n,value\n");
            for &(n, v) in &seq {
                let _ = writeln!(s, "{n},{}", csv_real(v));
            }
            s
        }
        OutputFormat::Svg => svg_polyline(
            &format!("{kind} sums of {spec_text}"),
            &seq,
        ),
    };
    emit(config, out, &payload)?;
    Ok(0)
}

fn run_certify(
    config: &RunConfig,
    out: &mut dyn Write,
    spec_text: &str,
    spec: &FunctionSpec,
    kind: &SumKind,
    horizon: u64,
) -> Result<i32> {
    let certs = certify_with_horizon(spec, kind, horizon);
    let contradiction = find_contradiction(&certs)
        .map(|(i, j)| [certs[i].rule_id.clone(), certs[j].rule_id.clone()]);
    let payload = match config.format {
        OutputFormat::Json => json_line(&CertifyOutput {
            spec: spec_text,
            kind: kind.to_string(),
            horizon,
            certificates: &certs,
            contradiction: contradiction.clone(),
        })?,
        _ => {
            let mut s = format!(
                "certification of `{spec_text}` kind {kind} (horizon {horizon}): {} certificate(s)\n",
                certs.len()
            );
            for cert in &certs {
                let _ = writeln!(s, "{cert}");
            }
            if let Some([a, b]) = &contradiction {
                let _ = writeln!(s, "CONTRADICTION between rules {a} and {b}");
            }
            s
        }
    };
    emit(config, out, &payload)?;
    Ok(if contradiction.is_some() { 1 } else { 0 })
}

fn run_poly_decide(
    config: &RunConfig,
    out: &mut dyn Write,
    spec_text: &str,
    spec: &FunctionSpec,
    kind: &SumKind,
) -> Result<i32> {
    let poly = spec.as_polynomial().ok_or_else(|| {
        Error::Parameter("poly-decide requires an exact polynomial spec".into())
    })?;
    let verdict = decide_monotone(&poly, kind)?;
    let payload = match config.format {
        OutputFormat::Json => json_line(&PolyDecideOutput {
            spec: spec_text,
            kind: kind.to_string(),
            verdict: &verdict,
        })?,
        _ => {
            let mut s = format!(
                "exact decision for `{spec_text}` kind {kind}: {} (valid for all n >= {}: {})\n",
                verdict.direction, verdict.proof.min_n, verdict.valid_for_all_n
            );
            let _ = writeln!(
                s,
                "difference numerator coefficients (ascending): [{}]",
                verdict.proof.difference_numerator.join(", ")
            );
            if !verdict.proof.isolating_intervals.is_empty() {
                let _ = writeln!(
                    s,
                    "isolating intervals for difference-numerator roots: {}",
                    verdict
                        .proof
                        .isolating_intervals
                        .iter()
                        .map(|[a, b]| format!("({a}, {b}]"))
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
            for sample in &verdict.proof.integer_signs {
                let _ = writeln!(s, "sign at n = {}: {}", sample.n, sample.sign);
            }
            for region in &verdict.proof.region_signs {
                let _ = writeln!(
                    s,
                    "constant sign {} on n = {}..{}",
                    region.sign, region.from_n, region.to_n
                );
            }
            let _ = writeln!(s, "tail sign for large n: {}", verdict.proof.tail_sign);
            for note in &verdict.proof.notes {
                let _ = writeln!(s, "note: {note}");
            }
            s
        }
    };
    emit(config, out, &payload)?;
    Ok(0)
}

fn run_fourier_sum(
    config: &RunConfig,
    out: &mut dyn Write,
    builtin: &FourierSpec,
    kind: &SumKind,
    n: u32,
    tolerance: f64,
) -> Result<i32> {
    let provider = builtin.provider();
    let (f0, f1) = builtin.boundary_values();
    let series_value = sum_from_coeffs(&provider, f0, f1, n, kind, tolerance)?;
    let spec = FunctionSpec::Fourier(builtin.clone());
    let direct_value = sum_value(&spec, kind, n)?;
    let output = FourierOutput {
        builtin: builtin.to_string(),
        kind: kind.to_string(),
        n,
        tolerance,
        series_value,
        direct_value,
        residual: (series_value - direct_value).abs(),
    };
    let payload = match config.format {
        OutputFormat::Json => json_line(&output)?,
        _ => format!(
            "coefficient-series sum of `{}` kind {} at n = {}\n  series value: {}\n  direct value: {}\n  residual: {:e}\n",
            output.builtin, output.kind, n, output.series_value, output.direct_value, output.residual
        ),
    };
    emit(config, out, &payload)?;
    Ok(0)
}

fn scan_csv(report: &fb::ScanReport) -> String {
    let mut s = String::from("b,kind,direction,first_violation_n,first_violation_delta\n");
    for (i, &b) in report.b_grid.iter().enumerate() {
        for (kind, status) in [("left", &report.left[i]), ("right", &report.right[i])] {
            let (first_n, first_delta) = match status.violations.first() {
                Some(v) => (v.n.to_string(), csv_real(v.delta)),
                None => (String::new(), String::new()),
            };
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                csv_real(b),
                kind,
                status.direction,
                first_n,
                first_delta
            );
        }
    }
    s
}

fn run_scan_fb(
    config: &RunConfig,
    out: &mut dyn Write,
    grid: (f64, f64, f64),
    n_max: u32,
    tolerance: f64,
    csv: Option<&PathBuf>,
) -> Result<i32> {
    let (b_from, b_to, b_step) = grid;
    let report = fb::scan(b_from, b_to, b_step, n_max, tolerance)?;
    for witness in &report.witnesses {
        if !fb::verify_witness(witness, tolerance)? {
            return Err(Error::Verification(format!(
                "witness at b = {}, {} sums, n = {} did not reproduce on recomputation",
                witness.b, witness.kind, witness.n
            )));
        }
    }
    if let Some(path) = csv {
        std::fs::write(path, scan_csv(&report)).map_err(|e| {
            Error::Parameter(format!("cannot write CSV file {}: {e}", path.display()))
        })?;
    }
    let payload = match config.format {
        OutputFormat::Json => json_line(&report)?,
        _ => {
            let mut counts = BTreeMap::new();
            for (kind, statuses) in [("left", &report.left), ("right", &report.right)] {
                for status in statuses.iter() {
                    *counts.entry((kind, status.direction.to_string())).or_insert(0u32) += 1;
                }
            }
            let mut s = format!(
                "scanned {} values of b in [{}, {}] step {}, n = 1..{}, tolerance {:e}\n",
                report.b_grid.len(),
                b_from,
                b_to,
                b_step,
                n_max,
                tolerance
            );
            for ((kind, direction), count) in &counts {
                let _ = writeln!(s, "  {kind}: {direction} for {count} value(s) of b");
            }
            let _ = writeln!(
                s,
                "violation witnesses: {} (each re-verified on recomputation)",
                report.witnesses.len()
            );
            for w in report.witnesses.iter().take(20) {
                let _ = writeln!(
                    s,
                    "  b = {}: {} sums move by {:e} from n = {} to {}",
                    w.b,
                    w.kind,
                    w.delta,
                    w.n,
                    w.n + 1
                );
            }
            if report.witnesses.len() > 20 {
                let _ = writeln!(s, "  ... {} more", report.witnesses.len() - 20);
            }
            s
        }
    };
    emit(config, out, &payload)?;
    Ok(0)
}

fn run_verify_majorization(
    config: &RunConfig,
    out: &mut dyn Write,
    n_max: u32,
) -> Result<i32> {
    let mut checks = Vec::new();

    // 1. Exact weak supermajorization of the split-interval lemma vectors.
    let mut lemma_pass = true;
    let mut lemma_detail = format!("holds for n = 1..{n_max}");
    for n in 1..=n_max {
        let (x, y) = majorize::lemma_vectors_exact(n);
        match majorize::weak_supermajorizes_exact(&x, &y)? {
            None => {}
            Some(prefix) => {
                lemma_pass = false;
                lemma_detail = format!("fails at n = {n}, prefix {prefix}");
                break;
            }
        }
    }
    checks.push(Check {
        name: "lemma vectors weakly supermajorize (exact prefix sums)".into(),
        pass: lemma_pass,
        detail: lemma_detail,
    });

    // 2. Closed-form prefix sums for the first block structure.
    let prefix_max = n_max.min(30);
    let mut prefix_pass = true;
    let mut prefix_detail = format!("matches exact prefixes for n = 1..{prefix_max}");
    'outer: for n in 1..=prefix_max {
        let (x, _) = majorize::lemma_vectors_exact(n);
        let mut sorted = x.clone();
        sorted.sort();
        let mut acc = Rational::from_integer(0.into());
        for (idx, value) in sorted.iter().enumerate() {
            acc += value;
            let k = (idx + 1) as u64;
            let m = (idx as u32) / (n + 1);
            if majorize::lemma_prefix_x_closed_form(n, m, k) != acc {
                prefix_pass = false;
                prefix_detail = format!("mismatch at n = {n}, prefix {k}");
                break 'outer;
            }
        }
    }
    checks.push(Check {
        name: "closed-form prefix sums match exact prefixes".into(),
        pass: prefix_pass,
        detail: prefix_detail,
    });

    // 3. HLP oracle: no decreasing convex φ separates the lemma vectors.
    let hlp_max = n_max.min(20);
    let mut hlp_pass = true;
    let mut hlp_detail = format!("200 trials per n, n = 1..{hlp_max}, seed {}", config.seed);
    for n in 1..=hlp_max {
        let instance = majorize::lemma_vectors(n);
        if !majorize::hlp_oracle(&instance, 200, config.seed.wrapping_add(u64::from(n))) {
            hlp_pass = false;
            hlp_detail = format!("oracle found a separating function at n = {n}");
            break;
        }
    }
    checks.push(Check {
        name: "HLP decreasing-convex oracle agrees".into(),
        pass: hlp_pass,
        detail: hlp_detail,
    });

    // 4. The majorization route's payoff on a convex decreasing instance.
    let spec: FunctionSpec = "poly:1,-2,1".parse()?;
    let seq = sum_sequence(&spec, &SumKind::Right, 1, n_max.max(2))?;
    let status = monotonicity_scan(&seq, 1e-12);
    let increasing = status.direction == ScanDirection::Increasing;
    checks.push(Check {
        name: "right sums of (1-x)^2 increase".into(),
        pass: increasing,
        detail: format!(
            "direction {} for n = 1..{} at tolerance 1e-12",
            status.direction,
            n_max.max(2)
        ),
    });

    finish_verify(config, out, "majorization", checks)
}

fn run_verify_fb_identities(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let mut checks = Vec::new();

    // 1. Constants.
    let c = fb::constants();
    let residual = c.alpha.powi(3) - 3.0 * c.alpha * c.alpha + 3.0;
    let constants_pass = c.alpha > -0.8795
        && c.alpha < -0.8793
        && residual.abs() <= 1e-12
        && (c.gamma - 1.347296).abs() < 1e-5
        && (c.beta_plus - 1.651388).abs() < 1e-5;
    checks.push(Check {
        name: "constants (alpha root, gamma, beta+)".into(),
        pass: constants_pass,
        detail: format!(
            "alpha = {:.6} (residual {:.2e}), gamma = {:.6}, beta+ = {:.6}",
            c.alpha, residual, c.gamma, c.beta_plus
        ),
    });

    // 2. Closed form against direct sums.
    let spec_f1 = FunctionSpec::fb(1.0)?;
    let mut max_gap: f64 = 0.0;
    for n in 1..=200u32 {
        let direct = sum_value(&spec_f1, &SumKind::Right, n)?;
        let closed = fb::f1_closed_form(f64::from(n))?;
        max_gap = max_gap.max((direct - closed).abs());
    }
    checks.push(Check {
        name: "closed form matches direct right sums of f_1 (n = 1..200)".into(),
        pass: max_gap <= 1e-10,
        detail: format!("max |difference| = {max_gap:.3e}; tail method: {}", fb::F2_TAIL_METHOD),
    });

    // 3. Anchor values.
    let r1 = sum_value(&spec_f1, &SumKind::Right, 1)?;
    let r2 = sum_value(&spec_f1, &SumKind::Right, 2)?;
    let anchors_pass = (r1 - 1.0).abs() <= 1e-14 && (r2 - 7.0 / 6.0).abs() <= 1e-14;
    checks.push(Check {
        name: "anchor values R_1(f_1) = 1, R_2(f_1) = 7/6".into(),
        pass: anchors_pass,
        detail: format!("R_1 = {r1}, R_2 = {r2}"),
    });

    // 4. Trigamma identity for the b = 2 endpoint.
    let mut max_tri: f64 = 0.0;
    for n in 1..=1000u32 {
        let direct = fb::f2_left_sum(n)?;
        let closed = f64::from(n)
            * (std::f64::consts::PI.powi(2) / 6.0 - fb::trigamma(f64::from(n) + 1.0)?);
        max_tri = max_tri.max((direct - closed).abs());
    }
    checks.push(Check {
        name: "trigamma identity for left sums of f_2 (n = 1..1000)".into(),
        pass: max_tri <= 1e-10,
        detail: format!("max |difference| = {max_tri:.3e}"),
    });

    // 5. Hyperbolic inequalities.
    let ineq = fb::check_inequalities(50.0, 1e-3)?;
    let worst = ineq
        .items
        .iter()
        .min_by(|a, b| a.min_margin.total_cmp(&b.min_margin))
        .expect("nonempty items");
    checks.push(Check {
        name: "hyperbolic inequalities on [0, 50] step 1e-3".into(),
        pass: ineq.pass,
        detail: format!(
            "worst relative margin {:.3e} at x = {} ({})",
            worst.min_margin, worst.at_x, worst.name
        ),
    });

    // 6. Decomposition checks.
    let mut decomp_pass = true;
    let mut decomp_detail = String::from("b = 0.75, 1.0, 1.2 all pass");
    for b in [0.75, 1.0, 1.2] {
        let report = fb::decomposition_checks(b)?;
        if !report.pass {
            decomp_pass = false;
            decomp_detail = format!("failed at b = {b}");
            break;
        }
    }
    checks.push(Check {
        name: "quartic Taylor identity and remainder decompositions".into(),
        pass: decomp_pass,
        detail: decomp_detail,
    });

    // 7. Derivative positivity of the closed form.
    let deriv = fb::f1_derivative_check(2.0, 50.0, 0.25)?;
    checks.push(Check {
        name: "closed-form derivative positivity on [2, 50]".into(),
        pass: deriv.pass,
        detail: format!(
            "min bound {:.3e} at x = {}, min derivative {:.3e} at x = {}",
            deriv.min_bound, deriv.min_bound_at, deriv.min_derivative, deriv.min_derivative_at
        ),
    });

    // 8. Concavity classification agrees with curvature sampling on a b grid
    //    (stepping 0.01 over (-2, 2), skipping b within 0.005 of a region
    //    boundary, where curvature is inside stencil noise).
    let boundaries = [c.alpha, c.beta_minus, 1.0, c.gamma, c.beta_plus];
    let mut class_pass = true;
    let mut class_detail = String::from("grid agreement on b in (-2, 2) step 0.01");
    let mut checked = 0u32;
    let mut i = 0u32;
    loop {
        let b = -1.995 + 0.01 * f64::from(i);
        if b >= 1.9951 {
            break;
        }
        i += 1;
        if boundaries.iter().any(|&r| (b - r).abs() < 0.005) {
            continue;
        }
        checked += 1;
        if let Err(e) = fb::concavity_class(b) {
            class_pass = false;
            class_detail = format!("disagreement at b = {b}: {e}");
            break;
        }
    }
    if class_pass {
        class_detail = format!("{class_detail} ({checked} values)");
    }
    checks.push(Check {
        name: "concavity classification matches sampled curvature".into(),
        pass: class_pass,
        detail: class_detail,
    });

    finish_verify(config, out, "fb-identities", checks)
}

fn finish_verify(
    config: &RunConfig,
    out: &mut dyn Write,
    suite: &str,
    checks: Vec<Check>,
) -> Result<i32> {
    let pass = checks.iter().all(|c| c.pass);
    let payload = match config.format {
        OutputFormat::Json => json_line(&VerifyOutput {
            suite: suite.to_string(),
            seed: config.seed,
            checks,
            pass,
        })?,
        _ => {
            let mut s = format!("verify {suite}\n");
            for check in &checks {
                let _ = writeln!(
                    s,
                    "  [{}] {}: {}",
                    if check.pass { "pass" } else { "FAIL" },
                    check.name,
                    check.detail
                );
            }
            let _ = writeln!(s, "result: {}", if pass { "pass" } else { "FAIL" });
            s
        }
    };
    emit(config, out, &payload)?;
    Ok(if pass { 0 } else { 1 })
}

/// Applies the `RIEMANN_MONO_THREADS` cap to the global rayon pool.
/// `0` or unset means automatic; repeat calls are harmless.
fn apply_thread_cap() -> Result<()> {
    if let Ok(raw) = std::env::var("RIEMANN_MONO_THREADS") {
        let threads: usize = raw.parse().map_err(|_| {
            Error::Parameter(format!(
                "RIEMANN_MONO_THREADS: expected a nonnegative integer, got `{raw}`"
            ))
        })?;
        if threads > 0 {
            // Fails when a global pool already exists (e.g. repeated `run`
            // calls in one process); the existing pool then stays in effect.
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
    Ok(())
}

/// Executes a validated configuration, writing the primary output to `out`
/// (or the configured `--out` file). Returns the process exit code: `0` for
/// success, `1` when a verification-style command found failures.
/// Usage/domain problems surface as `Err`, which the binary maps to exit 2.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    apply_thread_cap()?;
    match &config.command {
        Command::Sum {
            spec_text,
            spec,
            kind,
            n_from,
            n_to,
            tolerance,
        } => run_sum(config, out, (spec_text, spec, kind), *n_from, *n_to, *tolerance),
        Command::Certify {
            spec_text,
            spec,
            kind,
            horizon,
        } => run_certify(config, out, spec_text, spec, kind, *horizon),
        Command::PolyDecide {
            spec_text,
            spec,
            kind,
        } => run_poly_decide(config, out, spec_text, spec, kind),
        Command::FourierSum {
            builtin,
            kind,
            n,
            tolerance,
        } => run_fourier_sum(config, out, builtin, kind, *n, *tolerance),
        Command::ScanFb {
            b_from,
            b_to,
            b_step,
            n_max,
            tolerance,
            csv,
        } => run_scan_fb(
            config,
            out,
            (*b_from, *b_to, *b_step),
            *n_max,
            *tolerance,
            csv.as_ref(),
        ),
        Command::VerifyMajorization { n_max } => run_verify_majorization(config, out, *n_max),
        Command::VerifyFbIdentities => run_verify_fb_identities(config, out),
    }
}
