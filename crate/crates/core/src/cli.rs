//! `gamma3lab` command line.
//!
//! Every subcommand renders its report as text, JSON (one object) or CSV.
//! Numbers are printed with 12 significant digits. Exit status is 0 on
//! success, 1 on usage errors and 2 when a checked invariant fails.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::SIGNIFICANT_DIGITS;
use crate::error::Error;
use crate::family::{
    coefficients_from_schwarz, gamma3_closed_form, gamma3_from_coefficients, gamma_sequence, member_series,
    milin_functional, Family,
};
use crate::objective::ObjectiveForm;
use crate::optimize::{self, BoundReport};
use crate::schwarz::{carlson_check, sample_with, SchwarzTriple};
use crate::search::{self, GapRecord, SearchResult};
use crate::series::TruncatedSeries;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Agreement required between the closed-form and series routes for `γ₃`,
/// relative to `max(1, |γ₃|)`.
const GAMMA_ROUTE_TOLERANCE: f64 = 1e-9;
/// Smallest Carlson slack accepted by `verify-carlson`.
const CARLSON_FUZZ_TOLERANCE: f64 = 1e-9;
/// Largest Milin functional accepted for univalent inputs.
const MILIN_TOLERANCE: f64 = 1e-9;
const SEARCH_UPPER_SLACK: f64 = 1e-9;
const SEARCH_REMARK_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "gamma3lab",
    version,
    about = "Bounds on the third logarithmic coefficient for close-to-convex subclasses"
)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Maximize the family objective over 0 <= x <= 1, 0 <= y <= 1 - x^2 and report the |γ3| bound
    Bound(BoundArgs),
    /// Closed-form γ3 next to the series-logarithm γ3 for given c1, c2, c3
    Gamma(GammaArgs),
    /// Fuzz the Carlson coefficient inequalities on sampled Blaschke products
    VerifyCarlson(CarlsonArgs),
    /// Randomized lower-bound search for sup |γ3|
    Search(SearchArgs),
    /// Milin functional of a reference function
    Milin(MilinArgs),
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    #[arg(value_parser = parse_family)]
    pub family: Family,
    /// Spacing of the Newton seed grid
    #[arg(long, default_value_t = 0.05)]
    pub grid_step: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub newton_tol: f64,
    /// Spacing of the (x, y, value) dump emitted with --format csv
    #[arg(long, default_value_t = 0.01)]
    pub csv_step: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GammaArgs {
    #[arg(value_parser = parse_family)]
    pub family: Family,
    /// c1 as `re`, `re+imi` or `re,im`
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub c1: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub c2: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub c3: Complex64,
}

#[derive(Debug, Clone, Args)]
pub struct CarlsonArgs {
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Degrees cycle through 1..=max-degree
    #[arg(long, default_value_t = 6)]
    pub max_degree: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(value_parser = parse_family)]
    pub family: Family,
    #[arg(long, default_value_t = 100_000)]
    pub iterations: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub max_degree: usize,
    /// Restrict to real zeros and rotation ±1 (real a2)
    #[arg(long)]
    pub real_only: bool,
    #[arg(long, default_value_t = 0.05)]
    pub grid_step: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub newton_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReferenceFunction {
    /// z/(1 − z)²
    Koebe,
    /// z
    Identity,
}

#[derive(Debug, Clone, Args)]
pub struct MilinArgs {
    #[arg(long, value_enum)]
    pub function: ReferenceFunction,
    #[arg(long)]
    pub n: usize,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Accepts `1.5`, `-0.5`, `0.3+0.2i`, `0.3-0.2i`, `2i` and `0.3,0.2`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let z = parse_complex_raw(s.trim())?;
    if z.is_finite() {
        Ok(z)
    } else {
        Err(format!("`{}` is not finite", s.trim()))
    }
}

fn parse_complex_raw(s: &str) -> Result<Complex64, String> {
    let bad = || format!("cannot parse `{s}` as a complex number");
    if let Some((re, im)) = s.split_once(',') {
        let re: f64 = re.trim().parse().map_err(|_| bad())?;
        let im: f64 = im.trim().parse().map_err(|_| bad())?;
        return Ok(Complex64::new(re, im));
    }
    if let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) {
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other.parse().map_err(|_| bad())?,
        };
        let re: f64 = re.parse().map_err(|_| bad())?;
        return Ok(Complex64::new(re, im));
    }
    s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad())
}

/// Result of one command: what to print and how to exit.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn checked(passed: bool, stdout: String, what: &str) -> Self {
        if passed {
            Self::ok(stdout)
        } else {
            Self {
                status: EXIT_VIOLATION,
                stdout,
                stderr: format!("invariant violated: {what}\n"),
            }
        }
    }

    fn from_error(err: Error) -> Self {
        let status = match err {
            Error::CertificationMismatch { .. } => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        };
        Self {
            status,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(err) => {
            let rendered = err.render().to_string();
            if err.use_stderr() {
                Outcome {
                    status: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                // --help and --version
                Outcome::ok(rendered)
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Bound(args) => run_bound(args, format),
        Command::Gamma(args) => run_gamma(args, format),
        Command::VerifyCarlson(args) => run_carlson(args, format),
        Command::Search(args) => run_search(args, format),
        Command::Milin(args) => run_milin(args, format),
    }
    .unwrap_or_else(Outcome::from_error)
}

fn run_bound(args: &BoundArgs, format: Format) -> Result<Outcome, Error> {
    let report = optimize::global_bound(args.family, args.grid_step, args.newton_tol)?;
    let stdout = match format {
        Format::Json => to_json(&report),
        Format::Text => bound_text(&report),
        Format::Csv => {
            if !(args.csv_step > 0.0 && args.csv_step <= 0.5) {
                return Err(Error::InvalidArgument(format!(
                    "csv step must be in (0, 0.5], got {}",
                    args.csv_step
                )));
            }
            grid_csv(args.family, args.csv_step)
        }
    };
    let sane = report.interior_points.len() == 1 && report.interior_points[0].negative_definite;
    Ok(Outcome::checked(
        sane,
        stdout,
        "expected one interior maximum with negative-definite Hessian",
    ))
}

fn bound_text(r: &BoundReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "family: {}", r.family);
    for p in &r.interior_points {
        let _ = writeln!(
            out,
            "interior critical point: x = {}, y = {}, value = {}, |grad| = {}, negative definite = {}, seeds = {}",
            sig(p.x),
            sig(p.y),
            sig(p.value),
            sig(p.gradient_norm),
            p.negative_definite,
            p.seeds
        );
    }
    for e in &r.edge_maxima {
        let _ = writeln!(
            out,
            "edge {}: f = {}, max = {} at (x, y) = ({}, {}); published max = {}",
            e.edge,
            e.restriction.render(e.edge.variable()),
            sig(e.value),
            sig(e.x),
            sig(e.y),
            sig(e.published_value)
        );
    }
    let _ = writeln!(
        out,
        "global max: {} at ({}, {})",
        sig(r.global_max),
        sig(r.global_argmax.x),
        sig(r.global_argmax.y)
    );
    let _ = writeln!(out, "grid max: {} (step 1e-3)", sig(r.grid_max));
    let _ = writeln!(out, "gamma3 bound: {}", sig(r.gamma3_bound));
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

/// `x,y,value` rows over `E`, each column closed by its top boundary point.
pub fn grid_csv(family: Family, step: f64) -> String {
    let form = ObjectiveForm::of(family);
    let mut out = String::from("x,y,value\n");
    let columns = (1.0 / step).round() as usize;
    for i in 0..=columns {
        let x = (i as f64 * step).min(1.0);
        let top = (1.0 - x * x).max(0.0);
        let rows = (top / step).floor() as usize;
        let mut ys: Vec<f64> = (0..=rows).map(|j| j as f64 * step).collect();
        if ys.last().is_none_or(|&y| top - y > 1e-12) {
            ys.push(top);
        }
        for y in ys {
            let _ = writeln!(out, "{},{},{}", sig(x), sig(y), sig(form.value(x, y)));
        }
    }
    out
}

#[derive(Serialize)]
struct GammaReport {
    family: Family,
    c1: Complex64,
    c2: Complex64,
    c3: Complex64,
    carlson_feasible: bool,
    closed_form: Complex64,
    coefficient_route: Complex64,
    series_oracle: Complex64,
    delta: f64,
}

fn run_gamma(args: &GammaArgs, format: Format) -> Result<Outcome, Error> {
    let c = SchwarzTriple::new(args.c1, args.c2, args.c3);
    let closed = gamma3_closed_form(args.family, &c);
    let coefficient_route = gamma3_from_coefficients(&coefficients_from_schwarz(args.family, &c));
    // w = c₁z + c₂z² + c₃z³ determines a₂..a₄ and hence γ₃ exactly
    let w = TruncatedSeries::from_complex(&[Complex64::new(0.0, 0.0), c.c1, c.c2, c.c3], 4);
    let f = member_series(args.family, &w, 5)?;
    let series = gamma_sequence(&f, 3)?[2];
    let delta = (closed - series).norm().max((closed - coefficient_route).norm());
    let report = GammaReport {
        family: args.family,
        c1: c.c1,
        c2: c.c2,
        c3: c.c3,
        carlson_feasible: carlson_check(&c).is_feasible(),
        closed_form: closed,
        coefficient_route,
        series_oracle: series,
        delta,
    };
    let stdout = match format {
        Format::Json => to_json(&report),
        Format::Text => format!(
            "family: {}\nclosed form: {}\ncoefficient route: {}\nseries oracle: {}\ndelta: {}\ncarlson feasible: {}\n",
            report.family,
            csig(closed),
            csig(coefficient_route),
            csig(series),
            sig(delta),
            report.carlson_feasible
        ),
        Format::Csv => kv_csv(&report),
    };
    let tolerance = GAMMA_ROUTE_TOLERANCE * closed.norm().max(1.0);
    Ok(Outcome::checked(
        delta <= tolerance,
        stdout,
        "closed form and series routes disagree",
    ))
}

#[derive(Serialize)]
struct CarlsonReport {
    samples: usize,
    seed: u64,
    max_degree: usize,
    pass: bool,
    worst_slack: f64,
    worst_inequality: usize,
    worst_sample: usize,
}

fn run_carlson(args: &CarlsonArgs, format: Format) -> Result<Outcome, Error> {
    if args.samples == 0 || args.max_degree == 0 {
        return Err(Error::InvalidArgument("samples and max-degree must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut worst = (f64::INFINITY, 0, 0);
    for i in 0..args.samples {
        let degree = 1 + i % args.max_degree;
        let s = carlson_check(&sample_with(&mut rng, degree, false).triple());
        for (k, v) in [s.first, s.second, s.third].into_iter().enumerate() {
            if v < worst.0 {
                worst = (v, k + 1, i);
            }
        }
    }
    let report = CarlsonReport {
        samples: args.samples,
        seed: args.seed,
        max_degree: args.max_degree,
        pass: worst.0 >= -CARLSON_FUZZ_TOLERANCE,
        worst_slack: worst.0,
        worst_inequality: worst.1,
        worst_sample: worst.2,
    };
    let stdout = match format {
        Format::Json => to_json(&report),
        Format::Text => format!(
            "carlson check: {}\nsamples: {}\nworst slack: {} (inequality {}, sample {})\n",
            if report.pass { "pass" } else { "fail" },
            report.samples,
            sig(report.worst_slack),
            report.worst_inequality,
            report.worst_sample
        ),
        Format::Csv => kv_csv(&report),
    };
    Ok(Outcome::checked(report.pass, stdout, "Carlson slack below tolerance"))
}

#[derive(Serialize)]
struct SearchReport {
    result: SearchResult,
    gap: GapRecord,
}

fn run_search(args: &SearchArgs, format: Format) -> Result<Outcome, Error> {
    let upper = optimize::global_bound(args.family, args.grid_step, args.newton_tol)?.gamma3_bound;
    let result = search::search_with_upper_bound(
        args.family,
        args.iterations,
        args.seed,
        args.real_only,
        args.max_degree,
        upper,
    )?;
    let gap = search::gap_report(args.family, &result)?;
    let within_upper = result.best_value <= result.upper_bound + SEARCH_UPPER_SLACK;
    let within_remark = result
        .remark_value
        .is_none_or(|r| result.best_value <= r + SEARCH_REMARK_SLACK);
    let stdout = match format {
        Format::Json => to_json(&SearchReport {
            result: result.clone(),
            gap: gap.clone(),
        }),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "family: {}", result.family);
            let _ = writeln!(out, "real only: {}", result.real_only);
            let _ = writeln!(out, "iterations: {}", result.iterations);
            let _ = writeln!(out, "best |gamma3|: {}", sig(result.best_value));
            let t = &result.witness_triple;
            let _ = writeln!(out, "witness c = ({}, {}, {})", csig(t.c1), csig(t.c2), csig(t.c3));
            let zeros: Vec<String> = result.witness.zeros().iter().map(|z| csig(*z)).collect();
            let _ = writeln!(
                out,
                "witness zeros: [{}], rotation {}",
                zeros.join(", "),
                csig(result.witness.rotation())
            );
            let _ = writeln!(out, "upper bound: {}", sig(gap.upper_bound));
            if let Some(r) = gap.remark_value {
                let _ = writeln!(out, "real-a2 sharp value: {}", sig(r));
            }
            let _ = writeln!(out, "gap: {} (relative {})", sig(gap.gap), sig(gap.relative_gap));
            let _ = writeln!(out, "note: {}", gap.note);
            out
        }
        Format::Csv => kv_csv(&json!({ "result": result, "gap": gap })),
    };
    Ok(Outcome::checked(
        within_upper && within_remark,
        stdout,
        "search exceeded a proved bound",
    ))
}

#[derive(Serialize)]
struct MilinReport {
    function: &'static str,
    n: usize,
    value: f64,
    gammas: Vec<Complex64>,
}

fn run_milin(args: &MilinArgs, format: Format) -> Result<Outcome, Error> {
    if args.n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let order = args.n + 1;
    let (name, f) = match args.function {
        ReferenceFunction::Koebe => (
            "koebe",
            TruncatedSeries::from_real(&(0..=order).map(|k| k as f64).collect::<Vec<_>>(), order),
        ),
        ReferenceFunction::Identity => ("identity", TruncatedSeries::identity(order)),
    };
    let report = MilinReport {
        function: name,
        n: args.n,
        value: milin_functional(&f, args.n)?,
        gammas: gamma_sequence(&f, args.n)?,
    };
    let stdout = match format {
        Format::Json => to_json(&report),
        Format::Text => format!(
            "function: {}\nn: {}\nmilin functional: {}\n",
            name,
            args.n,
            sig(report.value)
        ),
        Format::Csv => kv_csv(&report),
    };
    Ok(Outcome::checked(
        report.value <= MILIN_TOLERANCE,
        stdout,
        "Milin functional is positive",
    ))
}

/// `v` with 12 significant digits, trailing zeros trimmed.
pub fn sig(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let exp = v.abs().log10().floor() as i32;
    let digits = SIGNIFICANT_DIGITS as i32;
    if !(-5..digits).contains(&exp) {
        let s = format!("{:.*e}", (digits - 1) as usize, v);
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{e}");
    }
    let decimals = (digits - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csig(z: Complex64) -> String {
    if z.im == 0.0 {
        sig(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", sig(z.re), sig(-z.im))
    } else {
        format!("{}+{}i", sig(z.re), sig(z.im))
    }
}

/// Rounds every number in a JSON tree to 12 significant digits.
fn round_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => {
                let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
                    .parse()
                    .expect("formatted float parses");
                serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
            }
            _ => Value::Number(n),
        },
        Value::Array(items) => Value::Array(items.into_iter().map(round_numbers).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_numbers(v))).collect()),
        other => other,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("reports serialize");
    let mut s = serde_json::to_string_pretty(&round_numbers(v)).expect("json renders");
    s.push('\n');
    s
}

/// Flattens a report into `field,value` rows (nested keys joined with `.`).
fn kv_csv<T: Serialize>(value: &T) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, v) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, v, out);
                }
            }
            Value::Array(items) => {
                for (i, v) in items.iter().enumerate() {
                    walk(&format!("{prefix}.{i}"), v, out);
                }
            }
            Value::Number(n) => {
                let text = n.as_f64().filter(|_| n.is_f64()).map_or(n.to_string(), sig);
                let _ = writeln!(out, "{prefix},{text}");
            }
            Value::String(s) if s.contains(',') || s.contains('"') => {
                let _ = writeln!(out, "{prefix},\"{}\"", s.replace('"', "\"\""));
            }
            Value::String(s) => {
                let _ = writeln!(out, "{prefix},{s}");
            }
            other => {
                let _ = writeln!(out, "{prefix},{other}");
            }
        }
    }
    let mut out = String::from("field,value\n");
    walk("", &serde_json::to_value(value).expect("reports serialize"), &mut out);
    out
}
