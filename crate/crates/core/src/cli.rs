//! Command-line front end.
//!
//! Exit codes: `0` success or certified, `1` a bound violation or a failed
//! certification, `2` any input error (unreadable file, malformed spec,
//! missing or invalid flag).

use std::fmt::Write as _;
use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::band::{
    clamp_candidate, design_width, make_center, parse_band, variation_budget, verify_candidate,
    BandSpec, CenterKind, DesignRequest, VerificationResult, WidthProvenance, CENTER_ZERO_LIMIT,
    DEFAULT_VERIFY_TOL,
};
use crate::bounds::{bound_report, BoundReport, Tolerance, DEFAULT_ABS_TOL};
use crate::error::Error;
use crate::func_model::{grid_point, parse_spec, sample_uniform, FunctionSpec};
use crate::spectral::{default_grid, spectrum, trig_spectrum, Basis, SpectrumTable, DEFAULT_GRID};
use crate::variation::interval_grid_point;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

const DEFAULT_ORDER: usize = 16;

#[derive(Debug, Parser)]
#[command(
    name = "harmonic-bounds",
    version,
    about = "Fourier/Chebyshev coefficient bounds and harmonic-reduction band design"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expansion coefficients of a function spec.
    Spectrum(RunArgs),
    /// Check every coefficient against the variation, extrema and range bounds.
    Bounds(RunArgs),
    /// Design a proximity band for reducing harmonic j by a factor q.
    BandDesign(RunArgs),
    /// Verify a candidate function against a band file.
    BandVerify(RunArgs),
    /// Clamp a function into a band, writing a sampled function spec.
    Clamp(RunArgs),
    /// Emit CSV plot data on a uniform grid (ignores --format).
    Plot(RunArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Bounds(_) => "bounds",
            Command::BandDesign(_) => "band-design",
            Command::BandVerify(_) => "band-verify",
            Command::Clamp(_) => "clamp",
            Command::Plot(_) => "plot",
        }
    }

    fn args(&self) -> &RunArgs {
        match self {
            Command::Spectrum(a)
            | Command::Bounds(a)
            | Command::BandDesign(a)
            | Command::BandVerify(a)
            | Command::Clamp(a)
            | Command::Plot(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum CenterArg {
    Trivial,
    Minimal,
}

impl From<CenterArg> for CenterKind {
    fn from(c: CenterArg) -> Self {
        match c {
            CenterArg::Trivial => CenterKind::Trivial,
            CenterArg::Minimal => CenterKind::Minimal,
        }
    }
}

#[derive(Debug, Clone, Args)]
struct RunArgs {
    /// Function spec JSON (the candidate for band-verify).
    #[arg(long)]
    input: Option<String>,
    /// Band spec JSON, as written by band-design.
    #[arg(long)]
    band: Option<String>,
    /// Expansion order M.
    #[arg(long)]
    order: Option<usize>,
    /// Grid size n.
    #[arg(long)]
    grid: Option<usize>,
    /// Target harmonic.
    #[arg(long)]
    j: Option<usize>,
    /// Reduction factor, must exceed 1.
    #[arg(long, allow_negative_numbers = true)]
    q: Option<f64>,
    /// Assumed extrema count of the distortion.
    #[arg(long = "n-extrema")]
    n_extrema: Option<usize>,
    /// Zero-harmonic center.
    #[arg(long, value_enum)]
    center: Option<CenterArg>,
    /// Band width override.
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    /// Initial amplitude override.
    #[arg(long = "a-j0", allow_negative_numbers = true)]
    a_j0: Option<f64>,
    /// Absolute tolerance.
    #[arg(long, allow_negative_numbers = true)]
    tolerance: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    output: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// Resolved parameters, echoed into every JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    command: &'static str,
    input: Option<String>,
    band: Option<String>,
    order: Option<usize>,
    grid: Option<usize>,
    j: Option<usize>,
    q: Option<f64>,
    n_extrema: Option<usize>,
    center: Option<CenterArg>,
    delta: Option<f64>,
    a_j0: Option<f64>,
    tolerance: Option<f64>,
    output: Option<String>,
    format: Format,
}

impl RunConfig {
    fn from_args(command: &'static str, a: &RunArgs) -> Self {
        RunConfig {
            command,
            input: a.input.clone(),
            band: a.band.clone(),
            order: a.order,
            grid: a.grid,
            j: a.j,
            q: a.q,
            n_extrema: a.n_extrema,
            center: a.center,
            delta: a.delta,
            a_j0: a.a_j0,
            tolerance: a.tolerance,
            output: a.output.clone(),
            format: a.format,
        }
    }
}

/// An input problem; always exit code 2.
#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

struct Outcome {
    body: String,
    passed: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, passed: true }
    }
}

/// Parse `args` (including the program name), run the command and return its exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            if err.use_stderr() {
                let _ = write!(stderr, "{text}");
                return EXIT_INPUT;
            }
            let _ = write!(stdout, "{text}");
            return EXIT_OK;
        }
    };
    let name = cli.command.name();
    let args = cli.command.args().clone();
    let result = match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::BandDesign(a) => cmd_band_design(a),
        Command::BandVerify(a) => cmd_band_verify(a),
        Command::Clamp(a) => cmd_clamp(a),
        Command::Plot(a) => cmd_emit_plot(a),
    };
    match result {
        Ok(outcome) => {
            if let Err(e) = emit(&args, &outcome.body, stdout) {
                let _ = writeln!(stderr, "{name}: {e}");
                return EXIT_INPUT;
            }
            if outcome.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(Failure(msg)) => {
            let _ = writeln!(stderr, "{name}: {msg}");
            EXIT_INPUT
        }
    }
}

fn emit(args: &RunArgs, body: &str, stdout: &mut dyn Write) -> std::io::Result<()> {
    match &args.output {
        Some(path) => fs::write(path, body),
        None => stdout.write_all(body.as_bytes()),
    }
}

fn require<T: Copy>(value: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    value.ok_or_else(|| Failure(format!("missing required flag --{flag}")))
}

fn read_file(path: &str) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {path}: {e}")))
}

fn load_spec(args: &RunArgs) -> std::result::Result<FunctionSpec, Failure> {
    let path = args
        .input
        .as_deref()
        .ok_or_else(|| Failure("missing required flag --input".into()))?;
    parse_spec(&read_file(path)?).map_err(|e| Failure(format!("{path}: {e}")))
}

fn load_band(args: &RunArgs) -> std::result::Result<BandSpec, Failure> {
    let path = args
        .band
        .as_deref()
        .ok_or_else(|| Failure("missing required flag --band".into()))?;
    parse_band(&read_file(path)?).map_err(|e| Failure(format!("{path}: {e}")))
}

fn require_json(args: &RunArgs, command: &str) -> std::result::Result<(), Failure> {
    if args.format == Format::Csv {
        return Err(Failure(format!("{command} writes JSON only")));
    }
    Ok(())
}

/// Shortest round-trip text for a CSV cell: plain notation for integers and
/// moderate magnitudes, exponent notation otherwise.
fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let mag = v.abs();
    if (1e-5..1e15).contains(&mag) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn tolerance_flag(args: &RunArgs, default: f64) -> std::result::Result<f64, Failure> {
    let tol = args.tolerance.unwrap_or(default);
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Failure("--tolerance must be finite and >= 0".into()));
    }
    Ok(tol)
}

#[derive(Serialize)]
struct SpectrumOutput<'a> {
    config: RunConfig,
    #[serde(flatten)]
    table: &'a SpectrumTable,
}

fn cmd_spectrum(args: &RunArgs) -> CmdResult {
    let spec = load_spec(args)?;
    let order = args.order.unwrap_or(DEFAULT_ORDER);
    let grid = args.grid.unwrap_or_else(|| default_grid(order));
    let table = spectrum(&spec, order, grid)?;
    let body = match args.format {
        Format::Json => {
            let mut config = RunConfig::from_args("spectrum", args);
            config.order = Some(order);
            config.grid = Some(grid);
            to_json(&SpectrumOutput {
                config,
                table: &table,
            })
        }
        Format::Csv => spectrum_csv(&table),
    };
    Ok(Outcome::ok(body))
}

fn spectrum_csv(table: &SpectrumTable) -> String {
    let mut out = String::new();
    match table.basis {
        Basis::Trig => {
            out.push_str("j,a_j,b_j\n");
            for j in 0..=table.order {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    j,
                    fmt_num(table.cos(j)),
                    fmt_num(table.sin(j))
                );
            }
        }
        Basis::Chebyshev => {
            out.push_str("j,a_j\n");
            for j in 0..=table.order {
                let _ = writeln!(out, "{},{}", j, fmt_num(table.cos(j)));
            }
        }
    }
    out
}

#[derive(Serialize)]
struct BoundsOutput<'a> {
    config: RunConfig,
    all_satisfied: bool,
    #[serde(flatten)]
    report: &'a BoundReport,
}

fn cmd_bounds(args: &RunArgs) -> CmdResult {
    let spec = load_spec(args)?;
    let order = args.order.unwrap_or(DEFAULT_ORDER);
    let grid = args.grid.unwrap_or_else(|| default_grid(order));
    let tol = Tolerance {
        abs: tolerance_flag(args, DEFAULT_ABS_TOL)?,
        ..Tolerance::default()
    };
    let report = bound_report(&spec, order, grid, tol)?;
    let passed = report.all_satisfied();
    let body = match args.format {
        Format::Json => {
            let mut config = RunConfig::from_args("bounds", args);
            config.order = Some(order);
            config.grid = Some(grid);
            config.tolerance = Some(tol.abs);
            to_json(&BoundsOutput {
                config,
                all_satisfied: passed,
                report: &report,
            })
        }
        Format::Csv => bounds_csv(&report),
    };
    Ok(Outcome { body, passed })
}

fn bounds_csv(report: &BoundReport) -> String {
    let mut out = String::from(
        "j,actual_abs_a,actual_abs_b,bound_variation,bound_extrema,bound_range,ratio_tightness,satisfied\n",
    );
    for r in &report.rows {
        let opt = |v: Option<f64>| v.map(fmt_num).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.j,
            fmt_num(r.actual_abs_a),
            opt(r.actual_abs_b),
            fmt_num(r.bound_variation),
            fmt_num(r.bound_extrema),
            fmt_num(r.bound_range),
            opt(r.ratio_tightness),
            r.satisfied.all()
        );
    }
    out
}

#[derive(Serialize)]
struct DesignOutput {
    center: FunctionSpec,
    delta: f64,
    j: usize,
    q: f64,
    a_j0: f64,
    b_j0: Option<f64>,
    center_kind: CenterKind,
    variation_budget: f64,
    delta_eq11: Option<f64>,
    delta_eq12: f64,
    delta_recommended: f64,
    provenance: WidthProvenance,
    already_attained: bool,
    config: RunConfig,
}

fn cmd_band_design(args: &RunArgs) -> CmdResult {
    require_json(args, "band-design")?;
    let spec = load_spec(args)?;
    let j = require(args.j, "j")?;
    let q = require(args.q, "q")?;
    if !(q.is_finite() && q > 1.0) {
        return Err(Failure(format!("--q must be > 1, got {q}")));
    }
    if j < 1 {
        return Err(Failure("--j must be at least 1".into()));
    }
    if let Some(d) = args.delta {
        if !(d.is_finite() && d > 0.0) {
            return Err(Failure("--delta must be finite and > 0".into()));
        }
    }
    let grid = args.grid.unwrap_or_else(|| default_grid(j));
    let center_kind: CenterKind = args.center.unwrap_or(CenterArg::Minimal).into();

    let table = trig_spectrum(&spec, j, grid)?;
    // quadrature noise on an absent harmonic counts as zero
    let measured = match table.cos(j) {
        a if a.abs() <= CENTER_ZERO_LIMIT => 0.0,
        a => a,
    };
    let request = DesignRequest {
        j,
        q,
        a_j0: args.a_j0.unwrap_or(measured),
        b_j0: Some(table.sin(j)),
        n_extrema: args.n_extrema,
        center: center_kind,
    };
    let widths = design_width(&request)?;
    let center = make_center(&spec, j, center_kind, grid)?;
    let (delta, provenance) = match args.delta {
        Some(d) => (d, WidthProvenance::Explicit),
        None => (widths.delta_recommended, widths.provenance),
    };

    let mut config = RunConfig::from_args("band-design", args);
    config.grid = Some(grid);
    config.center = Some(args.center.unwrap_or(CenterArg::Minimal));
    let out = DesignOutput {
        center,
        delta,
        j,
        q,
        a_j0: request.a_j0,
        b_j0: request.b_j0,
        center_kind,
        variation_budget: variation_budget(&request),
        delta_eq11: widths.delta_eq11,
        delta_eq12: widths.delta_eq12,
        delta_recommended: widths.delta_recommended,
        provenance,
        already_attained: widths.already_attained,
        config,
    };
    Ok(Outcome::ok(to_json(&out)))
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    config: RunConfig,
    j: usize,
    q: f64,
    a_j0: f64,
    delta: f64,
    #[serde(flatten)]
    result: &'a VerificationResult,
}

fn cmd_band_verify(args: &RunArgs) -> CmdResult {
    require_json(args, "band-verify")?;
    let candidate = load_spec(args)?;
    let band = load_band(args)?;
    let grid = args.grid.unwrap_or(DEFAULT_GRID);
    let tol = tolerance_flag(args, DEFAULT_VERIFY_TOL)?;
    let request = band.request().clone();
    let result = verify_candidate(&candidate, &band, &request, grid, tol)?;

    let mut config = RunConfig::from_args("band-verify", args);
    config.grid = Some(grid);
    config.tolerance = Some(tol);
    let body = to_json(&VerifyOutput {
        config,
        j: request.j,
        q: request.q,
        a_j0: request.a_j0,
        delta: band.delta(),
        result: &result,
    });
    Ok(Outcome {
        body,
        passed: result.certified,
    })
}

fn cmd_clamp(args: &RunArgs) -> CmdResult {
    require_json(args, "clamp")?;
    let spec = load_spec(args)?;
    let band = load_band(args)?;
    let grid = args.grid.unwrap_or(DEFAULT_GRID);
    let clamped = clamp_candidate(&spec, &band, grid)?;
    Ok(Outcome::ok(to_json(&clamped)))
}

fn cmd_emit_plot(args: &RunArgs) -> CmdResult {
    let spec = load_spec(args)?;
    let grid = args.grid.unwrap_or(DEFAULT_GRID);
    let mut out = String::new();
    if !spec.is_periodic() {
        if args.band.is_some() {
            return Err(Failure("bands apply to periodic functions only".into()));
        }
        if grid < 2 {
            return Err(Failure("--grid must be at least 2".into()));
        }
        out.push_str("x,f\n");
        for i in 0..grid {
            let x = interval_grid_point(i, grid);
            let _ = writeln!(out, "{},{}", fmt_num(x), fmt_num(spec.evaluate(x)?));
        }
        return Ok(Outcome::ok(out));
    }
    let values = sample_uniform(&spec, grid)?;
    match args.band.as_ref() {
        None => {
            out.push_str("x,f\n");
            for (i, v) in values.iter().enumerate() {
                let _ = writeln!(out, "{},{}", fmt_num(grid_point(i, grid)), fmt_num(*v));
            }
        }
        Some(_) => {
            let band = load_band(args)?;
            let centers = sample_uniform(band.center(), grid)?;
            let candidate = sample_uniform(&clamp_candidate(&spec, &band, grid)?, grid)?;
            let h = band.half_width();
            out.push_str("x,f,center,lower,upper,candidate\n");
            for i in 0..grid {
                let c = centers[i];
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    fmt_num(grid_point(i, grid)),
                    fmt_num(values[i]),
                    fmt_num(c),
                    fmt_num(c - h),
                    fmt_num(c + h),
                    fmt_num(candidate[i])
                );
            }
        }
    }
    Ok(Outcome::ok(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_numbers() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(-2.25), "-2.25");
        assert_eq!(fmt_num(2.3310346708438345e-17), "2.3310346708438345e-17");
        assert_eq!(fmt_num(1e20), "1e20");
        for v in [0.1, 1.0 / 3.0, 6.02e23, -7.5e-9] {
            assert_eq!(fmt_num(v).parse::<f64>().unwrap(), v);
        }
    }
}
