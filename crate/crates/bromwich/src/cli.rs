//! Command-line front end.
//!
//! Each command parses its inputs, calls one harness operation and formats
//! the result with [`crate::output`]; nothing is computed here. Settings come
//! from `--config` first and are then overridden by flags. No environment
//! variables are read.

use std::io::Write;
use std::path::{Path, PathBuf};

use bromwich_core::contour::{bromwich_for, default_rectangle, rectangle_for, DEFAULT_DELTA};
use bromwich_core::xform::analytic_transform;
use bromwich_core::{Contour, InverseKind, QuadratureSpec, Rational, TransformExpr, TransformKind};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::formats::{parse_pole_list, ContourDoc, QuadDoc, TransformDoc};
use crate::harness::{self, Heights, Window, BROMWICH_HALF_HEIGHT, BROMWICH_TOL, RECTANGLE_TOL};
use crate::output;
use crate::parse::{parse_complex, parse_grid, parse_real_list, parse_spec_string};

/// Exit status for a run whose results missed their targets under `--strict`.
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "bromwich",
    version,
    about = "Laplace and Mellin transforms with contour inverses"
)]
pub struct Cli {
    /// Print a JSON summary on stdout; CSV is then written only to --out.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the CSV table to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Pass/fail threshold.
    #[arg(long, global = true, value_name = "R")]
    pub tol: Option<f64>,
    /// Quadrature settings as inline JSON or a path to a JSON file.
    #[arg(long, global = true, value_name = "JSON")]
    pub quad: Option<String>,
    /// Exit with status 3 when a result misses its tolerance or a quadrature
    /// does not converge.
    #[arg(long, global = true)]
    pub strict: bool,
    /// JSON file with defaults for the flags above.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Direct transform by quadrature.
    Transform {
        /// Function spec string, e.g. exp:gamma=1.
        #[arg(long, value_name = "SPEC")]
        func: String,
        #[arg(long, value_enum)]
        kind: TransformArg,
        /// Complex points a+bi, repeated or comma-separated.
        #[arg(
            long,
            value_name = "Z",
            required = true,
            allow_hyphen_values = true,
            value_delimiter = ','
        )]
        z: Vec<String>,
    },
    /// Inverse transform along a contour.
    Invert {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        kind: KernelArg,
        #[command(flatten)]
        placement: Placement,
        #[command(flatten)]
        points: Points,
    },
    /// Transform, invert and compare with the function.
    Roundtrip {
        #[arg(long, value_name = "SPEC")]
        func: String,
        #[arg(long, value_enum)]
        kind: KernelArg,
        #[command(flatten)]
        placement: Placement,
        #[command(flatten)]
        points: Points,
    },
    /// Delta-kernel smoothing of a function at increasing cutoffs.
    DeltaCheck {
        #[arg(long, value_name = "SPEC")]
        func: String,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        /// Cutoffs, comma-separated and increasing.
        #[arg(long = "t", value_name = "LIST", default_value = "20,40,80")]
        cutoffs: String,
        /// Integration window lo:hi; either end may be inf.
        #[arg(long, value_name = "LO:HI", allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Rectangle inverse over a grid of offsets and half-heights.
    Sweep {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        kind: KernelArg,
        #[arg(long, allow_negative_numbers = true)]
        arg: f64,
        #[arg(long, value_name = "LIST", default_value = "0.1,0.5,1")]
        deltas: String,
        /// Absolute half-heights.
        #[arg(long, value_name = "LIST", conflicts_with = "scale")]
        heights: Option<String>,
        /// Half-heights as multiples of max |Im pole| + delta.
        #[arg(long, value_name = "LIST", default_value = "1,2,4")]
        scale: String,
    },
    /// Cauchy reproduction of a rational transform from a rectangle.
    CauchyCheck {
        #[command(flatten)]
        source: Source,
        #[arg(
            long,
            value_name = "Z",
            required = true,
            allow_hyphen_values = true,
            value_delimiter = ','
        )]
        z: Vec<String>,
        /// Offset of the rectangle edges from the poles [default: 0.5]
        #[arg(long)]
        delta: Option<f64>,
        /// Rectangle half-height, raised to clear the poles
        #[arg(long)]
        height: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformArg {
    Laplace,
    Moment,
    Mellin,
}

impl From<TransformArg> for TransformKind {
    fn from(a: TransformArg) -> Self {
        match a {
            TransformArg::Laplace => TransformKind::Laplace,
            TransformArg::Moment => TransformKind::Moment,
            TransformArg::Mellin => TransformKind::Mellin,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Laplace,
    Mellin,
}

impl From<KernelArg> for InverseKind {
    fn from(a: KernelArg) -> Self {
        match a {
            KernelArg::Laplace => InverseKind::LaplaceKernel,
            KernelArg::Mellin => InverseKind::MellinKernel,
        }
    }
}

/// Where the transform comes from.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Pole list [[re, im, res_re, res_im], ...].
    #[arg(long, value_name = "JSON")]
    pub poles: Option<String>,
    /// Transform document.
    #[arg(long, value_name = "JSON")]
    pub transform: Option<String>,
    /// Function spec string; its cataloged or numeric transform is used.
    #[arg(long, value_name = "SPEC")]
    pub func: Option<String>,
}

#[derive(Debug, Args)]
pub struct Placement {
    /// rect, line, or a contour document.
    #[arg(long, value_name = "SHAPE", default_value = "rect")]
    pub contour: String,
    /// Offset of the contour from the poles or strip edge [default: 0.5]
    #[arg(long)]
    pub delta: Option<f64>,
    /// Half-height of the contour [default: rectangle clears the poles, line uses 200]
    #[arg(long)]
    pub height: Option<f64>,
}

/// Evaluation arguments: explicit values or a grid.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Points {
    /// Arguments, repeated or comma-separated.
    #[arg(
        long = "x",
        visible_alias = "y",
        value_name = "R",
        allow_hyphen_values = true,
        value_delimiter = ','
    )]
    pub x: Vec<f64>,
    /// Grid start:stop:count.
    #[arg(long, value_name = "GRID", allow_hyphen_values = true)]
    pub grid: Option<String>,
}

impl Points {
    fn values(&self) -> Result<Vec<f64>> {
        match &self.grid {
            Some(g) => Ok(parse_grid(g)?),
            None => Ok(self.x.clone()),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Config {
    json: Option<bool>,
    out: Option<PathBuf>,
    tol: Option<f64>,
    quad: Option<QuadDoc>,
    strict: Option<bool>,
}

/// Global settings after merging config and flags.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub json: bool,
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
    pub quad: QuadratureSpec,
    pub strict: bool,
}

fn read_json_file<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

impl Settings {
    pub fn resolve(cli: &Cli) -> Result<Self> {
        let config: Config = match &cli.config {
            Some(path) => read_json_file(path)?,
            None => Config::default(),
        };
        let quad = match &cli.quad {
            Some(text) if text.trim_start().starts_with('{') => {
                serde_json::from_str::<QuadDoc>(text)?
            }
            Some(path) => read_json_file::<QuadDoc>(Path::new(path))?,
            None => config.quad.unwrap_or_default(),
        };
        let tol = cli.tol.or(config.tol);
        if let Some(t) = tol {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::Invalid(
                    "--tol must be a positive finite real".into(),
                ));
            }
        }
        Ok(Settings {
            json: cli.json || config.json.unwrap_or(false),
            out: cli.out.clone().or(config.out),
            tol,
            quad: quad.to_core()?,
            strict: cli.strict || config.strict.unwrap_or(false),
        })
    }
}

/// Result of one command before it is written out.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub csv: String,
    pub json: Value,
    /// Tolerance met and every quadrature converged.
    pub passed: bool,
}

fn source_transform(
    source: &Source,
    kind: InverseKind,
    use_rectangle: bool,
) -> Result<TransformExpr> {
    if let Some(p) = &source.poles {
        return parse_pole_list(p);
    }
    if let Some(t) = &source.transform {
        return serde_json::from_str::<TransformDoc>(t)?.to_core();
    }
    let spec = parse_spec_string(source.func.as_deref().unwrap_or_default())?;
    harness::transform_for(
        &spec,
        harness::transform_kind_for(&spec, kind)?,
        use_rectangle,
    )
}

fn source_rational(source: &Source, kind: InverseKind) -> Result<Rational> {
    let t = match &source.func {
        Some(f) => {
            let spec = parse_spec_string(f)?;
            analytic_transform(&spec, harness::transform_kind_for(&spec, kind)?)?
        }
        None => source_transform(source, kind, true)?,
    };
    t.as_rational()
        .cloned()
        .ok_or(Error::Core(bromwich_core::Error::NotRectangularizable))
}

fn wants_rectangle(p: &Placement) -> Result<bool> {
    match p.contour.as_str() {
        "rect" => Ok(true),
        "line" => Ok(false),
        text if text.trim_start().starts_with('{') => {
            let doc: ContourDoc = serde_json::from_str(text)?;
            Ok(doc.c_left.is_some())
        }
        other => Err(Error::Invalid(format!(
            "unknown contour '{other}'; use rect, line or JSON"
        ))),
    }
}

/// Contour for `t`: the given document, or auto-placement with optional
/// overrides of `δ` and `T`.
fn place(p: &Placement, t: &TransformExpr) -> Result<Contour> {
    if p.contour.trim_start().starts_with('{') {
        return serde_json::from_str::<ContourDoc>(&p.contour)?.to_core();
    }
    let c = match (wants_rectangle(p)?, p.delta, p.height) {
        (true, None, None) => default_rectangle(t)?,
        (true, delta, height) => {
            let delta = delta.unwrap_or(DEFAULT_DELTA);
            let fallback = default_rectangle(t)?.half_height();
            rectangle_for(t, delta, height.unwrap_or(fallback))?
        }
        (false, delta, height) => bromwich_for(
            t,
            delta.unwrap_or(DEFAULT_DELTA),
            height.unwrap_or(BROMWICH_HALF_HEIGHT),
        )?,
    };
    Ok(c)
}

fn parse_zs(zs: &[String]) -> Result<Vec<bromwich_core::Complex64>> {
    zs.iter()
        .map(|z| parse_complex(z).map_err(Error::from))
        .collect()
}

fn parse_window(s: &str) -> Result<Window> {
    let bad = || Error::Invalid(format!("window '{s}' is not lo:hi"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    Window::new(lo, hi)
}

/// Runs one command with resolved settings.
pub fn execute(command: &Command, settings: &Settings) -> Result<Outcome> {
    let q = &settings.quad;
    match command {
        Command::Transform { func, kind, z } => {
            let spec = parse_spec_string(func)?;
            let rows = harness::transform_grid(&spec, (*kind).into(), &parse_zs(z)?, q)?;
            Ok(Outcome {
                csv: output::transform_csv(&rows),
                json: output::transform_json(&rows),
                passed: rows.iter().all(|r| r.converged),
            })
        }
        Command::Invert {
            source,
            kind,
            placement,
            points,
        } => {
            let kind = (*kind).into();
            let t = source_transform(source, kind, wants_rectangle(placement)?)?;
            let contour = place(placement, &t)?;
            let rows = harness::invert_grid(&t, kind, &contour, &points.values()?, q)?;
            Ok(Outcome {
                csv: output::invert_csv(&rows),
                json: output::invert_json(&rows, &contour),
                passed: rows.iter().all(|r| r.converged),
            })
        }
        Command::Roundtrip {
            func,
            kind,
            placement,
            points,
        } => {
            let spec = parse_spec_string(func)?;
            let kind = (*kind).into();
            let rect = wants_rectangle(placement)?;
            let t = harness::transform_for(&spec, harness::transform_kind_for(&spec, kind)?, rect)?;
            let contour = place(placement, &t)?;
            let tol = settings.tol.unwrap_or(harness::default_tolerance(rect));
            let report =
                harness::roundtrip_on(&spec, kind, &t, &contour, &points.values()?, q, tol)?;
            Ok(Outcome {
                csv: output::roundtrip_csv(&report),
                json: output::roundtrip_json(&report),
                passed: report.passed && report.converged,
            })
        }
        Command::DeltaCheck {
            func,
            x,
            cutoffs,
            window,
        } => {
            let spec = parse_spec_string(func)?;
            let window = match window {
                Some(w) => parse_window(w)?,
                None => harness::default_window(&spec),
            };
            let table = harness::delta_check_on(*x, &spec, window, &parse_real_list(cutoffs)?, q)?;
            let tol = settings.tol.unwrap_or(BROMWICH_TOL);
            Ok(Outcome {
                csv: output::delta_csv(&table),
                json: output::table_json(&table),
                passed: table.final_error().is_some_and(|e| e <= tol),
            })
        }
        Command::Sweep {
            source,
            kind,
            arg,
            deltas,
            heights,
            scale,
        } => {
            let kind = (*kind).into();
            let t = source_rational(source, kind)?;
            let heights = match heights {
                Some(h) => Heights::Absolute(parse_real_list(h)?),
                None => Heights::Scaled(parse_real_list(scale)?),
            };
            let sweep =
                harness::invariance_sweep(&t, kind, *arg, &parse_real_list(deltas)?, &heights, q)?;
            let tol = settings.tol.unwrap_or(RECTANGLE_TOL);
            Ok(Outcome {
                csv: output::sweep_csv(&sweep),
                json: output::sweep_json(&sweep),
                passed: sweep.spread <= tol && sweep.converged,
            })
        }
        Command::CauchyCheck {
            source,
            z,
            delta,
            height,
        } => {
            // the kernel only matters for --func, where it picks the transform
            let t = source_rational(source, InverseKind::LaplaceKernel)
                .or_else(|_| source_rational(source, InverseKind::MellinKernel))?;
            let expr = TransformExpr::Rational(t.clone());
            let rect = match (delta, height) {
                (None, None) => default_rectangle(&expr)?,
                (d, h) => rectangle_for(
                    &expr,
                    d.unwrap_or(DEFAULT_DELTA),
                    h.unwrap_or(default_rectangle(&expr)?.half_height()),
                )?,
            };
            let rows = harness::cauchy_sweep(&t, &rect, &parse_zs(z)?, q)?;
            let tol = settings.tol.unwrap_or(RECTANGLE_TOL);
            Ok(Outcome {
                csv: output::cauchy_csv(&rows),
                json: output::cauchy_json(&rows, &rect),
                passed: rows.iter().all(|r| r.rel_err <= tol),
            })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Transform { .. } => "transform",
        Command::Invert { .. } => "invert",
        Command::Roundtrip { .. } => "roundtrip",
        Command::DeltaCheck { .. } => "delta-check",
        Command::Sweep { .. } => "sweep",
        Command::CauchyCheck { .. } => "cauchy-check",
    }
}

fn emit(cli: &Cli, settings: &Settings, outcome: &Outcome, stdout: &mut dyn Write) -> Result<()> {
    if let Some(path) = &settings.out {
        std::fs::write(path, &outcome.csv)?;
    }
    if settings.json {
        let mut doc = outcome.json.clone();
        if let Value::Object(map) = &mut doc {
            map.insert("command".into(), command_name(&cli.command).into());
            map.insert("passed".into(), outcome.passed.into());
        }
        writeln!(stdout, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else if settings.out.is_none() {
        stdout.write_all(outcome.csv.as_bytes())?;
    }
    Ok(())
}

/// Full CLI run; returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let result = Settings::resolve(&cli).and_then(|settings| {
        let outcome = execute(&cli.command, &settings)?;
        emit(&cli, &settings, &outcome, stdout)?;
        Ok((settings, outcome))
    });
    match result {
        Ok((settings, outcome)) => {
            if outcome.passed {
                0
            } else {
                let _ = writeln!(
                    stderr,
                    "warning: tolerance missed or quadrature did not converge"
                );
                if settings.strict {
                    EXIT_NOT_CONVERGED
                } else {
                    0
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
