//! Command-line front end.
//!
//! Every command prints one JSON document: the command name, the fully
//! resolved configuration, the seed, a wall-clock timestamp (the only field
//! that differs between identical runs) and the result. Floats are written
//! with 17 significant digits so values survive a round trip.
//!
//! Exit codes: 0 success or pass, 1 falsified or condition unsatisfied,
//! 2 domain error, 64 usage error, 66 missing input.

use std::collections::BTreeMap;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

use crate::error::Error;
use crate::frame_bounds::{
    krein_favard_exact, periodization_bounds, sobolev_bounds, LatticeParams, SobolevWindow,
    DEFAULT_KREIN_FAVARD_TOL,
};
use crate::poh::{
    hold_output, jitter_budget, reconstruction_experiment, BudgetTarget, Builtin, ExperimentConfig,
    JitterDistribution, JitterModel, SignalGrid, SignalSource,
};
use crate::stability::{
    certify_bspline, certify_combined, certify_rect, certify_sinc, certify_sobolev, certify_tensor,
    Certificate, JitterProfile, TensorDim,
};
use crate::verifier::{verify_certificate, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_NO_INPUT: i32 = 66;

/// Environment variable holding the default seed.
pub const SEED_ENV: &str = "JITTERFRAME_SEED";

#[derive(Debug, Parser, Serialize)]
#[command(name = "jitterframe", version, about = "Gabor frame bounds and jitter-stability certificates")]
pub struct Cli {
    /// Seed for every randomized step [default: $JITTERFRAME_SEED or 0].
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Upper limit on worker threads.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,

    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Frame bounds of a B-spline or Sobolev window.
    Bounds(BoundsArgs),
    /// Stability certificate for a jittered system.
    Certify {
        #[command(subcommand)]
        which: CertifyCommand,
    },
    /// Numerically check a certificate on finite sections.
    Verify(VerifyArgs),
    /// Hold reconstruction of jittered samples.
    Simulate(SimulateArgs),
    /// Largest certified timing jitter.
    Budget(BudgetArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    /// `cos(πt/p)` on `[-p/2, p/2]`.
    Cos,
    /// `rect^(p)`, treated as a Sobolev window.
    Bspline,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    /// B-spline order, or the support length of a `--window` window.
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    /// Use the Sobolev-window bounds for this window instead.
    #[arg(long, value_enum)]
    pub window: Option<WindowKind>,
}

#[derive(Debug, Args, Serialize, Clone)]
pub struct JitterArgs {
    /// All timing jitter on row 0.
    #[arg(long = "L", conflicts_with_all = ["rows", "jitter"])]
    pub l: Option<f64>,
    /// Per-row timing jitter as `n:L_n`, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "jitter")]
    pub rows: Vec<String>,
    /// Jitter profile JSON `{"rows": {"n": L_n}, "ell": ℓ}`.
    #[arg(long)]
    pub jitter: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct LatticeArgs {
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CertifyCommand {
    /// Rectangle window, timing jitter.
    Rect {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        jitter: JitterArgs,
    },
    /// `rect^(p)` window, timing jitter.
    Bspline {
        #[arg(long)]
        p: i64,
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        jitter: JitterArgs,
    },
    /// `rect^(p)` window, timing and frequency jitter.
    Combined {
        #[arg(long)]
        p: i64,
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        jitter: JitterArgs,
        /// Frequency jitter.
        #[arg(long)]
        ell: Option<f64>,
    },
    /// The sinc-side family, Fourier dual of `combined`.
    Sinc {
        #[arg(long)]
        p: i64,
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        jitter: JitterArgs,
        #[arg(long)]
        ell: Option<f64>,
    },
    /// Sobolev window, per-row timing jitter.
    Sobolev {
        #[arg(long, value_enum)]
        window: WindowKind,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        jitter: JitterArgs,
    },
    /// Tensor product of rectangle systems.
    Tensor {
        /// One coordinate per value, `a=..,b=..,L=..`.
        #[arg(long, num_args = 1.., required = true)]
        dims: Vec<String>,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Certificate JSON (bare or a `certify` report); `-` reads standard input.
    pub certificate: String,
    #[arg(long, default_value_t = 8)]
    pub n_freq: i64,
    #[arg(long, default_value_t = 16)]
    pub n_shift: i64,
    /// Independent jitter realizations.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Random subfamilies per realization.
    #[arg(long, default_value_t = 4)]
    pub subfamilies: usize,
    #[arg(long, default_value_t = 289)]
    pub max_atoms: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistributionArg {
    Uniform,
    WorstCase,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    /// Builtin signal (chirp, staircase, gaussian) or a `t,value` CSV file.
    #[arg(long, default_value = "chirp")]
    pub signal: String,
    #[arg(long, default_value_t = 1)]
    pub p: i64,
    #[arg(long = "T", default_value_t = 1.0)]
    pub period: f64,
    /// Jitter bound in units of T.
    #[arg(long, default_value_t = 0.0)]
    pub eps: f64,
    #[arg(long, default_value_t = -32, allow_hyphen_values = true)]
    pub n_min: i64,
    #[arg(long, default_value_t = 32, allow_hyphen_values = true)]
    pub n_max: i64,
    #[arg(long, value_enum, default_value_t = DistributionArg::Uniform)]
    pub distribution: DistributionArg,
    #[arg(long, default_value_t = 70)]
    pub iterations: usize,
    /// Also write the hold output as CSV.
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum ModelArg {
    #[value(name = "total-L")]
    #[serde(rename = "total-L")]
    TotalL,
    #[value(name = "single-row")]
    #[serde(rename = "single-row")]
    SingleRow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetArg {
    Frame,
    Riesz,
}

#[derive(Debug, Args, Serialize)]
pub struct BudgetArgs {
    #[arg(long)]
    pub p: i64,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long = "T", default_value_t = 1.0)]
    pub period: f64,
    #[arg(long, value_enum, default_value_t = ModelArg::TotalL)]
    pub model: ModelArg,
    #[arg(long, value_enum, default_value_t = TargetArg::Frame)]
    pub target: TargetArg,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Unsatisfied => EXIT_FAILED,
            Error::Io(_) => EXIT_NO_INPUT,
            Error::Json(_) | Error::Csv(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

/// JSON output: pretty layout, floats as `{:.16e}`.
struct ReportFormatter(PrettyFormatter<'static>);

impl Formatter for ReportFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes `value` the way the CLI prints it.
pub fn to_report_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ReportFormatter(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize> {
    command: &'a str,
    config: &'a Cli,
    seed: u64,
    timestamp_unix_nondeterministic: u64,
    result: R,
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out`, or to `--output`. Diagnostics go to `err`. Returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "jitterframe: {}", f.message);
            f.code
        }
    }
}

fn resolve_seed(cli: &Cli) -> Result<u64, Failure> {
    if let Some(s) = cli.seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => {
            v.trim().parse().map_err(|_| usage(format!("{SEED_ENV}={v:?} is not an unsigned 64-bit integer")))
        }
        Err(_) => Ok(0),
    }
}

fn dispatch(mut cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let seed = resolve_seed(&cli)?;
    cli.seed = Some(seed);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n as usize);
    }
    let pool =
        builder.build().map_err(|e| Failure { code: EXIT_DOMAIN, message: format!("thread pool: {e}") })?;
    let (result, code) = pool.install(|| execute(&cli, seed))?;
    if let Command::Certify { which } = &cli.command {
        if let Some(w) = support_warning(which) {
            let _ = writeln!(err, "jitterframe: warning: {w}");
        }
    }
    let envelope = Envelope {
        command: command_name(&cli.command),
        config: &cli,
        seed,
        timestamp_unix_nondeterministic: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        result,
    };
    let text = to_report_json(&envelope).map_err(Error::from)?;
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure {
            code: EXIT_DOMAIN,
            message: format!("cannot write {}: {e}", path.display()),
        })?,
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure { code: EXIT_DOMAIN, message: e.to_string() })?,
    }
    Ok(code)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Bounds(_) => "bounds",
        Command::Certify { .. } => "certify",
        Command::Verify(_) => "verify",
        Command::Simulate(_) => "simulate",
        Command::Budget(_) => "budget",
    }
}

fn execute(cli: &Cli, seed: u64) -> Result<(Value, i32), Failure> {
    match &cli.command {
        Command::Bounds(a) => Ok((bounds(a)?, EXIT_OK)),
        Command::Certify { which } => {
            let cert = certify(which)?;
            let code = if cert.satisfied { EXIT_OK } else { EXIT_FAILED };
            Ok((json(&cert)?, code))
        }
        Command::Verify(a) => {
            let cert = read_certificate(&a.certificate)?;
            let opts = VerifyOptions {
                n_freq: a.n_freq,
                n_shift: a.n_shift,
                realizations: a.trials as usize,
                subfamilies: a.subfamilies,
                max_atoms: a.max_atoms,
                tol: a.tol,
                seed,
            };
            let report = verify_certificate(&cert, &opts)?;
            let code = if report.passed { EXIT_OK } else { EXIT_FAILED };
            Ok((json(&report)?, code))
        }
        Command::Simulate(a) => Ok((simulate(a, seed)?, EXIT_OK)),
        Command::Budget(a) => {
            let lat = LatticeParams::new(a.a, a.b)?;
            let model = match a.model {
                ModelArg::TotalL => JitterModel::TotalL,
                ModelArg::SingleRow => JitterModel::SingleRow,
            };
            let target = match a.target {
                TargetArg::Frame => BudgetTarget::Frame,
                TargetArg::Riesz => BudgetTarget::Riesz,
            };
            Ok((json(&jitter_budget(a.p, a.period, lat, model, target)?)?, EXIT_OK))
        }
    }
}

fn json<T: Serialize>(v: &T) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Error::from(e).into())
}

fn bounds(a: &BoundsArgs) -> Result<Value, Failure> {
    let lat = LatticeParams::new(a.a, a.b)?;
    let mut result = serde_json::Map::new();
    match a.window {
        Some(kind) => {
            let w = sobolev_window(kind, a.p, a.a)?;
            result.insert("window".into(), Value::String(w.label().to_string()));
            result.insert("sobolev".into(), json(&sobolev_bounds(&w, lat)?)?);
        }
        None => {
            let p = integer_order(a.p)?;
            result.insert("periodization".into(), json(&periodization_bounds(p, lat)?)?);
            let exact = if lat.a == 1.0 && lat.b == 1.0 {
                json(&krein_favard_exact(p, DEFAULT_KREIN_FAVARD_TOL)?)?
            } else {
                Value::Null
            };
            result.insert("exact".into(), exact);
        }
    }
    if a.p * lat.b > 1.0 + 1e-12 {
        result.insert(
            "note".into(),
            Value::String(format!(
                "window support {} exceeds 1/b = {}; the periodization bounds are not guaranteed frame bounds here (run `verify` on a certificate to test them)",
                a.p,
                1.0 / lat.b
            )),
        );
    }
    Ok(Value::Object(result))
}

fn integer_order(p: f64) -> Result<i64, Failure> {
    if p.fract() != 0.0 || !p.is_finite() {
        return Err(usage(format!("B-spline order --p {p} must be an integer")));
    }
    Ok(p as i64)
}

fn sobolev_window(kind: WindowKind, p: f64, a: f64) -> Result<SobolevWindow, Failure> {
    Ok(match kind {
        WindowKind::Cos => SobolevWindow::cosine(p, a)?,
        WindowKind::Bspline => SobolevWindow::bspline(integer_order(p)?, a)?,
    })
}

fn jitter_profile(j: &JitterArgs, ell: Option<f64>) -> Result<JitterProfile, Failure> {
    let mut prof = if let Some(path) = &j.jitter {
        let text = std::fs::read_to_string(path).map_err(|e| Failure {
            code: EXIT_NO_INPUT,
            message: format!("cannot read jitter profile {}: {e}", path.display()),
        })?;
        serde_json::from_str::<JitterProfile>(&text)
            .map_err(|e| usage(format!("jitter profile {}: {e}", path.display())))?
    } else if let Some(l) = j.l {
        JitterProfile::single_row(l)?
    } else {
        let mut rows = BTreeMap::new();
        for item in &j.rows {
            let (n, l) = item
                .split_once(':')
                .ok_or_else(|| usage(format!("--rows entry {item:?} is not of the form n:L")))?;
            let n: i64 = n.trim().parse().map_err(|_| usage(format!("row index {n:?} is not an integer")))?;
            let l: f64 = l.trim().parse().map_err(|_| usage(format!("row jitter {l:?} is not a number")))?;
            if rows.insert(n, l).is_some() {
                return Err(usage(format!("row {n} given twice")));
            }
        }
        JitterProfile::new(rows, 0.0)?
    };
    if let Some(ell) = ell {
        prof.set_ell(ell)?;
    }
    Ok(prof)
}

fn parse_dim(s: &str) -> Result<TensorDim, Failure> {
    let (mut a, mut b, mut l) = (None, None, None);
    for part in s.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("--dims entry {s:?} must look like a=1,b=1,L=0.05")))?;
        let v: f64 = v.trim().parse().map_err(|_| usage(format!("{v:?} is not a number in --dims {s:?}")))?;
        match k.trim() {
            "a" => a = Some(v),
            "b" => b = Some(v),
            "L" => l = Some(v),
            other => return Err(usage(format!("unknown key {other:?} in --dims {s:?}"))),
        }
    }
    match (a, b, l) {
        (Some(a), Some(b), Some(l)) => Ok(TensorDim { a, b, l }),
        _ => Err(usage(format!("--dims {s:?} needs all of a, b and L"))),
    }
}

fn lattice(l: &LatticeArgs) -> Result<LatticeParams, Failure> {
    Ok(LatticeParams::new(l.a, l.b)?)
}

/// Set when a window support exceeds `1/b`, where the periodization bounds
/// behind every certificate are not guaranteed.
fn support_warning(which: &CertifyCommand) -> Option<String> {
    let (support, b) = match which {
        CertifyCommand::Rect { lattice, .. } => (1.0, lattice.b),
        CertifyCommand::Bspline { p, lattice, .. }
        | CertifyCommand::Combined { p, lattice, .. }
        | CertifyCommand::Sinc { p, lattice, .. } => (*p as f64, lattice.b),
        CertifyCommand::Sobolev { p, lattice, .. } => (*p, lattice.b),
        CertifyCommand::Tensor { dims } => {
            let widest = dims.iter().filter_map(|d| parse_dim(d).ok()).map(|d| d.b).fold(0.0, f64::max);
            (1.0, widest)
        }
    };
    (support * b > 1.0 + 1e-12).then(|| {
        format!(
            "window support {support} exceeds 1/b = {}; the certified bounds may not hold, check with `verify`",
            1.0 / b
        )
    })
}

fn certify(which: &CertifyCommand) -> Result<Certificate, Failure> {
    Ok(match which {
        CertifyCommand::Rect { lattice: lt, jitter } => {
            certify_rect(lattice(lt)?, &jitter_profile(jitter, None)?)?
        }
        CertifyCommand::Bspline { p, lattice: lt, jitter } => {
            certify_bspline(*p, lattice(lt)?, &jitter_profile(jitter, None)?)?
        }
        CertifyCommand::Combined { p, lattice: lt, jitter, ell } => {
            certify_combined(*p, lattice(lt)?, &jitter_profile(jitter, *ell)?)?
        }
        CertifyCommand::Sinc { p, lattice: lt, jitter, ell } => {
            certify_sinc(*p, lattice(lt)?, &jitter_profile(jitter, *ell)?)?
        }
        CertifyCommand::Sobolev { window, p, lattice: lt, jitter } => {
            let w = sobolev_window(*window, *p, lt.a)?;
            certify_sobolev(&w, lattice(lt)?, &jitter_profile(jitter, None)?)?
        }
        CertifyCommand::Tensor { dims } => {
            let dims = dims.iter().map(|d| parse_dim(d)).collect::<Result<Vec<_>, _>>()?;
            certify_tensor(&dims)?
        }
    })
}

/// Accepts a bare certificate or a report whose `result` is one.
fn read_certificate(source: &str) -> Result<Certificate, Failure> {
    let text = if source == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure {
            code: EXIT_NO_INPUT,
            message: format!("cannot read standard input: {e}"),
        })?;
        s
    } else {
        std::fs::read_to_string(source).map_err(|e| Failure {
            code: EXIT_NO_INPUT,
            message: format!("cannot read certificate {source}: {e}"),
        })?
    };
    let mut value: Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("certificate {source}: {e}")))?;
    if value.get("result").is_some() && value.get("condition_lhs").is_none() {
        value = value["result"].take();
    }
    serde_json::from_value(value).map_err(|e| usage(format!("certificate {source}: {e}")))
}

fn simulate(a: &SimulateArgs, seed: u64) -> Result<Value, Failure> {
    let source: Box<dyn SignalSource> = match a.signal.parse::<Builtin>() {
        Ok(b) => Box::new(b),
        Err(_) => {
            let path = PathBuf::from(&a.signal);
            if !path.exists() {
                return Err(Failure {
                    code: EXIT_NO_INPUT,
                    message: format!(
                        "signal {:?} is neither a builtin (chirp, staircase, gaussian) nor an existing CSV file",
                        a.signal
                    ),
                });
            }
            Box::new(SignalGrid::read_csv_path(&path).map_err(|e| match e {
                Error::Io(io) => {
                    Failure { code: EXIT_NO_INPUT, message: format!("{}: {io}", path.display()) }
                }
                other => usage(format!("{}: {other}", path.display())),
            })?)
        }
    };
    let cfg = ExperimentConfig {
        p: a.p,
        period: a.period,
        eps: a.eps,
        n_min: a.n_min,
        n_max: a.n_max,
        seed,
        distribution: match a.distribution {
            DistributionArg::Uniform => JitterDistribution::Uniform,
            DistributionArg::WorstCase => JitterDistribution::WorstCase,
        },
        iterations: a.iterations,
        ..Default::default()
    };
    let report = reconstruction_experiment(source.as_ref(), &cfg)?;
    if let Some(path) = &a.csv_out {
        let held = hold_output(source.as_ref(), &cfg)?;
        let file = std::fs::File::create(path).map_err(|e| Failure {
            code: EXIT_DOMAIN,
            message: format!("cannot write {}: {e}", path.display()),
        })?;
        held.write_csv(file)?;
    }
    json(&report)
}
