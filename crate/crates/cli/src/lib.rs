//! Command-line front end.
//!
//! Every command reads a matrix file and prints one JSON envelope:
//!
//! ```text
//! {"command": {...}, "input_sha256": "...", "payload": {...},
//!  "tolerances": {...}, "timing": {"seconds": ...}}
//! ```
//!
//! Reals are written with 17 significant digits, so matrices survive a
//! round trip through the output bit for bit.
//!
//! Exit status: 0 success, 1 input or argument error, 2 domain error,
//! 3 numeric failure or a failed verification suite.

pub mod matrix_file;

use std::fmt;
use std::io;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use quatspec::calculus::{self, CalculusMethod, STRUCTURE_TOL};
use quatspec::catalog::lookup;
use quatspec::contour::QUAD_REL_TOL;
use quatspec::spectrum::{
    self, singular_threshold, PencilMethod, RadiusMethod, ResolventMethod, Side, EIGEN_TOL,
};
use quatspec::theorems::{verify_theorems, Suite, TheoremReport};
use quatspec::{ErrorClass, QMatrix, Quaternion, SphereSet};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use matrix_file::{matrix_json, read_matrix, MatrixFileError};

#[derive(Debug, Parser)]
#[command(name = "quatspec", version, about = "Spectra and functional calculus of quaternionic matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Matrix file.
    #[arg(long)]
    pub input: PathBuf,
    /// Relative tolerance: sphere clustering, series truncation and the
    /// verification threshold.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// S-spectrum as a list of spheres.
    Spectrum(Common),
    /// S-spectral radius.
    Radius {
        #[command(flatten)]
        common: Common,
        /// eig | power
        #[arg(long, default_value = "eig")]
        method: String,
    },
    /// Left or right S-resolvent operator at a point.
    Resolvent {
        #[command(flatten)]
        common: Common,
        /// Point as a,b,c,d.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// L | R
        #[arg(long, default_value = "L")]
        side: String,
        /// formula | series
        #[arg(long, default_value = "formula")]
        method: String,
    },
    /// Inverse of Q_q(A) = A^2 - 2Re(q)A + |q|^2 I.
    PencilInverse {
        #[command(flatten)]
        common: Common,
        /// Point as a,b,c,d.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// direct | neumann
        #[arg(long, default_value = "direct")]
        method: String,
    },
    /// f(A) for a catalog function.
    Calculus {
        #[command(flatten)]
        common: Common,
        /// exp | log | sqrt | pow:N | poly:[..] | ratpoly:[..]/[..] | monoL:[a,n] | monoR:[a,n]
        #[arg(long = "fn")]
        function: String,
        /// complex_path | s_contour
        #[arg(long, default_value = "complex_path")]
        method: String,
    },
    /// exp(A).
    Exp(Common),
    /// Principal logarithm.
    Log(Common),
    /// Principal n-th root.
    Root {
        #[command(flatten)]
        common: Common,
        /// Root order, at least 1.
        #[arg(long)]
        n: u32,
    },
    /// Distance from a real point to the S-spectrum, two ways.
    Distance {
        #[command(flatten)]
        common: Common,
        /// Real point.
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
    },
    /// Run a cross-check suite.
    Verify {
        #[command(flatten)]
        common: Common,
        /// product | mapping | composition | polynomial | distance | resolvent_series
        #[arg(long)]
        suite: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Radius { .. } => "radius",
            Command::Resolvent { .. } => "resolvent",
            Command::PencilInverse { .. } => "pencil-inverse",
            Command::Calculus { .. } => "calculus",
            Command::Exp(_) => "exp",
            Command::Log(_) => "log",
            Command::Root { .. } => "root",
            Command::Distance { .. } => "distance",
            Command::Verify { .. } => "verify",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Spectrum(c) | Command::Exp(c) | Command::Log(c) => c,
            Command::Radius { common, .. }
            | Command::Resolvent { common, .. }
            | Command::PencilInverse { common, .. }
            | Command::Calculus { common, .. }
            | Command::Root { common, .. }
            | Command::Distance { common, .. }
            | Command::Verify { common, .. } => common,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    File(MatrixFileError),
    Core(quatspec::Error),
    SuiteFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::File(_) => 1,
            CliError::Core(e) => match e.class() {
                ErrorClass::Input => 1,
                ErrorClass::Domain => 2,
                ErrorClass::Numeric => 3,
            },
            CliError::SuiteFailed(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "Usage: {m}"),
            CliError::File(e) => e.fmt(f),
            CliError::Core(e) => e.fmt(f),
            CliError::SuiteFailed(s) => write!(f, "SuiteFailed: {s}"),
        }
    }
}

impl From<quatspec::Error> for CliError {
    fn from(e: quatspec::Error) -> Self {
        CliError::Core(e)
    }
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and executes the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let args: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli.command, &args) {
        Ok((envelope, verdict)) => {
            let stdout = format!("{}\n", to_json(&envelope));
            match verdict {
                Ok(()) => Outcome { code: 0, stdout, stderr: String::new() },
                Err(e) => Outcome { code: e.exit_code(), stdout, stderr: format!("error: {e}\n") },
            }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

type Executed = (Value, Result<(), CliError>);

fn execute(command: &Command, args: &[String]) -> Result<Executed, CliError> {
    let common = command.common();
    if !(common.tol > 0.0 && common.tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", common.tol)));
    }
    let (a, bytes) = read_matrix(&common.input).map_err(CliError::File)?;
    let digest: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
    let start = Instant::now();
    let (payload, verdict) = payload(command, &a, common.tol)?;
    let seconds = start.elapsed().as_secs_f64();
    let envelope = json!({
        "command": { "name": command.name(), "args": args },
        "input_sha256": digest,
        "payload": payload,
        "tolerances": tolerances(&a, common.tol),
        "timing": { "seconds": seconds },
    });
    Ok((envelope, verdict))
}

fn tolerances(a: &QMatrix, tol: f64) -> Value {
    json!({
        "tol": tol,
        "cluster": tol * (1.0 + a.norm()),
        "eigen_residual": EIGEN_TOL,
        "singular_threshold": singular_threshold(a),
        "quadrature_relative": QUAD_REL_TOL,
        "structure": STRUCTURE_TOL,
    })
}

fn parse_quaternion(text: &str) -> Result<Quaternion, CliError> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--at expects a,b,c,d, got '{text}'")))?;
    let arr: [f64; 4] = parts
        .try_into()
        .map_err(|_| CliError::Usage(format!("--at expects four components, got '{text}'")))?;
    let q = Quaternion::from_array(arr);
    if !q.is_finite() {
        return Err(CliError::Usage(format!("--at has a non-finite component: '{text}'")));
    }
    Ok(q)
}

fn parse_flag<T: std::str::FromStr<Err = quatspec::Error>>(text: &str) -> Result<T, CliError> {
    text.parse().map_err(|e: quatspec::Error| CliError::Usage(e.to_string()))
}

fn spheres_json(set: &SphereSet) -> Value {
    Value::Array(
        set.iter()
            .map(|(s, m)| json!({ "re": s.re, "im_norm": s.im_norm, "mult": m }))
            .collect(),
    )
}

fn report_json(report: &TheoremReport, tol: f64, pass: bool) -> Value {
    let cases: Vec<Value> = report
        .cases
        .iter()
        .map(|c| json!({ "label": c.label, "discrepancy": c.discrepancy }))
        .collect();
    let control = report.control.as_ref().map(|c| {
        json!({
            "spectrum": spheres_json(&c.spectrum),
            "image_point": c.image_point.to_array(),
            "mismatch": c.mismatch,
        })
    });
    json!({
        "suite": report.suite.name(),
        "cases": cases,
        "control": control,
        "tolerance": tol,
        "pass": pass,
    })
}

fn payload(command: &Command, a: &QMatrix, tol: f64) -> Result<Executed, CliError> {
    let ok = |v: Value| Ok((v, Ok(())));
    match command {
        Command::Spectrum(_) => {
            let set = spectrum::s_spectrum_with_tol(a, tol * (1.0 + a.norm()))?;
            let eigs: Vec<Value> = spectrum::slice_spectrum(a)?.iter().map(|z| json!([z.re, z.im])).collect();
            ok(json!({ "spheres": spheres_json(&set), "slice_eigenvalues": eigs }))
        }
        Command::Radius { method, .. } => {
            let method: RadiusMethod = parse_flag(method)?;
            let r = spectrum::s_spectral_radius(a, method)?;
            ok(json!({ "radius": r }))
        }
        Command::Resolvent { at, side, method, .. } => {
            let s = parse_quaternion(at)?;
            let side: Side = parse_flag(side)?;
            let method: ResolventMethod = parse_flag(method)?;
            let m = spectrum::s_resolvent(a, s, side, method, tol)?;
            ok(json!({ "matrix": matrix_json(&m) }))
        }
        Command::PencilInverse { at, method, .. } => {
            let q = parse_quaternion(at)?;
            let method: PencilMethod = parse_flag(method)?;
            let m = spectrum::q_pencil_inverse(a, q, method, tol)?;
            ok(json!({ "matrix": matrix_json(&m) }))
        }
        Command::Calculus { function, method, .. } => {
            let f = lookup(function)?;
            let method: CalculusMethod = parse_flag(method)?;
            let m = calculus::calculus_sided_with(a, &f, f.kind, method)?;
            ok(json!({ "function": f.name, "kind": format!("{:?}", f.kind), "matrix": matrix_json(&m) }))
        }
        Command::Exp(_) => ok(json!({ "matrix": matrix_json(&calculus::op_exp(a)) })),
        Command::Log(_) => ok(json!({ "matrix": matrix_json(&calculus::op_log(a)?) })),
        Command::Root { n, .. } => ok(json!({ "matrix": matrix_json(&calculus::op_nth_root(a, *n)?) })),
        Command::Distance { alpha, .. } => {
            let r = spectrum::distance_to_spectrum(a, *alpha)?;
            ok(json!({ "geometric": r.geometric, "via_radius": r.via_radius, "discrepancy": r.discrepancy() }))
        }
        Command::Verify { suite, .. } => {
            let suite: Suite = parse_flag(suite)?;
            let report = verify_theorems(a, suite)?;
            let pass = report.cases.iter().all(|c| c.discrepancy < tol)
                && report.control.as_ref().is_none_or(|c| c.mismatch);
            let body = report_json(&report, tol, pass);
            let verdict = if pass {
                Ok(())
            } else {
                Err(CliError::SuiteFailed(format!("{suite}: max discrepancy {:e}", report.max_discrepancy())))
            };
            Ok((body, verdict))
        }
    }
}

/// Compact JSON with every float in `{:.16e}` form.
pub fn to_json(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Scientific);
    serde::Serialize::serialize(value, &mut ser).expect("serializing a Value cannot fail");
    String::from_utf8(out).expect("JSON is UTF-8")
}

struct Scientific;

impl serde_json::ser::Formatter for Scientific {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }
}
