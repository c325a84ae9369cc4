//! The `toric-seshadri` command line.
//!
//! Exit codes: 0 success (interval results included), 1 internal or oracle
//! failure, 2 schema or validation error, 3 bundle data error, 4 failed
//! hypotheses under `--strict`.

pub mod manifest;
pub mod report;

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, ValueEnum};

use crate::error::Error;
use crate::fan::Fan;
use crate::klyachko::{BundleData, EquivariantBundle};
use crate::lattice::Int;
use crate::oracle::{check_bundle, OracleConfig, OracleReport};
use crate::par::Execution;
use crate::positivity::{is_ample, is_nef, mori_generators};
use crate::seshadri::{check_hypotheses, seshadri_batch, seshadri_projective, Certificate, Point, SeshadriValue, Theorem};

pub use manifest::{Manifest, SchemaError};
pub use report::{Body, PointOutcome, PointStatus, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_HYPOTHESIS: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Rays, cones, walls, wall relations and curve classes.
    Fan,
    /// Splitting type on every invariant curve.
    Restrict,
    /// Nef and ample verdicts with witnesses.
    Nef,
    /// Generators of the Mori cone of P(E).
    Mori,
    /// Hypothesis report of the applicable Seshadri theorem.
    Check,
    /// Seshadri constants at the requested points.
    Seshadri,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Fan => "fan",
            Command::Restrict => "restrict",
            Command::Nef => "nef",
            Command::Mori => "mori",
            Command::Check => "check",
            Command::Seshadri => "seshadri",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "toric-seshadri", version, about = "Exact Seshadri constants of toric vector bundles")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// JSON manifest describing the variety and the bundle.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Point as colon-separated coordinates, e.g. "1:0:1:1"; repeatable.
    /// Replaces the manifest points.
    #[arg(long = "point")]
    pub points: Vec<String>,
    /// Twist divisor coefficients, e.g. "2,1,1"; replaces the manifest twist.
    #[arg(long, allow_hyphen_values = true)]
    pub twist: Option<String>,
    #[arg(long, conflicts_with = "table")]
    pub json: bool,
    #[arg(long)]
    pub table: bool,
    /// Treat failed hypotheses as errors (exit 4).
    #[arg(long, conflicts_with = "bounds_ok")]
    pub strict: bool,
    /// Report bounds or a null value when hypotheses fail (the default).
    #[arg(long)]
    pub bounds_ok: bool,
    /// Append brute-force cross-checks of the engine.
    #[arg(long)]
    pub oracle: bool,
    /// Disable data parallelism.
    #[arg(long)]
    pub sequential: bool,
}

/// What the binary prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug)]
enum Failure {
    Schema(SchemaError),
    Engine(Error),
    Io(String),
}

impl From<SchemaError> for Failure {
    fn from(e: SchemaError) -> Self {
        Failure::Schema(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Dimension { .. } | Error::Degenerate(_) | Error::Validation(_) | Error::InvalidPoint(_) => EXIT_SCHEMA,
        Error::Precondition(_) => EXIT_SCHEMA,
        Error::Pairing(_) | Error::Incompatible { .. } | Error::AmbiguousPairing { .. } | Error::InconsistentData { .. } => {
            EXIT_DATA
        }
        Error::Hypothesis(_) => EXIT_HYPOTHESIS,
        Error::Internal(_) => EXIT_INTERNAL,
    }
}

pub fn run(args: &Args) -> Outcome {
    match execute(args) {
        Ok((report, code)) => Outcome {
            stdout: if args.json { report.to_json() } else { report.to_table() },
            stderr: String::new(),
            code,
        },
        Err(f) => {
            let (code, kind, message, path) = match &f {
                Failure::Schema(e) => (EXIT_SCHEMA, "schema", e.message.clone(), Some(e.path.clone())),
                Failure::Io(m) => (EXIT_SCHEMA, "io", m.clone(), None),
                Failure::Engine(e) => (exit_code(e), kind_of(e), e.to_string(), None),
            };
            let stderr = match &path {
                Some(p) => format!("error: manifest field `{p}`: {message}\n"),
                None => format!("error: {message}\n"),
            };
            let stdout = if args.json {
                let doc = serde_json::json!({ "error": { "kind": kind, "message": message, "path": path } });
                format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
            } else {
                String::new()
            };
            Outcome { stdout, stderr, code }
        }
    }
}

fn kind_of(e: &Error) -> &'static str {
    match e {
        Error::AmbiguousPairing { .. } => "ambiguous_pairing",
        Error::Incompatible { .. } => "incompatible",
        Error::InconsistentData { .. } | Error::Pairing(_) => "inconsistent_data",
        Error::Hypothesis(_) => "hypothesis",
        Error::Internal(_) => "internal",
        _ => "validation",
    }
}

fn parse_twist(s: &str) -> Result<Vec<Int>, SchemaError> {
    s.split(',')
        .map(|c| c.trim().parse::<Int>())
        .collect::<Result<_, _>>()
        .map_err(|_| SchemaError { path: "--twist".into(), message: format!("expected comma-separated integers, got {s:?}") })
}

fn execute(args: &Args) -> Result<(Report, i32), Failure> {
    let text = std::fs::read_to_string(&args.manifest)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", args.manifest.display())))?;
    let mut manifest = Manifest::parse(&text)?;
    if let Some(t) = &args.twist {
        manifest.twist = Some(parse_twist(t)?.into_iter().map(crate::serde_int::IntRepr).collect());
    }
    if !args.points.is_empty() {
        manifest.points = args.points.clone();
    }
    let exec = if args.sequential { Execution::Sequential } else { Execution::default() };
    let fan = Arc::new(manifest.fan()?);
    let twist = manifest.twist(&fan)?;
    let mut report = Report {
        command: args.command.name().into(),
        variety: fan.family_name(),
        bundle: None,
        twist: twist.clone(),
        result: Body::Fan(report::fan_body(&fan)),
        oracle: None,
    };
    if args.command == Command::Fan {
        report.twist = None;
        if args.oracle {
            report.oracle = Some(OracleReport { checks: crate::oracle::check_fan(&fan) });
        }
        return Ok(finish(report, EXIT_OK));
    }

    let base = manifest.bundle(fan.clone())??;
    let bundle = match &twist {
        Some(d) => base.twisted(d)?,
        None => base,
    };
    report.bundle = Some(report::BundleSummary {
        name: bundle.name().to_string(),
        rank: bundle.rank(),
        input: match bundle.data() {
            BundleData::Filtrations(_) => "filtrations".into(),
            BundleData::Characters(_) => "characters".into(),
        },
    });
    if args.oracle {
        report.oracle = Some(check_bundle(&bundle, &OracleConfig::default(), exec));
    }
    let profile = crate::klyachko::restriction_profile(&bundle, exec)?;

    let mut code = EXIT_OK;
    report.result = match args.command {
        Command::Fan => unreachable!("handled above"),
        Command::Restrict => Body::Restrict(report::restrict_body(&profile)),
        Command::Nef => Body::Nef(report::NefBody { nef: is_nef(&profile), ample: is_ample(&profile) }),
        Command::Mori => Body::Mori(mori_generators(&profile)),
        Command::Check => {
            let theorem = theorem_for(&fan)?;
            let h = check_hypotheses(&fan, &profile, theorem, certificate(&bundle, &manifest).as_ref())?;
            if args.strict && !h.all_gating_pass() {
                code = EXIT_HYPOTHESIS;
            }
            Body::Check(h)
        }
        Command::Seshadri => {
            let (body, c) = seshadri_body(&fan, &bundle, &profile, &manifest, args.strict, exec)?;
            code = c;
            Body::Seshadri(body)
        }
    };
    Ok(finish(report, code))
}

fn finish(report: Report, code: i32) -> (Report, i32) {
    let oracle_failed = report.oracle.as_ref().is_some_and(|o| !o.all_pass());
    if oracle_failed && code == EXIT_OK {
        (report, EXIT_INTERNAL)
    } else {
        (report, code)
    }
}

fn theorem_for(fan: &Fan) -> Result<Theorem, Error> {
    Theorem::for_fan(fan).ok_or_else(|| {
        Error::Precondition(format!(
            "no Seshadri theorem for {} (supported: P^n with n >= 2, X_2, X_3)",
            fan.family_name()
        ))
    })
}

fn certificate(bundle: &EquivariantBundle, manifest: &Manifest) -> Option<Certificate> {
    match bundle.uniform_family() {
        Some(f) => Some(Certificate::Builtin(f.to_string())),
        None if manifest.assertions.as_ref().is_some_and(|a| a.uniform_a1) => Some(Certificate::Asserted),
        None => None,
    }
}

fn seshadri_body(
    fan: &Arc<Fan>,
    bundle: &EquivariantBundle,
    profile: &crate::klyachko::RestrictionProfile,
    manifest: &Manifest,
    strict: bool,
    exec: Execution,
) -> Result<(report::SeshadriBody, i32), Error> {
    let theorem = theorem_for(fan)?;
    let cert = certificate(bundle, manifest);
    let points: Vec<Point> = manifest.points.iter().map(|s| Point::parse_for(fan, s)).collect::<Result<_, _>>()?;
    let results = if points.is_empty() {
        if theorem != Theorem::Projective {
            return Err(Error::Validation(format!("{} needs at least one point (manifest `points` or --point)", theorem)));
        }
        vec![seshadri_projective(fan, profile, cert.as_ref(), None)]
    } else {
        seshadri_batch(fan, profile, &points, cert.as_ref(), exec)
    };
    let labels: Vec<String> =
        if points.is_empty() { vec!["any".into()] } else { points.iter().map(ToString::to_string).collect() };

    let mut code = EXIT_OK;
    let mut outcomes = Vec::with_capacity(results.len());
    for (point, r) in labels.into_iter().zip(results) {
        let outcome = match r {
            Ok(res) => {
                if !res.report.all_gating_pass() && strict {
                    code = EXIT_HYPOTHESIS;
                }
                let status = match res.value {
                    SeshadriValue::Exact(_) => PointStatus::Exact,
                    SeshadriValue::Interval { .. } => PointStatus::Interval,
                };
                PointOutcome { point, status, value: Some(res.value.clone()), detail: Some(res), report: None, message: None }
            }
            Err(Error::Hypothesis(h)) => {
                if strict {
                    code = EXIT_HYPOTHESIS;
                }
                PointOutcome {
                    point,
                    status: PointStatus::HypothesisFailed,
                    value: None,
                    detail: None,
                    message: Some(format!("{} does not apply", h.theorem)),
                    report: Some(*h),
                }
            }
            Err(Error::Precondition(m)) => {
                if strict {
                    code = EXIT_HYPOTHESIS;
                }
                PointOutcome { point, status: PointStatus::NotNef, value: None, detail: None, report: None, message: Some(m) }
            }
            Err(e) => return Err(e),
        };
        outcomes.push(outcome);
    }
    Ok((report::SeshadriBody { theorem, points: outcomes }, code))
}

/// Entry point for the binary: parses `argv`, prints, returns the exit code.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_SCHEMA } else { EXIT_OK };
        }
    };
    let out = run(&args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
