//! Command dispatch, output routing and exit codes.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use polymult_core::distribution::{build_pmf_capped, sample};
use polymult_core::geometry::{enumerate_points_capped, validate, DEFAULT_POINT_CAP};
use polymult_core::harness::sweep_capped;
use polymult_core::limit::{limit_gaussian, ratio_check, window_probes};
use polymult_core::potential::minimize;
use polymult_core::{Error as CoreError, HalfSpaceSystem, NewtonOptions, PotentialContext, RatioCheck};

use crate::export::{self, ExportError};
use crate::system_file::{read_system, SystemFileError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Points,
    Pmf,
    Minimize,
    Limit,
    Ratio,
    Converge,
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

fn parse_c(s: &str) -> Result<f64, String> {
    let c: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if c > 0.0 && c < 1.0 / 6.0 {
        Ok(c)
    } else {
        Err(format!("c must lie in (0, 1/6), got {s}"))
    }
}

fn parse_k(s: &str) -> Result<u64, String> {
    match s.trim().parse::<u64>() {
        Ok(0) => Err("k must be at least 1".into()),
        Ok(k) => Ok(k),
        Err(e) => Err(format!("invalid k `{s}`: {e}")),
    }
}

/// Polyhedral multinomial distributions, their potential minimizer and Gaussian limit.
#[derive(Debug, Clone, Parser)]
#[command(name = "polymult", version)]
pub struct RunConfig {
    /// Operation to perform.
    #[arg(value_enum)]
    pub command: Command,

    /// Half-space system file: {"vectors": [[int, ...], ...], "offsets": [int, ...]}.
    #[arg(short, long)]
    pub input: PathBuf,

    /// Dilation factor for points, pmf and sample.
    #[arg(short, long, default_value = "1", value_parser = parse_k)]
    pub k: u64,

    /// Comma-separated dilation factors for ratio and converge.
    #[arg(long, value_delimiter = ',', value_parser = parse_k)]
    pub ks: Option<Vec<u64>>,

    /// Window exponent for ratio probes, in (0, 1/6).
    #[arg(short, long, default_value = "0.1", value_parser = parse_c)]
    pub c: f64,

    /// Comma-separated fixed L-coordinates for ratio instead of window probes.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Option<Vec<f64>>,

    /// Sampler seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Number of draws for sample.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,

    /// Output file; standard output when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,

    /// Output format; each command has a natural default.
    #[arg(short, long, value_enum)]
    pub format: Option<OutputFormat>,

    /// Maximum number of lattice points to enumerate.
    #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
    pub point_cap: usize,
}

impl RunConfig {
    pub fn ks_or_default(&self) -> Vec<u64> {
        match &self.ks {
            Some(ks) => ks.clone(),
            None if self.command == Command::Ratio => (4..=12).map(|e| 1u64 << e).collect(),
            None => vec![4, 16, 64],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    Validation,
    Numerical,
    Resource,
    Io,
}

impl FailureKind {
    pub fn exit_code(self) -> i32 {
        match self {
            FailureKind::Validation => 1,
            FailureKind::Numerical => 2,
            FailureKind::Resource => 3,
            FailureKind::Io => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FailureKind::Validation => "validation",
            FailureKind::Numerical => "numerical",
            FailureKind::Resource => "resource",
            FailureKind::Io => "io",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub kind: FailureKind,
    pub message: String,
}

impl Failure {
    fn new(kind: FailureKind, message: impl Into<String>) -> Self {
        Failure {
            kind,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind.exit_code()
    }

    /// Single line: `error[kind]: message`.
    pub fn line(&self) -> String {
        let flat = self.message.replace(['\n', '\r'], " ");
        format!("error[{}]: {}", self.kind.as_str(), flat)
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let kind = match e {
            CoreError::ResourceLimit { .. } | CoreError::Overflow(_) => FailureKind::Resource,
            CoreError::Domain { .. } | CoreError::NotConverged { .. } | CoreError::NearSingular { .. } => {
                FailureKind::Numerical
            }
            CoreError::Dimension { .. } => FailureKind::Io,
            _ => FailureKind::Validation,
        };
        Failure::new(kind, e.to_string())
    }
}

impl From<SystemFileError> for Failure {
    fn from(e: SystemFileError) -> Self {
        let kind = if e.is_parse_error() {
            FailureKind::Io
        } else {
            FailureKind::Validation
        };
        Failure::new(kind, e.to_string())
    }
}

impl From<ExportError> for Failure {
    fn from(e: ExportError) -> Self {
        Failure::new(FailureKind::Io, e.to_string())
    }
}

/// Output bytes plus an optional failure that still leaves a report behind.
pub struct Outcome {
    pub bytes: Vec<u8>,
    pub failure: Option<Failure>,
}

impl From<Vec<u8>> for Outcome {
    fn from(bytes: Vec<u8>) -> Self {
        Outcome { bytes, failure: None }
    }
}

fn format_for(config: &RunConfig, default: OutputFormat, json_only: bool) -> Result<OutputFormat, Failure> {
    let format = config.format.unwrap_or(default);
    if json_only && format == OutputFormat::Csv {
        return Err(Failure::new(
            FailureKind::Io,
            format!("{:?} output is JSON only", config.command).to_lowercase(),
        ));
    }
    Ok(format)
}

fn ratio_rows(config: &RunConfig, system: &HalfSpaceSystem) -> Result<Vec<RatioCheck>, Failure> {
    let ctx = PotentialContext::new(system)?;
    let m = minimize(&ctx, &NewtonOptions::default())?;
    let mut rows = Vec::new();
    for k in config.ks_or_default() {
        let probes = match &config.x {
            Some(x) => vec![x.clone()],
            None => window_probes(ctx.dim(), k, config.c),
        };
        for x in probes {
            rows.push(ratio_check(&ctx, &m, k, &x)?);
        }
    }
    Ok(rows)
}

/// Run the pipeline and return the bytes to be written.
pub fn execute(config: &RunConfig) -> Result<Outcome, Failure> {
    let system = read_system(&config.input)?;
    let cap = config.point_cap;
    use OutputFormat::{Csv, Json};

    let bytes = match config.command {
        Command::Validate => {
            format_for(config, Json, true)?;
            let report = validate(&system);
            let bytes = export::validation_json(&report)?;
            let failure = report
                .failure()
                .map(|why| Failure::new(FailureKind::Validation, format!("inadmissible system: {why}")));
            return Ok(Outcome { bytes, failure });
        }
        Command::Points => {
            let points = enumerate_points_capped(&system, config.k, cap)?;
            match format_for(config, Csv, false)? {
                Csv => export::points_csv(system.dim(), &points)?,
                Json => export::points_json(config.k, &points)?,
            }
        }
        Command::Pmf => {
            let pmf = build_pmf_capped(&system, config.k, cap)?;
            match format_for(config, Csv, false)? {
                Csv => export::pmf_csv(&pmf)?,
                Json => export::pmf_json(&pmf)?,
            }
        }
        Command::Minimize => {
            format_for(config, Json, true)?;
            let ctx = PotentialContext::new(&system)?;
            let result = minimize(&ctx, &NewtonOptions::default())?;
            let bytes = export::minimizer_json(&result)?;
            let failure = (!result.converged).then(|| {
                Failure::from(CoreError::NotConverged {
                    residual: result.residual,
                    iterations: result.iterations,
                })
            });
            return Ok(Outcome { bytes, failure });
        }
        Command::Limit => {
            format_for(config, Json, true)?;
            let ctx = PotentialContext::new(&system)?;
            let result = minimize(&ctx, &NewtonOptions::default())?;
            export::limit_json(&limit_gaussian(&ctx, &result)?)?
        }
        Command::Ratio => {
            let rows = ratio_rows(config, &system)?;
            match format_for(config, Csv, false)? {
                Csv => export::ratio_csv(&rows)?,
                Json => export::ratio_json(&rows)?,
            }
        }
        Command::Converge => {
            let rows = sweep_capped(&system, &config.ks_or_default(), cap)?;
            match format_for(config, Csv, false)? {
                Csv => export::sweep_csv(&rows)?,
                Json => export::sweep_json(&rows)?,
            }
        }
        Command::Sample => {
            let count = usize::try_from(config.count)
                .map_err(|_| Failure::new(FailureKind::Resource, "sample count does not fit in memory"))?;
            let pmf = build_pmf_capped(&system, config.k, cap)?;
            let draws = sample(&pmf, config.seed, count);
            match format_for(config, Csv, false)? {
                Csv => export::points_csv(system.dim(), &draws)?,
                Json => export::samples_json(config.k, config.seed, &draws)?,
            }
        }
    };
    Ok(bytes.into())
}

fn write_output(config: &RunConfig, bytes: &[u8]) -> Result<(), Failure> {
    let io_failure = |e: std::io::Error| Failure::new(FailureKind::Io, format!("cannot write output: {e}"));
    match &config.output {
        Some(path) => std::fs::write(path, bytes).map_err(|e| {
            Failure::new(FailureKind::Io, format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).map_err(io_failure)?;
            out.flush().map_err(io_failure)
        }
    }
}

/// Execute, write the artifact, report any failure on stderr and return the exit code.
pub fn run(config: &RunConfig) -> i32 {
    let result = execute(config).and_then(|outcome| {
        write_output(config, &outcome.bytes)?;
        outcome.failure.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => 0,
        Err(failure) => {
            eprintln!("{}", failure.line());
            failure.exit_code()
        }
    }
}
