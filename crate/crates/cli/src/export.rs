//! CSV and JSON writers for every artifact the pipeline produces.

use polymult_core::{ConvergenceMetrics, ExactPmf, LimitGaussian, MinimizerResult, RatioCheck, ValidationReport};
use serde::Serialize;

use crate::format::{fmt_f64, to_json};

pub type ExportResult = Result<Vec<u8>, ExportError>;

#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv buffer: {0}")]
    Buffer(String),
}

fn csv_bytes(header: Vec<String>, rows: impl IntoIterator<Item = Vec<String>>) -> ExportResult {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(&header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| ExportError::Buffer(e.to_string()))
}

fn coordinate_header(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x_{i}")).collect()
}

fn strings<T: ToString>(values: &[Option<T>]) -> Vec<Option<String>> {
    values.iter().map(|v| v.as_ref().map(ToString::to_string)).collect()
}

#[derive(Serialize)]
struct ValidationJson {
    admissible: bool,
    sum_zero: bool,
    compact: bool,
    all_touching: bool,
    nonempty: bool,
    failure: Option<&'static str>,
    per_constraint_min: Vec<Option<String>>,
    per_constraint_max: Vec<Option<String>>,
}

/// Per-constraint extrema are exact rationals written as `"p/q"` strings.
pub fn validation_json(report: &ValidationReport) -> ExportResult {
    Ok(to_json(&ValidationJson {
        admissible: report.is_admissible(),
        sum_zero: report.sum_zero,
        compact: report.compact,
        all_touching: report.all_touching,
        nonempty: report.nonempty,
        failure: report.failure(),
        per_constraint_min: strings(&report.per_constraint_min),
        per_constraint_max: strings(&report.per_constraint_max),
    })?)
}

pub fn points_csv(n: usize, points: &[Vec<i64>]) -> ExportResult {
    csv_bytes(
        coordinate_header(n),
        points.iter().map(|p| p.iter().map(ToString::to_string).collect()),
    )
}

#[derive(Serialize)]
struct PointsJson<'a> {
    k: u64,
    count: usize,
    points: &'a [Vec<i64>],
}

pub fn points_json(k: u64, points: &[Vec<i64>]) -> ExportResult {
    Ok(to_json(&PointsJson {
        k,
        count: points.len(),
        points,
    })?)
}

pub fn pmf_csv(pmf: &ExactPmf) -> ExportResult {
    let mut header = coordinate_header(pmf.system().dim());
    header.push("weight".into());
    header.push("prob".into());
    let probs = pmf.probabilities();
    let rows = pmf
        .points()
        .iter()
        .zip(pmf.weights())
        .zip(&probs)
        .map(|((x, w), p)| {
            let mut row: Vec<String> = x.iter().map(ToString::to_string).collect();
            row.push(w.to_string());
            row.push(fmt_f64(*p));
            row
        });
    csv_bytes(header, rows)
}

#[derive(Serialize)]
struct PmfAtom<'a> {
    x: &'a [i64],
    weight: String,
    prob: f64,
}

#[derive(Serialize)]
struct PmfJson<'a> {
    k: u64,
    normalizer: String,
    atoms: Vec<PmfAtom<'a>>,
}

pub fn pmf_json(pmf: &ExactPmf) -> ExportResult {
    let probs = pmf.probabilities();
    let atoms = pmf
        .points()
        .iter()
        .zip(pmf.weights())
        .zip(probs)
        .map(|((x, w), prob)| PmfAtom {
            x,
            weight: w.to_string(),
            prob,
        })
        .collect();
    Ok(to_json(&PmfJson {
        k: pmf.k(),
        normalizer: pmf.normalizer().to_string(),
        atoms,
    })?)
}

#[derive(Serialize)]
struct MinimizerJson<'a> {
    m: &'a [f64],
    residual: f64,
    iterations: usize,
    converged: bool,
    min_slack: f64,
}

pub fn minimizer_json(result: &MinimizerResult) -> ExportResult {
    Ok(to_json(&MinimizerJson {
        m: &result.m,
        residual: result.residual,
        iterations: result.iterations,
        converged: result.converged,
        min_slack: result.min_slack,
    })?)
}

#[derive(Serialize)]
struct LimitJson<'a> {
    dim: usize,
    m: &'a [f64],
    basis: &'a [Vec<i64>],
    covolume: f64,
    q: &'a [Vec<f64>],
    sigma: &'a [Vec<f64>],
    log_norm: f64,
}

pub fn limit_json(g: &LimitGaussian) -> ExportResult {
    Ok(to_json(&LimitJson {
        dim: g.dim(),
        m: &g.m,
        basis: &g.basis,
        covolume: g.covolume,
        q: &g.q,
        sigma: &g.sigma,
        log_norm: g.log_norm,
    })?)
}

fn joined(x: &[f64]) -> String {
    x.iter().map(|v| fmt_f64(*v)).collect::<Vec<_>>().join(";")
}

pub fn ratio_csv(checks: &[RatioCheck]) -> ExportResult {
    let header = ["k", "x_coords", "exact_log_ratio", "corrected_log_ratio", "predicted", "abs_error"]
        .map(String::from)
        .to_vec();
    csv_bytes(
        header,
        checks.iter().map(|r| {
            vec![
                r.k.to_string(),
                joined(&r.x),
                fmt_f64(r.exact_log_ratio),
                fmt_f64(r.corrected_log_ratio),
                fmt_f64(r.predicted),
                fmt_f64(r.abs_error),
            ]
        }),
    )
}

#[derive(Serialize)]
struct RatioJson<'a> {
    k: u64,
    x_coords: &'a [f64],
    exact_log_ratio: f64,
    corrected_log_ratio: f64,
    predicted: f64,
    abs_error: f64,
}

pub fn ratio_json(checks: &[RatioCheck]) -> ExportResult {
    let rows: Vec<_> = checks
        .iter()
        .map(|r| RatioJson {
            k: r.k,
            x_coords: &r.x,
            exact_log_ratio: r.exact_log_ratio,
            corrected_log_ratio: r.corrected_log_ratio,
            predicted: r.predicted,
            abs_error: r.abs_error,
        })
        .collect();
    Ok(to_json(&rows)?)
}

pub fn sweep_csv(rows: &[ConvergenceMetrics]) -> ExportResult {
    let header = ["k", "recentering", "tv_distance", "max_log_density_error", "mean_drift", "cov_error"]
        .map(String::from)
        .to_vec();
    csv_bytes(
        header,
        rows.iter().map(|r| {
            vec![
                r.k.to_string(),
                r.recentering.as_str().to_string(),
                fmt_f64(r.tv_distance),
                fmt_f64(r.max_log_density_error),
                fmt_f64(r.mean_drift),
                fmt_f64(r.cov_error),
            ]
        }),
    )
}

#[derive(Serialize)]
struct SweepJson {
    k: u64,
    recentering: &'static str,
    tv_distance: f64,
    max_log_density_error: f64,
    mean_drift: f64,
    cov_error: f64,
}

pub fn sweep_json(rows: &[ConvergenceMetrics]) -> ExportResult {
    let rows: Vec<_> = rows
        .iter()
        .map(|r| SweepJson {
            k: r.k,
            recentering: r.recentering.as_str(),
            tv_distance: r.tv_distance,
            max_log_density_error: r.max_log_density_error,
            mean_drift: r.mean_drift,
            cov_error: r.cov_error,
        })
        .collect();
    Ok(to_json(&rows)?)
}

#[derive(Serialize)]
struct SampleJson<'a> {
    k: u64,
    seed: u64,
    samples: &'a [Vec<i64>],
}

pub fn samples_json(k: u64, seed: u64, samples: &[Vec<i64>]) -> ExportResult {
    Ok(to_json(&SampleJson { k, seed, samples })?)
}
