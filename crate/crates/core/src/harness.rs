//! Rescaled lattice measures and their distance to the limiting Gaussian.
//!
//! `nu'_k` recenters `mu_{k a}` at `k m_a`, `nu_k` at the exact mean; both
//! scale by `1/sqrt(k)` and are expressed in lattice-basis coordinates of `L`.
//! Each atom stands for one cell of the scaled lattice, of volume
//! `covolume / k^{d/2}`, which is how the Gaussian density is discretized.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
#[allow(unused_imports)]
use num_traits::Float;

use crate::distribution::{build_pmf_capped, moments, ExactPmf, MomentSummary};
use crate::error::{Error, Result};
use crate::geometry::{HalfSpaceSystem, DEFAULT_POINT_CAP};
use crate::limit::{limit_gaussian, log_density_on_l, LimitGaussian};
use crate::potential::{minimize, MinimizerResult, NewtonOptions, PotentialContext};
use crate::rational::{to_f64, Rat};

/// Atoms below this probability are skipped by the log-density metric.
pub const LOG_DENSITY_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Recentering {
    /// Centered at `k m_a`.
    Minimizer,
    /// Centered at the exact mean `E[X_{k a}]`.
    Mean,
}

impl Recentering {
    pub fn as_str(self) -> &'static str {
        match self {
            Recentering::Minimizer => "minimizer",
            Recentering::Mean => "mean",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub coords: Vec<f64>,
    pub prob: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    pub atoms: Vec<Atom>,
    pub k: u64,
    pub recentering: Recentering,
    pub cell_volume: f64,
    pub basis: Vec<Vec<i64>>,
}

impl DiscreteMeasure {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.prob).sum()
    }

    pub fn mean(&self) -> Vec<f64> {
        let mut mean = vec![0.0; self.dim()];
        for a in &self.atoms {
            for (m, x) in mean.iter_mut().zip(&a.coords) {
                *m += a.prob * x;
            }
        }
        mean
    }

    pub fn covariance(&self) -> Vec<Vec<f64>> {
        let d = self.dim();
        let mean = self.mean();
        let mut cov = vec![vec![0.0; d]; d];
        for a in &self.atoms {
            for i in 0..d {
                let di = a.coords[i] - mean[i];
                for j in 0..d {
                    cov[i][j] += a.prob * di * (a.coords[j] - mean[j]);
                }
            }
        }
        cov
    }
}

/// Lattice coordinates of `(y - center) / sqrt(k)` for every point, with the
/// difference projected exactly.
fn rescale(
    pmf: &ExactPmf,
    ctx: &PotentialContext,
    center: &[Rat],
    float_shift: &[f64],
    recentering: Recentering,
) -> Result<DiscreteMeasure> {
    if pmf.system() != ctx.system() {
        return Err(Error::MismatchedSystem);
    }
    let k = pmf.k();
    let root_k = (k as f64).sqrt();
    let geometry = ctx.geometry();
    let probs = pmf.probabilities();
    let mut atoms = Vec::with_capacity(pmf.len());
    for (y, prob) in pmf.points().iter().zip(probs) {
        let diff: Vec<Rat> = y
            .iter()
            .zip(center)
            .map(|(&yi, c)| BigRational::from_integer(BigInt::from(yi)) - c)
            .collect();
        let z = geometry
            .lattice_coordinates(&diff)
            .ok_or(Error::MismatchedSystem)?;
        let coords = z
            .iter()
            .zip(float_shift)
            .map(|(zj, s)| (to_f64(zj) - s) / root_k)
            .collect();
        atoms.push(Atom { coords, prob });
    }
    let d = geometry.dim() as f64;
    Ok(DiscreteMeasure {
        atoms,
        k,
        recentering,
        cell_volume: geometry.covolume() / (k as f64).powf(d / 2.0),
        basis: ctx.basis().to_vec(),
    })
}

/// `nu'_k`: the law of `(X_{k a} - k m_a) / sqrt(k)`.
pub fn nu_prime(pmf: &ExactPmf, ctx: &PotentialContext, m: &MinimizerResult) -> Result<DiscreteMeasure> {
    if !m.converged {
        return Err(Error::NotConverged {
            residual: m.residual,
            iterations: m.iterations,
        });
    }
    // k m = k x_0 + B (k l): the exact part is projected, the float part subtracted.
    let k = pmf.k();
    let kr = BigRational::from_integer(BigInt::from(k));
    let center: Vec<Rat> = ctx.geometry().interior_point().iter().map(|x| x * &kr).collect();
    let shift: Vec<f64> = m.l_coords.iter().map(|l| k as f64 * l).collect();
    rescale(pmf, ctx, &center, &shift, Recentering::Minimizer)
}

/// `nu_k`: the law of `(X_{k a} - E[X_{k a}]) / sqrt(k)`.
pub fn nu(pmf: &ExactPmf, ctx: &PotentialContext, moments: &MomentSummary) -> Result<DiscreteMeasure> {
    if moments.k != pmf.k() || moments.mean.len() != ctx.system().dim() {
        return Err(Error::MismatchedSystem);
    }
    let shift = vec![0.0; ctx.dim()];
    rescale(pmf, ctx, &moments.mean, &shift, Recentering::Mean)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceMetrics {
    pub k: u64,
    pub recentering: Recentering,
    pub tv_distance: f64,
    pub max_log_density_error: f64,
    pub mean_drift: f64,
    pub cov_error: f64,
}

pub fn compare(measure: &DiscreteMeasure, g: &LimitGaussian) -> Result<ConvergenceMetrics> {
    if measure.basis != g.basis {
        return Err(Error::BasisMismatch);
    }
    let mut abs_diff = 0.0;
    let mut discretized_mass = 0.0;
    let mut max_log_err = 0.0f64;
    for atom in &measure.atoms {
        let log_cell = log_density_on_l(g, &atom.coords) + measure.cell_volume.ln();
        let cell = log_cell.exp();
        abs_diff += (atom.prob - cell).abs();
        discretized_mass += cell;
        if atom.prob > LOG_DENSITY_FLOOR {
            max_log_err = max_log_err.max((atom.prob.ln() - log_cell).abs());
        }
    }
    let deficit = (1.0 - discretized_mass).max(0.0);
    let tv_distance = 0.5 * abs_diff + 0.5 * deficit;

    let mean = measure.mean();
    let mean_drift = mean.iter().map(|m| m * m).sum::<f64>().sqrt();
    let cov = measure.covariance();
    let cov_error = cov
        .iter()
        .zip(&g.sigma)
        .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max);

    Ok(ConvergenceMetrics {
        k: measure.k,
        recentering: measure.recentering,
        tv_distance,
        max_log_density_error: max_log_err,
        mean_drift,
        cov_error,
    })
}

/// Full pipeline per level: both recenterings, minimizer row first, ordered by `k`.
pub fn sweep(system: &HalfSpaceSystem, ks: &[u64]) -> Result<Vec<ConvergenceMetrics>> {
    sweep_capped(system, ks, DEFAULT_POINT_CAP)
}

pub fn sweep_capped(system: &HalfSpaceSystem, ks: &[u64], cap: usize) -> Result<Vec<ConvergenceMetrics>> {
    let ctx = PotentialContext::new(system)?;
    let m = minimize(&ctx, &NewtonOptions::default())?;
    let g = limit_gaussian(&ctx, &m)?;
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    let mut rows = Vec::with_capacity(2 * ks.len());
    for &k in &ks {
        let pmf = build_pmf_capped(system, k, cap)?;
        let mom = moments(&pmf);
        rows.push(compare(&nu_prime(&pmf, &ctx, &m)?, &g)?);
        rows.push(compare(&nu(&pmf, &ctx, &mom)?, &g)?);
    }
    Ok(rows)
}
