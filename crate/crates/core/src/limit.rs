//! The limiting Gaussian on `L` and the ratio asymptotics of the potential.
//!
//! In lattice-basis coordinates the limit of the rescaled measures has
//! precision matrix
//!
//! ```text
//! Q_jl = sum_{i in I_a} <v_i, b_j> <v_i, b_l> / (<v_i, m_a> + a_i)
//! ```
//!
//! i.e. the Hessian of `ln phi_a` at its minimizer.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{cholesky, cholesky_inverse, cholesky_log_det, quad_form, symmetric_eigenvalues, Matrix};
use crate::potential::{entropy_delta, hess_l, MinimizerResult, PotentialContext};

/// Largest condition number of `Q` accepted by [`limit_gaussian`].
pub const MAX_CONDITION: f64 = 1e12;

const LN_2PI: f64 = 1.8378770664093453;

#[derive(Debug, Clone, PartialEq)]
pub struct LimitGaussian {
    /// Precision matrix in lattice-basis coordinates.
    pub q: Matrix,
    /// Covariance, `Q^{-1}`.
    pub sigma: Matrix,
    /// `(d/2) ln(2 pi) - (1/2) ln det Q`.
    pub log_norm: f64,
    pub basis: Vec<Vec<i64>>,
    /// Volume of one lattice cell of `L`, converting coordinate densities to
    /// densities for the Lebesgue measure of `L` itself.
    pub covolume: f64,
    /// The center `m_a`, ambient coordinates.
    pub m: Vec<f64>,
}

impl LimitGaussian {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `d = 0`: the limit is the point mass at the origin of `L`.
    pub fn is_degenerate(&self) -> bool {
        self.basis.is_empty()
    }
}

pub fn limit_gaussian(ctx: &PotentialContext, m: &MinimizerResult) -> Result<LimitGaussian> {
    if !m.converged {
        return Err(Error::NotConverged {
            residual: m.residual,
            iterations: m.iterations,
        });
    }
    let basis = ctx.basis().to_vec();
    if ctx.dim() == 0 {
        return Ok(LimitGaussian {
            q: Vec::new(),
            sigma: Vec::new(),
            log_norm: 0.0,
            basis,
            covolume: 1.0,
            m: m.m.clone(),
        });
    }
    let q = hess_l(ctx, &m.m)?;
    let eig = symmetric_eigenvalues(&q);
    let (lo, hi) = (eig[0], eig[eig.len() - 1]);
    let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if !(condition <= MAX_CONDITION) {
        return Err(Error::NearSingular { condition });
    }
    let l = cholesky(&q).ok_or(Error::NearSingular { condition })?;
    let sigma = cholesky_inverse(&l);
    let log_norm = 0.5 * q.len() as f64 * LN_2PI - 0.5 * cholesky_log_det(&l);
    Ok(LimitGaussian {
        q,
        sigma,
        log_norm,
        basis,
        covolume: ctx.geometry().covolume(),
        m: m.m.clone(),
    })
}

/// Density with respect to Lebesgue measure on `L` in lattice-basis coordinates.
///
/// For the degenerate limit this is `1` at the (only) point.
pub fn density(g: &LimitGaussian, x: &[f64]) -> f64 {
    log_density(g, x).exp()
}

pub fn log_density(g: &LimitGaussian, x: &[f64]) -> f64 {
    -0.5 * quad_form(&g.q, x) - g.log_norm
}

/// Log density at the point with coordinates `x`, taken with respect to the
/// Lebesgue measure of `L` (so a lattice cell has volume `covolume`).
pub fn log_density_on_l(g: &LimitGaussian, x: &[f64]) -> f64 {
    log_density(g, x) - g.covolume.ln()
}

/// One evaluation of the ratio `phi_{ka}(k m) / phi_{ka}(k m + sqrt(k) x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioCheck {
    pub k: u64,
    /// Lattice-basis coordinates of the offset.
    pub x: Vec<f64>,
    pub exact_log_ratio: f64,
    /// `exact_log_ratio + (1/2) sum_i ln(c_i(k m) / c_i(k m + sqrt(k) x))`.
    pub corrected_log_ratio: f64,
    /// `-(1/2) Q(x)`.
    pub predicted: f64,
    pub abs_error: f64,
}

pub fn ratio_check(
    ctx: &PotentialContext,
    m: &MinimizerResult,
    k: u64,
    x: &[f64],
) -> Result<RatioCheck> {
    let d = ctx.dim();
    if x.len() != d {
        return Err(Error::Dimension {
            expected: d,
            len: x.len(),
        });
    }
    if !m.converged {
        return Err(Error::NotConverged {
            residual: m.residual,
            iterations: m.iterations,
        });
    }
    let kf = k as f64;
    let root_k = kf.sqrt();
    // c_i(k m) = k c_i(m); the shift adds sqrt(k) <v_i, B x>.
    let base: Vec<f64> = ctx.slacks_at(&m.l_coords).iter().map(|c| kf * c).collect();
    let shift: Vec<f64> = ctx.pairing_image(x).iter().map(|p| root_k * p).collect();
    let active = ctx.geometry().active_indices();
    for (pos, (c, s)) in base.iter().zip(&shift).enumerate() {
        let next = c + s;
        if !(next > 0.0) {
            return Err(Error::Domain {
                index: active[pos],
                slack: next,
            });
        }
    }
    let exact_log_ratio = -entropy_delta(&base, &shift);
    let correction: f64 = base
        .iter()
        .zip(&shift)
        .map(|(c, s)| -0.5 * (s / c).ln_1p())
        .sum();
    let corrected_log_ratio = exact_log_ratio + correction;
    let predicted = if d == 0 {
        0.0
    } else {
        -0.5 * quad_form(&hess_l(ctx, &m.m)?, x)
    };
    Ok(RatioCheck {
        k,
        x: x.to_vec(),
        exact_log_ratio,
        corrected_log_ratio,
        predicted,
        abs_error: (corrected_log_ratio - predicted).abs(),
    })
}

/// Evaluate [`ratio_check`] at every `k`, keeping `x` fixed.
pub fn ratio_sweep(
    ctx: &PotentialContext,
    m: &MinimizerResult,
    ks: &[u64],
    x: &[f64],
) -> Result<Vec<RatioCheck>> {
    ks.iter().map(|&k| ratio_check(ctx, m, k, x)).collect()
}

/// Probe offsets `±(k^c / 2) e_j` inside the window `|x| < k^c`.
pub fn window_probes(d: usize, k: u64, c: f64) -> Vec<Vec<f64>> {
    let radius = 0.5 * (k as f64).powf(c);
    let mut probes = Vec::with_capacity(2 * d);
    for j in 0..d {
        for sign in [1.0, -1.0] {
            let mut x = vec![0.0; d];
            x[j] = sign * radius;
            probes.push(x);
        }
    }
    probes
}
