//! The potential `phi_a(x) = prod_i c_i(x)^{c_i(x)}`, `c_i(x) = <v_i, x> + a_i`,
//! handled through its logarithm `sum_{i in I_a} c_i ln c_i` (with `0 ln 0 = 0`).
//!
//! Calculus is intrinsic to `L`: coordinates `y` in the lattice basis
//! `b_1..b_d` parametrize `x = x_0 + sum_j y_j b_j` around the interior point
//! `x_0`. On `L` the `+1` term of `d/dt (c ln c)` cancels because
//! `sum_{i in I_a} <v_i, b_j> = 0`, which gives
//!
//! ```text
//! grad_j   = sum_i <v_i, b_j> ln c_i
//! hess_jl  = sum_i <v_i, b_j> <v_i, b_l> / c_i
//! ```

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::{compute_geometry, HalfSpaceSystem, PolytopeGeometry};
use crate::linalg::{cholesky, cholesky_solve, Matrix};
use crate::rational::{rat, to_f64, vec_to_f64};

/// Slacks in `[-DOMAIN_EPS, 0]` are treated as exact zeros.
pub const DOMAIN_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialContext {
    system: HalfSpaceSystem,
    geometry: PolytopeGeometry,
    /// `pairings[i][j] = <v_i, b_j>`.
    pairings: Vec<Vec<i64>>,
    anchor: Vec<f64>,
    /// `c_i(x_0)`, rounded once from the exact value.
    anchor_slacks: Vec<f64>,
}

impl PotentialContext {
    pub fn new(system: &HalfSpaceSystem) -> Result<Self> {
        let geometry = compute_geometry(system)?;
        Ok(Self::from_parts(system.clone(), geometry))
    }

    pub fn from_parts(system: HalfSpaceSystem, geometry: PolytopeGeometry) -> Self {
        let pairings = system
            .vectors()
            .iter()
            .map(|v| {
                geometry
                    .lattice_basis()
                    .iter()
                    .map(|b| v.iter().zip(b).map(|(x, y)| x * y).sum())
                    .collect()
            })
            .collect();
        let x0 = geometry.interior_point();
        let anchor_slacks = (0..system.len())
            .map(|i| to_f64(&system.slack_rational(i, x0, &rat(1))))
            .collect();
        PotentialContext {
            anchor: vec_to_f64(x0),
            system,
            geometry,
            pairings,
            anchor_slacks,
        }
    }

    pub fn system(&self) -> &HalfSpaceSystem {
        &self.system
    }

    pub fn geometry(&self) -> &PolytopeGeometry {
        &self.geometry
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        self.geometry.lattice_basis()
    }

    pub fn pairings(&self) -> &[Vec<i64>] {
        &self.pairings
    }

    pub fn dim(&self) -> usize {
        self.geometry.dim()
    }

    pub fn anchor(&self) -> &[f64] {
        &self.anchor
    }

    /// Ambient point `x_0 + B y`.
    pub fn to_ambient(&self, y: &[f64]) -> Vec<f64> {
        let mut x = self.anchor.clone();
        for (b, &yj) in self.basis().iter().zip(y) {
            for (xi, &bi) in x.iter_mut().zip(b) {
                *xi += bi as f64 * yj;
            }
        }
        x
    }

    /// `B y` without the anchor.
    pub fn direction(&self, y: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.system.dim()];
        for (b, &yj) in self.basis().iter().zip(y) {
            for (xi, &bi) in x.iter_mut().zip(b) {
                *xi += bi as f64 * yj;
            }
        }
        x
    }

    /// `<v_i, B y>` for each active `i`.
    pub(crate) fn pairing_image(&self, y: &[f64]) -> Vec<f64> {
        self.active()
            .iter()
            .map(|&i| self.pairings[i].iter().zip(y).map(|(&p, &yj)| p as f64 * yj).sum())
            .collect()
    }

    /// Active slacks at `x_0 + B y`.
    pub(crate) fn slacks_at(&self, y: &[f64]) -> Vec<f64> {
        self.active()
            .iter()
            .zip(self.pairing_image(y))
            .map(|(&i, dc)| self.anchor_slacks[i] + dc)
            .collect()
    }

    /// Active slacks `<v_i, x> + scale a_i` at an ambient point.
    pub(crate) fn ambient_slacks(&self, scale: f64, x: &[f64]) -> Result<Vec<f64>> {
        let n = self.system.dim();
        if x.len() != n {
            return Err(Error::Dimension {
                expected: n,
                len: x.len(),
            });
        }
        Ok(self
            .active()
            .iter()
            .map(|&i| {
                let v = &self.system.vectors()[i];
                v.iter().zip(x).map(|(&vj, &xj)| vj as f64 * xj).sum::<f64>()
                    + scale * self.system.offsets()[i] as f64
            })
            .collect())
    }

    fn active(&self) -> &[usize] {
        self.geometry.active_indices()
    }

    fn gradient_from_slacks(&self, c: &[f64]) -> Vec<f64> {
        (0..self.dim())
            .map(|j| {
                self.active()
                    .iter()
                    .zip(c)
                    .map(|(&i, &ci)| self.pairings[i][j] as f64 * ci.ln())
                    .sum()
            })
            .collect()
    }

    fn hessian_from_slacks(&self, c: &[f64]) -> Matrix {
        let d = self.dim();
        let mut h = vec![vec![0.0; d]; d];
        for (&i, &ci) in self.active().iter().zip(c) {
            let p = &self.pairings[i];
            for j in 0..d {
                if p[j] == 0 {
                    continue;
                }
                for l in j..d {
                    h[j][l] += (p[j] * p[l]) as f64 / ci;
                }
            }
        }
        for j in 0..d {
            for l in 0..j {
                h[j][l] = h[l][j];
            }
        }
        h
    }

    fn check_interior(&self, c: &[f64]) -> Result<()> {
        match c.iter().position(|&ci| !(ci > 0.0)) {
            Some(pos) => Err(Error::Domain {
                index: self.active()[pos],
                slack: c[pos],
            }),
            None => Ok(()),
        }
    }
}

fn entropy_sum(c: &[f64]) -> f64 {
    c.iter().map(|&ci| if ci > 0.0 { ci * ci.ln() } else { 0.0 }).sum()
}

/// `sum c' ln c' - sum c ln c` for `c' = c + dc`, without cancellation.
pub(crate) fn entropy_delta(c: &[f64], dc: &[f64]) -> f64 {
    c.iter()
        .zip(dc)
        .map(|(&ci, &di)| {
            let next = ci + di;
            if ci > 0.0 && next > 0.0 {
                di * next.ln() + ci * (di / ci).ln_1p()
            } else {
                let term = |v: f64| if v > 0.0 { v * v.ln() } else { 0.0 };
                term(next) - term(ci)
            }
        })
        .sum()
}

/// `ln phi_{scale a}(x) = sum_{i in I_a} c_i ln c_i` with `c_i = <v_i, x> + scale a_i`.
pub fn log_phi(ctx: &PotentialContext, scale: f64, x: &[f64]) -> Result<f64> {
    let mut c = ctx.ambient_slacks(scale, x)?;
    for (pos, ci) in c.iter_mut().enumerate() {
        if *ci < -DOMAIN_EPS {
            return Err(Error::Domain {
                index: ctx.active()[pos],
                slack: *ci,
            });
        }
        if *ci < 0.0 {
            *ci = 0.0;
        }
    }
    Ok(entropy_sum(&c))
}

/// Gradient of `ln phi_a` along `L`, in lattice-basis coordinates.
pub fn grad_l(ctx: &PotentialContext, x: &[f64]) -> Result<Vec<f64>> {
    let c = ctx.ambient_slacks(1.0, x)?;
    ctx.check_interior(&c)?;
    Ok(ctx.gradient_from_slacks(&c))
}

/// Hessian of `ln phi_a` along `L`, in lattice-basis coordinates.
pub fn hess_l(ctx: &PotentialContext, x: &[f64]) -> Result<Matrix> {
    let c = ctx.ambient_slacks(1.0, x)?;
    ctx.check_interior(&c)?;
    Ok(ctx.hessian_from_slacks(&c))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    /// Stop when the max-norm of the gradient is at most this.
    pub tol: f64,
    pub max_iter: usize,
    /// Steps keep every slack at least `(1 - tau) * current`.
    pub fraction_to_boundary: f64,
    pub armijo: f64,
    pub max_backtracks: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            tol: 1e-11,
            max_iter: 100,
            fraction_to_boundary: 0.95,
            armijo: 1e-4,
            max_backtracks: 60,
        }
    }
}

/// `m_a` together with its stationarity certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimizerResult {
    /// Ambient coordinates of `m_a`.
    pub m: Vec<f64>,
    /// `m_a - x_0` in lattice-basis coordinates.
    pub l_coords: Vec<f64>,
    /// `max_j |sum_{i in I_a} <v_i, b_j> ln(<v_i, m> + a_i)|`.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Smallest active slack at `m`; `+inf` when `I_a` is empty.
    pub min_slack: f64,
    /// Change of `ln phi` for every accepted step.
    pub step_decreases: Vec<f64>,
}

pub fn minimize(ctx: &PotentialContext, opts: &NewtonOptions) -> Result<MinimizerResult> {
    let start = vec![0.0; ctx.dim()];
    minimize_from(ctx, &start, opts)
}

/// Damped Newton from `x_0 + B start`, which must be strictly interior.
pub fn minimize_from(
    ctx: &PotentialContext,
    start: &[f64],
    opts: &NewtonOptions,
) -> Result<MinimizerResult> {
    let d = ctx.dim();
    if start.len() != d {
        return Err(Error::Dimension {
            expected: d,
            len: start.len(),
        });
    }
    let mut y = start.to_vec();
    let mut step_decreases = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    loop {
        let c = ctx.slacks_at(&y);
        ctx.check_interior(&c)?;
        let g = ctx.gradient_from_slacks(&c);
        if crate::linalg::max_abs(g.iter().copied()) <= opts.tol {
            converged = true;
            break;
        }
        if iterations == opts.max_iter {
            break;
        }
        let Some(l) = cholesky(&ctx.hessian_from_slacks(&c)) else {
            break;
        };
        let step: Vec<f64> = cholesky_solve(&l, &g).into_iter().map(|v| -v).collect();
        let dc = ctx.pairing_image(&step);
        let slope: f64 = g.iter().zip(&step).map(|(a, b)| a * b).sum();

        let mut alpha = 1.0f64;
        for (&ci, &di) in c.iter().zip(&dc) {
            if di < 0.0 {
                alpha = alpha.min(opts.fraction_to_boundary * ci / -di);
            }
        }
        let mut accepted = None;
        for _ in 0..opts.max_backtracks {
            let scaled: Vec<f64> = dc.iter().map(|v| alpha * v).collect();
            let delta = entropy_delta(&c, &scaled);
            if delta < 0.0 && delta <= opts.armijo * alpha * slope {
                accepted = Some(delta);
                break;
            }
            alpha *= 0.5;
        }
        let Some(delta) = accepted else {
            break;
        };
        step_decreases.push(delta);
        for (yj, sj) in y.iter_mut().zip(&step) {
            *yj += alpha * sj;
        }
        iterations += 1;
    }

    let c = ctx.slacks_at(&y);
    let residual = crate::linalg::max_abs(ctx.gradient_from_slacks(&c));
    let min_slack = c.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(MinimizerResult {
        m: ctx.to_ambient(&y),
        l_coords: y,
        residual,
        iterations,
        converged,
        min_slack,
        step_decreases,
    })
}
