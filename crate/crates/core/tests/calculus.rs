//! Finite-difference certification of the potential's calculus on `L`, and
//! the structural properties of its minimizer.

mod common;

use polymult_core::linalg::symmetric_eigenvalues;
use polymult_core::potential::{grad_l, hess_l, log_phi, minimize, minimize_from};
use polymult_core::{HalfSpaceSystem, NewtonOptions, PotentialContext};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const STEP: f64 = 1e-6;

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-3)
}

fn log_phi_at(ctx: &PotentialContext, y: &[f64]) -> f64 {
    log_phi(ctx, 1.0, &ctx.to_ambient(y)).unwrap()
}

fn shifted(y: &[f64], j: usize, h: f64) -> Vec<f64> {
    let mut y = y.to_vec();
    y[j] += h;
    y
}

fn certify(ctx: &PotentialContext, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = ctx.dim();
    for _ in 0..20 {
        let y = common::random_interior_coords(ctx, &mut rng);
        let x = ctx.to_ambient(&y);
        let g = grad_l(ctx, &x).unwrap();
        let h = hess_l(ctx, &x).unwrap();
        for j in 0..d {
            let fd = (log_phi_at(ctx, &shifted(&y, j, STEP)) - log_phi_at(ctx, &shifted(&y, j, -STEP)))
                / (2.0 * STEP);
            assert!(rel_err(fd, g[j]) < 1e-5, "grad[{j}] {} vs fd {}", g[j], fd);
            let gp = grad_l(ctx, &ctx.to_ambient(&shifted(&y, j, STEP))).unwrap();
            let gm = grad_l(ctx, &ctx.to_ambient(&shifted(&y, j, -STEP))).unwrap();
            for l in 0..d {
                let fd = (gp[l] - gm[l]) / (2.0 * STEP);
                assert!(rel_err(fd, h[l][j]) < 1e-4, "hess[{l}][{j}] {} vs fd {}", h[l][j], fd);
            }
        }
        assert!(symmetric_eigenvalues(&h)[0] > 0.0);
    }
}

#[test]
fn derivatives_match_finite_differences_on_bundled_systems() {
    for (name, sys) in common::bundled() {
        let ctx = PotentialContext::new(&sys).unwrap();
        if ctx.dim() == 0 {
            continue;
        }
        println!("{name}");
        certify(&ctx, 11);
    }
}

#[test]
fn derivatives_match_finite_differences_on_random_systems() {
    for seed in 0..5 {
        let sys = common::random_admissible(seed, 3);
        certify(&PotentialContext::new(&sys).unwrap(), 100 + seed);
    }
}

fn stationarity(ctx: &PotentialContext, m: &[f64]) -> f64 {
    let active = ctx.geometry().active_indices();
    (0..ctx.dim())
        .map(|j| {
            active
                .iter()
                .map(|&i| {
                    let v = &ctx.system().vectors()[i];
                    let c: f64 = v.iter().zip(m).map(|(a, b)| *a as f64 * b).sum::<f64>()
                        + ctx.system().offsets()[i] as f64;
                    ctx.pairings()[i][j] as f64 * c.ln()
                })
                .sum::<f64>()
                .abs()
        })
        .fold(0.0, f64::max)
}

#[test]
fn stationarity_identity_holds_at_the_minimizer() {
    let systems = common::bundled()
        .into_iter()
        .map(|(_, s)| s)
        .chain((0..10).map(|s| common::random_admissible(s, 3)));
    for sys in systems {
        let ctx = PotentialContext::new(&sys).unwrap();
        let r = minimize(&ctx, &NewtonOptions::default()).unwrap();
        assert!(r.converged, "{sys:?}");
        assert!(r.residual <= 1e-9);
        assert!(stationarity(&ctx, &r.m) <= 1e-9, "{sys:?}");
        assert!(r.min_slack > 0.0);
    }
}

#[test]
fn minimizer_is_unique_across_starts() {
    for seed in 0..4 {
        let sys = common::random_admissible(seed, 3);
        let ctx = PotentialContext::new(&sys).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ms: Vec<Vec<f64>> = (0..5)
            .map(|_| {
                let start = common::random_interior_coords(&ctx, &mut rng);
                let r = minimize_from(&ctx, &start, &NewtonOptions::default()).unwrap();
                assert!(r.converged);
                r.m
            })
            .collect();
        for a in &ms {
            for b in &ms {
                for (x, y) in a.iter().zip(b) {
                    assert!((x - y).abs() < 1e-8);
                }
            }
        }
    }
}

#[test]
fn accepted_steps_strictly_decrease_the_potential() {
    for seed in 0..5 {
        let sys = common::random_admissible(seed, 3);
        let ctx = PotentialContext::new(&sys).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let start = common::random_interior_coords(&ctx, &mut rng);
        let r = minimize_from(&ctx, &start, &NewtonOptions::default()).unwrap();
        assert!(r.converged);
        assert!(r.step_decreases.iter().all(|&d| d < 0.0));
    }
}

#[test]
fn minimizer_scales_with_offsets() {
    for sys in [common::triangle(), common::segment(), common::random_admissible(3, 3)] {
        let m = minimize(&PotentialContext::new(&sys).unwrap(), &NewtonOptions::default()).unwrap();
        for k in [2u64, 5] {
            let scaled = sys.scaled(k).unwrap();
            let mk = minimize(&PotentialContext::new(&scaled).unwrap(), &NewtonOptions::default())
                .unwrap();
            for (a, b) in mk.m.iter().zip(&m.m) {
                assert!((a - k as f64 * b).abs() < 1e-8, "{a} vs {k} * {b}");
            }
        }
    }
}

#[test]
fn boundary_start_in_lower_dimension() {
    // Segment x + y = 2: the minimizer is the midpoint (1, 1).
    let ctx = PotentialContext::new(&common::segment()).unwrap();
    let r = minimize(&ctx, &NewtonOptions::default()).unwrap();
    assert!((r.m[0] - 1.0).abs() < 1e-10 && (r.m[1] - 1.0).abs() < 1e-10);
    let sys = HalfSpaceSystem::new(vec![vec![1], vec![1], vec![-2]], vec![0, 0, 4]).unwrap();
    let r = minimize(&PotentialContext::new(&sys).unwrap(), &NewtonOptions::default()).unwrap();
    assert!((r.m[0] - 4.0 / 3.0).abs() < 1e-10);
}
