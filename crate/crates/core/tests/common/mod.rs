#![allow(dead_code)]

use polymult_core::geometry::{compute_geometry, validate};
use polymult_core::HalfSpaceSystem;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn interval(l: i64) -> HalfSpaceSystem {
    HalfSpaceSystem::new(vec![vec![1], vec![-1]], vec![0, l]).unwrap()
}

pub fn triangle() -> HalfSpaceSystem {
    HalfSpaceSystem::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![0, 0, 3]).unwrap()
}

pub fn point() -> HalfSpaceSystem {
    interval(0)
}

/// A segment inside the line `x + y = 2` of `R^2`.
pub fn segment() -> HalfSpaceSystem {
    HalfSpaceSystem::new(
        vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![-2, -2]],
        vec![0, 0, -2, 4],
    )
    .unwrap()
}

pub fn bundled() -> Vec<(&'static str, HalfSpaceSystem)> {
    vec![
        ("interval", interval(4)),
        ("triangle", triangle()),
        ("point", point()),
        ("segment", segment()),
    ]
}

/// Random admissible system with `n <= max_n`, `r <= 6`, entries in `[-3, 3]`
/// and `dim L >= 1`.
///
/// Rows are drawn at random with the last one balancing the sum; offsets are
/// then lowered until every hyperplane touches the polytope.
pub fn random_admissible(seed: u64, max_n: usize) -> HalfSpaceSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(1..=max_n);
        let r = rng.gen_range(n + 1..=6);
        let mut vectors: Vec<Vec<i64>> = (0..r - 1)
            .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
            .collect();
        let last: Vec<i64> = (0..n).map(|j| -vectors.iter().map(|v| v[j]).sum::<i64>()).collect();
        vectors.push(last);
        if vectors
            .iter()
            .any(|v| v.iter().all(|&c| c == 0) || v.iter().any(|c| c.abs() > 3))
        {
            continue;
        }
        let mut offsets: Vec<i64> = (0..r).map(|_| rng.gen_range(0..=6)).collect();
        let mut accepted = None;
        for _ in 0..8 {
            let Ok(sys) = HalfSpaceSystem::new(vectors.clone(), offsets.clone()) else {
                break;
            };
            let report = validate(&sys);
            if !report.nonempty || !report.compact {
                break;
            }
            if report.is_admissible() {
                accepted = Some(sys);
                break;
            }
            for (a, min) in offsets.iter_mut().zip(&report.per_constraint_min) {
                let min = min.as_ref().unwrap();
                *a -= min.floor().to_integer().try_into().unwrap_or(0i64);
            }
        }
        if let Some(sys) = accepted {
            if compute_geometry(&sys).map(|g| g.dim() >= 1).unwrap_or(false) {
                return sys;
            }
        }
    }
}

/// Random strictly interior lattice-coordinate offsets around the anchor,
/// found by shrinking a random direction until the point is inside.
pub fn random_interior_coords(
    ctx: &polymult_core::PotentialContext,
    rng: &mut impl Rng,
) -> Vec<f64> {
    let d = ctx.dim();
    loop {
        let y: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut t = 2.0;
        for _ in 0..40 {
            let cand: Vec<f64> = y.iter().map(|v| v * t).collect();
            let x = ctx.to_ambient(&cand);
            let inside = ctx.geometry().active_indices().iter().all(|&i| {
                let v = &ctx.system().vectors()[i];
                let c: f64 = v.iter().zip(&x).map(|(a, b)| *a as f64 * b).sum::<f64>()
                    + ctx.system().offsets()[i] as f64;
                c > 1e-3
            });
            if inside {
                return cand;
            }
            t *= 0.7;
        }
    }
}
