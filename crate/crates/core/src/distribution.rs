//! The exact polyhedral multinomial measure on `kP ∩ Z^n`.
//!
//! The weight of a lattice point `x` is the multinomial coefficient
//! `(k|a|)! / prod_i c_i!` of its category counts `c_i = <v_i, x> + k a_i`.
//! Because the vectors sum to zero the counts always add up to `k|a|`.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::geometry::{enumerate_points_capped, HalfSpaceSystem, DEFAULT_POINT_CAP};
use crate::rational::to_f64;

/// `C(n, k)` by the exact running product `prod_j (n - k + j) / j`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 1..=k {
        acc *= n - k + j;
        acc /= j;
    }
    acc
}

/// Multinomial coefficient `(sum c)! / prod c_i!` as a product of binomials.
pub fn multinomial(counts: &[u64]) -> BigUint {
    let mut total = 0u64;
    let mut acc = BigUint::one();
    for &c in counts {
        total += c;
        if c > 0 && c < total {
            acc *= binomial(total, c);
        }
    }
    acc
}

/// Weight of `x` in `mu_{k a}`; zero outside `kP`.
pub fn weight(system: &HalfSpaceSystem, k: u64, x: &[i64]) -> BigUint {
    let mut counts = Vec::with_capacity(system.len());
    for i in 0..system.len() {
        let c = system.slack(i, x, k);
        if c < 0 {
            return BigUint::zero();
        }
        match u64::try_from(c) {
            Ok(c) => counts.push(c),
            Err(_) => return BigUint::zero(),
        }
    }
    multinomial(&counts)
}

/// Lattice points of `kP` with their exact weights and normalizer `b_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactPmf {
    system: HalfSpaceSystem,
    k: u64,
    points: Vec<Vec<i64>>,
    weights: Vec<BigUint>,
    normalizer: BigUint,
}

impl ExactPmf {
    pub fn system(&self) -> &HalfSpaceSystem {
        &self.system
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn normalizer(&self) -> &BigUint {
        &self.normalizer
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Exact probability of the `j`-th point.
    pub fn probability(&self, j: usize) -> BigRational {
        BigRational::new(
            BigInt::from(self.weights[j].clone()),
            BigInt::from(self.normalizer.clone()),
        )
    }

    /// Probabilities as doubles, each rounded once from the exact ratio.
    pub fn probabilities(&self) -> Vec<f64> {
        (0..self.len()).map(|j| to_f64(&self.probability(j))).collect()
    }
}

pub fn build_pmf(system: &HalfSpaceSystem, k: u64) -> Result<ExactPmf> {
    build_pmf_capped(system, k, DEFAULT_POINT_CAP)
}

pub fn build_pmf_capped(system: &HalfSpaceSystem, k: u64, cap: usize) -> Result<ExactPmf> {
    if k == 0 {
        return Err(Error::Inadmissible("scaling level k must be positive".into()));
    }
    let points = enumerate_points_capped(system, k, cap)?;
    let weights: Vec<BigUint> = points.iter().map(|x| weight(system, k, x)).collect();
    let normalizer = weights.iter().sum();
    Ok(ExactPmf {
        system: system.clone(),
        k,
        points,
        weights,
        normalizer,
    })
}

/// Exact mean and covariance of `X_{k a}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSummary {
    pub mean: Vec<BigRational>,
    pub covariance: Vec<Vec<BigRational>>,
    pub k: u64,
}

pub fn moments(pmf: &ExactPmf) -> MomentSummary {
    let n = pmf.system.dim();
    let mut first = vec![BigInt::zero(); n];
    let mut second = vec![vec![BigInt::zero(); n]; n];
    for (x, w) in pmf.points.iter().zip(&pmf.weights) {
        let w = BigInt::from(w.clone());
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let wi = &w * x[i];
            for j in i..n {
                if x[j] != 0 {
                    second[i][j] += &wi * x[j];
                }
            }
            first[i] += wi;
        }
    }
    let b = BigInt::from(pmf.normalizer.clone());
    let mean: Vec<BigRational> = first
        .into_iter()
        .map(|s| BigRational::new(s, b.clone()))
        .collect();
    let mut covariance = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let e = BigRational::new(second[i][j].clone(), b.clone());
            let c = e - &mean[i] * &mean[j];
            covariance[j][i] = c.clone();
            covariance[i][j] = c;
        }
    }
    MomentSummary {
        mean,
        covariance,
        k: pmf.k,
    }
}

/// `count` i.i.d. draws by inverse CDF over the cumulative weights.
///
/// Each uniform integer in `[0, b_k)` is the reduction of
/// `bits(b_k) + 128` random bits, so the bias is below `2^-128`.
pub fn sample(pmf: &ExactPmf, seed: u64, count: usize) -> Vec<Vec<i64>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let cumulative: Vec<BigUint> = pmf
        .weights
        .iter()
        .scan(BigUint::zero(), |acc, w| {
            *acc += w;
            Some(acc.clone())
        })
        .collect();
    let bytes = (pmf.normalizer.bits() as usize + 128).div_ceil(8);
    let mut buf = vec![0u8; bytes];
    (0..count)
        .map(|_| {
            rng.fill_bytes(&mut buf);
            let u = BigUint::from_bytes_le(&buf) % &pmf.normalizer;
            let j = cumulative.partition_point(|c| *c <= u);
            pmf.points[j].clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn interval(l: i64) -> HalfSpaceSystem {
        HalfSpaceSystem::new(vec![vec![1], vec![-1]], vec![0, l]).unwrap()
    }

    fn triangle() -> HalfSpaceSystem {
        HalfSpaceSystem::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![0, 0, 3]).unwrap()
    }

    fn factorial(n: u64) -> BigUint {
        (1..=n).fold(BigUint::one(), |acc, j| acc * j)
    }

    #[test]
    fn binomial_matches_factorials() {
        for n in 0..30u64 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), factorial(n) / (factorial(k) * factorial(n - k)));
            }
        }
        assert_eq!(binomial(3, 5), BigUint::zero());
    }

    #[test]
    fn weights_by_direct_factorials() {
        // 4!/(2!2!) and 3!/(1!1!1!)
        let w = factorial(4) / (factorial(2) * factorial(2));
        assert_eq!(weight(&interval(4), 1, &[2]), w);
        assert_eq!(weight(&interval(4), 1, &[2]), BigUint::from(6u32));
        assert_eq!(weight(&triangle(), 1, &[1, 1]), BigUint::from(6u32));
        assert_eq!(weight(&interval(4), 1, &[5]), BigUint::zero());
    }

    #[test]
    fn interval_pmf_is_binomial_row() {
        let pmf = build_pmf(&interval(4), 1).unwrap();
        let w: Vec<u32> = vec![1, 4, 6, 4, 1];
        assert_eq!(pmf.weights(), w.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>());
        assert_eq!(pmf.normalizer(), &BigUint::from(16u32));
    }

    #[test]
    fn triangle_and_point_normalizers() {
        assert_eq!(build_pmf(&triangle(), 1).unwrap().normalizer(), &BigUint::from(27u32));
        let point = HalfSpaceSystem::new(vec![vec![1], vec![-1]], vec![0, 0]).unwrap();
        for k in [1, 7] {
            let pmf = build_pmf(&point, k).unwrap();
            assert_eq!(pmf.points(), &[vec![0]]);
            assert_eq!(pmf.weights(), &[BigUint::one()]);
            assert_eq!(pmf.normalizer(), &BigUint::one());
        }
    }

    #[test]
    fn standard_simplex_normalizer() {
        // v_i = e_i, v_{n+1} = -sum e_i, a = (0,..,0,l): b_k = (n+1)^{k l}
        let sys = HalfSpaceSystem::new(
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]],
            vec![0, 0, 0, 2],
        )
        .unwrap();
        for k in 1..=3u64 {
            let pmf = build_pmf(&sys, k).unwrap();
            assert_eq!(pmf.normalizer(), &BigUint::from(4u32).pow(2 * k as u32));
        }
    }

    #[test]
    fn interval_moments() {
        let m = moments(&build_pmf(&interval(4), 1).unwrap());
        assert_eq!(m.mean, vec![rat(2)]);
        // Binomial(4, 1/2) variance np(1-p).
        assert_eq!(m.covariance, vec![vec![rat(1)]]);
    }

    #[test]
    fn triangle_moments() {
        let m = moments(&build_pmf(&triangle(), 1).unwrap());
        assert_eq!(m.mean, vec![rat(1), rat(1)]);
        // Multinomial(3; 1/3, 1/3, 1/3): l(diag(p) - p p^T).
        let two_thirds = BigRational::new(2.into(), 3.into());
        let third = BigRational::new((-1).into(), 3.into());
        assert_eq!(
            m.covariance,
            vec![vec![two_thirds.clone(), third.clone()], vec![third, two_thirds]]
        );
    }

    #[test]
    fn sampler_point_mass_and_determinism() {
        let point = HalfSpaceSystem::new(vec![vec![1], vec![-1]], vec![0, 0]).unwrap();
        let pmf = build_pmf(&point, 3).unwrap();
        assert!(sample(&pmf, 1, 100).iter().all(|x| x == &vec![0]));
        let pmf = build_pmf(&interval(4), 1).unwrap();
        assert_eq!(sample(&pmf, 42, 500), sample(&pmf, 42, 500));
        assert_ne!(sample(&pmf, 42, 500), sample(&pmf, 43, 500));
    }

    #[test]
    fn sampler_mean() {
        let pmf = build_pmf(&interval(4), 1).unwrap();
        let draws = sample(&pmf, 7, 100_000);
        let mean = draws.iter().map(|x| x[0] as f64).sum::<f64>() / draws.len() as f64;
        assert!((mean - 2.0).abs() < 0.02, "{mean}");
    }

    #[test]
    fn sampler_chi_square() {
        let pmf = build_pmf(&interval(4), 1).unwrap();
        let n = 100_000;
        let draws = sample(&pmf, 2024, n);
        let mut counts = [0usize; 5];
        for x in &draws {
            counts[x[0] as usize] += 1;
        }
        let stat: f64 = pmf
            .probabilities()
            .iter()
            .zip(counts)
            .map(|(p, c)| {
                let e = p * n as f64;
                (c as f64 - e).powi(2) / e
            })
            .sum();
        // chi-square with 4 dof, upper 1e-3 quantile
        assert!(stat < 18.467, "{stat}");
    }
}
