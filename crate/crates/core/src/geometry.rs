//! Half-space data, admissibility, and the lattice structure of `P`.
//!
//! `P = {x in R^n : <v_i, x> + a_i >= 0 for all i}`. The system is
//! admissible when `sum_i v_i = 0`, `P` is nonempty and compact, and every
//! bounding hyperplane touches `P`. Everything downstream assumes an
//! admissible system and checks it through [`validate`].

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome, Relation, Sense};
use crate::rational::{dot_int, rat, to_f64, Rat};

/// Upper bound on the bounding-box scan performed by [`enumerate_points`].
pub const MAX_CANDIDATES: u128 = 10_000_000;

/// Default cap on the number of lattice points of `kP`.
pub const DEFAULT_POINT_CAP: usize = 1_000_000;

/// The integer data `(v_1, ..., v_r; a_1, ..., a_r)` defining `P`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfSpaceSystem {
    vectors: Vec<Vec<i64>>,
    offsets: Vec<i64>,
}

impl HalfSpaceSystem {
    /// Rejects empty input, ragged rows, zero rows and nonzero column sums.
    pub fn new(vectors: Vec<Vec<i64>>, offsets: Vec<i64>) -> Result<Self> {
        let n = vectors.first().map_or(0, Vec::len);
        if vectors.is_empty() || n == 0 {
            return Err(Error::EmptySystem);
        }
        for (row, v) in vectors.iter().enumerate() {
            if v.len() != n {
                return Err(Error::RaggedRow {
                    row,
                    len: v.len(),
                    expected: n,
                });
            }
        }
        if offsets.len() != vectors.len() {
            return Err(Error::OffsetLength {
                len: offsets.len(),
                expected: vectors.len(),
            });
        }
        if let Some(row) = vectors.iter().position(|v| v.iter().all(|&c| c == 0)) {
            return Err(Error::ZeroRow { row });
        }
        for column in 0..n {
            let sum: i128 = vectors.iter().map(|v| v[column] as i128).sum();
            if sum != 0 {
                return Err(Error::NonZeroSum {
                    column,
                    sum: sum.clamp(i64::MIN as i128, i64::MAX as i128) as i64,
                });
            }
        }
        Ok(HalfSpaceSystem { vectors, offsets })
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.vectors[0].len()
    }

    /// Number of half-spaces `r`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `|a| = sum_i a_i`.
    pub fn total_offset(&self) -> i128 {
        self.offsets.iter().map(|&a| a as i128).sum()
    }

    /// The system with offsets `k * a`, whose polytope is `kP`.
    pub fn scaled(&self, k: u64) -> Result<Self> {
        let k = i64::try_from(k).map_err(|_| Error::Overflow("scaled offsets"))?;
        let offsets = self
            .offsets
            .iter()
            .map(|&a| a.checked_mul(k).ok_or(Error::Overflow("scaled offsets")))
            .collect::<Result<Vec<_>>>()?;
        Ok(HalfSpaceSystem {
            vectors: self.vectors.clone(),
            offsets,
        })
    }

    /// Category count `<v_i, x> + k a_i` in exact integer arithmetic.
    pub fn slack(&self, i: usize, x: &[i64], k: u64) -> i128 {
        let dot: i128 = self.vectors[i]
            .iter()
            .zip(x)
            .map(|(&v, &x)| v as i128 * x as i128)
            .sum();
        dot + self.offsets[i] as i128 * k as i128
    }

    /// Exact rational slack `<v_i, x> + scale * a_i`.
    pub fn slack_rational(&self, i: usize, x: &[BigRational], scale: &BigRational) -> BigRational {
        dot_int(&self.vectors[i], x) + scale * rat(self.offsets[i])
    }

    fn column_sums_zero(&self) -> bool {
        (0..self.dim()).all(|j| self.vectors.iter().map(|v| v[j] as i128).sum::<i128>() == 0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub sum_zero: bool,
    pub compact: bool,
    pub all_touching: bool,
    pub nonempty: bool,
    /// `min_P <v_i, x> + a_i`; `None` when `P` is empty or the minimum is unbounded.
    pub per_constraint_min: Vec<Option<BigRational>>,
    pub per_constraint_max: Vec<Option<BigRational>>,
}

impl ValidationReport {
    pub fn is_admissible(&self) -> bool {
        self.sum_zero && self.compact && self.all_touching && self.nonempty
    }

    /// A one-line reason for rejection, if any.
    pub fn failure(&self) -> Option<&'static str> {
        if !self.sum_zero {
            Some("vectors do not sum to zero")
        } else if !self.nonempty {
            Some("polytope is empty")
        } else if !self.compact {
            Some("polytope is unbounded")
        } else if !self.all_touching {
            Some("some hyperplane does not touch the polytope")
        } else {
            None
        }
    }
}

pub fn validate(system: &HalfSpaceSystem) -> ValidationReport {
    let lp = LinearProgram::from_system(system);
    let n = system.dim();
    let r = system.len();
    let sum_zero = system.column_sums_zero();

    let nonempty = !matches!(lp.solve(&vec![Rat::zero(); n], Sense::Minimize), LpOutcome::Infeasible);
    if !nonempty {
        return ValidationReport {
            sum_zero,
            compact: false,
            all_touching: false,
            nonempty,
            per_constraint_min: vec![None; r],
            per_constraint_max: vec![None; r],
        };
    }

    let compact = (0..n).all(|j| {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        [Sense::Minimize, Sense::Maximize]
            .iter()
            .all(|&s| lp.solve(&e, s).optimum().is_some())
    });

    let extreme = |i: usize, sense: Sense| -> Option<BigRational> {
        let obj: Vec<Rat> = system.vectors[i].iter().map(|&c| rat(c)).collect();
        lp.solve(&obj, sense)
            .optimum()
            .map(|v| v + rat(system.offsets[i]))
    };
    let per_constraint_min: Vec<_> = (0..r).map(|i| extreme(i, Sense::Minimize)).collect();
    let per_constraint_max: Vec<_> = (0..r).map(|i| extreme(i, Sense::Maximize)).collect();
    let all_touching = per_constraint_min
        .iter()
        .all(|m| m.as_ref().is_some_and(Zero::is_zero));

    ValidationReport {
        sum_zero,
        compact,
        all_touching,
        nonempty,
        per_constraint_min,
        per_constraint_max,
    }
}

/// Validate and turn a rejection into [`Error::Inadmissible`].
pub fn require_admissible(system: &HalfSpaceSystem) -> Result<ValidationReport> {
    let report = validate(system);
    match report.failure() {
        None => Ok(report),
        Some(reason) => Err(Error::Inadmissible(reason.into())),
    }
}

/// Derived geometric facts about an admissible `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolytopeGeometry {
    active: Vec<usize>,
    direction_basis: Vec<Vec<BigRational>>,
    lattice_basis: Vec<Vec<i64>>,
    covolume: f64,
    interior_point: Vec<BigRational>,
    /// `(B^T B)^{-1} B^T`, mapping vectors of `L` to lattice coordinates.
    coordinate_map: Vec<Vec<BigRational>>,
}

impl PolytopeGeometry {
    /// `I_a`: indices whose functional is nonconstant on `P` (0-based).
    pub fn active_indices(&self) -> &[usize] {
        &self.active
    }

    pub fn is_active(&self, i: usize) -> bool {
        self.active.binary_search(&i).is_ok()
    }

    /// Columns spanning `L`, as rational vectors (row-reduced null space).
    pub fn direction_basis(&self) -> &[Vec<BigRational>] {
        &self.direction_basis
    }

    /// Columns generating `L ∩ Z^n`, each of length `n`.
    pub fn lattice_basis(&self) -> &[Vec<i64>] {
        &self.lattice_basis
    }

    /// Volume of a fundamental cell of `L ∩ Z^n` inside `L`.
    pub fn covolume(&self) -> f64 {
        self.covolume
    }

    pub fn interior_point(&self) -> &[BigRational] {
        &self.interior_point
    }

    /// `d = dim L`.
    pub fn dim(&self) -> usize {
        self.lattice_basis.len()
    }

    /// Exact coordinates `z` with `sum_j z_j b_j = w`, or `None` if `w` is not in `L`.
    pub fn lattice_coordinates(&self, w: &[BigRational]) -> Option<Vec<BigRational>> {
        let z: Vec<Rat> = self
            .coordinate_map
            .iter()
            .map(|row| row.iter().zip(w).fold(Rat::zero(), |acc, (m, x)| acc + m * x))
            .collect();
        let n = w.len();
        let back_in_l = (0..n).all(|i| {
            let bi = self
                .lattice_basis
                .iter()
                .zip(&z)
                .fold(Rat::zero(), |acc, (b, zj)| acc + zj * rat(b[i]));
            bi == w[i]
        });
        back_in_l.then_some(z)
    }
}

pub fn compute_geometry(system: &HalfSpaceSystem) -> Result<PolytopeGeometry> {
    let report = require_admissible(system)?;
    let n = system.dim();
    let active: Vec<usize> = report
        .per_constraint_max
        .iter()
        .enumerate()
        .filter(|(_, max)| max.as_ref().is_some_and(Signed::is_positive))
        .map(|(i, _)| i)
        .collect();
    let inactive: Vec<&Vec<i64>> = (0..system.len())
        .filter(|i| active.binary_search(i).is_err())
        .map(|i| &system.vectors[i])
        .collect();

    let direction_basis = rational_null_space(&inactive, n);
    let lattice_basis = integer_kernel_basis(&inactive, n)?;
    debug_assert_eq!(direction_basis.len(), lattice_basis.len());

    let d = lattice_basis.len();
    let gram: Vec<Vec<Rat>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let s: i128 = (0..n)
                        .map(|t| lattice_basis[i][t] as i128 * lattice_basis[j][t] as i128)
                        .sum();
                    Rat::from_integer(BigInt::from(s))
                })
                .collect()
        })
        .collect();
    let (gram_inv, gram_det) = rational_inverse(&gram);
    let covolume = num_traits::Float::sqrt(to_f64(&gram_det));
    let coordinate_map: Vec<Vec<Rat>> = (0..d)
        .map(|i| {
            (0..n)
                .map(|t| {
                    (0..d).fold(Rat::zero(), |acc, j| {
                        acc + &gram_inv[i][j] * rat(lattice_basis[j][t])
                    })
                })
                .collect()
        })
        .collect();

    let interior_point = interior_point(system, &active)?;

    Ok(PolytopeGeometry {
        active,
        direction_basis,
        lattice_basis,
        covolume,
        interior_point,
        coordinate_map,
    })
}

/// Maximize the smallest active slack subject to the implicit equalities.
fn interior_point(system: &HalfSpaceSystem, active: &[usize]) -> Result<Vec<BigRational>> {
    let n = system.dim();
    let mut lp = LinearProgram::new(n + 1);
    for (i, (v, &a)) in system.vectors.iter().zip(&system.offsets).enumerate() {
        let mut coeffs: Vec<Rat> = v.iter().map(|&c| rat(c)).collect();
        if active.binary_search(&i).is_ok() {
            coeffs.push(rat(-1));
            lp.add(coeffs, Relation::AtLeast, rat(-a));
        } else {
            coeffs.push(Rat::zero());
            lp.add(coeffs, Relation::Equal, rat(-a));
        }
    }
    let mut objective = vec![Rat::zero(); n + 1];
    if !active.is_empty() {
        objective[n] = Rat::one();
    }
    match lp.solve(&objective, Sense::Maximize) {
        LpOutcome::Optimal { value, mut point } => {
            if !active.is_empty() && !value.is_positive() {
                return Err(Error::Inadmissible("relative interior is empty".into()));
            }
            point.truncate(n);
            Ok(point)
        }
        _ => Err(Error::Inadmissible("no relative interior point found".into())),
    }
}

/// Basis of `{x : <row, x> = 0 for all rows}` from the reduced row echelon form.
fn rational_null_space(rows: &[&Vec<i64>], n: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|&c| rat(c)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for e in m[row].iter_mut() {
            *e = &*e * &inv;
        }
        let pivot_row = m[row].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i != row && !other[col].is_zero() {
                let f = other[col].clone();
                for (e, p) in other.iter_mut().zip(&pivot_row) {
                    *e = &*e - &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rat::zero(); n];
            v[free] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

/// Columns generating the integer kernel lattice `{x in Z^n : rows · x = 0}`,
/// in column Hermite normal form.
fn integer_kernel_basis(rows: &[&Vec<i64>], n: usize) -> Result<Vec<Vec<i64>>> {
    // Unimodular column reduction E·U = [H | 0]; the trailing columns of U
    // generate the kernel lattice.
    let mut e: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut pivot = 0;
    for i in 0..e.len() {
        if pivot == n {
            break;
        }
        for j in pivot + 1..n {
            if e[i][j].is_zero() {
                continue;
            }
            let (a, b) = (e[i][pivot].clone(), e[i][j].clone());
            let g = a.extended_gcd(&b);
            let coeffs = [g.x, g.y, -(&b / &g.gcd), &a / &g.gcd];
            combine_columns(&mut e, pivot, j, &coeffs);
            combine_columns(&mut u, pivot, j, &coeffs);
        }
        if !e[i][pivot].is_zero() {
            pivot += 1;
        }
    }
    let mut kernel: Vec<Vec<BigInt>> = (0..n)
        .map(|t| u[t][pivot..].to_vec())
        .collect();
    hermite_columns(&mut kernel);
    let d = n - pivot;
    (0..d)
        .map(|j| {
            (0..n)
                .map(|t| kernel[t][j].to_i64().ok_or(Error::Overflow("lattice basis")))
                .collect()
        })
        .collect()
}

/// `col_p <- x col_p + y col_q`, `col_q <- s col_p + t col_q` with `[x, y, s, t]`.
fn combine_columns(m: &mut [Vec<BigInt>], p: usize, q: usize, c: &[BigInt; 4]) {
    for row in m.iter_mut() {
        let (vp, vq) = (row[p].clone(), row[q].clone());
        row[p] = &c[0] * &vp + &c[1] * &vq;
        row[q] = &c[2] * &vp + &c[3] * &vq;
    }
}

/// In-place column Hermite normal form of a full-column-rank matrix.
fn hermite_columns(m: &mut [Vec<BigInt>]) {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivot = 0;
    for i in 0..m.len() {
        if pivot == cols {
            break;
        }
        for j in pivot + 1..cols {
            if m[i][j].is_zero() {
                continue;
            }
            let (a, b) = (m[i][pivot].clone(), m[i][j].clone());
            let g = a.extended_gcd(&b);
            let coeffs = [g.x, g.y, -(&b / &g.gcd), &a / &g.gcd];
            combine_columns(m, pivot, j, &coeffs);
        }
        if m[i][pivot].is_zero() {
            continue;
        }
        if m[i][pivot].is_negative() {
            for row in m.iter_mut() {
                row[pivot] = -row[pivot].clone();
            }
        }
        let p = m[i][pivot].clone();
        for j in 0..pivot {
            let f = m[i][j].div_floor(&p);
            if !f.is_zero() {
                for row in m.iter_mut() {
                    let delta = &f * &row[pivot];
                    row[j] -= delta;
                }
            }
        }
        pivot += 1;
    }
}

/// Gauss-Jordan inverse and determinant of a nonsingular rational matrix.
fn rational_inverse(a: &[Vec<BigRational>]) -> (Vec<Vec<BigRational>>, BigRational) {
    let d = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let mut det = Rat::one();
    for col in 0..d {
        let p = (col..d)
            .find(|&i| !m[i][col].is_zero())
            .expect("Gram matrix of a basis is nonsingular");
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= &m[col][col];
        let inv = m[col][col].recip();
        for e in m[col].iter_mut() {
            *e = &*e * &inv;
        }
        let pivot_row = m[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (e, pv) in row.iter_mut().zip(&pivot_row) {
                    *e = &*e - &f * pv;
                }
            }
        }
    }
    let inv = m.into_iter().map(|row| row[d..].to_vec()).collect();
    (inv, det)
}

/// Lattice points of `kP` in lexicographic order, capped at [`DEFAULT_POINT_CAP`].
pub fn enumerate_points(system: &HalfSpaceSystem, k: u64) -> Result<Vec<Vec<i64>>> {
    enumerate_points_capped(system, k, DEFAULT_POINT_CAP)
}

pub fn enumerate_points_capped(
    system: &HalfSpaceSystem,
    k: u64,
    cap: usize,
) -> Result<Vec<Vec<i64>>> {
    require_admissible(system)?;
    let scaled = system.scaled(k)?;
    let lp = LinearProgram::from_system(&scaled);
    let n = system.dim();
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        let min = lp.solve(&e, Sense::Minimize);
        let max = lp.solve(&e, Sense::Maximize);
        let (Some(min), Some(max)) = (min.optimum(), max.optimum()) else {
            return Err(Error::Inadmissible("polytope is unbounded".into()));
        };
        let to_i64 = |q: BigInt| q.to_i64().ok_or(Error::Overflow("bounding box"));
        lo.push(to_i64(min.ceil().to_integer())?);
        hi.push(to_i64(max.floor().to_integer())?);
    }
    let candidates = lo
        .iter()
        .zip(&hi)
        .try_fold(1u128, |acc, (&l, &h)| acc.checked_mul((h - l + 1).max(0) as u128));
    match candidates {
        Some(c) if c <= MAX_CANDIDATES => {}
        other => {
            return Err(Error::ResourceLimit {
                what: "bounding box scan",
                needed: other.unwrap_or(u128::MAX),
                cap: MAX_CANDIDATES,
            })
        }
    }

    let mut points = Vec::new();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok(points);
    }
    let mut x = lo.clone();
    loop {
        if (0..system.len()).all(|i| scaled.slack(i, &x, 1) >= 0) {
            if points.len() == cap {
                return Err(Error::ResourceLimit {
                    what: "lattice points of kP",
                    needed: points.len() as u128 + 1,
                    cap: cap as u128,
                });
            }
            points.push(x.clone());
        }
        let mut j = n;
        loop {
            if j == 0 {
                return Ok(points);
            }
            j -= 1;
            if x[j] < hi[j] {
                x[j] += 1;
                break;
            }
            x[j] = lo[j];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval(a0: i64, a1: i64) -> HalfSpaceSystem {
        HalfSpaceSystem::new(vec![vec![1], vec![-1]], vec![a0, a1]).unwrap()
    }

    fn triangle() -> HalfSpaceSystem {
        HalfSpaceSystem::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![0, 0, 3]).unwrap()
    }

    #[test]
    fn construction_errors_are_distinct() {
        assert_eq!(
            HalfSpaceSystem::new(vec![vec![1, 0], vec![-1]], vec![0, 1]),
            Err(Error::RaggedRow { row: 1, len: 1, expected: 2 })
        );
        assert_eq!(
            HalfSpaceSystem::new(vec![vec![0], vec![0]], vec![0, 1]),
            Err(Error::ZeroRow { row: 0 })
        );
        assert_eq!(
            HalfSpaceSystem::new(vec![vec![1], vec![-2]], vec![0, 1]),
            Err(Error::NonZeroSum { column: 0, sum: -1 })
        );
        assert_eq!(HalfSpaceSystem::new(vec![], vec![]), Err(Error::EmptySystem));
        assert!(matches!(
            HalfSpaceSystem::new(vec![vec![1], vec![-1]], vec![0]),
            Err(Error::OffsetLength { .. })
        ));
    }

    #[test]
    fn validate_interval() {
        let r = validate(&interval(0, 4));
        assert!(r.sum_zero && r.compact && r.all_touching && r.nonempty);
        assert!(r.is_admissible());
        assert_eq!(r.per_constraint_max, vec![Some(rat(4)), Some(rat(4))]);
    }

    #[test]
    fn validate_empty() {
        let r = validate(&interval(0, -1));
        assert!(!r.nonempty);
        assert!(!r.is_admissible());
        assert_eq!(r.failure(), Some("polytope is empty"));
    }

    #[test]
    fn validate_non_touching() {
        // x >= 0, x <= 4, and a slack row 2x + 1 >= 0 (never tight on [0,4]),
        // balanced by -2x + 9 >= 0 which is also loose.
        let sys = HalfSpaceSystem::new(
            vec![vec![1], vec![-1], vec![2], vec![-2]],
            vec![0, 4, 1, 9],
        )
        .unwrap();
        let r = validate(&sys);
        assert!(r.nonempty && r.compact);
        assert!(!r.all_touching);
        assert_eq!(r.per_constraint_min[2], Some(rat(1)));
        assert_eq!(r.per_constraint_min[3], Some(rat(1)));
        assert!(matches!(compute_geometry(&sys), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn validate_unbounded() {
        // 0 <= x - y <= 2 leaves x + y free.
        let sys = HalfSpaceSystem::new(vec![vec![1, -1], vec![-1, 1]], vec![0, 2]).unwrap();
        let r = validate(&sys);
        assert!(r.nonempty && !r.compact);
    }

    #[test]
    fn geometry_interval() {
        let g = compute_geometry(&interval(0, 4)).unwrap();
        assert_eq!(g.active_indices(), &[0, 1]);
        assert_eq!(g.dim(), 1);
        assert_eq!(g.lattice_basis(), &[vec![1]]);
        assert_eq!(g.covolume(), 1.0);
        assert_eq!(g.interior_point(), &[rat(2)]);
    }

    #[test]
    fn geometry_point() {
        let g = compute_geometry(&interval(0, 0)).unwrap();
        assert!(g.active_indices().is_empty());
        assert_eq!(g.dim(), 0);
        assert_eq!(g.covolume(), 1.0);
        assert_eq!(g.interior_point(), &[rat(0)]);
        assert_eq!(enumerate_points(&interval(0, 0), 5).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn geometry_triangle() {
        let g = compute_geometry(&triangle()).unwrap();
        assert_eq!(g.active_indices(), &[0, 1, 2]);
        assert_eq!(g.dim(), 2);
        assert_eq!(g.lattice_basis(), &[vec![1, 0], vec![0, 1]]);
        assert_eq!(g.covolume(), 1.0);
        let x = g.interior_point();
        for i in 0..3 {
            assert!(triangle().slack_rational(i, x, &rat(1)).is_positive());
        }
    }

    #[test]
    fn lower_dimensional_segment() {
        // Segment {x + y = 2, 0 <= x <= 2} in R^2 written with sum-zero rows:
        // x >= 0, y >= 0, x + y - 2 >= 0, -x - y + 2 >= 0.
        let sys = HalfSpaceSystem::new(
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![-2, -2]],
            vec![0, 0, -2, 4],
        )
        .unwrap();
        let g = compute_geometry(&sys).unwrap();
        assert_eq!(g.active_indices(), &[0, 1]);
        assert_eq!(g.dim(), 1);
        assert_eq!(g.lattice_basis(), &[vec![1, -1]]);
        assert!((g.covolume() - 2f64.sqrt()).abs() < 1e-15);
        for i in [2, 3] {
            assert!(sys.slack_rational(i, g.interior_point(), &rat(1)).is_zero());
            let b: Vec<Rat> = g.direction_basis()[0].clone();
            assert!(dot_int(&sys.vectors()[i], &b).is_zero());
        }
        assert_eq!(
            enumerate_points(&sys, 1).unwrap(),
            vec![vec![0, 2], vec![1, 1], vec![2, 0]]
        );
        let w = vec![rat(3), rat(-3)];
        assert_eq!(g.lattice_coordinates(&w), Some(vec![rat(3)]));
        assert_eq!(g.lattice_coordinates(&[rat(1), rat(0)]), None);
    }

    #[test]
    fn kernel_lattice_is_saturated() {
        // 2x - 2y = 0 has rational kernel spanned by (1,1); the lattice is Z(1,1),
        // not Z(2,2) or similar.
        let row = vec![2, -2, 0];
        let basis = integer_kernel_basis(&[&row], 3).unwrap();
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert_eq!(b.iter().zip(&row).map(|(x, y)| x * y).sum::<i64>(), 0);
        }
        // (1,1,0) and (0,0,1) must be integer combinations of the basis.
        let m = [[basis[0][0], basis[1][0]], [basis[0][2], basis[1][2]]];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        assert_eq!(det.abs(), 1);
    }

    #[test]
    fn enumerate_interval_and_triangle() {
        assert_eq!(
            enumerate_points(&interval(0, 4), 1).unwrap(),
            (0..=4).map(|x| vec![x]).collect::<Vec<_>>()
        );
        assert_eq!(
            enumerate_points(&interval(0, 4), 2).unwrap(),
            (0..=8).map(|x| vec![x]).collect::<Vec<_>>()
        );
        let brute: Vec<Vec<i64>> = (0..=3)
            .flat_map(|x| (0..=3).map(move |y| vec![x, y]))
            .filter(|p| p[0] + p[1] <= 3)
            .collect();
        assert_eq!(enumerate_points(&triangle(), 1).unwrap(), brute);
        assert_eq!(brute.len(), 10);
    }

    #[test]
    fn point_cap_is_enforced() {
        let err = enumerate_points_capped(&interval(0, 4), 10, 5).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { cap: 5, .. }));
    }
}
