//! Exact rational linear programming.
//!
//! Dense two-phase simplex over `BigRational` with Bland's rule, so the
//! pivoting terminates on degenerate problems and every reported optimum,
//! witness point and infeasibility verdict is exact.

use alloc::vec;
use alloc::vec::Vec;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::geometry::HalfSpaceSystem;
use crate::rational::{rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `coeffs · x >= rhs`
    AtLeast,
    /// `coeffs · x <= rhs`
    AtMost,
    /// `coeffs · x == rhs`
    Equal,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal {
        value: BigRational,
        point: Vec<BigRational>,
    },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn optimum(&self) -> Option<&BigRational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
struct Constraint {
    coeffs: Vec<Rat>,
    relation: Relation,
    rhs: Rat,
}

/// A linear program over free (sign-unrestricted) real variables.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    vars: usize,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(vars: usize) -> Self {
        LinearProgram {
            vars,
            constraints: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn add(&mut self, coeffs: Vec<Rat>, relation: Relation, rhs: Rat) -> &mut Self {
        assert_eq!(coeffs.len(), self.vars, "constraint width");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    /// The feasible region `{x : <v_i, x> + offset_i >= 0}` of a half-space system.
    pub fn from_system(system: &HalfSpaceSystem) -> Self {
        let mut lp = LinearProgram::new(system.dim());
        for (v, &a) in system.vectors().iter().zip(system.offsets()) {
            lp.add(v.iter().map(|&c| rat(c)).collect(), Relation::AtLeast, rat(-a));
        }
        lp
    }

    pub fn solve(&self, objective: &[Rat], sense: Sense) -> LpOutcome {
        assert_eq!(objective.len(), self.vars, "objective width");
        // Standard form: x = xp - xn, one slack per inequality, all >= 0.
        let n = self.vars;
        let slack_count = self
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Equal)
            .count();
        let structural = 2 * n + slack_count;
        let m = self.constraints.len();
        let width = structural + m; // artificials appended
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
        let mut rhs: Vec<Rat> = Vec::with_capacity(m);
        let mut slack_col = 2 * n;
        for (i, c) in self.constraints.iter().enumerate() {
            let mut row = vec![Rat::zero(); width + 1];
            for (j, a) in c.coeffs.iter().enumerate() {
                row[j] = a.clone();
                row[n + j] = -a.clone();
            }
            match c.relation {
                Relation::AtLeast => {
                    row[slack_col] = -Rat::one();
                    slack_col += 1;
                }
                Relation::AtMost => {
                    row[slack_col] = Rat::one();
                    slack_col += 1;
                }
                Relation::Equal => {}
            }
            let mut b = c.rhs.clone();
            if b.is_negative() {
                for e in row.iter_mut() {
                    *e = -e.clone();
                }
                b = -b;
            }
            row[structural + i] = Rat::one();
            row[width] = b.clone();
            rows.push(row);
            rhs.push(b);
        }

        let mut tableau = Tableau {
            rows,
            basis: (structural..structural + m).collect(),
            width,
            allowed: width,
        };

        // Phase 1: minimize the sum of artificials.
        let mut phase_one = vec![Rat::zero(); width];
        for c in phase_one.iter_mut().skip(structural) {
            *c = Rat::one();
        }
        if tableau.optimize(&phase_one).is_err() {
            unreachable!("phase one objective is bounded below by zero");
        }
        if !tableau.objective_value(&phase_one).is_zero() {
            return LpOutcome::Infeasible;
        }
        tableau.expel_artificials(structural);
        tableau.allowed = structural;

        // Phase 2, always as a minimization.
        let mut cost = vec![Rat::zero(); width];
        for (j, c) in objective.iter().enumerate() {
            let c = if sense == Sense::Maximize { -c.clone() } else { c.clone() };
            cost[j] = c.clone();
            cost[n + j] = -c;
        }
        if tableau.optimize(&cost).is_err() {
            return LpOutcome::Unbounded;
        }

        let mut values = vec![Rat::zero(); width];
        for (row, &b) in tableau.rows.iter().zip(&tableau.basis) {
            values[b] = row[width].clone();
        }
        let point: Vec<Rat> = (0..n).map(|j| &values[j] - &values[n + j]).collect();
        let value = point
            .iter()
            .zip(objective)
            .fold(Rat::zero(), |acc, (x, c)| acc + x * c);
        LpOutcome::Optimal { value, point }
    }
}

/// Optimize `<objective, x>` over the polytope of `system`.
pub fn solve_lp(system: &HalfSpaceSystem, objective: &[Rat], sense: Sense) -> LpOutcome {
    LinearProgram::from_system(system).solve(objective, sense)
}

struct Tableau {
    /// Constraint rows, `width` coefficient columns followed by the rhs.
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    width: usize,
    /// Columns at or beyond this index never enter the basis.
    allowed: usize,
}

struct Unbounded;

impl Tableau {
    fn objective_value(&self, cost: &[Rat]) -> Rat {
        self.rows
            .iter()
            .zip(&self.basis)
            .fold(Rat::zero(), |acc, (row, &b)| acc + &cost[b] * &row[self.width])
    }

    fn reduced_cost(&self, cost: &[Rat], j: usize) -> Rat {
        self.rows
            .iter()
            .zip(&self.basis)
            .fold(cost[j].clone(), |acc, (row, &b)| {
                if cost[b].is_zero() || row[j].is_zero() {
                    acc
                } else {
                    acc - &cost[b] * &row[j]
                }
            })
    }

    fn optimize(&mut self, cost: &[Rat]) -> Result<(), Unbounded> {
        loop {
            // Bland: lowest-index improving column, lowest-index leaving variable on ties.
            let entering = (0..self.allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j).is_negative());
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leaving: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[col];
                let better = match &leaving {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            let Some((row, _)) = leaving else {
                return Err(Unbounded);
            };
            self.pivot(row, col);
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for e in self.rows[r].iter_mut() {
            if !e.is_zero() {
                *e = &*e * &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (e, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *e = &*e - &factor * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// After a zero-cost phase one, pivot basic artificials out or drop their
    /// (redundant) rows.
    fn expel_artificials(&mut self, structural: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < structural {
                i += 1;
                continue;
            }
            match (0..structural).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}
