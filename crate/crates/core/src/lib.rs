//! Polyhedral multinomial distributions and their Gaussian limits.
//!
//! A lattice polytope `P = {x : <v_i, x> + a_i >= 0}` with `sum_i v_i = 0`
//! carries a family of lattice measures on `kP ∩ Z^n`, weighted by the
//! multinomial coefficient of the constraint slacks. This crate builds those
//! measures exactly, minimizes the associated entropy-like potential to find
//! the recentering point `m`, constructs the limiting Gaussian on the
//! direction space `L` of `P`, and measures how fast the rescaled measures
//! approach it.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line front end live in the `polymult` crate.
//!
//! Module map:
//!
//! - [`geometry`]: half-space data, exact LP, admissibility, `L`, lattice points.
//! - [`distribution`]: exact big-integer PMF, rational moments, sampler.
//! - [`potential`]: the log potential, its calculus on `L`, Newton minimizer.
//! - [`limit`]: the limiting Gaussian and the ratio asymptotics check.
//! - [`harness`]: rescaled measures and convergence metrics.
#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod distribution;
mod error;
pub mod geometry;
pub mod harness;
pub mod limit;
pub mod linalg;
pub mod lp;
pub mod potential;
mod rational;

pub use error::{Error, Result};
pub use geometry::{HalfSpaceSystem, PolytopeGeometry, ValidationReport};
pub use distribution::{ExactPmf, MomentSummary};
pub use potential::{MinimizerResult, NewtonOptions, PotentialContext};
pub use limit::{LimitGaussian, RatioCheck};
pub use harness::{Atom, ConvergenceMetrics, DiscreteMeasure, Recentering};
