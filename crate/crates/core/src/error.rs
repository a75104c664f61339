use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("system has no half-spaces or zero ambient dimension")]
    EmptySystem,
    #[error("row {row} has length {len}, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("offsets have length {len}, expected {expected}")]
    OffsetLength { len: usize, expected: usize },
    #[error("row {row} is the zero vector")]
    ZeroRow { row: usize },
    #[error("column {column} of the vectors sums to {sum}, expected 0")]
    NonZeroSum { column: usize, sum: i64 },
    #[error("inadmissible system: {0}")]
    Inadmissible(String),
    #[error("resource limit: {what} would need {needed} entries, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("point outside the domain: slack {slack} of constraint {index} is negative")]
    Domain { index: usize, slack: f64 },
    #[error("minimizer did not converge: residual {residual} after {iterations} iterations")]
    NotConverged { residual: f64, iterations: usize },
    #[error("limit quadratic form is near-singular (condition number {condition})")]
    NearSingular { condition: f64 },
    #[error("inputs were built from different half-space systems")]
    MismatchedSystem,
    #[error("measure and limit use different L-coordinate bases")]
    BasisMismatch,
    #[error("expected a vector of length {expected}, got {len}")]
    Dimension { expected: usize, len: usize },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}
