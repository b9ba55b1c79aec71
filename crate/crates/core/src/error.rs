use thiserror::Error;

use crate::params::FeasibilityReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter {name} must be a positive integer")]
    NonPositive { name: &'static str },

    #[error("subset size {d} exceeds theta {theta}")]
    DegreeExceedsTheta { d: u64, theta: u64 },

    #[error("theta {0} is too large to enumerate subsets")]
    ThetaTooLarge(u64),

    #[error("element {element} is outside 1..={theta}")]
    ElementOutOfRange { element: u64, theta: u32 },

    #[error("element {element} appears more than once")]
    DuplicateElement { element: u64 },

    #[error("subset over theta={found} does not belong to a code over theta={expected}")]
    ThetaMismatch { expected: u32, found: u32 },

    #[error("parameters are infeasible (balance_ok={}, capacity_ok={})", .0.balance_ok, .0.capacity_ok)]
    InfeasibleParameters(FeasibilityReport),

    /// A step of the construction failed one of its runtime checks.
    #[error("construction invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
