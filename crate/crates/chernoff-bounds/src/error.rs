//! Error type shared across the crate.
//!
//! Errors split into two families, reflected in [`Error::exit_code`]:
//! input problems (unreadable or malformed files, invalid model data) map
//! to exit code 1, violations of the mathematical hypotheses behind the
//! bound (threshold below the mean, divergent moment generating function,
//! infeasible tilt target, ...) map to exit code 2.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Model data violates a construction invariant (probabilities do not
    /// sum to one, support not strictly increasing, negative density, ...).
    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// The value function fails a hypothesis required by the bound:
    /// it must be non-decreasing and concave on the model's support.
    #[error("invalid value function: {0}")]
    InvalidValueFunction(String),

    /// A quantity could not be evaluated (non-finite value of v on a
    /// positive-mass region, unsupported value-function/model pairing).
    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// E exp(theta v(X)) is infinite at the requested tilt parameter.
    #[error("moment generating function diverges at theta = {theta}: {reason}")]
    DivergentMgf { theta: f64, reason: String },

    /// The tail bound requires a >= E[X]; the requested threshold is below
    /// the mean, where the minimization is vacuous.
    #[error("hypothesis violated (the bound requires a >= E[X]): a = {a} < E[X] = {mean}")]
    BelowMean { a: f64, mean: f64 },

    /// v(a) exceeds the maximum of v on the support: the tail event is
    /// empty and its probability is exactly 0, so no tilt attains it.
    #[error(
        "infeasible target: v(a) = {target} exceeds max v(X) = {max_v} on the support \
         (the tail probability is 0)"
    )]
    InfeasibleTarget { target: f64, max_v: f64 },

    /// v(X) is constant on the support; the tilt problem degenerates to an
    /// indicator and no finite minimizer is informative.
    #[error("degenerate value function: v(X) is constant ({value}) on the support")]
    DegenerateValueFunction { value: f64 },

    /// Two discrete models were expected to share a support list.
    #[error("support mismatch: {0}")]
    SupportMismatch(String),

    /// The discrete ratio form needs the threshold to be an atom of the
    /// support.
    #[error("a = {a} is not an atom of the support")]
    NotAnAtom { a: f64 },

    /// The mass/density ratio q(a) / p(a) is undefined at the threshold.
    #[error("ratio form undefined at a = {a}: {reason}")]
    RatioUndefined { a: f64, reason: String },

    /// The minimum of E exp(theta (v(X) - v(a))) is not attained; only the
    /// generalized projection exists, whose bound value is the limit below.
    #[error("projection not attained; generalized-projection limit bound = {limit}")]
    GeneralizedProjectionOnly { limit: f64 },

    /// A sample places observations on an atom the model gives zero mass.
    #[error("impossible sample: count {count} at atom index {index} where the model has zero mass")]
    ImpossibleSample { index: usize, count: u64 },

    /// The sample mean of v lies at or beyond the extremes of v on the
    /// positive-mass support; the likelihood has no interior maximizer.
    #[error("maximum likelihood boundary: sample mean of v = {v_bar} is outside ({min_v}, {max_v})")]
    MlBoundary { v_bar: f64, min_v: f64, max_v: f64 },

    /// The root finder exhausted its iteration budget.
    #[error("solver did not converge: residual {residual} after {iterations} iterations")]
    NoConvergence {
        theta: f64,
        residual: f64,
        iterations: u32,
    },

    /// A condition the algebra guarantees was observed to fail.
    #[error("internal invariant violation: {0}")]
    InternalInvariantViolation(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// CLI exit code: 1 for i/o and malformed input, 2 for violated
    /// mathematical hypotheses.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Parse(_) | Error::InvalidModel(_) => 1,
            _ => 2,
        }
    }
}
