//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid realization parameters: {0}")]
    InvalidRealization(String),

    #[error("truncation dimension must be at least 2, got {0}")]
    DimTooSmall(usize),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("expression uses {found} variables, configured maximum is {max}")]
    TooManyVariables { found: usize, max: usize },

    #[error("point has {found} coordinates, polynomial has {expected} variables")]
    ArityMismatch { expected: usize, found: usize },

    #[error("search box of {points} points exceeds enumeration budget {budget}")]
    BudgetExceeded { points: u128, budget: u128 },

    #[error(
        "truncation tail {tail:.3e} exceeds tolerance {tolerance:.3e} \
         (dim {dim} too small for |z| = {z_abs})"
    )]
    TailTolerance {
        tail: f64,
        tolerance: f64,
        dim: usize,
        z_abs: f64,
    },

    #[error("amplitude ratio at the truncation boundary is not contracting (dim {dim} far too small for |z| = {z_abs})")]
    TailDiverges { dim: usize, z_abs: f64 },

    #[error("Perelomov-type coherent state requires |z| < 1, got |z| = {0}")]
    PerelomovDomain(f64),

    #[error("no displacement with peak probability <= {margin} found for this realization")]
    NoDisplacement { margin: f64 },

    #[error("tensor space of {total} states exceeds the configured cap {cap}")]
    SpaceTooLarge { total: u128, cap: u128 },

    #[error("diagonal value {value} at tuple {tuple:?} does not fit in an f64")]
    DiagonalOverflow { value: String, tuple: Vec<usize> },

    #[error("time {t} outside evolution interval [0, {big_t}]")]
    TimeOutOfRange { t: f64, big_t: f64 },

    #[error("state norm {norm} deviates from 1 beyond tolerance")]
    NotNormalized { norm: f64 },

    #[error("implicit solve failed to converge at t = {t} (residual {residual:.3e})")]
    SolveFailure { t: f64, residual: f64 },

    #[error("norm drift {drift:.3e} at t = {t} exceeds abort threshold 1e-6")]
    NormDrift { t: f64, drift: f64 },

    #[error(
        "initial state has a dominant number component: mode {mode}, \
         P_{n} = {p_n} > 1/2"
    )]
    PreconditionViolated { mode: usize, n: usize, p_n: f64 },

    #[error("eigensolver did not converge at sample {sample} (s = {s})")]
    EigenFailure { sample: usize, s: f64 },

    #[error("dimension {dim} exceeds the diagnostics cap {cap}")]
    DiagnosticsCap { dim: usize, cap: usize },

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Stable machine-readable code for structured error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidRealization(_) => "invalid_realization",
            Error::DimTooSmall(_) => "dim_too_small",
            Error::Parse { .. } => "parse_error",
            Error::TooManyVariables { .. } => "too_many_variables",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::TailTolerance { .. } => "tail_tolerance",
            Error::TailDiverges { .. } => "tail_diverges",
            Error::PerelomovDomain(_) => "perelomov_domain",
            Error::NoDisplacement { .. } => "no_displacement",
            Error::SpaceTooLarge { .. } => "space_too_large",
            Error::DiagonalOverflow { .. } => "diagonal_overflow",
            Error::TimeOutOfRange { .. } => "time_out_of_range",
            Error::NotNormalized { .. } => "not_normalized",
            Error::SolveFailure { .. } => "solve_failure",
            Error::NormDrift { .. } => "norm_drift",
            Error::PreconditionViolated { .. } => "precondition_violated",
            Error::EigenFailure { .. } => "eigen_failure",
            Error::DiagnosticsCap { .. } => "diagnostics_cap",
            Error::Config(_) => "config_error",
        }
    }
}
