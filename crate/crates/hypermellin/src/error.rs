use thiserror::Error;

/// Failure modes shared by every evaluation route.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series did not converge after {terms} terms (tail estimate {estimate:e})")]
    NonConvergent { terms: usize, estimate: f64 },
    #[error("denominator parameter {index} is a non-positive integer reached by the series")]
    InvalidDenominator { index: usize },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("explicit route too expensive for p={p}, N={n}")]
    ComplexityBudget { p: usize, n: usize },
    #[error("coefficient routes disagree by {max_diff:e}")]
    RouteMismatch { max_diff: f64 },
    #[error("parametric excess {psi} is not of the required integer form")]
    NotIntegerExcess { psi: f64 },
    #[error("lower parameters differ by an integer")]
    IntegerDifference,
    #[error("weight evaluation failed: {0}")]
    EvaluationFailed(String),
    #[error("parametric excess outside the range covered by the Mellin formulas")]
    ExcessOutOfRange,
    #[error("outside the convergence domain: {0}")]
    ConvergenceDomain(String),
    #[error("quadrature budget exhausted (value {value_re}{value_im:+}i, error estimate {err:e})")]
    BudgetExceeded { value_re: f64, value_im: f64, err: f64 },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("argument lies on the branch cut (-inf, -1]")]
    BranchCut,
    #[error("parameters are not zero-balanced")]
    NotZeroBalanced,
    #[error("no admissible regularization order found up to n={0}")]
    NoncomputableN(usize),
    #[error("test function lacks derivative of order {0}")]
    DerivativeUnavailable(usize),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("inverse factorial series converging too slowly: tail {tail:e} after {terms} terms")]
    SlowConvergence { value_re: f64, value_im: f64, tail: f64, terms: usize },
    #[error("counterexample at t={0}")]
    CounterexampleFound(f64),
    #[error("weight reduces to a pure atom after normalization")]
    AtomOnly,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable tag used in CLI error rows.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonConvergent { .. } => "non_convergent",
            Error::InvalidDenominator { .. } => "invalid_denominator",
            Error::DomainError(_) => "domain_error",
            Error::ComplexityBudget { .. } => "complexity_budget",
            Error::RouteMismatch { .. } => "route_mismatch",
            Error::NotIntegerExcess { .. } => "not_integer_excess",
            Error::IntegerDifference => "integer_difference",
            Error::EvaluationFailed(_) => "evaluation_failed",
            Error::ExcessOutOfRange => "excess_out_of_range",
            Error::ConvergenceDomain(_) => "convergence_domain",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::HypothesisFailed(_) => "hypothesis_failed",
            Error::BranchCut => "branch_cut",
            Error::NotZeroBalanced => "not_zero_balanced",
            Error::NoncomputableN(_) => "noncomputable_n",
            Error::DerivativeUnavailable(_) => "derivative_unavailable",
            Error::Overflow => "overflow",
            Error::SlowConvergence { .. } => "slow_convergence",
            Error::CounterexampleFound(_) => "counterexample_found",
            Error::AtomOnly => "atom_only",
        }
    }
}
