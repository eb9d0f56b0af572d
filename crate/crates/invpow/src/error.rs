//! Crate-wide error type.

use std::fmt;

/// Errors produced by the solver, the special-function kernels, the verifier
/// and the auditor.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    Domain(String),
    /// The coefficient constraint tying `A`, `B`, `D` and the angular channel
    /// to `C` is violated, so the closed form does not solve the radial
    /// equation.  Carries the signed residual `constraint_c(..) - C`.
    ConstraintUnsatisfied { residual: f64 },
    /// A root scan found no sign change inside the search bracket.
    NoRootFound { lo: f64, hi: f64 },
    /// The log-derivative of the ansatz has no zero at positive radius.
    NoInteriorPeak,
    /// An iterative scheme stopped before reaching the requested accuracy.
    /// Carries the best estimate obtained and its estimated error.
    ConvergenceFailure { best: f64, error_estimate: f64 },
    /// Shooting saw no boundary-mismatch sign change inside the energy bracket.
    NoEigenvalueInBracket { e_lo: f64, e_hi: f64 },
    /// Shooting converged on a state with interior nodes.
    NotGroundState { nodes: usize },
    /// The discriminant of the two-branch energy closed form is negative.
    BranchesUndefined { discriminant: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::ConstraintUnsatisfied { residual } => write!(
                f,
                "coefficient constraint unsatisfied (residual {residual:e}); \
                 C must equal the value forced by A, B, D and the channel"
            ),
            Error::NoRootFound { lo, hi } => {
                write!(f, "no root found: no sign change in ({lo}, {hi})")
            }
            Error::NoInteriorPeak => write!(f, "no interior peak at positive radius"),
            Error::ConvergenceFailure {
                best,
                error_estimate,
            } => write!(
                f,
                "convergence failure: best estimate {best:e} with error estimate {error_estimate:e}"
            ),
            Error::NoEigenvalueInBracket { e_lo, e_hi } => {
                write!(f, "no eigenvalue found in energy bracket ({e_lo}, {e_hi})")
            }
            Error::NotGroundState { nodes } => {
                write!(
                    f,
                    "shooting converged on a state with {nodes} interior node(s)"
                )
            }
            Error::BranchesUndefined { discriminant } => write!(
                f,
                "two-branch energy formula undefined: negative discriminant {discriminant:e}"
            ),
        }
    }
}

impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
