//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Gamma-family function evaluated at a non-positive integer.
    #[error("gamma pole: argument {0} is a non-positive integer")]
    GammaPole(f64),

    /// Parameter or argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid configuration or constructor input.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// `a_i - b_j` is a positive integer for an upper/lower pole pair, so no
    /// contour can separate the pole sets.
    #[error("Meijer G separability violation: a[{i}] - b[{j}] = {diff} is a positive integer")]
    SeparabilityViolation { i: usize, j: usize, diff: f64 },

    /// The Meijer G evaluator could not reach the accuracy target.
    #[error("Meijer G evaluation did not converge ({strategy}): {detail}")]
    MeijerNonConvergence { strategy: &'static str, detail: String },

    /// Adaptive quadrature ran out of subdivisions before meeting tolerance.
    #[error("quadrature did not converge: estimated error {error:.3e} after {evaluations} evaluations")]
    QuadratureNonConvergence { error: f64, evaluations: usize },

    /// A probability came out of a closed form farther outside [0, 1] than
    /// the accepted noise floor.
    #[error("accuracy error: value {value} outside [0,1] beyond noise tolerance {tol:.1e}")]
    AccuracyLoss { value: f64, tol: f64 },
}
