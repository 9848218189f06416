//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the invariant computations and the CLI front end.
#[derive(Debug, Error)]
pub enum Error {
    /// A Laurent polynomial expected to be symmetric (up to a unit) is not.
    #[error("polynomial is not symmetric up to a unit: {0}")]
    NotSymmetric(String),
    /// A matrix that must be invertible is singular.
    #[error("matrix is singular")]
    SingularMatrix,
    /// The reduction move search exhausted its budget (indicates a bug, not
    /// a mathematical obstruction).
    #[error("reduction failed: {0}")]
    ReductionFailed(String),
    /// Parameters passed to a model-structure constructor are invalid.
    #[error("invalid model parameters: {0}")]
    InvalidParameters(String),
    /// The variation structure is not simple (its variation map is singular).
    #[error("variation structure is not simple: variation map is singular")]
    NotSimple,
    /// The two computation pipelines produced different invariants.
    #[error("pipeline mismatch: {0}")]
    PipelineMismatch(String),
    /// Hodge numbers contain off-circle or unit-root classes where only
    /// on-circle classes are meaningful.
    #[error("structure has eigenvalue classes off the unit circle (or at t = +/-1): {0}")]
    OffCircleEigenvalues(String),
    /// An on-circle eigenvalue class is not a root of unity, so no rational
    /// spectrum exponent exists.
    #[error("on-circle eigenvalue is not a root of unity: {0}")]
    NotRootOfUnity(String),
    /// `det(tS - S^T) = 0`: the matrix does not present a torsion module.
    #[error("degenerate presentation: det(tS - S^T) = 0; reduce the matrix first")]
    DegeneratePresentation,
    /// The module has (t-1)- or (t+1)-torsion, outside the scope of the
    /// linking-form classification.
    #[error("module has (t-1)- or (t+1)-torsion; decomposition over R[t,t^-1] requires multiplication by t-+1 to be an isomorphism")]
    TPlusMinusOneTorsion,
    /// Two integers expected to be coprime are not.
    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    /// A sample point lies in the spectrum, where the counting formula does
    /// not apply.
    #[error("sample point {0} lies in the spectrum")]
    OnSpectrum(String),
    /// A sample point is a root of the Alexander polynomial.
    #[error("sample point is a root of the Alexander polynomial")]
    OnRoot,
    /// Input parsing failed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// The two pipelines disagree in a cross-check, with both results shown.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    /// Any I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
    /// JSON (de)serialization failure.
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
