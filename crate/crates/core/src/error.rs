//! Error type shared by all numeric kernels.

use std::fmt;

/// Failure modes of the numeric kernels.
///
/// Every variant corresponds to a violated precondition or an iteration
/// budget that ran out; none of them are recoverable by retrying with the
/// same input.
#[derive(Debug, Clone, PartialEq)]
pub enum MatError {
    /// Input required to be Hermitian was not (relative asymmetry above tolerance).
    NotHermitian { asymmetry: f64 },
    /// An iterative kernel exhausted its sweep/iteration budget.
    NoConvergence { kernel: &'static str, budget: usize },
    /// Matrix is singular (or numerically so) where an inverse is required.
    Singular { det_abs: f64 },
    /// Principal logarithm undefined: an eigenvalue sits on the closed negative real axis.
    NegativeRealEigenvalue { re: f64, im: f64 },
    /// Branch enumeration requires a diagonalizable input with a well-conditioned eigenbasis.
    NotDiagonalizable { basis_cond: f64 },
    /// Input required to be traceless was not.
    NotTraceless { trace_abs: f64 },
    /// Input lies outside the domain of a closed-form map (e.g. tr S <= -2 for the sl(2) log).
    OutsideDomain { detail: String },
    /// Matrix is not of the conformal [[a, b], [-b, a]] shape.
    NotCO2 { residual: f64 },
    /// Scalar operation applied to zero where a logarithm is required.
    ZeroArgument,
    /// Input required to be Hermitian positive definite was not.
    NotPositiveDefinite { min_eig: f64 },
    /// Rotation logarithm undefined: spectrum touches -1.
    AntipodalSpectrum,
    /// Input must be real with positive determinant.
    NotRealPositiveDet,
    /// Scalar lies outside the disc on which the sharp distance is defined.
    OutsideDSharp { dist_from_one: f64 },
    /// Exponential argument too large to evaluate reliably.
    Overflow { norm: f64 },
    /// Branch-set evaluation impossible for this input.
    BranchDomain { detail: String },
    /// Comparison tuples must have equal, supported lengths.
    BadLength { got: usize, want: usize },
    /// Comparison tuples must contain strictly positive entries.
    NonPositive { value: f64 },
    /// Witness construction undefined for degenerate spectra.
    DegenerateCase { detail: String },
    /// Input required to be unitary/orthogonal was not.
    NotUnitary { residual: f64 },
    /// Matrix dimensions are unsupported or inconsistent.
    BadDimension { got: usize },
    /// Matrix entries must be finite.
    NonFinite,
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::NotHermitian { asymmetry } => {
                write!(f, "matrix is not Hermitian (relative asymmetry {asymmetry:.3e})")
            }
            MatError::NoConvergence { kernel, budget } => {
                write!(f, "{kernel} did not converge within {budget} iterations")
            }
            MatError::Singular { det_abs } => {
                write!(f, "matrix is singular (|det| = {det_abs:.3e})")
            }
            MatError::NegativeRealEigenvalue { re, im } => write!(
                f,
                "principal logarithm undefined: eigenvalue {re:.6e}{im:+.6e}i on the negative real axis"
            ),
            MatError::NotDiagonalizable { basis_cond } => write!(
                f,
                "no well-conditioned eigenbasis (cond estimate {basis_cond:.3e})"
            ),
            MatError::NotTraceless { trace_abs } => {
                write!(f, "matrix is not traceless (|tr| = {trace_abs:.3e})")
            }
            MatError::OutsideDomain { detail } => write!(f, "outside domain: {detail}"),
            MatError::NotCO2 { residual } => write!(
                f,
                "matrix is not of conformal [[a,b],[-b,a]] shape (residual {residual:.3e})"
            ),
            MatError::ZeroArgument => write!(f, "logarithm of zero requested"),
            MatError::NotPositiveDefinite { min_eig } => write!(
                f,
                "matrix is not positive definite (smallest eigenvalue {min_eig:.3e})"
            ),
            MatError::AntipodalSpectrum => {
                write!(f, "rotation logarithm undefined: -1 lies in the spectrum")
            }
            MatError::NotRealPositiveDet => {
                write!(f, "input must be real with positive determinant")
            }
            MatError::OutsideDSharp { dist_from_one } => write!(
                f,
                "scalar outside the sharp-distance disc (|z - 1| = {dist_from_one:.6e} >= sqrt(2)-1)"
            ),
            MatError::Overflow { norm } => {
                write!(f, "exponential argument too large (norm {norm:.3e} > 50)")
            }
            MatError::BranchDomain { detail } => write!(f, "branch evaluation failed: {detail}"),
            MatError::BadLength { got, want } => {
                write!(f, "tuple length {got} unsupported (want {want})")
            }
            MatError::NonPositive { value } => {
                write!(f, "tuple entries must be positive (got {value:.6e})")
            }
            MatError::DegenerateCase { detail } => write!(f, "degenerate case: {detail}"),
            MatError::NotUnitary { residual } => {
                write!(f, "matrix is not unitary (residual {residual:.3e})")
            }
            MatError::BadDimension { got } => write!(f, "unsupported dimension {got}"),
            MatError::NonFinite => write!(f, "matrix entries must be finite"),
        }
    }
}

impl std::error::Error for MatError {}

pub type Result<T> = std::result::Result<T, MatError>;
