//! Dense linear-algebra kernels for small complex matrices.

pub mod eigen;
pub mod lu;
pub mod matrix;
pub mod schur;
pub mod svd;

pub use eigen::{hermitian_eigen, hermitian_fun, hermitian_log, hermitian_pow, hermitian_sqrt,
                HermitianEigen, JACOBI_SWEEP_BUDGET};
pub use lu::{det, inverse, solve, solve_right};
pub use matrix::{Matrix, MAX_DIM};
pub use schur::{diagonalize, eigenvalues, schur, Diagonalization, Schur};
pub use svd::{norm_spectral, svd, Svd};

/// Norm used by functionals and distance measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    Frobenius,
    Spectral,
}

impl NormKind {
    pub fn name(self) -> &'static str {
        match self {
            NormKind::Frobenius => "frobenius",
            NormKind::Spectral => "spectral",
        }
    }
}

/// ||M|| in the requested norm.
pub fn norm(m: &Matrix, kind: NormKind) -> f64 {
    match kind {
        NormKind::Frobenius => m.norm_fro(),
        NormKind::Spectral => norm_spectral(m),
    }
}

/// Trace-free part M - (tr M / n) I.
pub fn dev(m: &Matrix) -> Matrix {
    m.dev()
}
