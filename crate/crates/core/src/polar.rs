//! Polar decomposition A = U_p H and the distance to the unitary group.

use crate::error::{MatError, Result};
use crate::linalg::{lu, norm, svd, Matrix, NormKind};

/// A = up * h with up unitary and h Hermitian positive definite.
#[derive(Clone, Debug)]
pub struct PolarDecomposition {
    pub up: Matrix,
    pub h: Matrix,
    /// Set when the input was real with negative determinant: up is then a
    /// reflection (orthogonal but outside the rotation group).
    pub improper_real: bool,
}

/// Polar factors via the SVD: U_p = U V*, H = V Sigma V*.
pub fn polar_decompose(a: &Matrix) -> Result<PolarDecomposition> {
    let det = lu::det(a);
    if det.norm() < lu::SINGULAR_DET_TOL {
        return Err(MatError::Singular { det_abs: det.norm() });
    }
    let s = svd::svd(a)?;
    let up = &s.u * &s.v.adjoint();
    let n = a.dim();
    let mut vs = s.v.clone();
    for j in 0..n {
        for i in 0..n {
            vs[(i, j)] *= s.sigma[j];
        }
    }
    let h = (&vs * &s.v.adjoint()).sym();
    let improper_real = a.is_real() && det.re < 0.0;
    // A real input keeps real factors; drop eigen-route rounding dust.
    let (up, h) = if a.is_real() { (up.realified(), h.realified()) } else { (up, h) };
    Ok(PolarDecomposition { up, h, improper_real })
}

/// Distance from A to the unitary group in the given norm:
/// || sqrt(A* A) - I || = || H - I ||.
pub fn nearest_unitary_gap(a: &Matrix, kind: NormKind) -> Result<f64> {
    let p = polar_decompose(a)?;
    let gap = &p.h - &Matrix::identity(a.dim());
    Ok(norm(&gap, kind))
}
