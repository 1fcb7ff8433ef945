//! LU factorization with partial pivoting: solves, inverses, determinants.

use num_complex::Complex64;

use super::matrix::Matrix;
use crate::error::{MatError, Result};

/// Determinant magnitude below which a matrix is treated as singular.
pub const SINGULAR_DET_TOL: f64 = 1e-14;

/// Packed LU factors of a square matrix, P A = L U.
pub struct Lu {
    dim: usize,
    /// L below the diagonal (unit diagonal implicit), U on and above.
    lu: Vec<Complex64>,
    /// Row permutation applied to the input.
    perm: Vec<usize>,
    sign_flips: usize,
}

impl Lu {
    pub fn factor(m: &Matrix) -> Result<Lu> {
        let n = m.dim();
        let mut lu = m.data().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign_flips = 0usize;
        for k in 0..n {
            let mut pivot_row = k;
            let mut pivot_mag = lu[k * n + k].norm();
            for i in (k + 1)..n {
                let mag = lu[i * n + k].norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = i;
                }
            }
            if pivot_mag == 0.0 {
                return Err(MatError::Singular { det_abs: 0.0 });
            }
            if pivot_row != k {
                for j in 0..n {
                    lu.swap(k * n + j, pivot_row * n + j);
                }
                perm.swap(k, pivot_row);
                sign_flips += 1;
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                for j in (k + 1)..n {
                    let ukj = lu[k * n + j];
                    lu[i * n + j] -= factor * ukj;
                }
            }
        }
        Ok(Lu { dim: n, lu, perm, sign_flips })
    }

    pub fn det(&self) -> Complex64 {
        let n = self.dim;
        let mut d = if self.sign_flips % 2 == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(-1.0, 0.0)
        };
        for k in 0..n {
            d *= self.lu[k * n + k];
        }
        d
    }

    /// Solves A x = b for one right-hand side.
    pub fn solve_vec(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim;
        assert_eq!(b.len(), n);
        let mut x: Vec<Complex64> = (0..n).map(|i| b[self.perm[i]]).collect();
        for i in 1..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in (i + 1)..n {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc / self.lu[i * n + i];
        }
        x
    }

    /// Solves A X = B column by column.
    pub fn solve(&self, b: &Matrix) -> Matrix {
        let n = self.dim;
        assert_eq!(b.dim(), n);
        let mut out = Matrix::zeros(n);
        for j in 0..n {
            let col = self.solve_vec(&b.column(j));
            out.set_column(j, &col);
        }
        out
    }
}

/// det(M) via LU; zero pivot reported as determinant 0.
pub fn det(m: &Matrix) -> Complex64 {
    match Lu::factor(m) {
        Ok(lu) => lu.det(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// M^{-1}; fails when |det| < 1e-14.
pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let lu = Lu::factor(m)?;
    let d = lu.det().norm();
    if d < SINGULAR_DET_TOL {
        return Err(MatError::Singular { det_abs: d });
    }
    Ok(lu.solve(&Matrix::identity(m.dim())))
}

/// Solves A X = B; fails when |det A| < 1e-14.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if b.dim() != a.dim() {
        return Err(MatError::BadDimension { got: b.dim() });
    }
    let lu = Lu::factor(a)?;
    let d = lu.det().norm();
    if d < SINGULAR_DET_TOL {
        return Err(MatError::Singular { det_abs: d });
    }
    Ok(lu.solve(b))
}

/// Solves X A = B, i.e. X = B A^{-1}, without forming the inverse.
pub fn solve_right(b: &Matrix, a: &Matrix) -> Result<Matrix> {
    let xt = solve(&a.transpose(), &b.transpose())?;
    Ok(xt.transpose())
}
