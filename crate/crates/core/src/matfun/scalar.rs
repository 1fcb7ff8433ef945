//! Scalar logarithm branches and the conformal 2x2 embedding of C.

use num_complex::Complex64;

use crate::error::{MatError, Result};
use crate::linalg::Matrix;

/// Principal scalar logarithm with argument in (-pi, pi].
///
/// `Complex64::ln` follows `atan2`, which maps a negative real with a
/// negative zero imaginary part to -pi; this wrapper pins that edge to +pi
/// so Log(-1) = i pi holds for every representation of -1.
pub fn principal_log(z: Complex64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(MatError::ZeroArgument);
    }
    if z.im == 0.0 && z.re < 0.0 {
        return Ok(Complex64::new(z.norm().ln(), std::f64::consts::PI));
    }
    Ok(z.ln())
}

/// All scalar logarithms log|z| + i(Arg z + 2 pi k) for |k| <= range,
/// ordered by k ascending.
pub fn scalar_log_branches(z: Complex64, range: i64) -> Result<Vec<Complex64>> {
    let principal = principal_log(z)?;
    let mut out = Vec::with_capacity((2 * range + 1) as usize);
    for k in -range..=range {
        out.push(Complex64::new(
            principal.re,
            principal.im + 2.0 * std::f64::consts::PI * k as f64,
        ));
    }
    Ok(out)
}

/// z = a + i b as the conformal matrix [[a, b], [-b, a]].
pub fn co2_embed(z: Complex64) -> Matrix {
    Matrix::from_real(2, &[z.re, z.im, -z.im, z.re])
}

/// Inverse of `co2_embed`; fails when the matrix is not of conformal shape.
pub fn co2_extract(m: &Matrix) -> Result<Complex64> {
    if m.dim() != 2 {
        return Err(MatError::BadDimension { got: m.dim() });
    }
    let mut residual = 0.0f64;
    residual += (m[(0, 0)] - m[(1, 1)]).norm_sqr();
    residual += (m[(0, 1)] + m[(1, 0)]).norm_sqr();
    residual += m[(0, 0)].im * m[(0, 0)].im + m[(0, 1)].im * m[(0, 1)].im;
    residual += m[(1, 0)].im * m[(1, 0)].im + m[(1, 1)].im * m[(1, 1)].im;
    let residual = residual.sqrt();
    if residual > 1e-10 * m.norm_fro().max(1.0) {
        return Err(MatError::NotCO2 { residual });
    }
    Ok(Complex64::new(m[(0, 0)].re, m[(0, 1)].re))
}

/// Norm on the conformal algebra: |z| = sqrt(||M||_F^2 / 2).
pub fn co2_norm(m: &Matrix) -> f64 {
    (m.norm_fro_sqr() / 2.0).sqrt()
}
