//! Closed-form exponential and logarithm on the traceless 2x2 / SL(2) pair.

use num_complex::Complex64;

use crate::error::{MatError, Result};
use crate::linalg::{lu, Matrix};

/// Below this |s| the hyperbolic quotients switch to series to avoid 0/0.
pub const SL2_SERIES_CUTOFF: f64 = 1e-4;

const TRACELESS_TOL: f64 = 1e-12;
const UNIT_DET_TOL: f64 = 1e-10;

/// exp(X) = cosh(s) I + (sinh(s)/s) X with s^2 = -det X, for traceless X.
///
/// Both coefficient functions are entire in s^2, so the formula covers the
/// hyperbolic (det X < 0), trigonometric (det X > 0) and nilpotent
/// (det X = 0) regimes in one expression.
pub fn sl2_exp(x: &Matrix) -> Result<Matrix> {
    if x.dim() != 2 {
        return Err(MatError::BadDimension { got: x.dim() });
    }
    let tr = x.trace().norm();
    if tr > TRACELESS_TOL * x.norm_fro().max(1.0) {
        return Err(MatError::NotTraceless { trace_abs: tr });
    }
    let w = -lu::det(x); // s^2
    let (ch, shq) = cosh_sinhq(w);
    let mut out = x.scale_complex(shq);
    out[(0, 0)] += ch;
    out[(1, 1)] += ch;
    Ok(out)
}

/// (cosh(s), sinh(s)/s) as functions of w = s^2; series below the cutoff.
fn cosh_sinhq(w: Complex64) -> (Complex64, Complex64) {
    if w.norm() < SL2_SERIES_CUTOFF * SL2_SERIES_CUTOFF {
        let one = Complex64::new(1.0, 0.0);
        let ch = one + w * 0.5 + w * w * (1.0 / 24.0);
        let shq = one + w * (1.0 / 6.0) + w * w * (1.0 / 120.0);
        return (ch, shq);
    }
    // cosh and sinh(s)/s are even, so the branch of the square root is
    // irrelevant.
    let s = w.sqrt();
    (s.cosh(), s.sinh() / s)
}

/// Principal real logarithm on SL(2): log S = (s / sinh s)(S - cosh(s) I)
/// with cosh s = tr(S)/2. Defined for real S with det S = 1 and tr S > -2.
pub fn sl2_log(s_mat: &Matrix) -> Result<Matrix> {
    if s_mat.dim() != 2 {
        return Err(MatError::BadDimension { got: s_mat.dim() });
    }
    if !s_mat.is_real() {
        return Err(MatError::OutsideDomain {
            detail: "sl2 logarithm is defined for real matrices".to_string(),
        });
    }
    let det = lu::det(s_mat).re;
    if (det - 1.0).abs() > UNIT_DET_TOL {
        return Err(MatError::OutsideDomain {
            detail: format!("determinant {det:.12e} is not 1"),
        });
    }
    let c = s_mat.trace().re / 2.0;
    if c <= -1.0 {
        return Err(MatError::OutsideDomain {
            detail: format!("trace {:.12e} <= -2: both eigenvalues negative", 2.0 * c),
        });
    }
    let w = c * c - 1.0; // s^2
    let factor = if w.abs() < SL2_SERIES_CUTOFF * SL2_SERIES_CUTOFF {
        // s/sinh(s) = 1 - s^2/6 + 7 s^4 / 360 - ...
        1.0 - w / 6.0 + 7.0 * w * w / 360.0
    } else if c > 1.0 {
        let s = (c + (c * c - 1.0).sqrt()).ln(); // arcosh(c)
        s / (c * c - 1.0).sqrt()
    } else {
        let y = c.acos();
        y / (1.0 - c * c).sqrt()
    };
    let mut out = s_mat.scale(factor);
    let shift = Complex64::new(c * factor, 0.0);
    out[(0, 0)] -= shift;
    out[(1, 1)] -= shift;
    Ok(out)
}
