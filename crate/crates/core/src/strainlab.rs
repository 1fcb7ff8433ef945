//! Strain measures built on the right stretch U = sqrt(F^T F), and the
//! two Procrustes solvers (Euclidean and geodesic) that reduce to polar
//! factors.
//!
//! The Hill family a_m(F) = (U^m - I)/m interpolates the classical
//! measures: m = 1 is Biot strain, m = 2 gives Green strain up to the
//! factor, and the limit m -> 0 is Hencky's logarithmic strain log U.
//! All members agree to first order at the identity; only m = 0 treats
//! tension and compression symmetrically.

use crate::error::{MatError, Result};
use crate::linalg::{det, hermitian_log, hermitian_pow, hermitian_sqrt, Matrix};
use crate::polar::polar_decompose;

/// Exponent selecting one member of the Hill strain family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrainMeasureId {
    m: f64,
}

impl StrainMeasureId {
    pub fn new(m: f64) -> Result<StrainMeasureId> {
        if !m.is_finite() {
            return Err(MatError::NonFinite);
        }
        Ok(StrainMeasureId { m })
    }

    /// The logarithmic (Hencky) member, m = 0.
    pub fn hencky() -> StrainMeasureId {
        StrainMeasureId { m: 0.0 }
    }

    pub fn exponent(&self) -> f64 {
        self.m
    }
}

/// Which group the Euclidean Procrustes rotation is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProcrustesGroup {
    /// Real orthogonal matrices; inputs must be real.
    Orthogonal,
    /// Complex unitary matrices.
    Unitary,
}

const REAL_TOL: f64 = 1e-12;

fn require_real_posdet(f: &Matrix) -> Result<()> {
    let scale = f.norm_fro().max(1.0);
    let imag = f
        .data()
        .iter()
        .map(|v| v.im.abs())
        .fold(0.0f64, f64::max);
    if imag > REAL_TOL * scale {
        return Err(MatError::NotRealPositiveDet);
    }
    let d = det(f);
    if d.re <= 0.0 || d.im.abs() > 1e-8 * d.norm().max(1.0) {
        return Err(MatError::NotRealPositiveDet);
    }
    Ok(())
}

/// Right stretch tensor U = sqrt(F^T F) of a deformation gradient.
pub fn right_stretch(f: &Matrix) -> Result<Matrix> {
    require_real_posdet(f)?;
    hermitian_sqrt(&(&f.adjoint() * f).sym())
}

/// Hill strain a_m(F) = (U^m - I)/m, with the m = 0 member log U.
///
/// U is symmetric positive definite for F in GL+(n, R), so fractional
/// powers go through the eigenvalues with no branch ambiguity.
pub fn hill_strain(f: &Matrix, id: StrainMeasureId) -> Result<Matrix> {
    let u = right_stretch(f)?;
    if id.m == 0.0 {
        return hermitian_log(&u);
    }
    let powered = hermitian_pow(&u, id.m)?;
    let mut shifted = powered;
    shifted.shift_identity(-1.0);
    Ok(shifted.scale(1.0 / id.m))
}

/// Pointwise isotropic Biot energy
/// mu ||U - I||_F^2 + (lambda/2) tr(U - I)^2.
pub fn biot_energy_density(f: &Matrix, mu: f64, lambda: f64) -> Result<f64> {
    if !(mu.is_finite() && lambda.is_finite()) || mu < 0.0 || lambda < 0.0 {
        return Err(MatError::OutsideDomain {
            detail: format!("moduli must be finite and nonnegative, got mu={mu}, lambda={lambda}"),
        });
    }
    let mut biot = right_stretch(f)?;
    biot.shift_identity(-1.0);
    let tr = biot.trace().re;
    Ok(mu * biot.norm_fro_sqr() + 0.5 * lambda * tr * tr)
}

/// Rotation fitting in the Euclidean metric: the minimizer of
/// ||A - BQ||_F over the chosen group is the unitary polar factor of
/// B*A.
pub fn procrustes_euclid(a: &Matrix, b: &Matrix, group: ProcrustesGroup) -> Result<Matrix> {
    if a.dim() != b.dim() {
        return Err(MatError::BadDimension { got: b.dim() });
    }
    if group == ProcrustesGroup::Orthogonal {
        let imag = |m: &Matrix| {
            m.data()
                .iter()
                .map(|v| v.im.abs())
                .fold(0.0f64, f64::max)
        };
        if imag(a) > REAL_TOL * a.norm_fro().max(1.0) || imag(b) > REAL_TOL * b.norm_fro().max(1.0)
        {
            return Err(MatError::OutsideDomain {
                detail: "orthogonal fitting needs real inputs".to_string(),
            });
        }
    }
    let m = &b.adjoint() * a;
    Ok(polar_decompose(&m)?.up)
}

const UNIMODULAR_TOL: f64 = 1e-10;

/// Rotation fitting in the left-invariant geodesic metric on SL(3):
/// by left-invariance the problem reduces to the nearest rotation to
/// B^{ -1}A in the geodesic sense, and that is again the polar factor.
pub fn procrustes_geodesic(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.dim() != b.dim() {
        return Err(MatError::BadDimension { got: b.dim() });
    }
    for m in [a, b] {
        let d = det(m);
        if (d - 1.0).norm() > UNIMODULAR_TOL {
            return Err(MatError::OutsideDomain {
                detail: format!("determinant {d} is not 1 to {UNIMODULAR_TOL:.0e}"),
            });
        }
    }
    let rel = crate::linalg::solve(b, a)?; // B^{-1} A
    Ok(polar_decompose(&rel)?.up)
}
