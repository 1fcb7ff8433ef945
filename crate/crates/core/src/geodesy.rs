//! Distance measures built from matrix logarithms.
//!
//! The positive-definite and rotation distances are genuine geodesic
//! metrics. The one-parameter formula ||Log(X^{-1} Y)|| on the general
//! linear group is *not*: it blows up near elements whose relative
//! rotation approaches a half turn, and `find_triangle_violation`
//! produces concrete witnesses of the failed triangle inequality.

use num_complex::Complex64;

use crate::error::{MatError, Result};
use crate::linalg::{eigenvalues, hermitian_eigen, hermitian_pow, hermitian_sqrt, lu, Matrix};
use crate::matfun::scalar::principal_log;
use crate::matfun::{logm_principal, BranchSet};
use crate::sample;

/// Eigenvalues of a positive definite input must exceed this.
pub const POSDEF_MIN_EIG: f64 = 1e-12;

/// Orthogonality / unitarity residual allowed on rotation inputs.
pub const ROTATION_TOL: f64 = 1e-10;

/// How close to -1 a rotation eigenvalue may come before the log is refused.
pub const ANTIPODAL_TOL: f64 = 1e-10;

/// Which logarithm the one-parameter formula uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchSelector {
    Principal,
    /// Per-eigenvalue winding numbers in eigenbasis order.
    Shifts(Vec<i64>),
}

fn require_real_posdet(f: &Matrix) -> Result<()> {
    if !f.is_real() || lu::det(f).re <= 0.0 {
        return Err(MatError::NotRealPositiveDet);
    }
    Ok(())
}

fn require_same_dim(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(MatError::BadDimension { got: b.dim() });
    }
    Ok(())
}

fn require_posdef(p: &Matrix) -> Result<()> {
    let asym = p.hermitian_residual();
    if asym > 1e-12 {
        return Err(MatError::NotHermitian { asymmetry: asym });
    }
    let eig = hermitian_eigen(&p.sym())?;
    let min = *eig.values.last().unwrap();
    if min <= POSDEF_MIN_EIG {
        return Err(MatError::NotPositiveDefinite { min_eig: min });
    }
    Ok(())
}

/// Euclidean distance from F to the rotation group:
/// || sqrt(F^T F) - I ||_F.
pub fn euclid_distance_to_rotations(f: &Matrix) -> Result<f64> {
    require_real_posdet(f)?;
    let u = hermitian_sqrt(&(&f.adjoint() * f).sym())?;
    Ok((&u - &Matrix::identity(f.dim())).norm_fro())
}

/// Geodesic (affine-invariant) distance on the positive definite cone:
/// || log(P1^{-1/2} P2 P1^{-1/2}) ||_F.
pub fn spd_geodesic_distance(p1: &Matrix, p2: &Matrix) -> Result<f64> {
    require_same_dim(p1, p2)?;
    require_posdef(p1)?;
    require_posdef(p2)?;
    let w = hermitian_pow(&p1.sym(), -0.5)?;
    let mid = (&(&w * p2) * &w).sym();
    let l = crate::linalg::hermitian_log(&mid)?;
    Ok(l.norm_fro())
}

/// Log-Euclidean distance on the positive definite cone:
/// || log P2 - log P1 ||_F.
pub fn spd_log_euclidean_distance(p1: &Matrix, p2: &Matrix) -> Result<f64> {
    require_same_dim(p1, p2)?;
    require_posdef(p1)?;
    require_posdef(p2)?;
    let l1 = crate::linalg::hermitian_log(&p1.sym())?;
    let l2 = crate::linalg::hermitian_log(&p2.sym())?;
    Ok((&l2 - &l1).norm_fro())
}

/// Bi-invariant geodesic distance between rotations:
/// || log(Q1^{-1} Q2) ||_F, undefined when -1 enters the spectrum.
pub fn rotation_geodesic_distance(q1: &Matrix, q2: &Matrix) -> Result<f64> {
    require_same_dim(q1, q2)?;
    for q in [q1, q2] {
        let res = q.unitarity_residual();
        if res > ROTATION_TOL {
            return Err(MatError::NotUnitary { residual: res });
        }
    }
    let rel = &q1.adjoint() * q2;
    let eigs = eigenvalues(&rel)?;
    for l in &eigs {
        if (l + Complex64::new(1.0, 0.0)).norm() < ANTIPODAL_TOL {
            return Err(MatError::AntipodalSpectrum);
        }
    }
    let l = logm_principal(&rel)?;
    Ok(l.norm_fro())
}

/// One-parameter-subgroup formula || Log(X^{-1} Y) ||_F on invertible
/// matrices. Not a metric: see `find_triangle_violation`.
pub fn one_param_pseudo_distance(x: &Matrix, y: &Matrix, branch: &BranchSelector) -> Result<f64> {
    let rel = lu::solve(x, y)?;
    match branch {
        BranchSelector::Principal => Ok(logm_principal(&rel)?.norm_fro()),
        BranchSelector::Shifts(shifts) => {
            if shifts.len() != rel.dim() {
                return Err(MatError::BadLength { got: shifts.len(), want: rel.dim() });
            }
            let set = BranchSet::build(&rel)?;
            let mut out = Matrix::zeros(rel.dim());
            set.materialize_into(shifts, &mut out);
            Ok(out.norm_fro())
        }
    }
}

/// Radius of the disc around 1 on which the scalar sharp distance is a metric.
pub fn sharp_disc_radius() -> f64 {
    2.0f64.sqrt() - 1.0
}

/// Scalar distance |Log(z1^{-1} z2)| on the disc |z - 1| < sqrt(2) - 1.
///
/// Splits as sqrt(log(r2/r1)^2 + (theta2 - theta1)^2) in polar coordinates.
pub fn scalar_sharp_distance(z1: Complex64, z2: Complex64) -> Result<f64> {
    let radius = sharp_disc_radius();
    for z in [z1, z2] {
        let d = (z - Complex64::new(1.0, 0.0)).norm();
        if d >= radius {
            return Err(MatError::OutsideDSharp { dist_from_one: d });
        }
    }
    let l = principal_log(z2 / z1)?;
    Ok(l.norm())
}

/// || log sqrt(F^T F) ||_F: the geodesic counterpart of the Euclidean
/// distance to the rotations.
pub fn geodesic_strain_magnitude(f: &Matrix) -> Result<f64> {
    require_real_posdet(f)?;
    let u = hermitian_sqrt(&(&f.adjoint() * f).sym())?;
    let l = crate::linalg::hermitian_log(&u)?;
    Ok(l.norm_fro())
}

/// A triple violating d(X,Z) <= d(X,Y) + d(Y,Z) for the one-parameter
/// formula, together with the three distances.
#[derive(Clone, Debug)]
pub struct TriangleWitness {
    pub x: Matrix,
    pub y: Matrix,
    pub z: Matrix,
    pub d_xy: f64,
    pub d_yz: f64,
    pub d_xz: f64,
}

impl TriangleWitness {
    pub fn excess(&self) -> f64 {
        self.d_xz - self.d_xy - self.d_yz
    }
}

/// Randomized search in SL(2, R) for a triangle-inequality violation of
/// the principal-branch one-parameter formula.
///
/// Draws both generic triples and triples whose relative motion combines a
/// near-half-turn rotation with a small stretch; the formula degenerates
/// near the branch cut, so violations concentrate there. Returns `None`
/// when the budget runs out (the search is evidence, not a proof of
/// absence).
pub fn find_triangle_violation(seed: u64, trials: usize, margin: f64) -> Option<TriangleWitness> {
    let branch = BranchSelector::Principal;
    for t in 0..trials {
        let mut rng = sample::stream(seed, t as u64);
        let (x, y, z) = if t % 2 == 0 {
            let x = sample::random_sl2(2.0, &mut rng);
            let y = sample::random_sl2(2.0, &mut rng);
            let z = sample::random_sl2(2.0, &mut rng);
            (x, y, z)
        } else {
            // Near-cut family: Y a rotation close to a half turn away from
            // X = I, Z = Y times a stretch small enough to stay inside the
            // principal domain.
            use rand::Rng;
            let eps: f64 = 0.05 + 0.45 * rng.gen::<f64>();
            let delta = eps * (0.5 + 0.49 * rng.gen::<f64>());
            let th = std::f64::consts::PI - eps;
            let y = Matrix::from_real(2, &[th.cos(), th.sin(), -th.sin(), th.cos()]);
            let s = Matrix::diag_real(&[delta.exp(), (-delta).exp()]);
            let z = &y * &s;
            (Matrix::identity(2), y, z)
        };
        let (d_xy, d_yz, d_xz) = match (
            one_param_pseudo_distance(&x, &y, &branch),
            one_param_pseudo_distance(&y, &z, &branch),
            one_param_pseudo_distance(&x, &z, &branch),
        ) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            _ => continue,
        };
        if d_xz > d_xy + d_yz + margin {
            return Some(TriangleWitness { x, y, z, d_xy, d_yz, d_xz });
        }
    }
    None
}
