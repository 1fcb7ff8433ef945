//! Hermitian eigendecomposition by cyclic Jacobi rotations.

use num_complex::Complex64;

use super::matrix::Matrix;
use crate::error::{MatError, Result};

/// Maximum number of full cyclic sweeps before giving up.
pub const JACOBI_SWEEP_BUDGET: usize = 30;

/// Relative Hermitian-asymmetry tolerance on inputs.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Eigendecomposition M = V diag(values) V* of a Hermitian matrix.
///
/// `values` are real and sorted in descending order; column j of `vectors`
/// is the eigenvector for `values[j]`, with its largest-magnitude component
/// normalized to be real and positive.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

/// Cyclic Jacobi with complex Givens rotations.
///
/// Each sweep visits every off-diagonal pair (p, q) once and applies the
/// unitary 2x2 rotation that annihilates that entry; the off-diagonal mass
/// decreases monotonically and quadratically near convergence.
pub fn hermitian_eigen(m: &Matrix) -> Result<HermitianEigen> {
    let asym = m.hermitian_residual();
    if asym > HERMITIAN_TOL {
        return Err(MatError::NotHermitian { asymmetry: asym });
    }
    let n = m.dim();
    // Work on the exactly-Hermitian average so rounding in the input cannot
    // leak into the rotation angles.
    let mut a = m.sym();
    let mut v = Matrix::identity(n);
    let scale = a.norm_fro().max(1.0);
    let tol = 1e-15 * scale;

    let mut converged = false;
    for _sweep in 0..JACOBI_SWEEP_BUDGET {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Columns p, q of A and V pick up [[c, s*phase], [-s*conj(phase), c]].
                let sp = phase * s;
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c - aiq * sp.conj();
                    a[(i, q)] = aip * sp + aiq * c;
                }
                // Rows p, q (left action by the adjoint rotation).
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj * c - aqj * sp;
                    a[(q, j)] = apj * sp.conj() + aqj * c;
                }
                // Restore exact Hermitian structure of the 2x2 block.
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * sp.conj();
                    v[(i, q)] = vip * sp + viq * c;
                }
            }
        }
    }
    if !converged {
        // One last check: the budget may have been exactly enough.
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() > tol {
            return Err(MatError::NoConvergence {
                kernel: "jacobi hermitian eigensolver",
                budget: JACOBI_SWEEP_BUDGET,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Descending by eigenvalue; equal values keep their original index order.
    order.sort_by(|&i, &j| {
        a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap().then(i.cmp(&j))
    });
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = Matrix::zeros(n);
    for (jnew, &jold) in order.iter().enumerate() {
        let mut col = v.column(jold);
        fix_phase(&mut col);
        for i in 0..n {
            vectors[(i, jnew)] = col[i];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Rotates a unit vector so its largest-magnitude component is real positive.
fn fix_phase(col: &mut [Complex64]) {
    let mut best = 0usize;
    let mut best_mag = 0.0f64;
    for (i, z) in col.iter().enumerate() {
        let mag = z.norm();
        if mag > best_mag {
            best_mag = mag;
            best = i;
        }
    }
    if best_mag == 0.0 {
        return;
    }
    let phase = col[best] / best_mag;
    let rot = phase.conj();
    for z in col.iter_mut() {
        *z *= rot;
    }
    col[best] = Complex64::new(col[best].re.abs(), 0.0);
}

/// V f(Lambda) V* for Hermitian input.
pub fn hermitian_fun(m: &Matrix, f: impl Fn(f64) -> f64) -> Result<Matrix> {
    let eig = hermitian_eigen(m)?;
    Ok(assemble(&eig, f))
}

fn assemble(eig: &HermitianEigen, f: impl Fn(f64) -> f64) -> Matrix {
    let n = eig.vectors.dim();
    let mut scaled = eig.vectors.clone();
    for j in 0..n {
        let fj = f(eig.values[j]);
        for i in 0..n {
            scaled[(i, j)] *= fj;
        }
    }
    &scaled * &eig.vectors.adjoint()
}

/// Principal square root of a Hermitian positive semidefinite matrix.
pub fn hermitian_sqrt(m: &Matrix) -> Result<Matrix> {
    let eig = hermitian_eigen(m)?;
    let scale = eig.values.first().copied().unwrap_or(0.0).max(0.0);
    let min = *eig.values.last().unwrap();
    if min < -1e-10 * scale.max(1.0) {
        return Err(MatError::NotPositiveDefinite { min_eig: min });
    }
    Ok(assemble(&eig, |x| x.max(0.0).sqrt()))
}

/// Logarithm of a Hermitian positive definite matrix.
pub fn hermitian_log(m: &Matrix) -> Result<Matrix> {
    let eig = hermitian_eigen(m)?;
    let min = *eig.values.last().unwrap();
    if min <= 1e-12 {
        return Err(MatError::NotPositiveDefinite { min_eig: min });
    }
    Ok(assemble(&eig, f64::ln))
}

/// Real power of a Hermitian positive definite matrix.
pub fn hermitian_pow(m: &Matrix, p: f64) -> Result<Matrix> {
    let eig = hermitian_eigen(m)?;
    let min = *eig.values.last().unwrap();
    if min <= 1e-12 {
        return Err(MatError::NotPositiveDefinite { min_eig: min });
    }
    Ok(assemble(&eig, |x| x.powf(p)))
}
