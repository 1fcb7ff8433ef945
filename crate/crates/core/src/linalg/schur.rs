//! Complex Schur form and general eigendecomposition.
//!
//! Hessenberg reduction by Householder reflectors followed by explicit
//! single-shift QR with Wilkinson shifts. For normal input the triangular
//! factor degenerates to a diagonal, which downstream code exploits to get
//! a perfectly conditioned (unitary) eigenbasis.

use num_complex::Complex64;

use super::lu;
use super::matrix::Matrix;
use super::svd::svd;
use crate::error::{MatError, Result};

const EPS: f64 = 2.220446049250313e-16;

/// QR iterations allowed per eigenvalue before giving up.
const QR_ITER_PER_EIGENVALUE: usize = 40;

/// A = Z T Z* with Z unitary and T upper triangular.
pub struct Schur {
    pub t: Matrix,
    pub z: Matrix,
}

/// A = S diag(eigenvalues) S^{-1}.
pub struct Diagonalization {
    pub eigenvalues: Vec<Complex64>,
    pub basis: Matrix,
    pub basis_inv: Matrix,
    /// Condition number of the eigenbasis, sigma_max / sigma_min.
    pub basis_cond: f64,
    /// True when two eigenvalues coincide within 1e-8 relative.
    pub repeated_eigenvalues: bool,
}

/// Complex Schur decomposition.
pub fn schur(a: &Matrix) -> Result<Schur> {
    let n = a.dim();
    let mut h = a.clone();
    let mut z = Matrix::identity(n);
    hessenberg(&mut h, &mut z);

    let scale = h.norm_fro().max(1e-300);
    let mut hi = n - 1;
    let mut iters_this_window = 0usize;
    let mut total_budget = QR_ITER_PER_EIGENVALUE * n;
    loop {
        // Zero negligible subdiagonals.
        for m in 1..=hi {
            let denom = h[(m - 1, m - 1)].norm() + h[(m, m)].norm();
            let tol = EPS * if denom > 0.0 { denom } else { scale };
            if h[(m, m - 1)].norm() <= tol {
                h[(m, m - 1)] = Complex64::new(0.0, 0.0);
            }
        }
        // Deflate converged trailing eigenvalues.
        while hi > 0 && h[(hi, hi - 1)].norm() == 0.0 {
            hi -= 1;
            iters_this_window = 0;
        }
        if hi == 0 {
            break;
        }
        // Start of the active unreduced window.
        let mut lo = hi;
        while lo > 0 && h[(lo, lo - 1)].norm() != 0.0 {
            lo -= 1;
        }

        if total_budget == 0 {
            return Err(MatError::NoConvergence {
                kernel: "qr schur iteration",
                budget: QR_ITER_PER_EIGENVALUE * n,
            });
        }
        total_budget -= 1;
        iters_this_window += 1;

        let mu = if iters_this_window % 11 == 10 {
            // Exceptional shift to break symmetric stagnation.
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_step(&mut h, &mut z, lo, hi, mu);
    }

    // Clean the strictly lower triangle (it only holds rounding noise now).
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }
    Ok(Schur { t: h, z })
}

/// Eigenvalues only (diagonal of the Schur factor).
pub fn eigenvalues(a: &Matrix) -> Result<Vec<Complex64>> {
    let s = schur(a)?;
    Ok((0..a.dim()).map(|i| s.t[(i, i)]).collect())
}

/// Full eigendecomposition with conditioned eigenbasis.
///
/// Fails with `NotDiagonalizable` when the eigenbasis condition number
/// exceeds `cond_limit` (the matrix is then defective or too close to it).
pub fn diagonalize(a: &Matrix, cond_limit: f64) -> Result<Diagonalization> {
    let n = a.dim();
    let s = schur(a)?;
    let eigenvalues: Vec<Complex64> = (0..n).map(|i| s.t[(i, i)]).collect();

    let mut max_mag = 0.0f64;
    for &l in &eigenvalues {
        max_mag = max_mag.max(l.norm());
    }
    let mut repeated = false;
    for i in 0..n {
        for j in (i + 1)..n {
            if (eigenvalues[i] - eigenvalues[j]).norm() <= 1e-8 * max_mag.max(1.0) {
                repeated = true;
            }
        }
    }

    // Strict upper mass of T; for normal input it is rounding noise and the
    // Schur basis itself diagonalizes.
    let mut off = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            off += s.t[(i, j)].norm_sqr();
        }
    }
    let scale = s.t.norm_fro().max(1.0);
    if off.sqrt() <= 1e-13 * scale {
        return Ok(Diagonalization {
            eigenvalues,
            basis_inv: s.z.adjoint(),
            basis: s.z,
            basis_cond: 1.0,
            repeated_eigenvalues: repeated,
        });
    }

    // Eigenvectors of the triangular factor by back-substitution.
    let mut y = Matrix::zeros(n);
    let tnorm = s.t.norm_fro().max(1e-300);
    for k in 0..n {
        let lam = s.t[(k, k)];
        let mut col = vec![Complex64::new(0.0, 0.0); n];
        col[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in (i + 1)..=k {
                acc += s.t[(i, j)] * col[j];
            }
            let mut denom = s.t[(i, i)] - lam;
            if denom.norm() < EPS * tnorm {
                // Clustered eigenvalue: damp rather than divide by zero; the
                // basis condition check below decides if the result is usable.
                denom = Complex64::new(EPS * tnorm, 0.0);
            }
            col[i] = -acc / denom;
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in col.iter_mut() {
            *z /= norm;
        }
        y.set_column(k, &col);
    }
    let basis = &s.z * &y;
    let sv = svd(&basis)?;
    let smin = sv.sigma[n - 1];
    let basis_cond = if smin > 0.0 { sv.sigma[0] / smin } else { f64::INFINITY };
    if !basis_cond.is_finite() || basis_cond > cond_limit {
        return Err(MatError::NotDiagonalizable { basis_cond });
    }
    let basis_inv = lu::inverse(&basis)?;
    Ok(Diagonalization { eigenvalues, basis, basis_inv, basis_cond, repeated_eigenvalues: repeated })
}

/// Reduce to upper Hessenberg form, accumulating the transform into `z`.
fn hessenberg(h: &mut Matrix, z: &mut Matrix) {
    let n = h.dim();
    if n <= 2 {
        return;
    }
    for k in 0..(n - 2) {
        // Householder vector for column k below the subdiagonal.
        let mut xnorm_sqr = 0.0f64;
        for i in (k + 1)..n {
            xnorm_sqr += h[(i, k)].norm_sqr();
        }
        let xnorm = xnorm_sqr.sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * xnorm;
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[k + 1] = x0 - alpha;
        for i in (k + 2)..n {
            v[i] = h[(i, k)];
        }
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm < 1e-300 {
            continue;
        }
        for zv in v.iter_mut() {
            *zv /= vnorm;
        }
        // H <- (I - 2 v v*) H (I - 2 v v*), Z <- Z (I - 2 v v*).
        reflect_left(h, &v);
        reflect_right(h, &v);
        reflect_right(z, &v);
        // The annihilated entries are exactly zero by construction.
        h[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

fn reflect_left(m: &mut Matrix, v: &[Complex64]) {
    let n = m.dim();
    for j in 0..n {
        let mut dot = Complex64::new(0.0, 0.0);
        for i in 0..n {
            dot += v[i].conj() * m[(i, j)];
        }
        dot *= 2.0;
        for i in 0..n {
            let vi = v[i];
            m[(i, j)] -= vi * dot;
        }
    }
}

fn reflect_right(m: &mut Matrix, v: &[Complex64]) {
    let n = m.dim();
    for i in 0..n {
        let mut dot = Complex64::new(0.0, 0.0);
        for j in 0..n {
            dot += m[(i, j)] * v[j];
        }
        dot *= 2.0;
        for j in 0..n {
            let vj = v[j].conj();
            m[(i, j)] -= dot * vj;
        }
    }
}

/// Eigenvalue of the trailing 2x2 block closest to the bottom-right entry.
fn wilkinson_shift(h: &Matrix, hi: usize) -> Complex64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let l1 = d + half + disc;
    let l2 = d + half - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One explicit shifted QR step on the window [lo, hi].
fn qr_step(h: &mut Matrix, z: &mut Matrix, lo: usize, hi: usize, mu: Complex64) {
    let n = h.dim();
    let mut rot: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
    for i in lo..=hi {
        h[(i, i)] -= mu;
    }
    // Left rotations zero the subdiagonal of H - mu I.
    for j in lo..hi {
        let a = h[(j, j)];
        let b = h[(j + 1, j)];
        let (c, s) = givens(a, b);
        rot.push((c, s));
        for col in j..n {
            let x = h[(j, col)];
            let y = h[(j + 1, col)];
            h[(j, col)] = x * c + y * s;
            h[(j + 1, col)] = -x * s.conj() + y * c;
        }
    }
    // Right rotations restore Hessenberg form (RQ product).
    for (idx, j) in (lo..hi).enumerate() {
        let (c, s) = rot[idx];
        let top = (j + 2).min(hi + 1);
        for row in 0..top {
            let x = h[(row, j)];
            let y = h[(row, j + 1)];
            h[(row, j)] = x * c + y * s.conj();
            h[(row, j + 1)] = -x * s + y * c;
        }
        for row in 0..n {
            let x = z[(row, j)];
            let y = z[(row, j + 1)];
            z[(row, j)] = x * c + y * s.conj();
            z[(row, j + 1)] = -x * s + y * c;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += mu;
    }
}

/// Complex Givens rotation: returns (c, s) with c real such that
/// [[c, s], [-conj(s), c]] applied from the left zeroes b in (a, b).
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    let an = a.norm();
    let r = (an * an + bn * bn).sqrt();
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let c = an / r;
    let s = (a / an) * b.conj() / r;
    (c, s)
}
