//! Singular value decomposition for small dense complex matrices.

use num_complex::Complex64;

use super::eigen::hermitian_eigen;
use super::matrix::Matrix;
use crate::error::Result;

/// Below this singular-value ratio the Gram-matrix route loses too much
/// accuracy (it squares the condition number) and the one-sided Jacobi
/// path is used instead.
pub const GRAM_ROUTE_MIN_RATIO: f64 = 1e-8;

const ONE_SIDED_SWEEP_BUDGET: usize = 60;

/// M = U diag(sigma) V* with sigma sorted descending.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: Matrix,
    pub sigma: Vec<f64>,
    pub v: Matrix,
}

impl Svd {
    pub fn reconstruct(&self) -> Matrix {
        let n = self.u.dim();
        let mut us = self.u.clone();
        for j in 0..n {
            for i in 0..n {
                us[(i, j)] *= self.sigma[j];
            }
        }
        &us * &self.v.adjoint()
    }
}

/// SVD via the eigendecomposition of M*M, falling back to one-sided Jacobi
/// when the spectrum is too spread for the squared problem.
pub fn svd(m: &Matrix) -> Result<Svd> {
    let n = m.dim();
    let gram = &m.adjoint() * m;
    let eig = hermitian_eigen(&gram.sym())?;
    let sigma: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let smax = sigma[0];
    let smin = sigma[n - 1];
    if smax == 0.0 || smin / smax < GRAM_ROUTE_MIN_RATIO {
        return one_sided_jacobi(m);
    }
    // U = M V Sigma^{-1}: exact reconstruction by construction, and unitary
    // because V diagonalizes the Gram matrix.
    let v = eig.vectors;
    let mut u = m * &v;
    for j in 0..n {
        let inv = 1.0 / sigma[j];
        for i in 0..n {
            u[(i, j)] *= inv;
        }
    }
    if u.unitarity_residual() > 1e-11 * (n as f64) {
        return one_sided_jacobi(m);
    }
    Ok(Svd { u, sigma, v })
}

/// Spectral norm (largest singular value).
pub fn norm_spectral(m: &Matrix) -> f64 {
    svd(m).expect("svd of finite matrix cannot fail").sigma[0]
}

/// One-sided Jacobi: orthogonalize the columns of W = M V by right
/// rotations; singular values are the final column norms. Accurate for
/// ill-conditioned and rank-deficient input.
fn one_sided_jacobi(m: &Matrix) -> Result<Svd> {
    let n = m.dim();
    let mut w = m.clone();
    let mut v = Matrix::identity(n);
    let eps = 1e-15;
    for _sweep in 0..ONE_SIDED_SWEEP_BUDGET {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0f64;
                let mut aqq = 0.0f64;
                let mut apq = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    let wip = w[(i, p)];
                    let wiq = w[(i, q)];
                    app += wip.norm_sqr();
                    aqq += wiq.norm_sqr();
                    apq += wip.conj() * wiq;
                }
                let r = apq.norm();
                if r <= eps * (app * aqq).sqrt() || r == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = apq / r;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = phase * s;
                for i in 0..n {
                    let wip = w[(i, p)];
                    let wiq = w[(i, q)];
                    w[(i, p)] = wip * c - wiq * sp.conj();
                    w[(i, q)] = wip * sp + wiq * c;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * sp.conj();
                    v[(i, q)] = vip * sp + viq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sigma: Vec<f64> = (0..n)
        .map(|j| (0..n).map(|i| w[(i, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap().then(i.cmp(&j)));
    let sigma_sorted: Vec<f64> = order.iter().map(|&j| sigma[j]).collect();
    sigma = sigma_sorted;

    let mut u = Matrix::zeros(n);
    let mut vs = Matrix::zeros(n);
    let smax = sigma[0];
    for (jnew, &jold) in order.iter().enumerate() {
        for i in 0..n {
            vs[(i, jnew)] = v[(i, jold)];
        }
        if sigma[jnew] > 1e-14 * smax.max(1.0) {
            let inv = 1.0 / sigma[jnew];
            for i in 0..n {
                u[(i, jnew)] = w[(i, jold)] * inv;
            }
        }
    }
    complete_orthonormal(&mut u, &sigma, smax);
    Ok(Svd { u, sigma, v: vs })
}

/// Fills columns whose singular value vanished with an orthonormal
/// completion drawn deterministically from the standard basis.
fn complete_orthonormal(u: &mut Matrix, sigma: &[f64], smax: f64) {
    let n = u.dim();
    for j in 0..n {
        if sigma[j] > 1e-14 * smax.max(1.0) {
            continue;
        }
        let mut best: Option<Vec<Complex64>> = None;
        let mut best_norm = 0.0f64;
        for k in 0..n {
            let mut cand = vec![Complex64::new(0.0, 0.0); n];
            cand[k] = Complex64::new(1.0, 0.0);
            for jj in 0..n {
                if jj == j || sigma[jj] > 1e-14 * smax.max(1.0) || jj < j {
                    // Project out every already-fixed column.
                    let col = u.column(jj);
                    let dot: Complex64 =
                        col.iter().zip(cand.iter()).map(|(a, b)| a.conj() * b).sum();
                    for i in 0..n {
                        cand[i] -= col[i] * dot;
                    }
                }
            }
            let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > best_norm {
                best_norm = norm;
                best = Some(cand);
            }
        }
        if let Some(mut cand) = best {
            if best_norm > 0.0 {
                for z in cand.iter_mut() {
                    *z /= best_norm;
                }
            }
            u.set_column(j, &cand);
        }
    }
}
