//! Seeded random matrix ensembles.
//!
//! Every consumer derives its generator through `stream`, so independent
//! work items (restarts, trials) get reproducible, order-independent
//! randomness from one user-facing seed.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{lu, svd, Matrix};

/// splitmix64 finalizer; decorrelates nearby (seed, stream) pairs.
fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// Deterministic generator for work item `stream` under `seed`.
pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed).wrapping_add(mix(stream.wrapping_add(1))))
}

pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn complex_normal(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(normal(rng), normal(rng))
}

/// Real Gaussian matrix.
pub fn random_real(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = Complex64::new(normal(rng), 0.0);
        }
    }
    m
}

/// Complex Ginibre matrix.
pub fn random_complex(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = complex_normal(rng);
        }
    }
    m
}

/// Random Hermitian matrix with entries of the given scale.
pub fn random_hermitian(n: usize, scale: f64, rng: &mut ChaCha8Rng) -> Matrix {
    random_complex(n, rng).sym().scale(scale)
}

/// Modified Gram-Schmidt QR with positive real diagonal of R; for Gaussian
/// input the Q factor is Haar-distributed. One MGS pass loses orthogonality
/// proportionally to the condition of the draw, so a second pass runs on
/// the result (twice is enough to reach working precision).
fn orthonormalize(m: &Matrix) -> Matrix {
    let n = m.dim();
    let mut q = m.clone();
    for _ in 0..2 {
        for j in 0..n {
            for k in 0..j {
                let mut dot = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    dot += q[(i, k)].conj() * q[(i, j)];
                }
                for i in 0..n {
                    let qik = q[(i, k)];
                    q[(i, j)] -= qik * dot;
                }
            }
            let norm = (0..n).map(|i| q[(i, j)].norm_sqr()).sum::<f64>().sqrt();
            for i in 0..n {
                q[(i, j)] /= norm;
            }
        }
    }
    q
}

/// Haar-uniform unitary matrix.
pub fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    orthonormalize(&random_complex(n, rng))
}

/// Haar-uniform rotation (special orthogonal) matrix.
pub fn random_rotation(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut q = orthonormalize(&random_real(n, rng));
    if lu::det(&q).re < 0.0 {
        for i in 0..n {
            q[(i, n - 1)] = -q[(i, n - 1)];
        }
    }
    q
}

/// Real matrix with positive determinant and singular-value ratio at most
/// `max_cond`, by rejection.
pub fn random_glp_real(n: usize, max_cond: f64, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let mut m = random_real(n, rng);
        let det = lu::det(&m).re;
        if det == 0.0 {
            continue;
        }
        if det < 0.0 {
            for i in 0..n {
                m[(i, 0)] = -m[(i, 0)];
            }
        }
        let s = svd::svd(&m).expect("svd of finite sample");
        let smin = s.sigma[n - 1];
        if smin > 0.0 && s.sigma[0] / smin <= max_cond {
            return m;
        }
    }
}

/// Real 3x3 matrix with determinant exactly one (up to rounding), by
/// rescaling a positive-determinant draw.
pub fn random_sl3_real(max_cond: f64, rng: &mut ChaCha8Rng) -> Matrix {
    let m = random_glp_real(3, max_cond, rng);
    let det = lu::det(&m).re;
    m.scale(det.powf(-1.0 / 3.0))
}

/// Invertible complex matrix with singular-value ratio at most `max_cond`.
pub fn random_gl_complex(n: usize, max_cond: f64, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_complex(n, rng);
        let s = svd::svd(&m).expect("svd of finite sample");
        let smin = s.sigma[n - 1];
        if smin > 0.0 && s.sigma[0] / smin <= max_cond {
            return m;
        }
    }
}

/// Complex matrix whose singular values are additionally separated by at
/// least `min_gap` relative to the largest one.
pub fn random_gl_complex_distinct(
    n: usize,
    max_cond: f64,
    min_gap: f64,
    rng: &mut ChaCha8Rng,
) -> Matrix {
    loop {
        let m = random_gl_complex(n, max_cond, rng);
        let s = svd::svd(&m).expect("svd of finite sample");
        let ok = s.sigma.windows(2).all(|w| w[0] - w[1] >= min_gap * s.sigma[0]);
        if ok {
            return m;
        }
    }
}

/// Positive diagonal with entries log-uniform in [lo, hi], descending.
pub fn random_positive_diag(n: usize, lo: f64, hi: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let (llo, lhi) = (lo.ln(), hi.ln());
    let mut d: Vec<f64> = (0..n).map(|_| (llo + (lhi - llo) * rng.gen::<f64>()).exp()).collect();
    d.sort_by(|a, b| b.partial_cmp(a).unwrap());
    d
}

/// Hermitian positive definite matrix with log-uniform spectrum in [lo, hi].
pub fn random_spd(n: usize, lo: f64, hi: f64, rng: &mut ChaCha8Rng) -> Matrix {
    let q = random_unitary(n, rng);
    let d = random_positive_diag(n, lo, hi, rng);
    let mut qd = q.clone();
    for j in 0..n {
        for i in 0..n {
            qd[(i, j)] *= d[j];
        }
    }
    (&qd * &q.adjoint()).sym()
}

/// Real symmetric positive definite matrix.
pub fn random_spd_real(n: usize, lo: f64, hi: f64, rng: &mut ChaCha8Rng) -> Matrix {
    let q = random_rotation(n, rng);
    let d = random_positive_diag(n, lo, hi, rng);
    let mut qd = q.clone();
    for j in 0..n {
        for i in 0..n {
            qd[(i, j)] *= d[j];
        }
    }
    (&qd * &q.adjoint()).sym().realified()
}

/// Random real traceless 2x2 matrix with Frobenius norm uniform in (0, cap].
pub fn random_traceless_2x2(cap: f64, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let a = normal(rng);
        let b = normal(rng);
        let c = normal(rng);
        let m = Matrix::from_real(2, &[a, b, c, -a]);
        let norm = m.norm_fro();
        if norm > 1e-12 {
            let target = cap * rng.gen::<f64>().max(1e-6);
            return m.scale(target / norm);
        }
    }
}

/// Random element of SL(2, R) reached by the closed-form exponential.
pub fn random_sl2(cap: f64, rng: &mut ChaCha8Rng) -> Matrix {
    let x = random_traceless_2x2(cap, rng);
    crate::matfun::sl2::sl2_exp(&x).expect("traceless by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let mut a1 = stream(42, 7);
        let mut a2 = stream(42, 7);
        let mut b = stream(42, 8);
        let x1: f64 = a1.gen();
        let x2: f64 = a2.gen();
        let y: f64 = b.gen();
        assert_eq!(x1, x2);
        assert_ne!(x1, y);
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = stream(1, 0);
        for n in 2..=6 {
            let q = random_unitary(n, &mut rng);
            assert!(q.unitarity_residual() < 1e-12);
        }
    }

    #[test]
    fn random_rotation_is_special_orthogonal() {
        let mut rng = stream(2, 0);
        for n in 2..=5 {
            let q = random_rotation(n, &mut rng);
            assert!(q.is_real());
            assert!(q.unitarity_residual() < 1e-12);
            assert!((lu::det(&q).re - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn conditioned_sample_respects_bounds() {
        let mut rng = stream(3, 0);
        let m = random_glp_real(3, 1e3, &mut rng);
        assert!(lu::det(&m).re > 0.0);
        let s = svd::svd(&m).unwrap();
        assert!(s.sigma[0] / s.sigma[2] <= 1e3);
    }

    #[test]
    fn spd_sample_is_positive_definite() {
        let mut rng = stream(4, 0);
        let p = random_spd(3, 1e-2, 1e2, &mut rng);
        let eig = crate::linalg::hermitian_eigen(&p).unwrap();
        assert!(*eig.values.last().unwrap() > 0.0);
    }

    #[test]
    fn sl2_sample_has_unit_determinant() {
        let mut rng = stream(5, 0);
        for _ in 0..10 {
            let s = random_sl2(2.0, &mut rng);
            assert!((lu::det(&s).re - 1.0).abs() < 1e-10);
        }
    }
}
