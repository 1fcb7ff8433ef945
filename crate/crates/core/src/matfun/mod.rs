//! Matrix exponential, principal logarithm and logarithm branches.

pub mod scalar;
pub mod sl2;

use num_complex::Complex64;

use crate::error::{MatError, Result};
use crate::linalg::{self, lu, schur, Matrix};

/// Taylor order used by the exponential after scaling.
pub const EXP_SERIES_ORDER: usize = 20;

/// The argument is halved until its 1-norm drops below this bound.
pub const EXP_SCALE_TARGET: f64 = 0.25;

/// Frobenius norm beyond which the exponential is refused outright.
pub const EXP_OVERFLOW_LIMIT: f64 = 50.0;

/// Iteration budget for the Denman-Beavers square-root iteration.
pub const DENMAN_BEAVERS_BUDGET: usize = 50;

/// Eigenbasis condition limit for branch enumeration.
pub const BRANCH_COND_LIMIT: f64 = 1e8;

/// Above this eigenbasis condition the principal log switches from the
/// eigendecomposition route to inverse scaling-and-squaring. The
/// eigenroute loses roughly cond(V) digits, so the cap stays low enough
/// to keep its forward error near 1e-12.
const EIG_ROUTE_COND_LIMIT: f64 = 1e3;

/// Relative imaginary tolerance for classifying an eigenvalue as negative real.
pub const NEG_REAL_IM_TOL: f64 = 1e-12;

const LOG_SERIES_ORDER: usize = 26;

/// exp(X) by scaling and squaring with a fixed-order Taylor kernel.
pub fn expm(x: &Matrix) -> Result<Matrix> {
    let fro = x.norm_fro();
    if !fro.is_finite() || fro > EXP_OVERFLOW_LIMIT {
        return Err(MatError::Overflow { norm: fro });
    }
    let n1 = x.norm_one();
    let mut squarings = 0u32;
    if n1 > EXP_SCALE_TARGET {
        squarings = (n1 / EXP_SCALE_TARGET).log2().ceil() as u32;
    }
    let a = x.scale(0.5f64.powi(squarings as i32));
    let mut term = Matrix::identity(x.dim());
    let mut sum = Matrix::identity(x.dim());
    for k in 1..=EXP_SERIES_ORDER {
        term = &term * &a;
        term = term.scale(1.0 / k as f64);
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Ok(sum)
}

/// Principal matrix logarithm.
///
/// Requires an invertible input whose spectrum avoids the closed negative
/// real axis. Real input yields real output. Three routes, in order of
/// preference: Hermitian eigendecomposition, general eigendecomposition
/// with a conditioned basis, and inverse scaling-and-squaring with
/// Denman-Beavers square roots for (near-)defective input.
pub fn logm_principal(m: &Matrix) -> Result<Matrix> {
    let d = lu::det(m).norm();
    if d < lu::SINGULAR_DET_TOL {
        return Err(MatError::Singular { det_abs: d });
    }
    let real_input = m.is_real();

    if m.hermitian_residual() <= 1e-12 {
        let h = m.sym();
        let eig = linalg::hermitian_eigen(&h)?;
        let min = *eig.values.last().unwrap();
        if min <= 0.0 {
            return Err(MatError::NegativeRealEigenvalue { re: min, im: 0.0 });
        }
        let out = linalg::hermitian_log(&h)?;
        return Ok(if real_input { out.realified() } else { out });
    }

    match schur::diagonalize(m, EIG_ROUTE_COND_LIMIT) {
        Ok(diag) => {
            reject_negative_real(&diag.eigenvalues)?;
            let logs: Vec<Complex64> = diag.eigenvalues.iter().map(|l| l.ln()).collect();
            let mut sl = diag.basis.clone();
            let n = m.dim();
            for j in 0..n {
                for i in 0..n {
                    sl[(i, j)] *= logs[j];
                }
            }
            let out = &sl * &diag.basis_inv;
            Ok(if real_input { out.realified() } else { out })
        }
        Err(MatError::NotDiagonalizable { .. }) => {
            let eigs = schur::eigenvalues(m)?;
            reject_negative_real(&eigs)?;
            let out = log_by_inverse_scaling(m)?;
            Ok(if real_input { out.realified() } else { out })
        }
        Err(e) => Err(e),
    }
}

fn reject_negative_real(eigs: &[Complex64]) -> Result<()> {
    for &l in eigs {
        if l.re < 0.0 && l.im.abs() < NEG_REAL_IM_TOL * l.norm() {
            return Err(MatError::NegativeRealEigenvalue { re: l.re, im: l.im });
        }
    }
    Ok(())
}

/// log M = 2^k log(M^(1/2^k)) with the final factor close enough to the
/// identity for a plain alternating series.
fn log_by_inverse_scaling(m: &Matrix) -> Result<Matrix> {
    let n = m.dim();
    let ident = Matrix::identity(n);
    let mut a = m.clone();
    let mut k = 0u32;
    while (&a - &ident).norm_one() > EXP_SCALE_TARGET {
        if k >= 40 {
            return Err(MatError::NoConvergence {
                kernel: "inverse scaling-and-squaring",
                budget: 40,
            });
        }
        a = denman_beavers_sqrt(&a)?;
        k += 1;
    }
    let e = &a - &ident;
    let mut term = ident.clone();
    let mut sum = Matrix::zeros(n);
    for j in 1..=LOG_SERIES_ORDER {
        term = &term * &e;
        let coeff = if j % 2 == 1 { 1.0 } else { -1.0 } / j as f64;
        sum = &sum + &term.scale(coeff);
    }
    Ok(sum.scale(2.0f64.powi(k as i32)))
}

/// Principal square root by the coupled Denman-Beavers iteration.
fn denman_beavers_sqrt(m: &Matrix) -> Result<Matrix> {
    let mut y = m.clone();
    let mut z = Matrix::identity(m.dim());
    for _ in 0..DENMAN_BEAVERS_BUDGET {
        let y_inv = lu::inverse(&y)?;
        let z_inv = lu::inverse(&z)?;
        let y_next = (&y + &z_inv).scale(0.5);
        let z_next = (&z + &y_inv).scale(0.5);
        let delta = (&y_next - &y).norm_one();
        y = y_next;
        z = z_next;
        if delta <= 1e-14 * y.norm_one().max(1.0) {
            return Ok(y);
        }
    }
    Err(MatError::NoConvergence {
        kernel: "denman-beavers sqrt",
        budget: DENMAN_BEAVERS_BUDGET,
    })
}

/// One logarithm of a diagonalizable matrix: the principal branch shifted
/// by 2 pi i k_j on eigenvalue j.
#[derive(Clone, Debug)]
pub struct LogBranch {
    /// Principal logarithm of the underlying matrix.
    pub principal: Matrix,
    /// Per-eigenvalue winding numbers, in eigenbasis column order.
    pub shifts: Vec<i64>,
    /// Eigenbasis the shifts refer to.
    pub eigenbasis: Matrix,
}

impl LogBranch {
    /// principal + eigenbasis diag(2 pi i k) eigenbasis^{-1}.
    pub fn materialize(&self) -> Result<Matrix> {
        if self.shifts.iter().all(|&k| k == 0) {
            return Ok(self.principal.clone());
        }
        let n = self.eigenbasis.dim();
        let mut d = Matrix::zeros(n);
        for (j, &k) in self.shifts.iter().enumerate() {
            d[(j, j)] = Complex64::new(0.0, 2.0 * std::f64::consts::PI * k as f64);
        }
        let shift = lu::solve_right(&(&self.eigenbasis * &d), &self.eigenbasis)?;
        Ok(&self.principal + &shift)
    }
}

/// Precomputed branch family of one matrix, cheap to evaluate per shift
/// vector: the shift contribution is a sum of fixed rank-one matrices.
pub struct BranchSet {
    pub principal: Matrix,
    pub eigenvalues: Vec<Complex64>,
    pub basis: Matrix,
    pub basis_cond: f64,
    pub repeated_eigenvalues: bool,
    /// rank1[j] = 2 pi i * (column j of S) (row j of S^{-1}).
    rank1: Vec<Matrix>,
}

impl BranchSet {
    /// Builds the family. The principal branch here uses the elementwise
    /// principal scalar log of each eigenvalue, so eigenvalues on the
    /// negative real axis are admitted (their winding is just offset).
    pub fn build(m: &Matrix) -> Result<BranchSet> {
        let d = lu::det(m).norm();
        if d < lu::SINGULAR_DET_TOL {
            return Err(MatError::Singular { det_abs: d });
        }
        let diag = schur::diagonalize(m, BRANCH_COND_LIMIT)?;
        let n = m.dim();
        let logs: Vec<Complex64> = diag.eigenvalues.iter().map(|l| l.ln()).collect();
        let mut sl = diag.basis.clone();
        for j in 0..n {
            for i in 0..n {
                sl[(i, j)] *= logs[j];
            }
        }
        let principal = &sl * &diag.basis_inv;
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let mut rank1 = Vec::with_capacity(n);
        for j in 0..n {
            let mut r = Matrix::zeros(n);
            for i in 0..n {
                let sij = diag.basis[(i, j)];
                for k in 0..n {
                    r[(i, k)] = two_pi_i * sij * diag.basis_inv[(j, k)];
                }
            }
            rank1.push(r);
        }
        Ok(BranchSet {
            principal,
            eigenvalues: diag.eigenvalues,
            basis: diag.basis,
            basis_cond: diag.basis_cond,
            repeated_eigenvalues: diag.repeated_eigenvalues,
            rank1,
        })
    }

    pub fn dim(&self) -> usize {
        self.principal.dim()
    }

    /// Materializes the branch for one shift vector into `out`.
    pub fn materialize_into(&self, shifts: &[i64], out: &mut Matrix) {
        out.data_mut().copy_from_slice(self.principal.data());
        for (j, &k) in shifts.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let kf = k as f64;
            for (o, r) in out.data_mut().iter_mut().zip(self.rank1[j].data().iter()) {
                *o += r * kf;
            }
        }
    }
}

/// Iterates every shift vector in {-range..=range}^n in odometer order.
pub struct ShiftVectors {
    range: i64,
    current: Vec<i64>,
    done: bool,
}

impl ShiftVectors {
    pub fn new(n: usize, range: i64) -> ShiftVectors {
        assert!(range >= 0);
        ShiftVectors { range, current: vec![-range; n], done: false }
    }

    pub fn count(n: usize, range: i64) -> u128 {
        (2 * range as u128 + 1).pow(n as u32)
    }
}

impl Iterator for ShiftVectors {
    type Item = Vec<i64>;
    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut i = self.current.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.range {
                self.current[i] += 1;
                for j in (i + 1)..self.current.len() {
                    self.current[j] = -self.range;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Cap on materialized branch lists; beyond this the caller almost
/// certainly wants the streaming `BranchSet` instead.
const BRANCH_LIST_CAP: u128 = 1_000_000;

/// Every logarithm branch of a diagonalizable matrix with windings in
/// {-range..=range} per eigenvalue: (2 range + 1)^n entries.
pub fn log_branches(m: &Matrix, shift_range: i64) -> Result<Vec<LogBranch>> {
    let set = BranchSet::build(m)?;
    let n = m.dim();
    let count = ShiftVectors::count(n, shift_range);
    if count > BRANCH_LIST_CAP {
        return Err(MatError::BranchDomain {
            detail: format!("{count} branches exceed the materialization cap"),
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    for shifts in ShiftVectors::new(n, shift_range) {
        out.push(LogBranch {
            principal: set.principal.clone(),
            shifts,
            eigenbasis: set.basis.clone(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let x = Matrix::zeros(3);
        let e = expm(&x).unwrap();
        assert!((&e - &Matrix::identity(3)).norm_fro() < 1e-15);
    }

    #[test]
    fn expm_of_planar_rotation_generator() {
        // exp([[0, pi/2], [-pi/2, 0]]) = [[0, 1], [-1, 0]].
        let h = std::f64::consts::FRAC_PI_2;
        let x = Matrix::from_real(2, &[0.0, h, -h, 0.0]);
        let e = expm(&x).unwrap();
        let expect = Matrix::from_real(2, &[0.0, 1.0, -1.0, 0.0]);
        assert!((&e - &expect).norm_fro() < 1e-14);
    }

    #[test]
    fn expm_determinant_is_exp_trace() {
        let x = Matrix::from_real(3, &[0.2, 1.0, -0.5, 0.0, -0.3, 2.0, 0.7, 0.1, 0.4]);
        let e = expm(&x).unwrap();
        let det = lu::det(&e);
        let expect = x.trace().exp();
        assert!((det - expect).norm() < 1e-13 * expect.norm());
    }

    #[test]
    fn expm_rejects_huge_arguments() {
        let x = Matrix::diag_real(&[60.0, 0.0]);
        assert!(matches!(expm(&x), Err(MatError::Overflow { .. })));
    }

    #[test]
    fn expm_keeps_real_input_real() {
        let x = Matrix::from_real(2, &[0.1, 2.0, -1.0, 0.3]);
        assert!(expm(&x).unwrap().is_real());
    }

    #[test]
    fn logm_of_identity_is_zero() {
        let m = Matrix::identity(4);
        assert!(logm_principal(&m).unwrap().norm_fro() < 1e-14);
    }

    #[test]
    fn logm_of_positive_diagonal() {
        let m = Matrix::diag_real(&[std::f64::consts::E, 1.0]);
        let l = logm_principal(&m).unwrap();
        let expect = Matrix::diag_real(&[1.0, 0.0]);
        assert!((&l - &expect).norm_fro() < 1e-13);
    }

    #[test]
    fn logm_rejects_rotation_by_pi() {
        let m = Matrix::from_real(2, &[-1.0, 0.0, 0.0, -1.0]);
        assert!(matches!(
            logm_principal(&m),
            Err(MatError::NegativeRealEigenvalue { .. })
        ));
    }

    #[test]
    fn logm_survives_rotation_near_pi() {
        let th = std::f64::consts::PI - 1e-3;
        let m = Matrix::from_real(2, &[th.cos(), th.sin(), -th.sin(), th.cos()]);
        let l = logm_principal(&m).unwrap();
        assert!((l.norm_fro() - 2.0f64.sqrt() * th).abs() < 1e-10);
    }

    #[test]
    fn logm_of_jordan_block_uses_series_route() {
        // [[1,1],[0,1]] is defective; log is exactly [[0,1],[0,0]].
        let m = Matrix::from_real(2, &[1.0, 1.0, 0.0, 1.0]);
        let l = logm_principal(&m).unwrap();
        let expect = Matrix::from_real(2, &[0.0, 1.0, 0.0, 0.0]);
        assert!((&l - &expect).norm_fro() < 1e-11);
    }

    #[test]
    fn logm_rejects_singular_input() {
        let m = Matrix::from_real(2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(matches!(logm_principal(&m), Err(MatError::Singular { .. })));
    }

    #[test]
    fn exp_log_round_trip_on_nonnormal_matrix() {
        let m = Matrix::from_real(3, &[2.0, 1.0, 0.0, 0.2, 1.5, 0.3, 0.0, -0.1, 1.0]);
        let l = logm_principal(&m).unwrap();
        let back = expm(&l).unwrap();
        assert!((&back - &m).norm_fro() < 1e-12 * m.norm_fro());
    }

    #[test]
    fn exp_log_round_trip_complex() {
        let m = Matrix::from_rows(&[
            vec![c(1.5, 0.5), c(0.3, -0.2)],
            vec![c(-0.1, 0.4), c(2.0, -1.0)],
        ]);
        let l = logm_principal(&m).unwrap();
        let back = expm(&l).unwrap();
        assert!((&back - &m).norm_fro() < 1e-12 * m.norm_fro());
    }

    #[test]
    fn identity_has_nine_two_dim_branches_at_range_one() {
        let m = Matrix::identity(2);
        let branches = log_branches(&m, 1).unwrap();
        assert_eq!(branches.len(), 9);
        // The zero-shift branch is the zero matrix.
        let principal = branches
            .iter()
            .find(|b| b.shifts.iter().all(|&k| k == 0))
            .unwrap();
        assert!(principal.materialize().unwrap().norm_fro() < 1e-12);
        // Every branch exponentiates back to the identity.
        for b in &branches {
            let x = b.materialize().unwrap();
            let e = expm(&x).unwrap();
            assert!((&e - &m).norm_fro() < 1e-10);
        }
    }

    #[test]
    fn scaled_identity_principal_branch_is_strictly_smallest() {
        let e = std::f64::consts::E;
        let m = Matrix::diag_real(&[e, e]);
        let branches = log_branches(&m, 1).unwrap();
        let mut best = f64::INFINITY;
        let mut best_is_principal = false;
        for b in &branches {
            let x = b.materialize().unwrap();
            let v = x.norm_fro_sqr();
            if v < best {
                best = v;
                best_is_principal = b.shifts.iter().all(|&k| k == 0);
            }
        }
        assert!((best - 2.0).abs() < 1e-12);
        assert!(best_is_principal);
    }

    #[test]
    fn branch_count_matches_formula() {
        let m = Matrix::diag_real(&[1.0, 2.0, 3.0]);
        assert_eq!(log_branches(&m, 1).unwrap().len(), 27);
        assert_eq!(log_branches(&m, 0).unwrap().len(), 1);
    }

    #[test]
    fn branch_set_matches_materialized_branches() {
        let m = Matrix::from_real(2, &[2.0, 1.0, 0.5, 1.5]);
        let set = BranchSet::build(&m).unwrap();
        let mut scratch = Matrix::zeros(2);
        for b in log_branches(&m, 1).unwrap() {
            set.materialize_into(&b.shifts, &mut scratch);
            assert!((&scratch - &b.materialize().unwrap()).norm_fro() < 1e-11);
        }
    }

    #[test]
    fn defective_matrix_has_no_branches() {
        let m = Matrix::from_real(2, &[1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(
            log_branches(&m, 1),
            Err(MatError::NotDiagonalizable { .. })
        ));
    }
}

