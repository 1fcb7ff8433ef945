//! Oracles for the inequality chain behind polar-factor optimality.
//!
//! The chain runs: Bhatia's exponential-norm inequality (equivalently a
//! Bernstein trace inequality, with Golden-Thompson as the Hermitian
//! cousin), then algebraic eigenvalue comparisons between exp(sym log(Q*D))
//! and D, then the sum-of-squared-logarithms inequality that converts
//! those comparisons into the Frobenius optimality statement. Each link
//! gets an exact checker here; randomized suites in [`suites`] hammer
//! them at scale, and [`witness`] builds the uniqueness/non-uniqueness
//! families of the minimizer set.

mod suites;
mod witness;

pub use suites::{
    appendix_g_monotone, bernstein_suite, bhatia_suite, conjecture_probe_general_norms,
    golden_thompson_suite, nonuniqueness_suite, optimality_suite, scalar_suite,
    spectral_conditions_suite, ssli_suite, uniqueness_frobenius_suite, SuiteReport,
};
pub use witness::{
    nonuniqueness_spectral_witness, nonuniqueness_sym_witness, SymFamilyWitness,
};

use crate::error::{MatError, Result};
use crate::linalg::{norm, Matrix, NormKind};
use crate::matfun::expm;

/// Inputs above this Frobenius norm make exp-norm comparisons unreliable
/// long before the exponential itself overflows.
pub const CHECK_NORM_LIMIT: f64 = 20.0;

/// Two descending tuples of positive reals under comparison.
///
/// The eigenvalue-comparison lemmas all speak about the spectrum x of
/// exp(sym log(Q*D)) against the diagonal d of D, arranged decreasingly;
/// the constructor sorts so callers can pass spectra as computed.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTriple {
    x: Vec<f64>,
    d: Vec<f64>,
}

impl ComparisonTriple {
    pub fn new(mut x: Vec<f64>, mut d: Vec<f64>) -> Result<Self> {
        if x.len() != d.len() || x.is_empty() {
            return Err(MatError::BadLength {
                got: x.len().max(d.len()),
                want: x.len().min(d.len()).max(1),
            });
        }
        for &v in x.iter().chain(d.iter()) {
            if v <= 0.0 || !v.is_finite() {
                return Err(MatError::NonPositive { value: v });
            }
        }
        x.sort_by(|a, b| b.total_cmp(a));
        d.sort_by(|a, b| b.total_cmp(a));
        Ok(ComparisonTriple { x, d })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }
}

/// ||exp sym X||^2 - ||exp X||^2 in the requested norm; the inequality
/// says this is nonnegative, with Frobenius equality exactly at normal X.
pub fn check_bhatia(x: &Matrix, kind: NormKind) -> Result<f64> {
    let nx = x.norm_fro();
    if nx > CHECK_NORM_LIMIT {
        return Err(MatError::Overflow { norm: nx });
    }
    let e_sym = expm(&x.sym())?;
    let e = expm(x)?;
    let a = norm(&e_sym, kind);
    let b = norm(&e, kind);
    Ok(a * a - b * b)
}

/// tr exp(X + X*) - tr(exp X exp X*); nonnegative by the trace
/// inequality. Equals the Frobenius Bhatia slack exactly, which the
/// suites exploit as a cross-oracle.
pub fn check_bernstein_trace(x: &Matrix) -> Result<f64> {
    let nx = x.norm_fro();
    if nx > CHECK_NORM_LIMIT {
        return Err(MatError::Overflow { norm: nx });
    }
    let herm = &x.sym().scale(2.0);
    let lhs = expm(herm)?.trace();
    let e = expm(x)?;
    let rhs = (&e * &e.adjoint()).trace();
    Ok(lhs.re - rhs.re)
}

/// tr(exp X exp Y) - tr exp(X + Y) for Hermitian X, Y; Golden-Thompson
/// says this is nonnegative, vanishing when the two commute.
pub fn check_golden_thompson(x: &Matrix, y: &Matrix) -> Result<f64> {
    for m in [x, y] {
        let asym = m.hermitian_residual();
        if asym > 1e-12 * m.norm_fro().max(1.0) {
            return Err(MatError::NotHermitian { asymmetry: asym });
        }
    }
    let prod = (&expm(x)? * &expm(y)?).trace();
    let joint = expm(&(x + y))?.trace();
    Ok(prod.re - joint.re)
}

/// Outcome of the sum-of-squared-logarithms comparison.
#[derive(Debug, Clone, Copy)]
pub struct SsliVerdict {
    /// Sum-of-squares, sum-of-inverse-squares and product conditions.
    pub hypotheses_hold: bool,
    /// Sum (log x_i)^2 - Sum (log d_i)^2; nonnegative when hypotheses hold.
    pub conclusion_slack: f64,
}

/// Sum-of-squared-logarithms inequality for tuples of length 2 or 3:
/// if Sum x^2 >= Sum d^2, Sum x^-2 >= Sum d^-2 and the products agree,
/// then Sum (log x)^2 >= Sum (log d)^2, with equality only at x = d.
pub fn check_ssli(t: &ComparisonTriple) -> Result<SsliVerdict> {
    let n = t.len();
    if n != 2 && n != 3 {
        return Err(MatError::BadLength { got: n, want: 3 });
    }
    let sq = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>();
    let inv_sq = |v: &[f64]| v.iter().map(|a| 1.0 / (a * a)).sum::<f64>();
    let prod = |v: &[f64]| v.iter().product::<f64>();
    let (sx, sd) = (sq(&t.x), sq(&t.d));
    let (ix, id) = (inv_sq(&t.x), inv_sq(&t.d));
    let (px, pd) = (prod(&t.x), prod(&t.d));
    let hypotheses_hold = sx >= sd - 1e-12 * sd.max(sx)
        && ix >= id - 1e-12 * id.max(ix)
        && (px - pd).abs() <= 1e-10 * pd.abs().max(px.abs());
    let logs = |v: &[f64]| v.iter().map(|a| a.ln().powi(2)).sum::<f64>();
    Ok(SsliVerdict {
        hypotheses_hold,
        conclusion_slack: logs(&t.x) - logs(&t.d),
    })
}

/// Spectral-norm comparison conditions: x1 >= d1, x_n <= d_n, equal
/// products, the implied interlacing 0 < x_n <= d_n <= d_1 <= x_1, and
/// the resulting log-max domination.
pub fn check_spectral_conditions(t: &ComparisonTriple) -> Result<bool> {
    let n = t.len();
    let (x, d) = (&t.x, &t.d);
    let tol = 1e-12;
    let rel = |a: f64, b: f64| a.abs().max(b.abs()).max(1.0);
    let ge = |a: f64, b: f64| a >= b - tol * rel(a, b);
    let prod = |v: &[f64]| v.iter().product::<f64>();
    let mut ok = ge(x[0], d[0]) && ge(d[n - 1], x[n - 1]);
    ok = ok && (prod(x) - prod(d)).abs() <= 1e-10 * prod(d).abs().max(prod(x).abs());
    // Interlacing: 0 < x_n <= d_n <= d_1 <= x_1.
    ok = ok && x[n - 1] > 0.0 && ge(d[n - 1], x[n - 1]) && ge(d[0], d[n - 1]) && ge(x[0], d[0]);
    let log_max = |v: &[f64]| v[0].ln().abs().max(v[v.len() - 1].ln().abs());
    ok = ok && ge(log_max(x), log_max(d));
    Ok(ok)
}
