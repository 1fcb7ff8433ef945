//! Minimization of weighted displacement functionals over rotation groups.
//!
//! For invertible A and unitary Q the displacement is Q*A - I (euclidean
//! family) or a logarithm of Q*A (logarithmic family), and the functional
//! weights its Hermitian and skew-Hermitian parts separately:
//!
//! ```text
//!     mu ||sym X||^2 + mu_c ||skew X||^2
//! ```
//!
//! Part selectors restrict to single terms or apply the deviatoric
//! projection first. The search is multi-start coordinate descent on an
//! exponential chart of SO(n) or U(n): derivative-free, with golden
//! sections along one-parameter subgroups, because logarithm derivatives
//! near branch cuts are too delicate to trust.
//!
//! Every report carries the value at the unitary polar factor, so the
//! signed gap between the search optimum and the polar factor is always
//! visible; a negative gap beyond tolerance flags a candidate violation
//! of the optimality theorems rather than being silently clipped.

mod chart;
mod scalar;
mod search;

pub use chart::{Group, RotationChart};
pub use scalar::{minimize_scalar_theta, ScalarThetaReport};
pub use search::{coordinate_descent, DescentControls, DescentOutcome, REL_STOP, STALL_SWEEPS};

use crate::error::{MatError, Result};
use crate::linalg::{self, det, norm_spectral, Matrix, NormKind};
use crate::matfun::{logm_principal, BranchSet, ShiftVectors};
use crate::polar::polar_decompose;
use crate::sample;

/// Displacement convention of the functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// X = Q*A - I.
    Euclidean,
    /// X = a logarithm of Q*A (principal, or best over enumerated branches).
    Logarithmic,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Euclidean => "euclidean",
            Family::Logarithmic => "logarithmic",
        }
    }
}

/// Which pieces of the displacement are penalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    /// mu ||X||^2.
    Full,
    /// mu ||sym X||^2.
    SymOnly,
    /// mu_c ||skew X||^2.
    SkewOnly,
    /// mu ||sym X||^2 + mu_c ||skew X||^2.
    SymPlusSkew,
    /// mu ||dev sym X||^2.
    DevSym,
    /// mu ||dev X||^2.
    DevFull,
}

impl Part {
    pub fn name(self) -> &'static str {
        match self {
            Part::Full => "full",
            Part::SymOnly => "symOnly",
            Part::SkewOnly => "skewOnly",
            Part::SymPlusSkew => "symPlusSkew",
            Part::DevSym => "devSym",
            Part::DevFull => "devFull",
        }
    }
}

/// Weighted functional of the displacement of Q*A from the identity.
#[derive(Debug, Clone, Copy)]
pub struct WeightedFunctional {
    pub mu: f64,
    pub muc: f64,
    pub norm: NormKind,
    pub family: Family,
    pub part: Part,
}

impl WeightedFunctional {
    pub fn new(mu: f64, muc: f64, norm: NormKind, family: Family, part: Part) -> Result<Self> {
        let f = WeightedFunctional {
            mu,
            muc,
            norm,
            family,
            part,
        };
        f.validate()?;
        Ok(f)
    }

    /// mu ||...||^2 with unit weight; the common single-term functionals.
    pub fn unit(norm: NormKind, family: Family, part: Part) -> Self {
        WeightedFunctional {
            mu: 1.0,
            muc: 1.0,
            norm,
            family,
            part,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.mu.is_finite() || !self.muc.is_finite() {
            return Err(MatError::NonFinite);
        }
        if self.mu < 0.0 {
            return Err(MatError::NonPositive { value: self.mu });
        }
        if self.muc < 0.0 {
            return Err(MatError::NonPositive { value: self.muc });
        }
        if self.part == Part::SymPlusSkew && self.mu == 0.0 && self.muc == 0.0 {
            return Err(MatError::DegenerateCase {
                detail: "symPlusSkew with mu = mu_c = 0 is identically zero".to_string(),
            });
        }
        Ok(())
    }

    /// Functional value of a displacement matrix X.
    pub fn displacement_value(&self, x: &Matrix) -> f64 {
        match self.norm {
            NormKind::Frobenius => self.frobenius_value(x),
            NormKind::Spectral => self.spectral_value(x),
        }
    }

    /// Frobenius path: ||sym||^2 and ||skew||^2 in one pass, deviatoric
    /// parts via ||dev M||^2 = ||M||^2 - |tr M|^2 / n. No allocation, so
    /// branch enumeration can afford to call this per shift vector.
    fn frobenius_value(&self, x: &Matrix) -> f64 {
        let n = x.dim();
        let mut sym_sqr = 0.0;
        let mut skew_sqr = 0.0;
        for i in 0..n {
            for j in 0..n {
                let a = x[(i, j)];
                let b = x[(j, i)].conj();
                sym_sqr += 0.25 * (a + b).norm_sqr();
                skew_sqr += 0.25 * (a - b).norm_sqr();
            }
        }
        let tr = x.trace();
        let nf = n as f64;
        match self.part {
            Part::Full => self.mu * (sym_sqr + skew_sqr),
            Part::SymOnly => self.mu * sym_sqr,
            Part::SkewOnly => self.muc * skew_sqr,
            Part::SymPlusSkew => self.mu * sym_sqr + self.muc * skew_sqr,
            Part::DevSym => self.mu * (sym_sqr - tr.re * tr.re / nf),
            Part::DevFull => self.mu * (sym_sqr + skew_sqr - tr.norm_sqr() / nf),
        }
    }

    fn spectral_value(&self, x: &Matrix) -> f64 {
        let ns = |m: &Matrix| {
            let s = norm_spectral(m);
            s * s
        };
        match self.part {
            Part::Full => self.mu * ns(x),
            Part::SymOnly => self.mu * ns(&x.sym()),
            Part::SkewOnly => self.muc * ns(&x.skew()),
            Part::SymPlusSkew => self.mu * ns(&x.sym()) + self.muc * ns(&x.skew()),
            Part::DevSym => self.mu * ns(&linalg::dev(&x.sym())),
            Part::DevFull => self.mu * ns(&linalg::dev(x)),
        }
    }
}

/// Probes whose displacement cannot be evaluated (principal log on the
/// cut, ill-conditioned eigenbasis) are skipped, never averaged in.
struct Evaluator<'a> {
    a: &'a Matrix,
    f: WeightedFunctional,
    branch_range: i64,
    evaluations: u64,
    skipped: u64,
    repeated_seen: bool,
    branch_buf: Matrix,
    shift_buf: Vec<i64>,
}

impl<'a> Evaluator<'a> {
    fn new(a: &'a Matrix, f: WeightedFunctional, branch_range: i64) -> Self {
        Evaluator {
            a,
            f,
            branch_range,
            evaluations: 0,
            skipped: 0,
            repeated_seen: false,
            branch_buf: Matrix::zeros(a.dim()),
            shift_buf: vec![0; a.dim()],
        }
    }

    fn try_value(&mut self, q: &Matrix) -> Result<f64> {
        self.evaluations += 1;
        let m = &q.adjoint() * self.a;
        match self.f.family {
            Family::Euclidean => {
                let mut x = m;
                x.shift_identity(-1.0);
                Ok(self.f.displacement_value(&x))
            }
            Family::Logarithmic => {
                if self.branch_range == 0 {
                    return Ok(self.f.displacement_value(&logm_principal(&m)?));
                }
                let set = BranchSet::build(&m)?;
                self.repeated_seen |= set.repeated_eigenvalues;
                let n = m.dim();
                let r = self.branch_range;
                self.shift_buf.clear();
                self.shift_buf.resize(n, -r);
                let mut best = f64::INFINITY;
                // Odometer over shift vectors, reusing one buffer; the
                // allocating iterator would churn in this hot loop.
                'branches: loop {
                    set.materialize_into(&self.shift_buf, &mut self.branch_buf);
                    let v = self.f.displacement_value(&self.branch_buf);
                    if v < best {
                        best = v;
                    }
                    let mut i = n;
                    loop {
                        if i == 0 {
                            break 'branches;
                        }
                        i -= 1;
                        if self.shift_buf[i] < r {
                            self.shift_buf[i] += 1;
                            for j in (i + 1)..n {
                                self.shift_buf[j] = -r;
                            }
                            break;
                        }
                    }
                }
                Ok(best)
            }
        }
    }

    fn value(&mut self, q: &Matrix) -> Option<f64> {
        match self.try_value(q) {
            Ok(v) => Some(v),
            Err(_) => {
                self.skipped += 1;
                None
            }
        }
    }
}

/// Functional value at one rotation.
///
/// For the logarithmic family with `branch_range` = 0 this is the value
/// at the principal logarithm; with a positive range it is the minimum
/// over all logarithm branches with per-eigenvalue windings |k_j| <= range.
pub fn eval_functional(
    a: &Matrix,
    q: &Matrix,
    f: &WeightedFunctional,
    branch_range: i64,
) -> Result<f64> {
    f.validate()?;
    if branch_range < 0 {
        return Err(MatError::OutsideDomain {
            detail: format!("negative branch range {branch_range}"),
        });
    }
    if a.dim() != q.dim() {
        return Err(MatError::BadDimension { got: q.dim() });
    }
    let residual = q.unitarity_residual();
    if residual > 1e-8 {
        return Err(MatError::NotUnitary { residual });
    }
    let det_abs = det(a).norm();
    if det_abs <= crate::linalg::lu::SINGULAR_DET_TOL {
        return Err(MatError::Singular { det_abs });
    }
    if ShiftVectors::count(a.dim(), branch_range) > 100_000_000 {
        return Err(MatError::BranchDomain {
            detail: format!(
                "enumeration of {} branches exceeds the supported budget",
                ShiftVectors::count(a.dim(), branch_range)
            ),
        });
    }
    Evaluator::new(a, *f, branch_range).try_value(q)
}

/// Search configuration; `tol` is the signed-gap alert threshold.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub group: Group,
    pub seed: u64,
    pub restarts: usize,
    pub branch_range: i64,
    pub max_sweeps: usize,
    pub tol: f64,
    pub line_tol: f64,
}

impl SearchConfig {
    pub fn new(group: Group) -> SearchConfig {
        SearchConfig {
            group,
            seed: 42,
            restarts: 32,
            branch_range: 1,
            max_sweeps: 500,
            tol: 1e-8,
            line_tol: 1e-9,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(MatError::OutsideDomain {
                detail: "at least one restart is required".to_string(),
            });
        }
        if self.branch_range < 0 {
            return Err(MatError::OutsideDomain {
                detail: format!("negative branch range {}", self.branch_range),
            });
        }
        if self.max_sweeps == 0 {
            return Err(MatError::OutsideDomain {
                detail: "max_sweeps must be at least 1".to_string(),
            });
        }
        let bad = |t: f64| !t.is_finite() || t <= 0.0;
        if bad(self.tol) || bad(self.line_tol) {
            return Err(MatError::OutsideDomain {
                detail: "tolerances must be positive".to_string(),
            });
        }
        Ok(())
    }
}

/// Minimizers within 1e-6 of the best value are clustered ...
const VALUE_CLUSTER: f64 = 1e-6;
/// ... by pairwise Frobenius distance 1e-4 into distinct representatives.
const DISTANCE_CLUSTER: f64 = 1e-4;
/// Redraws allowed per restart when probes start on a branch cliff.
const FEASIBILITY_REDRAWS: usize = 32;

/// Everything a minimization run found, including the signed gap to the
/// unitary polar factor.
#[derive(Debug, Clone)]
pub struct MinimizationReport {
    pub best_q: Matrix,
    pub best_value: f64,
    /// Functional at the unitary polar factor, principal logarithm.
    pub value_at_polar: f64,
    /// best_value - value_at_polar, reported signed.
    pub gap: f64,
    pub restarts: usize,
    pub evaluations: u64,
    /// Probes skipped because the displacement was undefined there.
    pub skipped_probes: u64,
    pub converged: bool,
    /// True when gap < -tol: a candidate theorem violation.
    pub violation_alert: bool,
    pub branch_policy: String,
    /// Representatives of all minimizer clusters found near best_value.
    pub distinct_minimizers: Vec<Matrix>,
}

fn branch_policy_text(f: &WeightedFunctional, branch_range: i64, repeated: bool, n: usize) -> String {
    match f.family {
        Family::Euclidean => "euclidean displacement, no logarithm branches".to_string(),
        Family::Logarithmic if branch_range == 0 => "principal logarithm only".to_string(),
        Family::Logarithmic => {
            let mut s = format!(
                "logarithm branches with windings |k_j| <= {branch_range} ({} per evaluation)",
                ShiftVectors::count(n, branch_range)
            );
            if repeated {
                s.push_str("; repeated eigenvalues encountered, non-primary logarithms not enumerated");
            }
            s
        }
    }
}

/// Multi-start minimization of `f` over the configured group.
///
/// Deterministic given (seed, restarts): restart r draws from stream
/// (seed, r), and the reduction orders by (value, lexicographic Q), so
/// the report does not depend on restart execution order.
pub fn minimize_over_rotations(
    a: &Matrix,
    f: &WeightedFunctional,
    cfg: &SearchConfig,
) -> Result<MinimizationReport> {
    f.validate()?;
    cfg.validate()?;
    let n = a.dim();
    let det_abs = det(a).norm();
    if det_abs <= crate::linalg::lu::SINGULAR_DET_TOL {
        return Err(MatError::Singular { det_abs });
    }
    if f.family == Family::Logarithmic
        && ShiftVectors::count(n, cfg.branch_range) > 100_000_000
    {
        return Err(MatError::BranchDomain {
            detail: format!(
                "enumeration of {} branches exceeds the supported budget",
                ShiftVectors::count(n, cfg.branch_range)
            ),
        });
    }

    let pd = polar_decompose(a)?;
    // Principal logarithm at the polar factor; the closed-form optimum
    // the theorems predict. Counted separately from search probes.
    let value_at_polar = Evaluator::new(a, *f, 0).try_value(&pd.up)?;

    let branch_range = match f.family {
        Family::Euclidean => 0,
        Family::Logarithmic => cfg.branch_range,
    };
    let mut ev = Evaluator::new(a, *f, branch_range);
    // Spectral objectives are piecewise-smooth max functions; descending
    // the Frobenius surrogate first lands in the right basin, then the
    // true objective is polished from there.
    let smoothing = f.norm == NormKind::Spectral;
    let mut ev_smooth = Evaluator::new(
        a,
        WeightedFunctional {
            norm: NormKind::Frobenius,
            ..*f
        },
        branch_range,
    );

    // The polar factor is the closed-form candidate, so the first restart
    // warm-starts there whenever it lies in the search group; descent from
    // a random draw can stall on a branch crease (a local minimum of the
    // branch-minimized landscape, typically 2 pi^2 above the optimum).
    // The remaining restarts stay random and keep probing for anything
    // below the candidate.
    let polar_in_group = match cfg.group {
        Group::Unitary => true,
        Group::SpecialOrthogonal => pd.up.is_real() && !pd.improper_real,
    };

    let ctl = DescentControls::new(cfg.max_sweeps, cfg.line_tol);
    let mut outcomes: Vec<DescentOutcome> = Vec::with_capacity(cfg.restarts);
    for r in 0..cfg.restarts {
        let mut rng = sample::stream(cfg.seed, r as u64);
        let mut start = None;
        if r == 0 && polar_in_group && ev.value(&pd.up).is_some() {
            start = Some(pd.up.clone());
        }
        for _ in 0..FEASIBILITY_REDRAWS {
            if start.is_some() {
                break;
            }
            let q0 = cfg.group.sample(n, &mut rng);
            if ev.value(&q0).is_some() {
                start = Some(q0);
                break;
            }
        }
        let Some(mut q0) = start else { continue };
        if smoothing {
            let drawn = q0.clone();
            let funnel = coordinate_descent(
                RotationChart::new(cfg.group, q0),
                |q| ev_smooth.value(q),
                &ctl,
            );
            q0 = funnel.q;
            // The surrogate could in principle stop on a point the true
            // objective rejects; fall back to the feasible draw then.
            if ev.value(&q0).is_none() {
                q0 = drawn;
            }
        }
        let out = coordinate_descent(RotationChart::new(cfg.group, q0), |q| ev.value(q), &ctl);
        outcomes.push(out);
    }

    if outcomes.is_empty() {
        return Err(MatError::BranchDomain {
            detail: "no feasible starting rotation found in any restart".to_string(),
        });
    }

    let mut best = 0;
    for i in 1..outcomes.len() {
        let (vi, vb) = (outcomes[i].value, outcomes[best].value);
        if vi < vb
            || (vi == vb
                && Matrix::lex_cmp(&outcomes[i].q, &outcomes[best].q) == std::cmp::Ordering::Less)
        {
            best = i;
        }
    }
    let best_value = outcomes[best].value;
    let converged = outcomes[best].converged;
    let best_q = outcomes[best].q.clone();

    let mut near: Vec<&DescentOutcome> = outcomes
        .iter()
        .filter(|o| (o.value - best_value).abs() <= VALUE_CLUSTER)
        .collect();
    near.sort_by(|x, y| {
        x.value
            .total_cmp(&y.value)
            .then_with(|| Matrix::lex_cmp(&x.q, &y.q))
    });
    let mut distinct: Vec<Matrix> = Vec::new();
    for o in near {
        if distinct
            .iter()
            .all(|rep| (rep - &o.q).norm_fro() > DISTANCE_CLUSTER)
        {
            distinct.push(o.q.clone());
        }
    }

    let gap = best_value - value_at_polar;
    let evaluations = ev.evaluations + ev_smooth.evaluations;
    let skipped = ev.skipped + ev_smooth.skipped;
    let policy = branch_policy_text(f, branch_range, ev.repeated_seen || ev_smooth.repeated_seen, n);
    Ok(MinimizationReport {
        best_q,
        best_value,
        value_at_polar,
        gap,
        restarts: cfg.restarts,
        evaluations,
        skipped_probes: skipped,
        converged,
        violation_alert: gap < -cfg.tol,
        branch_policy: policy,
        distinct_minimizers: distinct,
    })
}

/// Deviatoric Hencky minimization over SO(3) for real A with det > 0.
pub fn minimize_dev3(a: &Matrix, part: Part) -> Result<MinimizationReport> {
    if part != Part::DevSym && part != Part::DevFull {
        return Err(MatError::OutsideDomain {
            detail: format!("deviatoric search needs devSym or devFull, got {}", part.name()),
        });
    }
    if a.dim() != 3 {
        return Err(MatError::BadDimension { got: a.dim() });
    }
    if !a.is_real() || det(a).re <= 0.0 {
        return Err(MatError::NotRealPositiveDet);
    }
    let f = WeightedFunctional {
        mu: 1.0,
        muc: 0.0,
        norm: NormKind::Frobenius,
        family: Family::Logarithmic,
        part,
    };
    let cfg = SearchConfig {
        restarts: 4,
        ..SearchConfig::new(Group::SpecialOrthogonal)
    };
    minimize_over_rotations(a, &f, &cfg)
}

/// Result of minimizing a caller-supplied objective over the group.
#[derive(Debug, Clone)]
pub struct ObjectiveSearch {
    pub best_q: Matrix,
    pub best_value: f64,
    pub evaluations: u64,
    pub skipped: u64,
    pub converged: bool,
}

/// Multi-start descent of an arbitrary partial objective over the group.
/// Same determinism contract as `minimize_over_rotations`. `None` from
/// the objective means "undefined here"; such probes are skipped.
pub fn minimize_matrix_objective<F>(
    n: usize,
    cfg: &SearchConfig,
    mut objective: F,
) -> Result<ObjectiveSearch>
where
    F: FnMut(&Matrix) -> Option<f64>,
{
    cfg.validate()?;
    let mut evaluations = 0u64;
    let mut skipped = 0u64;
    let ctl = DescentControls::new(cfg.max_sweeps, cfg.line_tol);
    let mut outcomes: Vec<DescentOutcome> = Vec::with_capacity(cfg.restarts);
    {
        let mut eval = |q: &Matrix| {
            evaluations += 1;
            match objective(q) {
                Some(v) if v.is_finite() => Some(v),
                _ => {
                    skipped += 1;
                    None
                }
            }
        };
        for r in 0..cfg.restarts {
            let mut rng = sample::stream(cfg.seed, r as u64);
            let mut start = None;
            for _ in 0..FEASIBILITY_REDRAWS {
                let q0 = cfg.group.sample(n, &mut rng);
                if eval(&q0).is_some() {
                    start = Some(q0);
                    break;
                }
            }
            let Some(q0) = start else { continue };
            let out = coordinate_descent(RotationChart::new(cfg.group, q0), &mut eval, &ctl);
            outcomes.push(out);
        }
    }
    if outcomes.is_empty() {
        return Err(MatError::BranchDomain {
            detail: "no feasible starting rotation found in any restart".to_string(),
        });
    }
    let mut best = 0;
    for i in 1..outcomes.len() {
        let (vi, vb) = (outcomes[i].value, outcomes[best].value);
        if vi < vb
            || (vi == vb
                && Matrix::lex_cmp(&outcomes[i].q, &outcomes[best].q) == std::cmp::Ordering::Less)
        {
            best = i;
        }
    }
    let out = &outcomes[best];
    Ok(ObjectiveSearch {
        best_q: out.q.clone(),
        best_value: out.value,
        evaluations,
        skipped,
        converged: out.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_log;
    use crate::matfun::expm;

    fn hencky_sqr(a: &Matrix) -> f64 {
        // ||log sqrt(A*A)||_F^2 through an independent route: Hermitian
        // eigensolver on A*A, halving the log instead of taking a root.
        let gram = &a.adjoint() * a;
        hermitian_log(&gram).unwrap().scale(0.5).norm_fro_sqr()
    }

    #[test]
    fn identity_displacements_are_free() {
        let a = Matrix::identity(3);
        let f = WeightedFunctional::unit(NormKind::Frobenius, Family::Euclidean, Part::Full);
        assert_eq!(eval_functional(&a, &a, &f, 0).unwrap(), 0.0);
        let g = WeightedFunctional::unit(NormKind::Frobenius, Family::Logarithmic, Part::Full);
        assert_eq!(eval_functional(&a, &a, &g, 1).unwrap(), 0.0);
    }

    #[test]
    fn stretched_identity_euclidean_sym_cost() {
        let a = Matrix::identity(3).scale(4.0);
        let f = WeightedFunctional {
            mu: 1.0,
            muc: 0.0,
            norm: NormKind::Frobenius,
            family: Family::Euclidean,
            part: Part::SymOnly,
        };
        let v = eval_functional(&a, &Matrix::identity(3), &f, 0).unwrap();
        assert!((v - 27.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_log_value_on_diagonal_example() {
        let a = Matrix::diag_real(&[std::f64::consts::E, 1.0]);
        let f = WeightedFunctional::unit(NormKind::Spectral, Family::Logarithmic, Part::Full);
        let v = eval_functional(&a, &Matrix::identity(2), &f, 0).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn branch_minimum_never_exceeds_principal_value() {
        let mut rng = sample::stream(77, 0);
        for _ in 0..10 {
            let a = sample::random_gl_complex_distinct(3, 50.0, 0.05, &mut rng);
            let q = sample::random_unitary(3, &mut rng);
            let f = WeightedFunctional::unit(NormKind::Frobenius, Family::Logarithmic, Part::Full);
            let principal = eval_functional(&a, &q, &f, 0);
            let branched = eval_functional(&a, &q, &f, 1);
            if let (Ok(p), Ok(b)) = (principal, branched) {
                assert!(b <= p + 1e-9, "branch min {b} above principal {p}");
            }
        }
    }

    #[test]
    fn frobenius_parts_match_materialized_matrices() {
        let mut rng = sample::stream(77, 1);
        let x = sample::random_complex(4, &mut rng);
        for part in [
            Part::Full,
            Part::SymOnly,
            Part::SkewOnly,
            Part::SymPlusSkew,
            Part::DevSym,
            Part::DevFull,
        ] {
            let f = WeightedFunctional {
                mu: 1.3,
                muc: 0.4,
                norm: NormKind::Frobenius,
                family: Family::Logarithmic,
                part,
            };
            let direct = f.frobenius_value(&x);
            let slow = match part {
                Part::Full => 1.3 * x.norm_fro_sqr(),
                Part::SymOnly => 1.3 * x.sym().norm_fro_sqr(),
                Part::SkewOnly => 0.4 * x.skew().norm_fro_sqr(),
                Part::SymPlusSkew => 1.3 * x.sym().norm_fro_sqr() + 0.4 * x.skew().norm_fro_sqr(),
                Part::DevSym => 1.3 * linalg::dev(&x.sym()).norm_fro_sqr(),
                Part::DevFull => 1.3 * linalg::dev(&x).norm_fro_sqr(),
            };
            assert!(
                (direct - slow).abs() <= 1e-12 * slow.abs().max(1.0),
                "{part:?}: {direct} vs {slow}"
            );
        }
    }

    #[test]
    fn diagonal_two_by_two_log_minimum() {
        let a = Matrix::diag_real(&[2.0, 0.5]);
        let f = WeightedFunctional::unit(NormKind::Frobenius, Family::Logarithmic, Part::Full);
        let cfg = SearchConfig {
            restarts: 6,
            ..SearchConfig::new(Group::SpecialOrthogonal)
        };
        let rep = minimize_over_rotations(&a, &f, &cfg).unwrap();
        let expect = 2.0 * (2.0f64).ln().powi(2);
        assert!((rep.best_value - expect).abs() < 1e-9, "{}", rep.best_value);
        assert!(rep.gap.abs() < 1e-9);
        assert!(!rep.violation_alert);
        // Minimizer is the identity (and the search must say so uniquely).
        assert!((&rep.best_q - &Matrix::identity(2)).norm_fro() < 1e-5);
        assert_eq!(rep.distinct_minimizers.len(), 1);
    }

    #[test]
    fn stretched_identity_prefers_nonclassical_rotation() {
        let a = Matrix::identity(3).scale(4.0);
        let f = WeightedFunctional {
            mu: 1.0,
            muc: 0.0,
            norm: NormKind::Frobenius,
            family: Family::Euclidean,
            part: Part::SymOnly,
        };
        let cfg = SearchConfig {
            restarts: 8,
            ..SearchConfig::new(Group::SpecialOrthogonal)
        };
        let rep = minimize_over_rotations(&a, &f, &cfg).unwrap();
        assert!((rep.best_value - 9.0).abs() < 1e-6, "{}", rep.best_value);
        assert!((rep.value_at_polar - 27.0).abs() < 1e-9);
        assert!(rep.violation_alert);
        // Rotation angle phi of the minimizer satisfies cos phi = 1/4.
        let cos_phi = (rep.best_q.trace().re - 1.0) / 2.0;
        assert!((cos_phi - 0.25).abs() < 1e-6, "cos phi = {cos_phi}");
    }

    #[test]
    fn stretched_identity_log_sym_stays_classical() {
        let a = Matrix::identity(3).scale(4.0);
        let f = WeightedFunctional {
            mu: 1.0,
            muc: 0.0,
            norm: NormKind::Frobenius,
            family: Family::Logarithmic,
            part: Part::SymOnly,
        };
        let cfg = SearchConfig {
            restarts: 4,
            ..SearchConfig::new(Group::SpecialOrthogonal)
        };
        let rep = minimize_over_rotations(&a, &f, &cfg).unwrap();
        let expect = 3.0 * (4.0f64).ln().powi(2);
        assert!(
            (rep.best_value - expect).abs() < 1e-6 * expect,
            "{} vs {expect}",
            rep.best_value
        );
        assert!(rep.gap >= -1e-9);
    }

    #[test]
    fn frobenius_theorem_holds_on_random_real_input() {
        let mut rng = sample::stream(123, 0);
        let a = sample::random_glp_real(3, 100.0, &mut rng);
        let f = WeightedFunctional::unit(NormKind::Frobenius, Family::Logarithmic, Part::Full);
        let cfg = SearchConfig {
            restarts: 3,
            ..SearchConfig::new(Group::SpecialOrthogonal)
        };
        let rep = minimize_over_rotations(&a, &f, &cfg).unwrap();
        let expect = hencky_sqr(&a);
        assert!(
            (rep.best_value - expect).abs() <= 1e-5 * expect.max(1e-30),
            "{} vs {expect}",
            rep.best_value
        );
        assert!(rep.gap >= -1e-6 && rep.gap <= 1e-4);
        let up = polar_decompose(&a).unwrap().up;
        assert!((&rep.best_q - &up).norm_fro() <= 1e-3);
    }

    #[test]
    fn spectral_theorem_holds_on_random_complex_input() {
        let mut rng = sample::stream(123, 1);
        let a = sample::random_gl_complex(3, 50.0, &mut rng);
        let f = WeightedFunctional::unit(NormKind::Spectral, Family::Logarithmic, Part::Full);
        let cfg = SearchConfig {
            restarts: 2,
            branch_range: 0,
            ..SearchConfig::new(Group::Unitary)
        };
        let rep = minimize_over_rotations(&a, &f, &cfg).unwrap();
        let sv = crate::linalg::svd(&a).unwrap().sigma;
        let expect = sv[0]
            .ln()
            .abs()
            .max(sv[sv.len() - 1].ln().abs())
            .powi(2);
        assert!(
            (rep.best_value - expect).abs() <= 1e-5 * expect.max(1.0),
            "{} vs {expect}",
            rep.best_value
        );
        assert!(rep.gap >= -1e-6);
    }

    #[test]
    fn dev3_matches_deviatoric_hencky() {
        let a = Matrix::diag_real(&[4.0, 1.0, 0.25]);
        let rep = minimize_dev3(&a, Part::DevSym).unwrap();
        let expect = 2.0 * (4.0f64).ln().powi(2);
        assert!(
            (rep.best_value - expect).abs() < 1e-6 * expect,
            "{} vs {expect}",
            rep.best_value
        );
        // Pure dilation carries no deviatoric strain.
        let dilation = Matrix::identity(3).scale(std::f64::consts::E);
        let rep0 = minimize_dev3(&dilation, Part::DevFull).unwrap();
        assert!(rep0.best_value < 1e-10, "{}", rep0.best_value);
    }

    #[test]
    fn dev3_rejects_bad_parts_and_improper_inputs() {
        let a = Matrix::diag_real(&[1.0, 2.0, 3.0]);
        assert!(matches!(
            minimize_dev3(&a, Part::Full),
            Err(MatError::OutsideDomain { .. })
        ));
        let neg = Matrix::diag_real(&[-1.0, 2.0, 3.0]);
        assert!(matches!(
            minimize_dev3(&neg, Part::DevSym),
            Err(MatError::NotRealPositiveDet)
        ));
    }

    #[test]
    fn reports_are_reproducible_for_a_fixed_seed() {
        let mut rng = sample::stream(123, 2);
        let a = sample::random_glp_real(2, 30.0, &mut rng);
        let f = WeightedFunctional::unit(NormKind::Frobenius, Family::Logarithmic, Part::SymOnly);
        let cfg = SearchConfig {
            restarts: 3,
            ..SearchConfig::new(Group::SpecialOrthogonal)
        };
        let r1 = minimize_over_rotations(&a, &f, &cfg).unwrap();
        let r2 = minimize_over_rotations(&a, &f, &cfg).unwrap();
        assert_eq!(r1.best_value.to_bits(), r2.best_value.to_bits());
        assert_eq!(r1.evaluations, r2.evaluations);
        assert_eq!(
            Matrix::lex_cmp(&r1.best_q, &r2.best_q),
            std::cmp::Ordering::Equal
        );
    }

    #[test]
    fn custom_objective_search_reaches_known_minimum() {
        // Trace objective over SO(2): min tr(Q) = -2 at Q = -I.
        let cfg = SearchConfig {
            restarts: 2,
            ..SearchConfig::new(Group::SpecialOrthogonal)
        };
        let out = minimize_matrix_objective(2, &cfg, |q| Some(q.trace().re)).unwrap();
        assert!((out.best_value + 2.0).abs() < 1e-10);
        assert!(out.evaluations > 0);
    }

    #[test]
    fn weighted_collapse_to_hencky_energy() {
        // mu ||sym log||^2 + mu_c ||skew log||^2 bottoms out at
        // mu * ||log sqrt(A*A)||^2 whatever the weights.
        let mut rng = sample::stream(123, 3);
        let a = sample::random_glp_real(2, 50.0, &mut rng);
        let expect = hencky_sqr(&a);
        for (mu, muc) in [(1.0, 0.0), (1.0, 1.0), (2.0, 0.5)] {
            let f = WeightedFunctional {
                mu,
                muc,
                norm: NormKind::Frobenius,
                family: Family::Logarithmic,
                part: Part::SymPlusSkew,
            };
            let cfg = SearchConfig {
                restarts: 3,
                ..SearchConfig::new(Group::SpecialOrthogonal)
            };
            let rep = minimize_over_rotations(&a, &f, &cfg).unwrap();
            assert!(
                (rep.best_value - mu * expect).abs() <= 1e-4 * (mu * expect).max(1e-12),
                "mu={mu} muc={muc}: {} vs {}",
                rep.best_value,
                mu * expect
            );
        }
    }

    #[test]
    fn functional_validation_rejects_nonsense() {
        assert!(WeightedFunctional::new(
            -1.0,
            0.0,
            NormKind::Frobenius,
            Family::Euclidean,
            Part::Full
        )
        .is_err());
        assert!(WeightedFunctional::new(
            0.0,
            0.0,
            NormKind::Frobenius,
            Family::Logarithmic,
            Part::SymPlusSkew
        )
        .is_err());
        let f = WeightedFunctional::unit(NormKind::Frobenius, Family::Logarithmic, Part::Full);
        let a = Matrix::identity(2);
        let tilted = expm(&Matrix::from_real(2, &[0.0, 0.3, 0.3, 0.0])).unwrap();
        // Hermitian exp is not unitary; eval must refuse it as Q.
        assert!(matches!(
            eval_functional(&a, &tilted, &f, 0),
            Err(MatError::NotUnitary { .. })
        ));
    }
}
