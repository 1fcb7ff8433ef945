//! Randomized suites hammering every checker at scale.
//!
//! Determinism contract: trial j of a suite draws from
//! `sample::stream(seed, j)` (with a per-section offset), so reports are
//! reproducible bit-exactly from (suite, trials, seed) and independent
//! of execution order. Witnesses serialize raw entries at 17 significant
//! digits so violations replay exactly.

use num_complex::Complex64;

use crate::error::{MatError, Result};
use crate::linalg::{hermitian_eigen, norm, svd, Matrix, NormKind};
use crate::matfun::scalar::co2_embed;
use crate::matfun::{expm, logm_principal};
use crate::minimize::{
    minimize_matrix_objective, minimize_over_rotations, minimize_scalar_theta, Family, Group,
    Part, SearchConfig, WeightedFunctional,
};
use crate::polar::polar_decompose;
use crate::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Outcome of one randomized suite.
///
/// `worst_slack` is the smallest margin observed before the suite's
/// violation threshold (its exact metric is suite-specific and repeated
/// in `notes`); `violations == 0` if and only if `witnesses` is empty.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub trials: u64,
    pub violations: u64,
    pub worst_slack: f64,
    pub witnesses: Vec<String>,
    pub seed: u64,
    pub notes: Vec<String>,
}

/// Cap on serialized witnesses; the count still reflects every violation.
const WITNESS_CAP: usize = 16;

impl SuiteReport {
    fn new(suite: &'static str, seed: u64) -> Self {
        SuiteReport {
            suite,
            trials: 0,
            violations: 0,
            worst_slack: f64::INFINITY,
            witnesses: Vec::new(),
            seed,
            notes: Vec::new(),
        }
    }

    fn observe(&mut self, slack: f64) {
        if slack < self.worst_slack {
            self.worst_slack = slack;
        }
    }

    fn violation(&mut self, witness: String) {
        self.violations += 1;
        if self.witnesses.len() < WITNESS_CAP {
            self.witnesses.push(witness);
        }
    }

    fn note(&mut self, text: String) {
        self.notes.push(text);
    }

    fn finish(mut self) -> Self {
        if !self.worst_slack.is_finite() {
            self.worst_slack = 0.0;
        }
        if self.violations > self.witnesses.len() as u64 && self.witnesses.len() == WITNESS_CAP {
            self.notes
                .push(format!("witness list capped at {WITNESS_CAP}"));
        }
        debug_assert_eq!(self.violations == 0, self.witnesses.is_empty());
        self
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn describe_matrix(label: &str, m: &Matrix) -> String {
    let mut s = format!("{label} dim={}", m.dim());
    for v in m.data() {
        s.push_str(&format!(" {:.17e}{:+.17e}i", v.re, v.im));
    }
    s
}

fn describe_tuple(label: &str, v: &[f64]) -> String {
    let body: Vec<String> = v.iter().map(|x| format!("{x:.17e}")).collect();
    format!("{label} [{}]", body.join(", "))
}

/// Gaussian matrix rescaled to a Frobenius norm drawn uniformly from
/// [0.1, 5]: spans both the near-identity and strongly stretched regimes.
fn scaled_gaussian(n: usize, real: bool, rng: &mut ChaCha8Rng) -> Matrix {
    let raw = if real {
        sample::random_real(n, rng)
    } else {
        sample::random_complex(n, rng)
    };
    let target = 0.1 + 4.9 * rng.gen::<f64>();
    let nf = raw.norm_fro();
    raw.scale(target / nf.max(1e-300))
}

/// Normal matrix (unitarily diagonalizable) at the same norm scale.
fn scaled_normal(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let q = sample::random_unitary(n, rng);
    let mut d = Matrix::zeros(n);
    for i in 0..n {
        d[(i, i)] = Complex64::new(sample::normal(rng), sample::normal(rng));
    }
    let m = &(&q * &d) * &q.adjoint();
    let target = 0.1 + 4.9 * rng.gen::<f64>();
    let nf = m.norm_fro();
    m.scale(target / nf.max(1e-300))
}

/// exp-norm inequality at scale: per dimension 2..=6 and both norms,
/// `trials` random inputs each, plus the Frobenius equality/normality
/// characterization in both directions.
pub fn bhatia_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("bhatia", seed);
    rep.note("worst_slack: minimum of (||exp sym X||^2 - ||exp X||^2) / ||exp sym X||^2".into());
    let mut ctr = 0u64;
    for n in 2..=6 {
        for kind in [NormKind::Frobenius, NormKind::Spectral] {
            for t in 0..trials {
                ctr += 1;
                let mut rng = sample::stream(seed, ctr);
                let normal_input = t % 8 == 7;
                let x = if normal_input {
                    scaled_normal(n, &mut rng)
                } else {
                    scaled_gaussian(n, t % 2 == 1, &mut rng)
                };
                rep.trials += 1;
                let slack = match super::check_bhatia(&x, kind) {
                    Ok(s) => s,
                    Err(e) => {
                        rep.violation(format!(
                            "check failed ({e}); {}",
                            describe_matrix("X", &x)
                        ));
                        continue;
                    }
                };
                let big = norm(&expm(&x.sym()).expect("norm-capped input"), kind).powi(2);
                let rel = slack / big.max(1e-300);
                rep.observe(rel);
                if rel < -1e-12 {
                    rep.violation(format!(
                        "negative slack {rel:.3e} ({kind:?}); {}",
                        describe_matrix("X", &x)
                    ));
                }
                if kind == NormKind::Frobenius {
                    let normality = x.normality_residual();
                    let x_scale = x.norm_fro_sqr().max(1e-300);
                    // Slack grows quadratically in the normality defect
                    // while the residual grows linearly, so the two
                    // claims need a wide indeterminate band between them:
                    // a draw sitting right on matched thresholds (defect
                    // ~1e-5, slack ~5e-12) is not a counterexample.
                    if slack.abs() <= 1e-13 * big && normality > 1e-4 * x_scale {
                        rep.violation(format!(
                            "equality without normality (slack {slack:.3e}, residual {normality:.3e}); {}",
                            describe_matrix("X", &x)
                        ));
                    }
                    if normal_input && slack.abs() > 1e-10 * big {
                        rep.violation(format!(
                            "normal input missed equality (slack {slack:.3e}); {}",
                            describe_matrix("X", &x)
                        ));
                    }
                }
            }
        }
    }
    rep.finish()
}

/// Trace form of the same inequality, cross-checked against the
/// Frobenius slack which it must equal identically.
pub fn bernstein_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("bernstein", seed);
    rep.note("worst_slack: minimum relative trace slack".into());
    let mut ctr = 0u64;
    for n in 2..=6 {
        for t in 0..trials {
            ctr += 1;
            let mut rng = sample::stream(seed, ctr);
            let x = scaled_gaussian(n, t % 2 == 1, &mut rng);
            rep.trials += 1;
            let slack = match super::check_bernstein_trace(&x) {
                Ok(s) => s,
                Err(e) => {
                    rep.violation(format!("check failed ({e}); {}", describe_matrix("X", &x)));
                    continue;
                }
            };
            let scale = expm(&x.sym().scale(2.0))
                .expect("norm-capped input")
                .trace()
                .re
                .max(1e-300);
            let rel = slack / scale;
            rep.observe(rel);
            if rel < -1e-12 {
                rep.violation(format!(
                    "negative trace slack {rel:.3e}; {}",
                    describe_matrix("X", &x)
                ));
            }
            let cross = super::check_bhatia(&x, NormKind::Frobenius).expect("same domain");
            if (slack - cross).abs() > 1e-10 * scale {
                rep.violation(format!(
                    "trace and Frobenius forms disagree ({slack:.17e} vs {cross:.17e}); {}",
                    describe_matrix("X", &x)
                ));
            }
        }
    }
    rep.finish()
}

/// Golden-Thompson at scale, with commuting pairs injected to pin the
/// equality case.
pub fn golden_thompson_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("goldenthompson", seed);
    rep.note("worst_slack: minimum relative tr(e^X e^Y) - tr e^(X+Y)".into());
    let mut ctr = 0u64;
    for n in 2..=6 {
        for t in 0..trials {
            ctr += 1;
            let mut rng = sample::stream(seed, ctr);
            let rescale = |m: Matrix, rng: &mut ChaCha8Rng| {
                let target = 0.1 + 2.4 * rng.gen::<f64>();
                let nf = m.norm_fro();
                m.scale(target / nf.max(1e-300))
            };
            let x = rescale(sample::random_hermitian(n, 1.0, &mut rng), &mut rng);
            let commuting = t % 5 == 4;
            let y = if commuting {
                let quad = &(&x * &x).scale(0.5) + &x.scale(-0.7);
                rescale(quad, &mut rng)
            } else {
                rescale(sample::random_hermitian(n, 1.0, &mut rng), &mut rng)
            };
            rep.trials += 1;
            let slack = match super::check_golden_thompson(&x, &y) {
                Ok(s) => s,
                Err(e) => {
                    rep.violation(format!(
                        "check failed ({e}); {}; {}",
                        describe_matrix("X", &x),
                        describe_matrix("Y", &y)
                    ));
                    continue;
                }
            };
            let scale = (&expm(&x).unwrap() * &expm(&y).unwrap()).trace().re.max(1e-300);
            let rel = slack / scale;
            rep.observe(rel);
            if rel < -1e-12 {
                rep.violation(format!(
                    "negative slack {rel:.3e}; {}; {}",
                    describe_matrix("X", &x),
                    describe_matrix("Y", &y)
                ));
            }
            if commuting && rel.abs() > 1e-10 {
                rep.violation(format!(
                    "commuting pair missed equality ({rel:.3e}); {}",
                    describe_matrix("X", &x)
                ));
            }
        }
    }
    rep.finish()
}

/// One generated comparison pair: d the diagonal of D, x the spectrum of
/// exp(sym log(Q*D)).
struct GeneratedPair {
    m: Matrix,
    sym_log: Matrix,
    x: Vec<f64>,
    d: Vec<f64>,
}

/// Q*D draws land arbitrarily close to defective matrices, where no
/// algorithm resolves the logarithm to the accuracy the chain checks
/// below need. The round-trip gate exp(log M) = M to 1e-10 keeps only
/// draws whose computed log is demonstrably a log of M; rejected draws
/// are counted, not hidden.
fn generated_pair(n: usize, rng: &mut ChaCha8Rng, resamples: &mut u64) -> Option<GeneratedPair> {
    for attempt in 0..60 {
        let d_vals = sample::random_positive_diag(n, 0.05, 20.0, rng);
        let dm = Matrix::diag_real(&d_vals);
        let q = if attempt % 2 == 0 {
            sample::random_unitary(n, rng)
        } else {
            sample::random_rotation(n, rng)
        };
        let m = &q.adjoint() * &dm;
        let Ok(l) = logm_principal(&m) else {
            *resamples += 1;
            continue;
        };
        let trustworthy = expm(&l)
            .map(|back| (&back - &m).norm_fro() <= 1e-10 * m.norm_fro())
            .unwrap_or(false);
        if !trustworthy {
            *resamples += 1;
            continue;
        }
        let s = l.sym();
        let x: Vec<f64> = hermitian_eigen(&s)
            .expect("sym part is Hermitian")
            .values
            .iter()
            .map(|v| v.exp())
            .collect();
        return Some(GeneratedPair {
            m,
            sym_log: s,
            x,
            d: d_vals,
        });
    }
    None
}

/// Sum-of-squared-logarithms inequality over generated pairs (n = 2, 3),
/// including the generator-side hypotheses, the determinant chain and
/// injected equality cases.
pub fn ssli_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("ssli", seed);
    rep.note("worst_slack: minimum rescaled conclusion slack".into());
    let mut ctr = 0u64;
    let mut resamples = 0u64;
    for n in [2usize, 3] {
        for t in 0..trials {
            ctr += 1;
            let mut rng = sample::stream(seed, ctr);
            if t % 500 == 499 {
                // Equality case: x = d must hold with zero slack.
                let d_vals = sample::random_positive_diag(n, 0.05, 20.0, &mut rng);
                let triple =
                    super::ComparisonTriple::new(d_vals.clone(), d_vals.clone()).unwrap();
                let v = super::check_ssli(&triple).unwrap();
                rep.trials += 1;
                rep.observe(v.conclusion_slack);
                if !v.hypotheses_hold || v.conclusion_slack != 0.0 {
                    rep.violation(describe_tuple("equality case failed, d =", &d_vals));
                }
                continue;
            }
            let Some(pair) = generated_pair(n, &mut rng, &mut resamples) else {
                rep.note(format!("trial {ctr}: generator hit the logarithm cut"));
                continue;
            };
            let (m, x, d_vals) = (pair.m, pair.x, pair.d);
            rep.trials += 1;
            let triple = match super::ComparisonTriple::new(x.clone(), d_vals.clone()) {
                Ok(t) => t,
                Err(e) => {
                    rep.violation(format!(
                        "triple rejected ({e}); {}",
                        describe_tuple("x", &x)
                    ));
                    continue;
                }
            };
            let verdict = super::check_ssli(&triple).unwrap();
            let side = |v: &[f64]| v.iter().map(|a| a.ln().powi(2)).sum::<f64>();
            let scale = side(triple.x()).max(side(triple.d())).max(1.0);
            let rel = verdict.conclusion_slack / scale;
            rep.observe(rel);
            if !verdict.hypotheses_hold {
                rep.violation(format!(
                    "generated pair violates hypotheses; {}; {}; {}",
                    describe_matrix("Q*D", &m),
                    describe_tuple("x", triple.x()),
                    describe_tuple("d", triple.d())
                ));
                continue;
            }
            if rel < -1e-10 {
                rep.violation(format!(
                    "negative conclusion slack {rel:.3e}; {}; {}",
                    describe_tuple("x", triple.x()),
                    describe_tuple("d", triple.d())
                ));
            }
            // Equality pins the tuples together.
            if verdict.conclusion_slack <= 1e-10 * scale {
                let gap = triple
                    .x()
                    .iter()
                    .zip(triple.d())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max);
                if gap > 1e-5 * triple.d()[0].max(1.0) {
                    rep.violation(format!(
                        "slack vanished but tuples differ by {gap:.3e}; {}",
                        describe_tuple("x", triple.x())
                    ));
                }
            }
            // Generator-side conditions, each to 1e-9 relative.
            let sq = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>();
            let inv_sq = |v: &[f64]| v.iter().map(|a| 1.0 / (a * a)).sum::<f64>();
            let prod = |v: &[f64]| v.iter().product::<f64>();
            let (sx, sd) = (sq(triple.x()), sq(triple.d()));
            let (ix, id) = (inv_sq(triple.x()), inv_sq(triple.d()));
            let (px, pd) = (prod(triple.x()), prod(triple.d()));
            if sx < sd * (1.0 - 1e-9) || ix < id * (1.0 - 1e-9) || (px - pd).abs() > 1e-9 * pd {
                rep.violation(format!(
                    "generator conditions failed; {}; {}",
                    describe_tuple("x", triple.x()),
                    describe_tuple("d", triple.d())
                ));
            }
            // det chain: det exp(sym log(Q*D)) = det D. The left side is
            // e^{tr sym log} exactly; evaluating it that way keeps the
            // forward error near eps, while an LU determinant of the
            // exponential would lose a factor e^{eigenvalue spread of the
            // sym part} (observed up to 1e12 on draws from this generator).
            let det_exp = pair.sym_log.trace().re.exp();
            if (det_exp - pd).abs() > 1e-9 * pd {
                rep.violation(format!(
                    "determinant chain broke ({det_exp:.17e} vs {pd:.17e}); {}",
                    describe_matrix("Q*D", &m)
                ));
            }
        }
    }
    if resamples > 0 {
        rep.note(format!("{resamples} draws rejected by the round-trip gate"));
    }
    rep.finish()
}

/// Spectral-norm comparison conditions over the same generator, n = 2..6.
pub fn spectral_conditions_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("spectral", seed);
    rep.note("worst_slack: minimum relative margin among the ordering conditions".into());
    let mut ctr = 0u64;
    let mut resamples = 0u64;
    for n in 2..=6 {
        for _ in 0..trials {
            ctr += 1;
            let mut rng = sample::stream(seed, ctr);
            let Some(pair) = generated_pair(n, &mut rng, &mut resamples) else {
                rep.note(format!("trial {ctr}: generator hit the logarithm cut"));
                continue;
            };
            let (m, x, d_vals) = (pair.m, pair.x, pair.d);
            rep.trials += 1;
            let triple = super::ComparisonTriple::new(x, d_vals).unwrap();
            let ok = super::check_spectral_conditions(&triple).unwrap();
            let (x, d) = (triple.x(), triple.d());
            let margin = ((x[0] - d[0]) / x[0])
                .min((d[d.len() - 1] - x[x.len() - 1]) / d[d.len() - 1]);
            rep.observe(margin);
            if !ok {
                rep.violation(format!(
                    "spectral conditions failed; {}; {}; {}",
                    describe_matrix("Q*D", &m),
                    describe_tuple("x", x),
                    describe_tuple("d", d)
                ));
            }
        }
    }
    if resamples > 0 {
        rep.note(format!("{resamples} draws rejected by the round-trip gate"));
    }
    rep.finish()
}

/// Direct optimality spot-checks: the search never beats the closed-form
/// value at the polar factor beyond tolerance (Frobenius, n = 2 and 3).
pub fn optimality_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("optimality", seed);
    rep.note("worst_slack: minimum signed gap (best found - value at polar factor)".into());
    let f = WeightedFunctional::unit(NormKind::Frobenius, Family::Logarithmic, Part::Full);
    for t in 0..trials {
        let mut rng = sample::stream(seed, t);
        let n = if t % 2 == 0 { 2 } else { 3 };
        let a = sample::random_glp_real(n, 1e3, &mut rng);
        let cfg = SearchConfig {
            restarts: 3,
            seed: seed ^ t,
            ..SearchConfig::new(Group::SpecialOrthogonal)
        };
        rep.trials += 1;
        match minimize_over_rotations(&a, &f, &cfg) {
            Ok(r) => {
                rep.observe(r.gap);
                if r.gap < -1e-6 {
                    rep.violation(format!(
                        "search beat the polar factor by {:.3e}; {}",
                        -r.gap,
                        describe_matrix("A", &a)
                    ));
                }
            }
            Err(e) => rep.violation(format!("run failed ({e}); {}", describe_matrix("A", &a))),
        }
    }
    rep.finish()
}

/// Uniqueness of the full-log Frobenius minimizer over U(3): a single
/// cluster at the polar factor for every distinct-spectrum input.
pub fn uniqueness_frobenius_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("uniqueness", seed);
    rep.note("worst_slack: 1e-3 minus the distance of the best rotation from the polar factor".into());
    let f = WeightedFunctional::unit(NormKind::Frobenius, Family::Logarithmic, Part::Full);
    for t in 0..trials {
        let mut rng = sample::stream(seed, t);
        let a = sample::random_gl_complex_distinct(3, 100.0, 0.02, &mut rng);
        let cfg = SearchConfig {
            restarts: 4,
            seed: seed ^ t,
            ..SearchConfig::new(Group::Unitary)
        };
        rep.trials += 1;
        let r = match minimize_over_rotations(&a, &f, &cfg) {
            Ok(r) => r,
            Err(e) => {
                rep.violation(format!("run failed ({e}); {}", describe_matrix("A", &a)));
                continue;
            }
        };
        let up = polar_decompose(&a).expect("invertible by construction").up;
        let dist = (&r.best_q - &up).norm_fro();
        rep.observe(1e-3 - dist);
        if dist > 1e-3 {
            rep.violation(format!(
                "best rotation strays {dist:.3e} from the polar factor; {}",
                describe_matrix("A", &a)
            ));
        }
        if r.distinct_minimizers.len() != 1 {
            rep.violation(format!(
                "{} minimizer clusters (want 1); {}",
                r.distinct_minimizers.len(),
                describe_matrix("A", &a)
            ));
        }
        if r.gap < -1e-6 {
            rep.violation(format!(
                "negative gap {:.3e}; {}",
                r.gap,
                describe_matrix("A", &a)
            ));
        }
    }
    rep.finish()
}

/// Non-uniqueness families: the spectral phase interval and the sym-only
/// block-phase family, on canonical fixtures and random spectra.
pub fn nonuniqueness_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("nonuniqueness", seed);
    rep.note("worst_slack: 1e-9 minus the worst family-member objective deviation".into());
    let e = std::f64::consts::E;

    for t in 0..trials {
        let mut rng = sample::stream(seed, t);
        // Canonical fixtures first, then random spectra (every third with
        // a repeated singular value).
        let a = match t {
            0 => Matrix::diag_real(&[e, 1.0]),
            1 => Matrix::diag_real(&[2.0, 1.0, 0.5]),
            _ => {
                let n = 2 + (t as usize % 3);
                let mut sv = sample::random_positive_diag(n, 0.05, 20.0, &mut rng);
                if t % 3 == 2 && n >= 3 {
                    sv[1] = sv[0]; // force a multiplicity
                }
                let u = sample::random_unitary(n, &mut rng);
                let v = sample::random_unitary(n, &mut rng);
                &(&u * &Matrix::diag_real(&sv)) * &v.adjoint()
            }
        };
        rep.trials += 1;

        match super::nonuniqueness_spectral_witness(&a) {
            Ok(members) => {
                let f = WeightedFunctional::unit(NormKind::Spectral, Family::Logarithmic, Part::Full);
                let base = crate::minimize::eval_functional(
                    &a,
                    &polar_decompose(&a).expect("invertible").up,
                    &f,
                    0,
                )
                .expect("polar objective");
                let mut worst = 0.0f64;
                for q in &members {
                    let v = crate::minimize::eval_functional(&a, q, &f, 0).expect("verified member");
                    worst = worst.max((v - base).abs() / base.abs().max(1.0));
                }
                rep.observe(1e-9 - worst);
                if worst > 1e-9 {
                    rep.violation(format!(
                        "spectral family deviates by {worst:.3e}; {}",
                        describe_matrix("A", &a)
                    ));
                }
            }
            Err(MatError::DegenerateCase { .. }) => {
                rep.note(format!("trial {t}: spectral family degenerate (equal spectrum)"));
            }
            Err(e) => {
                rep.violation(format!("spectral witness failed ({e}); {}", describe_matrix("A", &a)));
            }
        }

        match super::nonuniqueness_sym_witness(&a, seed ^ (t << 1)) {
            Ok(w) => {
                rep.observe(1e-9 - w.max_deviation);
                if w.max_deviation > 1e-9 {
                    rep.violation(format!(
                        "sym family deviates by {:.3e}; {}",
                        w.max_deviation,
                        describe_matrix("A", &a)
                    ));
                }
                // A generic rotation off the family must not undercut it.
                let f =
                    WeightedFunctional::unit(NormKind::Frobenius, Family::Logarithmic, Part::SymOnly);
                let probe = sample::random_unitary(a.dim(), &mut rng);
                if let Ok(v) = crate::minimize::eval_functional(&a, &probe, &f, 0) {
                    if v < w.value_fro - 1e-9 * w.value_fro.abs().max(1.0) {
                        rep.violation(format!(
                            "generic rotation undercuts the sym family ({v:.17e} < {:.17e}); {}",
                            w.value_fro,
                            describe_matrix("A", &a)
                        ));
                    }
                }
            }
            Err(e) => {
                rep.violation(format!("sym witness failed ({e}); {}", describe_matrix("A", &a)));
            }
        }
    }
    rep.finish()
}

/// Scalar minimizations at scale, with periodic consistency checks
/// against the matrix search through the conformal 2x2 embedding
/// (squared Frobenius norms there carry a factor 2).
pub fn scalar_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("scalar", seed);
    rep.note("worst_slack: tolerance minus observed error, minimized over checks".into());
    let log_full = WeightedFunctional::unit(NormKind::Frobenius, Family::Logarithmic, Part::Full);
    for t in 0..trials {
        let mut rng = sample::stream(seed, t);
        let r = (1e-2f64.ln() + rng.gen::<f64>() * (1e2f64.ln() - 1e-2f64.ln())).exp();
        let phi = -std::f64::consts::PI + std::f64::consts::TAU * rng.gen::<f64>();
        let z = Complex64::from_polar(r, phi);
        rep.trials += 1;
        let scalar = match minimize_scalar_theta(z, &log_full, 1000) {
            Ok(s) => s,
            Err(e) => {
                rep.violation(format!("scalar run failed ({e}) at z = {z}"));
                continue;
            }
        };
        let expect = r.ln().powi(2);
        let err = (scalar.value - expect).abs();
        rep.observe(1e-9 * expect.max(1.0) - err);
        if err > 1e-9 * expect.max(1.0) {
            rep.violation(format!(
                "scalar value off by {err:.3e} at z = {:.17e}{:+.17e}i",
                z.re, z.im
            ));
        }

        // Matrix/scalar consistency on a deterministic subsample.
        if t % 100 == 0 {
            let a = co2_embed(z);
            let cfg = SearchConfig {
                restarts: 3,
                seed: seed ^ t,
                ..SearchConfig::new(Group::SpecialOrthogonal)
            };
            match minimize_over_rotations(&a, &log_full, &cfg) {
                Ok(m) => {
                    let err = (m.best_value - 2.0 * scalar.value).abs();
                    let tol = 1e-8 * (2.0 * expect).max(1.0);
                    rep.observe(tol - err);
                    if err > tol {
                        rep.violation(format!(
                            "matrix value {:.17e} vs doubled scalar {:.17e} at z = {z}",
                            m.best_value,
                            2.0 * scalar.value
                        ));
                    }
                    let w = crate::matfun::scalar::co2_extract(&m.best_q)
                        .expect("rotations embed scalars");
                    let dtheta = {
                        let d = (w.arg() - scalar.theta).rem_euclid(std::f64::consts::TAU);
                        d.min(std::f64::consts::TAU - d)
                    };
                    if dtheta > 1e-6 && expect > 1e-12 {
                        rep.violation(format!(
                            "minimizing angles disagree by {dtheta:.3e} at z = {z}"
                        ));
                    }
                }
                Err(e) => rep.violation(format!("matrix run failed ({e}) at z = {z}")),
            }
        }
    }
    rep.finish()
}

/// Monotonicity of g(xi) = arcosh(xi)^2 / (xi^2 - 1) on (1, 50], plus the
/// dense-theta rederivation of the 2x2 diagonal minimum.
pub fn appendix_g_monotone(samples: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("appendix", 0);
    rep.note("deterministic suite (seed field unused)".into());
    rep.note("worst_slack: minimum relative decrease between neighboring grid values".into());
    let samples = samples.max(8);
    let g = |xi: f64| {
        let ac = (xi + (xi * xi - 1.0).sqrt()).ln();
        ac * ac / (xi * xi - 1.0)
    };
    // (xi - 1) log-spaced from 1e-6 to 49 hits both the limit regime and
    // the far tail.
    let mut prev = f64::INFINITY;
    let (lo, hi) = (1e-6f64.ln(), 49.0f64.ln());
    for i in 0..samples {
        let xi = 1.0 + (lo + (hi - lo) * i as f64 / (samples - 1) as f64).exp();
        let v = g(xi);
        rep.trials += 1;
        if i == 0 && (v - 1.0).abs() > 1e-5 {
            rep.violation(format!("g(1+1e-6) = {v:.17e}, limit 1 missed"));
        }
        if v >= prev {
            rep.violation(format!("g not strictly decreasing at xi = {xi:.17e}"));
        } else if prev.is_finite() {
            rep.observe((prev - v) / prev.abs().max(1e-300));
        }
        prev = v;
    }

    // By-hand 2x2 minimum: dense theta grid over the rotation angle,
    // then a local golden-section polish of the best cell (the raw grid
    // resolves the value only to curvature times the spacing squared).
    for lambda in [1.0f64, 1.1, 2.0, 10.0] {
        let d = Matrix::diag_real(&[lambda, 1.0 / lambda]);
        let expect = 2.0 * lambda.ln().powi(2);
        let objective = |theta: f64| -> f64 {
            let (c, s) = (theta.cos(), theta.sin());
            let q = Matrix::from_real(2, &[c, -s, s, c]);
            let m = &q.transpose() * &d;
            match logm_principal(&m) {
                Ok(l) => l.norm_fro_sqr(),
                Err(_) => f64::INFINITY,
            }
        };
        let grid = 4001usize;
        let h = std::f64::consts::TAU / grid as f64;
        let mut best = f64::INFINITY;
        let mut best_theta = f64::NAN;
        for j in 0..grid {
            let theta = -std::f64::consts::PI + h * (j as f64 + 1.0);
            let v = objective(theta);
            rep.trials += 1;
            if v < best {
                best = v;
                best_theta = theta;
            }
        }
        let (mut a, mut b) = (best_theta - h, best_theta + h);
        for _ in 0..80 {
            let c = a + (b - a) * (1.0 - 0.618_033_988_749_894_9);
            let dd = a + (b - a) * 0.618_033_988_749_894_9;
            if objective(c) <= objective(dd) {
                b = dd;
            } else {
                a = c;
            }
        }
        best_theta = 0.5 * (a + b);
        best = objective(best_theta);
        let err = (best - expect).abs();
        rep.observe(1e-9 * expect.max(1.0) - err);
        if err > 1e-9 * expect.max(1.0) {
            rep.violation(format!(
                "grid minimum {best:.17e} vs 2 (log {lambda})^2 = {expect:.17e}"
            ));
        }
        if best_theta.abs() > 2.0 * h {
            rep.violation(format!(
                "grid minimizer theta = {best_theta:.3e} is not at zero (lambda = {lambda})"
            ));
        }
    }
    rep.finish()
}

/// Ky-Fan k-norm probes of the optimality conjecture. Slacks are
/// reported as findings; nothing here is asserted, so the suite never
/// counts violations.
pub fn conjecture_probe_general_norms(trials: u64, n: usize, seed: u64) -> Result<SuiteReport> {
    if n == 0 || n > 6 {
        return Err(MatError::BadDimension { got: n });
    }
    let mut rep = SuiteReport::new("conjecture", seed);
    rep.note("worst_slack: minimum (search best - polar value) across Ky-Fan norms".into());
    rep.note("negative slacks are findings to investigate, not failures".into());
    let ky_fan = |m: &Matrix, k: usize| -> Option<f64> {
        let s = svd(m).ok()?;
        Some(s.sigma[..k].iter().sum::<f64>())
    };
    for t in 0..trials {
        let mut rng = sample::stream(seed, t);
        let a = sample::random_gl_complex(n, 50.0, &mut rng);
        let up = polar_decompose(&a).expect("bounded condition").up;
        for k in 1..=n {
            rep.trials += 1;
            let objective = |q: &Matrix| -> Option<f64> {
                let m = &q.adjoint() * &a;
                let l = logm_principal(&m).ok()?;
                let v = ky_fan(&l, k)?;
                Some(v * v)
            };
            let Some(polar_value) = objective(&up) else {
                rep.note(format!("trial {t} k={k}: polar point on the logarithm cut"));
                continue;
            };
            let cfg = SearchConfig {
                restarts: 2,
                seed: seed ^ (t * 8 + k as u64),
                max_sweeps: 60,
                ..SearchConfig::new(Group::Unitary)
            };
            match minimize_matrix_objective(n, &cfg, objective) {
                Ok(found) => {
                    let slack = found.best_value - polar_value;
                    rep.observe(slack);
                    rep.note(format!(
                        "trial {t} k={k}: slack {slack:.6e} (polar {polar_value:.6e})"
                    ));
                }
                Err(e) => rep.note(format!("trial {t} k={k}: search failed ({e})")),
            }
        }
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bhatia_suite_clean_at_small_scale() {
        let rep = bhatia_suite(40, 11);
        assert_eq!(rep.violations, 0, "witnesses: {:?}", rep.witnesses);
        assert!(rep.passed());
        assert!(rep.trials >= 40 * 5 * 2);
        assert!(rep.worst_slack >= -1e-12);
    }

    #[test]
    fn bernstein_suite_clean_at_small_scale() {
        let rep = bernstein_suite(30, 12);
        assert_eq!(rep.violations, 0, "witnesses: {:?}", rep.witnesses);
    }

    #[test]
    fn golden_thompson_suite_clean_at_small_scale() {
        let rep = golden_thompson_suite(30, 13);
        assert_eq!(rep.violations, 0, "witnesses: {:?}", rep.witnesses);
    }

    #[test]
    fn ssli_suite_clean_at_small_scale() {
        let rep = ssli_suite(120, 14);
        assert_eq!(rep.violations, 0, "witnesses: {:?}", rep.witnesses);
        assert!(rep.worst_slack >= -1e-10);
    }

    #[test]
    fn spectral_suite_clean_at_small_scale() {
        let rep = spectral_conditions_suite(40, 15);
        assert_eq!(rep.violations, 0, "witnesses: {:?}", rep.witnesses);
    }

    #[test]
    fn optimality_suite_keeps_gap_nonnegative() {
        let rep = optimality_suite(6, 16);
        assert_eq!(rep.violations, 0, "witnesses: {:?}", rep.witnesses);
        assert!(rep.worst_slack >= -1e-6);
    }

    #[test]
    fn uniqueness_suite_single_cluster() {
        let rep = uniqueness_frobenius_suite(3, 17);
        assert_eq!(rep.violations, 0, "witnesses: {:?}", rep.witnesses);
    }

    #[test]
    fn nonuniqueness_suite_families_verify() {
        let rep = nonuniqueness_suite(5, 18);
        assert_eq!(rep.violations, 0, "witnesses: {:?}", rep.witnesses);
    }

    #[test]
    fn scalar_suite_values_and_embedding_agree() {
        let rep = scalar_suite(120, 19);
        assert_eq!(rep.violations, 0, "witnesses: {:?}", rep.witnesses);
    }

    #[test]
    fn appendix_monotonicity_and_grid_minimum() {
        let rep = appendix_g_monotone(200);
        assert_eq!(rep.violations, 0, "witnesses: {:?}", rep.witnesses);
        assert!(rep.worst_slack > 0.0);
    }

    #[test]
    fn conjecture_probe_reports_only_notes() {
        let rep = conjecture_probe_general_norms(1, 2, 20).unwrap();
        assert_eq!(rep.violations, 0);
        assert!(rep.witnesses.is_empty());
        assert!(rep.notes.len() >= 2);
        assert!(conjecture_probe_general_norms(1, 9, 20).is_err());
    }
}
