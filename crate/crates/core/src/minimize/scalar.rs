//! The scalar case: minimizing over the unit circle instead of a group.
//!
//! For z in C* and theta on the circle, the displacement is either
//! e^{-i theta} z - 1 or Log(e^{-i theta} z), and sym/skew parts become
//! real/imaginary parts under the conformal-matrix dictionary. Values use
//! the complex modulus; the 2x2 embedding carries an extra factor 2 on
//! squared Frobenius norms, which the matrix/scalar consistency tests
//! account for explicitly.
//!
//! The deviatoric selectors degenerate here: the trace of the embedded
//! matrix is twice the real part, so devSym vanishes identically and
//! devFull keeps only the imaginary part.

use num_complex::Complex64;

use crate::error::{MatError, Result};
use crate::matfun::scalar::principal_log;

use super::{Family, Part, WeightedFunctional};

/// Grid minima further apart than this (radians, circular) count as
/// distinct solutions.
const THETA_DISTINCT: f64 = 1e-6;
/// Refined minima within this of the best value join the solution set.
const VALUE_CLUSTER: f64 = 1e-9;
/// Grid spread below this flags a functional that is constant in theta.
const FLAT_TOL: f64 = 1e-12;

/// Solution of a circle minimization, including ties.
#[derive(Debug, Clone)]
pub struct ScalarThetaReport {
    /// Minimizing angle in (-pi, pi].
    pub theta: f64,
    pub value: f64,
    /// All distinct minimizers found (empty when `all_angles` is set).
    pub thetas: Vec<f64>,
    /// The functional was constant over the whole circle.
    pub all_angles: bool,
    pub evaluations: u64,
}

fn wrap_angle(t: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut w = t % tau;
    if w <= -std::f64::consts::PI {
        w += tau;
    } else if w > std::f64::consts::PI {
        w -= tau;
    }
    w
}

fn circular_gap(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    d.abs()
}

fn scalar_value(z: Complex64, theta: f64, f: &WeightedFunctional) -> f64 {
    let m = Complex64::from_polar(1.0, -theta) * z;
    let x = match f.family {
        Family::Euclidean => m - Complex64::new(1.0, 0.0),
        // The skew (imaginary) part of the principal value is already in
        // (-pi, pi]; any other branch only grows it, so the branch
        // minimum is the principal value.
        Family::Logarithmic => principal_log(m).expect("nonzero scalar"),
    };
    let (s2, k2) = (x.re * x.re, x.im * x.im);
    match f.part {
        Part::Full => f.mu * (s2 + k2),
        Part::SymOnly => f.mu * s2,
        Part::SkewOnly => f.muc * k2,
        Part::SymPlusSkew => f.mu * s2 + f.muc * k2,
        Part::DevSym => 0.0,
        Part::DevFull => f.mu * k2,
    }
}

/// Golden-section refinement on a small bracket, returning the best
/// sample seen.
fn refine<F: FnMut(f64) -> f64>(mut g: F, lo: f64, hi: f64) -> (f64, f64, u64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    const INVPHI2: f64 = 0.381_966_011_250_105_1;
    let mut evals = 0u64;
    let mut a = lo;
    let mut b = hi;
    let mut h = b - a;
    let mut c = a + INVPHI2 * h;
    let mut d = a + INVPHI * h;
    let mut yc = g(c);
    let mut yd = g(d);
    evals += 2;
    let (mut bt, mut bv) = if yc <= yd { (c, yc) } else { (d, yd) };
    while h > 1e-12 && evals < 120 {
        if yc < yd {
            b = d;
            d = c;
            yd = yc;
            h = b - a;
            c = a + INVPHI2 * h;
            yc = g(c);
            evals += 1;
            if yc < bv {
                bv = yc;
                bt = c;
            }
        } else {
            a = c;
            c = d;
            yc = yd;
            h = b - a;
            d = a + INVPHI * h;
            yd = g(d);
            evals += 1;
            if yd < bv {
                bv = yd;
                bt = d;
            }
        }
    }
    (bt, bv, evals)
}

/// Dense-grid scan of the circle followed by golden-section refinement
/// of every local minimum, so tied minimizers are all reported.
pub fn minimize_scalar_theta(
    z: Complex64,
    f: &WeightedFunctional,
    grid_size: usize,
) -> Result<ScalarThetaReport> {
    f.validate()?;
    if z.norm() == 0.0 {
        return Err(MatError::ZeroArgument);
    }
    if grid_size < 1000 {
        return Err(MatError::BadLength {
            got: grid_size,
            want: 1000,
        });
    }

    let n = grid_size;
    let tau = std::f64::consts::TAU;
    let theta_at = |j: usize| -std::f64::consts::PI + tau * (j + 1) as f64 / n as f64;
    let mut grid = Vec::with_capacity(n);
    for j in 0..n {
        grid.push(scalar_value(z, theta_at(j), f));
    }
    let mut evaluations = n as u64;

    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &v in &grid {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if hi - lo <= FLAT_TOL * lo.abs().max(1.0) {
        // Constant in theta: every angle minimizes. Report the polar
        // angle of z as the canonical representative.
        return Ok(ScalarThetaReport {
            theta: wrap_angle(z.arg()),
            value: 0.5 * (lo + hi),
            thetas: Vec::new(),
            all_angles: true,
            evaluations,
        });
    }

    // Grid-local minima; a flat run counts once, at its first index in
    // circular order (the unique element whose predecessor is larger).
    let mut candidates: Vec<usize> = Vec::new();
    for j in 0..n {
        let prev = grid[(j + n - 1) % n];
        let next = grid[(j + 1) % n];
        if grid[j] < prev && grid[j] <= next {
            candidates.push(j);
        }
    }
    // Defensive cap: keep the lowest-valued candidates if an adversarial
    // objective produces thousands of grid minima.
    candidates.sort_by(|&x, &y| grid[x].total_cmp(&grid[y]).then(x.cmp(&y)));
    candidates.truncate(64);

    let h = tau / n as f64;
    let mut refined: Vec<(f64, f64)> = Vec::new();
    for &j in &candidates {
        let center = theta_at(j);
        let (t, v, used) = refine(|t| scalar_value(z, t, f), center - h, center + h);
        evaluations += used;
        refined.push((wrap_angle(t), v));
    }
    refined.sort_by(|x, y| x.1.total_cmp(&y.1).then(x.0.total_cmp(&y.0)));

    let best_v = refined[0].1;
    let keep = VALUE_CLUSTER.max(VALUE_CLUSTER * best_v.abs());
    let mut thetas: Vec<f64> = Vec::new();
    for &(t, v) in &refined {
        if v - best_v <= keep && thetas.iter().all(|&u| circular_gap(t, u) > THETA_DISTINCT) {
            thetas.push(t);
        }
    }
    let theta = thetas[0];
    thetas.sort_by(f64::total_cmp);

    Ok(ScalarThetaReport {
        theta,
        value: best_v,
        thetas,
        all_angles: false,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::NormKind;

    fn log_full() -> WeightedFunctional {
        WeightedFunctional::unit(NormKind::Frobenius, Family::Logarithmic, Part::Full)
    }

    #[test]
    fn negative_one_minimizes_at_pi_with_zero_value() {
        let rep = minimize_scalar_theta(Complex64::new(-1.0, 0.0), &log_full(), 1000).unwrap();
        assert!(rep.value.abs() < 1e-18);
        assert!(circular_gap(rep.theta, std::f64::consts::PI) < 1e-9);
        assert!(!rep.all_angles);
        assert_eq!(rep.thetas.len(), 1);
    }

    #[test]
    fn log_minimum_is_squared_log_modulus() {
        for z in [
            Complex64::new(3.0, 4.0),
            Complex64::new(0.01, -0.2),
            Complex64::new(-2.0, 0.5),
        ] {
            let rep = minimize_scalar_theta(z, &log_full(), 2000).unwrap();
            let expect = z.norm().ln().powi(2);
            assert!(
                (rep.value - expect).abs() <= 1e-10 * expect.max(1.0),
                "z={z}: {} vs {expect}",
                rep.value
            );
            assert!(circular_gap(rep.theta, z.arg()) < 1e-6);
        }
    }

    #[test]
    fn log_sym_only_is_angle_free() {
        let f = WeightedFunctional {
            mu: 1.0,
            muc: 0.0,
            norm: NormKind::Frobenius,
            family: Family::Logarithmic,
            part: Part::SymOnly,
        };
        let z = Complex64::new(2.0, 1.0);
        let rep = minimize_scalar_theta(z, &f, 1000).unwrap();
        assert!(rep.all_angles);
        assert!(rep.thetas.is_empty());
        let expect = z.norm().ln().powi(2);
        assert!((rep.value - expect).abs() < 1e-12);
    }

    #[test]
    fn stretched_real_axis_has_two_euclidean_sym_roots() {
        let f = WeightedFunctional {
            mu: 1.0,
            muc: 0.0,
            norm: NormKind::Frobenius,
            family: Family::Euclidean,
            part: Part::SymOnly,
        };
        let rep = minimize_scalar_theta(Complex64::new(4.0, 0.0), &f, 4000).unwrap();
        assert!(rep.value.abs() < 1e-18);
        assert_eq!(rep.thetas.len(), 2, "thetas: {:?}", rep.thetas);
        let expect = (0.25f64).acos();
        assert!((rep.thetas[0] + expect).abs() < 1e-7);
        assert!((rep.thetas[1] - expect).abs() < 1e-7);
    }

    #[test]
    fn contracted_scalar_keeps_polar_angle() {
        let f = WeightedFunctional {
            mu: 1.0,
            muc: 0.0,
            norm: NormKind::Frobenius,
            family: Family::Euclidean,
            part: Part::SymOnly,
        };
        let rep = minimize_scalar_theta(Complex64::new(0.5, 0.0), &f, 1000).unwrap();
        assert!((rep.value - 0.25).abs() < 1e-12);
        assert!(rep.theta.abs() < 1e-7);
        assert_eq!(rep.thetas.len(), 1);
    }

    #[test]
    fn zero_and_tiny_grids_are_rejected() {
        assert!(matches!(
            minimize_scalar_theta(Complex64::new(0.0, 0.0), &log_full(), 1000),
            Err(MatError::ZeroArgument)
        ));
        assert!(matches!(
            minimize_scalar_theta(Complex64::new(1.0, 0.0), &log_full(), 9),
            Err(MatError::BadLength { .. })
        ));
    }

    #[test]
    fn euclidean_full_tracks_polar_angle_and_modulus_gap() {
        // Full euclidean displacement: min over theta of |e^{-i t}z - 1|^2
        // is (|z| - 1)^2 at the polar angle.
        let f = WeightedFunctional::unit(NormKind::Frobenius, Family::Euclidean, Part::Full);
        let z = Complex64::new(-1.0, 2.0);
        let rep = minimize_scalar_theta(z, &f, 2000).unwrap();
        let expect = (z.norm() - 1.0).powi(2);
        assert!((rep.value - expect).abs() < 1e-10);
        assert!(circular_gap(rep.theta, z.arg()) < 1e-6);
    }
}
