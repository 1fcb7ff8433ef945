//! Derivative-free descent over a rotation group.
//!
//! The engine sweeps the Lie-algebra coordinate directions in a fixed
//! order and line-searches each one with golden sections, folding every
//! accepted move back into the group element. Objectives may be partial:
//! an evaluation returning `None` (a branch-cut cliff, say) is treated as
//! +inf and counted, never stepped onto.

use crate::linalg::Matrix;

use super::chart::RotationChart;

const INVPHI: f64 = 0.618_033_988_749_894_9;
const INVPHI2: f64 = 0.381_966_011_250_105_1;

/// Relative improvement below which an outer sweep counts as stalled.
pub const REL_STOP: f64 = 1e-12;
/// Consecutive stalled sweeps before the run is declared converged.
pub const STALL_SWEEPS: usize = 3;

/// Tuning knobs for a single descent run.
#[derive(Debug, Clone, Copy)]
pub struct DescentControls {
    /// Maximum outer sweeps over the coordinate basis.
    pub max_sweeps: usize,
    /// Width at which a golden-section bracket stops shrinking.
    pub line_tol: f64,
    /// Half-width of the parameter bracket searched per coordinate.
    pub bracket: f64,
}

impl DescentControls {
    pub fn new(max_sweeps: usize, line_tol: f64) -> Self {
        DescentControls {
            max_sweeps,
            line_tol,
            bracket: 1.6,
        }
    }
}

/// Where one descent run ended up.
#[derive(Debug, Clone)]
pub struct DescentOutcome {
    pub q: Matrix,
    pub value: f64,
    pub sweeps: usize,
    pub converged: bool,
}

/// Golden-section search returning the best point actually evaluated.
///
/// Tracking the best sample (rather than the final bracket midpoint)
/// keeps the result sane when the section is not unimodal.
fn golden_best<F: FnMut(f64) -> f64>(mut g: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let mut a = lo;
    let mut b = hi;
    let mut h = b - a;
    let mut c = a + INVPHI2 * h;
    let mut d = a + INVPHI * h;
    let mut yc = g(c);
    let mut yd = g(d);
    let (mut best_t, mut best_v) = if yc <= yd { (c, yc) } else { (d, yd) };
    let mut guard = 0;
    while h > tol && guard < 200 {
        guard += 1;
        if yc < yd {
            b = d;
            d = c;
            yd = yc;
            h = b - a;
            c = a + INVPHI2 * h;
            yc = g(c);
            if yc < best_v {
                best_v = yc;
                best_t = c;
            }
        } else {
            a = c;
            c = d;
            yc = yd;
            h = b - a;
            d = a + INVPHI * h;
            yd = g(d);
            if yd < best_v {
                best_v = yd;
                best_t = d;
            }
        }
    }
    (best_t, best_v)
}

/// Coordinate descent along the chart. The objective must be finite at
/// the chart's starting center.
pub fn coordinate_descent<F>(
    mut chart: RotationChart,
    mut eval: F,
    ctl: &DescentControls,
) -> DescentOutcome
where
    F: FnMut(&Matrix) -> Option<f64>,
{
    let mut value = eval(chart.q()).expect("descent must start at a feasible point");
    let dim = chart.dim();
    let mut candidate = Matrix::zeros(chart.matrix_dim());
    let mut stalled = 0;
    let mut sweeps = 0;
    let mut converged = false;

    while sweeps < ctl.max_sweeps {
        sweeps += 1;
        let before = value;
        for idx in 0..dim {
            let (t, v) = golden_best(
                |t| {
                    chart.probe(idx, t, &mut candidate);
                    eval(&candidate).unwrap_or(f64::INFINITY)
                },
                -ctl.bracket,
                ctl.bracket,
                ctl.line_tol,
            );
            if v < value {
                chart.accept(idx, t);
                value = v;
            }
        }
        let drop = before - value;
        if drop <= REL_STOP * before.abs().max(1e-30) {
            stalled += 1;
            if stalled >= STALL_SWEEPS {
                converged = true;
                break;
            }
        } else {
            stalled = 0;
        }
    }

    DescentOutcome {
        q: chart.into_q(),
        value,
        sweeps,
        converged,
    }
}
