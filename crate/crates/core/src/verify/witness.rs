//! Constructive witnesses for the shape of the minimizer set.
//!
//! The full-log Frobenius minimizer is unique, but the spectral-norm
//! objective tolerates a whole family of rotations touching only the
//! non-dominant singular directions, and the sym-only objective is blind
//! to per-block phases entirely. Both families are built here explicitly
//! and re-evaluated through the public functional to confirm equality.

use num_complex::Complex64;

use crate::error::{MatError, Result};
use crate::linalg::{svd, Matrix, NormKind};
use crate::minimize::{eval_functional, Family, Part, WeightedFunctional};
use crate::sample;

/// Objective agreement demanded of every constructed family member.
const EQUALITY_TOL: f64 = 1e-9;

fn spectral_log_objective(a: &Matrix, q: &Matrix) -> Result<f64> {
    let f = WeightedFunctional::unit(NormKind::Spectral, Family::Logarithmic, Part::Full);
    eval_functional(a, q, &f, 0)
}

/// Family of unitaries sharing the spectral objective of the polar
/// factor: phases on the non-dominant singular block, capped so the
/// dominant |log sigma| still sets the norm.
///
/// Members start with the polar factor itself (the zero-phase member).
pub fn nonuniqueness_spectral_witness(a: &Matrix) -> Result<Vec<Matrix>> {
    let n = a.dim();
    let s = svd(a)?;
    let sig = &s.sigma;
    if sig[n - 1] <= 0.0 {
        return Err(MatError::Singular { det_abs: 0.0 });
    }
    if sig[0] - sig[n - 1] <= 1e-9 * sig[0] {
        return Err(MatError::DegenerateCase {
            detail: "all singular values coincide; the phase family collapses".to_string(),
        });
    }
    let logs: Vec<f64> = sig.iter().map(|v| v.ln()).collect();
    let (top, bottom) = (logs[0].abs(), logs[n - 1].abs());
    // The block NOT carrying the dominant log modulus is free to rotate.
    let free: Vec<usize> = if top >= bottom {
        (1..n).collect()
    } else {
        (0..n - 1).collect()
    };
    let dominant = top.max(bottom);
    let block_max = free
        .iter()
        .map(|&j| logs[j].abs())
        .fold(0.0f64, f64::max);
    let cap_sqr = dominant * dominant - block_max * block_max;
    let cap = cap_sqr.max(0.0).sqrt().min(0.999 * std::f64::consts::PI) * 0.999;
    if cap <= 1e-8 {
        return Err(MatError::DegenerateCase {
            detail: "dominant singular value is repeated; no phase slack remains".to_string(),
        });
    }

    let base = {
        let up = &s.u * &s.v.adjoint();
        let value = spectral_log_objective(a, &up)?;
        (up, value)
    };
    let mut members = vec![base.0.clone()];
    for &theta in &[-cap, -0.5 * cap, 0.1 * cap, 0.5 * cap, cap] {
        let mut p = Matrix::identity(n);
        let ph = Complex64::from_polar(1.0, theta);
        for &j in &free {
            p[(j, j)] = ph;
        }
        let q = &(&s.u * &p) * &s.v.adjoint();
        let value = spectral_log_objective(a, &q)?;
        if (value - base.1).abs() > EQUALITY_TOL * base.1.abs().max(1.0) {
            return Err(MatError::DegenerateCase {
                detail: format!(
                    "phase member deviates from the polar objective by {:.3e}",
                    value - base.1
                ),
            });
        }
        members.push(q);
    }
    Ok(members)
}

/// The sym-only minimizer family: block phases per singular-value
/// multiplicity, verified in both norms.
#[derive(Debug, Clone)]
pub struct SymFamilyWitness {
    /// Singular-value multiplicities, descending.
    pub blocks: Vec<usize>,
    /// Sampled members U diag(Q_1, ..., Q_k) V*, polar factor first.
    pub members: Vec<Matrix>,
    /// ||sym log(U_p^* A)||_F^2.
    pub value_fro: f64,
    /// ||sym log(U_p^* A)||_2^2.
    pub value_spec: f64,
    /// Worst relative deviation of any member from those values.
    pub max_deviation: f64,
}

/// Samples the block-unitary family that leaves the sym-only objective
/// unchanged; equality is re-verified through the public functional in
/// both norms before the family is returned.
pub fn nonuniqueness_sym_witness(a: &Matrix, seed: u64) -> Result<SymFamilyWitness> {
    let n = a.dim();
    let s = svd(a)?;
    if s.sigma[n - 1] <= 0.0 {
        return Err(MatError::Singular { det_abs: 0.0 });
    }
    let mut blocks: Vec<usize> = vec![1];
    for j in 1..n {
        if s.sigma[j - 1] - s.sigma[j] <= 1e-8 * s.sigma[0] {
            *blocks.last_mut().unwrap() += 1;
        } else {
            blocks.push(1);
        }
    }

    let f_fro = WeightedFunctional::unit(NormKind::Frobenius, Family::Logarithmic, Part::SymOnly);
    let f_spec = WeightedFunctional::unit(NormKind::Spectral, Family::Logarithmic, Part::SymOnly);
    let up = &s.u * &s.v.adjoint();
    let value_fro = eval_functional(a, &up, &f_fro, 0)?;
    let value_spec = eval_functional(a, &up, &f_spec, 0)?;

    let mut rng = sample::stream(seed, 0xA11);
    let mut members = vec![up];
    let mut max_deviation = 0.0f64;
    let mut attempts = 0;
    while members.len() < 9 && attempts < 60 {
        attempts += 1;
        let mut b = Matrix::zeros(n);
        let mut offset = 0;
        for &len in &blocks {
            let qb = sample::random_unitary(len, &mut rng);
            for i in 0..len {
                for j in 0..len {
                    b[(offset + i, offset + j)] = qb[(i, j)];
                }
            }
            offset += len;
        }
        let q = &(&s.u * &b) * &s.v.adjoint();
        // A block eigenvalue can land on the logarithm cut; resample.
        let (vf, vs) = match (
            eval_functional(a, &q, &f_fro, 0),
            eval_functional(a, &q, &f_spec, 0),
        ) {
            (Ok(vf), Ok(vs)) => (vf, vs),
            _ => continue,
        };
        let dev = ((vf - value_fro).abs() / value_fro.abs().max(1.0))
            .max((vs - value_spec).abs() / value_spec.abs().max(1.0));
        if dev > EQUALITY_TOL {
            return Err(MatError::DegenerateCase {
                detail: format!("block-phase member deviates by {dev:.3e}"),
            });
        }
        max_deviation = max_deviation.max(dev);
        members.push(q);
    }

    Ok(SymFamilyWitness {
        blocks,
        members,
        value_fro,
        value_spec,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::polar_decompose;

    #[test]
    fn diagonal_exp_one_matrix_carries_a_phase_interval() {
        let a = Matrix::diag_real(&[std::f64::consts::E, 1.0]);
        let family = nonuniqueness_spectral_witness(&a).unwrap();
        assert!(family.len() >= 4);
        for q in &family {
            let v = spectral_log_objective(&a, q).unwrap();
            assert!((v - 1.0).abs() < 1e-9, "{v}");
        }
        // Family members genuinely differ from the polar factor.
        let up = polar_decompose(&a).unwrap().up;
        let spread = family
            .iter()
            .map(|q| (q - &up).norm_fro())
            .fold(0.0f64, f64::max);
        assert!(spread > 0.1, "{spread}");
    }

    #[test]
    fn three_step_diagonal_keeps_objective_at_dominant_log() {
        let e = std::f64::consts::E;
        let a = Matrix::diag_real(&[e * e, e, 1.0]);
        let family = nonuniqueness_spectral_witness(&a).unwrap();
        for q in &family {
            let v = spectral_log_objective(&a, q).unwrap();
            assert!((v - 4.0).abs() < 1e-9, "{v}");
        }
    }

    #[test]
    fn scaled_unitary_input_is_degenerate() {
        let a = Matrix::identity(3).scale(2.0);
        assert!(matches!(
            nonuniqueness_spectral_witness(&a),
            Err(MatError::DegenerateCase { .. })
        ));
    }

    #[test]
    fn sym_family_on_distinct_diagonal_is_phase_only() {
        let a = Matrix::diag_real(&[2.0, 1.0, 0.5]);
        let w = nonuniqueness_sym_witness(&a, 7).unwrap();
        assert_eq!(w.blocks, vec![1, 1, 1]);
        assert!(w.members.len() >= 5);
        assert!(w.max_deviation <= 1e-9);
        // Distinct singular values force diagonal members: off-diagonal
        // mass of U^* Q V must vanish.
        for q in &w.members {
            let core = &Matrix::identity(3) * q; // A diagonal: U = V = I
            let mut off = 0.0f64;
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        off = off.max(core[(i, j)].norm());
                    }
                }
            }
            assert!(off < 1e-12, "off-diagonal {off}");
            for i in 0..3 {
                assert!((core[(i, i)].norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn repeated_singular_values_merge_into_one_block() {
        let a = Matrix::diag_real(&[2.0, 1.0, 1.0]);
        let w = nonuniqueness_sym_witness(&a, 8).unwrap();
        assert_eq!(w.blocks, vec![1, 2]);
        assert!(w.max_deviation <= 1e-9);
        let expect = (2.0f64).ln().powi(2);
        assert!((w.value_fro - expect).abs() < 1e-12);
        assert!((w.value_spec - expect).abs() < 1e-12);
    }

    #[test]
    fn identity_input_gives_the_all_unitary_family() {
        // Every unitary leaves sym log(Q^*) = 0: one block of size 3.
        let a = Matrix::identity(3);
        let w = nonuniqueness_sym_witness(&a, 9).unwrap();
        assert_eq!(w.blocks, vec![3]);
        assert!(w.value_fro.abs() < 1e-20);
        assert!(w.max_deviation <= 1e-9);
    }
}
