//! Coordinate moves on the rotation and unitary groups.
//!
//! The search walks along one-parameter subgroups Q exp(t E_i) where E_i
//! runs over a basis of the Lie algebra. Every basis exponential is a
//! plane rotation or a phase, so a move costs O(n) column updates.

use num_complex::Complex64;

use crate::linalg::Matrix;
use crate::sample;
use rand_chacha::ChaCha8Rng;

/// Group the minimization runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    /// Real rotations SO(n).
    SpecialOrthogonal,
    /// Complex unitaries U(n).
    Unitary,
}

impl Group {
    /// Dimension of the Lie algebra: n(n-1)/2 real rotation planes, plus n
    /// phases and n(n-1)/2 imaginary planes in the unitary case.
    pub fn algebra_dim(self, n: usize) -> usize {
        match self {
            Group::SpecialOrthogonal => n * (n - 1) / 2,
            Group::Unitary => n * n,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Group::SpecialOrthogonal => "SO",
            Group::Unitary => "U",
        }
    }

    /// Haar-uniform group element.
    pub fn sample(self, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
        match self {
            Group::SpecialOrthogonal => sample::random_rotation(n, rng),
            Group::Unitary => sample::random_unitary(n, rng),
        }
    }
}

/// One basis direction of the Lie algebra.
#[derive(Debug, Clone, Copy)]
enum MoveKind {
    /// i e_p e_p^T: column p picks up the phase e^{i t}.
    Phase(usize),
    /// e_p e_q^T - e_q e_p^T: real plane rotation of columns (p, q).
    RealPlane(usize, usize),
    /// i (e_p e_q^T + e_q e_p^T): imaginary plane rotation of columns (p, q).
    ImagPlane(usize, usize),
}

fn pair(n: usize, mut k: usize) -> (usize, usize) {
    for p in 0..n {
        let row = n - 1 - p;
        if k < row {
            return (p, p + 1 + k);
        }
        k -= row;
    }
    unreachable!("pair index out of range");
}

fn decode(group: Group, n: usize, index: usize) -> MoveKind {
    match group {
        Group::SpecialOrthogonal => {
            let (p, q) = pair(n, index);
            MoveKind::RealPlane(p, q)
        }
        Group::Unitary => {
            if index < n {
                MoveKind::Phase(index)
            } else {
                let planes = n * (n - 1) / 2;
                let k = index - n;
                if k < planes {
                    let (p, q) = pair(n, k);
                    MoveKind::RealPlane(p, q)
                } else {
                    let (p, q) = pair(n, k - planes);
                    MoveKind::ImagPlane(p, q)
                }
            }
        }
    }
}

/// w += t E_index, accumulating the Lie-algebra displacement explicitly.
fn add_generator(w: &mut Matrix, group: Group, index: usize, t: f64) {
    let n = w.dim();
    match decode(group, n, index) {
        MoveKind::Phase(p) => w[(p, p)] += Complex64::new(0.0, t),
        MoveKind::RealPlane(p, q) => {
            w[(p, q)] += Complex64::new(t, 0.0);
            w[(q, p)] -= Complex64::new(t, 0.0);
        }
        MoveKind::ImagPlane(p, q) => {
            w[(p, q)] += Complex64::new(0.0, t);
            w[(q, p)] += Complex64::new(0.0, t);
        }
    }
}

/// out = q exp(t E_index).
pub fn apply_move(q: &Matrix, group: Group, index: usize, t: f64, out: &mut Matrix) {
    let n = q.dim();
    out.data_mut().copy_from_slice(q.data());
    match decode(group, n, index) {
        MoveKind::Phase(p) => {
            let ph = Complex64::new(t.cos(), t.sin());
            for i in 0..n {
                out[(i, p)] = q[(i, p)] * ph;
            }
        }
        MoveKind::RealPlane(p, qq) => {
            let (c, s) = (t.cos(), t.sin());
            for i in 0..n {
                let a = q[(i, p)];
                let b = q[(i, qq)];
                out[(i, p)] = a * c - b * s;
                out[(i, qq)] = a * s + b * c;
            }
        }
        MoveKind::ImagPlane(p, qq) => {
            let c = t.cos();
            let is = Complex64::new(0.0, t.sin());
            for i in 0..n {
                let a = q[(i, p)];
                let b = q[(i, qq)];
                out[(i, p)] = a * c + b * is;
                out[(i, qq)] = a * is + b * c;
            }
        }
    }
}

/// Exponential chart on the group, centered at the current iterate.
///
/// `q` caches the group element; `w` records the net Lie-algebra
/// displacement accepted since construction. Probing a direction never
/// composes chart coordinates: each accepted move folds into `q` and the
/// chart re-centers there, so exp-chart distortion never accumulates.
#[derive(Debug, Clone)]
pub struct RotationChart {
    group: Group,
    q: Matrix,
    w: Matrix,
}

impl RotationChart {
    /// Chart centered at `q0`. Unitarity is the caller's contract; a
    /// debug assertion catches drift in test builds.
    pub fn new(group: Group, q0: Matrix) -> Self {
        debug_assert!(q0.unitarity_residual() < 1e-10);
        let n = q0.dim();
        RotationChart {
            group,
            q: q0,
            w: Matrix::zeros(n),
        }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    /// Number of coordinate directions.
    pub fn dim(&self) -> usize {
        self.group.algebra_dim(self.q.dim())
    }

    pub fn matrix_dim(&self) -> usize {
        self.q.dim()
    }

    /// Current group element.
    pub fn q(&self) -> &Matrix {
        &self.q
    }

    /// Net skew displacement accepted so far (diagnostic).
    pub fn w(&self) -> &Matrix {
        &self.w
    }

    /// out = Q exp(t E_index) without moving the chart.
    pub fn probe(&self, index: usize, t: f64, out: &mut Matrix) {
        apply_move(&self.q, self.group, index, t, out);
    }

    /// Fold a move into the center: Q <- Q exp(t E_index), w <- w + t E.
    pub fn accept(&mut self, index: usize, t: f64) {
        let mut next = Matrix::zeros(self.q.dim());
        apply_move(&self.q, self.group, index, t, &mut next);
        self.q = next;
        add_generator(&mut self.w, self.group, index, t);
    }

    pub fn into_q(self) -> Matrix {
        self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matfun::expm;

    fn basis_matrix(group: Group, n: usize, index: usize) -> Matrix {
        // Reconstruct E_index explicitly to cross-check the closed forms.
        let mut e = Matrix::zeros(n);
        match decode(group, n, index) {
            MoveKind::Phase(p) => e[(p, p)] = Complex64::new(0.0, 1.0),
            MoveKind::RealPlane(p, q) => {
                e[(p, q)] = Complex64::new(1.0, 0.0);
                e[(q, p)] = Complex64::new(-1.0, 0.0);
            }
            MoveKind::ImagPlane(p, q) => {
                e[(p, q)] = Complex64::new(0.0, 1.0);
                e[(q, p)] = Complex64::new(0.0, 1.0);
            }
        }
        e
    }

    #[test]
    fn moves_match_series_exponential() {
        let t = 0.37;
        for (group, n) in [(Group::SpecialOrthogonal, 4), (Group::Unitary, 3)] {
            let dim = group.algebra_dim(n);
            let q = Matrix::identity(n);
            let mut out = Matrix::zeros(n);
            for idx in 0..dim {
                apply_move(&q, group, idx, t, &mut out);
                let expect = expm(&basis_matrix(group, n, idx).scale(t)).unwrap();
                assert!(
                    (&out - &expect).norm_fro() < 1e-13,
                    "group {:?} index {idx}",
                    group
                );
            }
        }
    }

    #[test]
    fn moves_preserve_unitarity() {
        let mut rng = sample::stream(9, 0);
        let q = sample::random_unitary(4, &mut rng);
        let mut out = Matrix::zeros(4);
        for idx in 0..Group::Unitary.algebra_dim(4) {
            apply_move(&q, Group::Unitary, idx, -0.9, &mut out);
            assert!(out.unitarity_residual() < 1e-12);
        }
    }

    #[test]
    fn rotation_moves_keep_real_matrices_real() {
        let mut rng = sample::stream(9, 1);
        let q = sample::random_rotation(3, &mut rng);
        let mut out = Matrix::zeros(3);
        for idx in 0..Group::SpecialOrthogonal.algebra_dim(3) {
            apply_move(&q, Group::SpecialOrthogonal, idx, 1.3, &mut out);
            assert!(out.is_real());
            assert!(out.unitarity_residual() < 1e-12);
        }
    }

    #[test]
    fn chart_tracks_displacement_and_stays_unitary() {
        let mut rng = sample::stream(9, 2);
        let mut chart = RotationChart::new(Group::Unitary, sample::random_unitary(3, &mut rng));
        let start = chart.q().clone();
        chart.accept(1, 0.4);
        chart.accept(5, -0.2);
        chart.accept(1, 0.1);
        assert!(chart.q().unitarity_residual() < 1e-13);
        // w sums the accepted generators even though q composes them.
        assert!((chart.w()[(1, 1)] - Complex64::new(0.0, 0.5)).norm() < 1e-15);
        assert!(chart.w().adjoint().data().iter().zip(chart.w().data()) .all(
            |(a, b)| (a + b).norm() < 1e-15
        ));
        assert!((&start - chart.q()).norm_fro() > 0.1);
    }

    #[test]
    fn pair_enumeration_covers_upper_triangle() {
        let n = 5;
        let mut seen = std::collections::HashSet::new();
        for k in 0..(n * (n - 1) / 2) {
            let (p, q) = pair(n, k);
            assert!(p < q && q < n);
            assert!(seen.insert((p, q)));
        }
    }
}
