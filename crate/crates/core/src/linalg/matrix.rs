//! Dense square complex matrix, row-major, for small dimensions (n <= 12).

use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{MatError, Result};

/// Largest supported dimension. Everything here is O(n^3) dense and tuned
/// for tiny matrices; the cap keeps iteration budgets meaningful.
pub const MAX_DIM: usize = 12;

/// Square complex matrix with row-major storage.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    /// Validating constructor from row-major complex entries.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(MatError::BadDimension { got: dim });
        }
        if data.len() != dim * dim {
            return Err(MatError::BadLength { got: data.len(), want: dim * dim });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(MatError::NonFinite);
        }
        Ok(Matrix { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension {dim} out of range");
        Matrix { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Row-major real entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count mismatch");
        let data = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Matrix { dim, data }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        assert!((1..=MAX_DIM).contains(&dim), "dimension {dim} out of range");
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim, "row length mismatch");
            data.extend_from_slice(r);
        }
        Matrix { dim, data }
    }

    pub fn diag_real(entries: &[f64]) -> Self {
        let mut m = Matrix::zeros(entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    pub fn diag_complex(entries: &[Complex64]) -> Self {
        let mut m = Matrix::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// Drops imaginary parts. Only meaningful when they are known to be
    /// rounding dust (e.g. principal log of a real matrix).
    pub fn realified(&self) -> Matrix {
        let data = self.data.iter().map(|z| Complex64::new(z.re, 0.0)).collect();
        Matrix { dim: self.dim, data }
    }

    /// Largest imaginary magnitude over all entries.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, z| m.max(z.im.abs()))
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn conj(&self) -> Matrix {
        let data = self.data.iter().map(|z| z.conj()).collect();
        Matrix { dim: self.dim, data }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Hermitian part (M + M*)/2.
    pub fn sym(&self) -> Matrix {
        let adj = self.adjoint();
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(adj.data.iter()) {
            *a = (*a + *b) * 0.5;
        }
        out
    }

    /// Skew-Hermitian part (M - M*)/2.
    pub fn skew(&self) -> Matrix {
        let adj = self.adjoint();
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(adj.data.iter()) {
            *a = (*a - *b) * 0.5;
        }
        out
    }

    /// Trace-free part M - (tr M / n) I.
    pub fn dev(&self) -> Matrix {
        let shift = self.trace() / self.dim as f64;
        let mut out = self.clone();
        for i in 0..self.dim {
            out[(i, i)] -= shift;
        }
        out
    }

    pub fn scale(&self, s: f64) -> Matrix {
        let data = self.data.iter().map(|z| z * s).collect();
        Matrix { dim: self.dim, data }
    }

    pub fn scale_complex(&self, s: Complex64) -> Matrix {
        let data = self.data.iter().map(|z| z * s).collect();
        Matrix { dim: self.dim, data }
    }

    pub fn add_scaled_identity(&self, s: Complex64) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.dim {
            out[(i, i)] += s;
        }
        out
    }

    /// In-place diagonal shift: self += s I, without allocating.
    pub fn shift_identity(&mut self, s: f64) {
        for i in 0..self.dim {
            let d = self.dim;
            self.data[i * d + i] += s;
        }
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm_fro_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        let n = self.dim;
        (0..n)
            .map(|j| (0..n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_max(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, z| m.max(z.norm()))
    }

    /// ||M - M*||_F relative to max(1, ||M||_F).
    pub fn hermitian_residual(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        s.sqrt() / self.norm_fro().max(1.0)
    }

    /// ||M M* - M* M||_F relative to max(1, ||M||_F^2).
    pub fn normality_residual(&self) -> f64 {
        let a = self * &self.adjoint();
        let b = &self.adjoint() * self;
        (&a - &b).norm_fro() / self.norm_fro_sqr().max(1.0)
    }

    /// ||M* M - I||_F.
    pub fn unitarity_residual(&self) -> f64 {
        let g = &self.adjoint() * self;
        (&g - &Matrix::identity(self.dim)).norm_fro()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Complex64]) {
        assert_eq!(col.len(), self.dim);
        for i in 0..self.dim {
            self[(i, j)] = col[i];
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Entrywise lexicographic order (re then im, row-major); total and
    /// deterministic, used to break ties between equally good minimizers.
    pub fn lex_cmp(&self, other: &Matrix) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter().zip(other.data.iter()) {
            match a.re.total_cmp(&b.re) {
                Ordering::Equal => {}
                o => return o,
            }
            match a.im.total_cmp(&b.im) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        let data = self.data.iter().zip(rhs.data.iter()).map(|(a, b)| a + b).collect();
        Matrix { dim: self.dim, data }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        let data = self.data.iter().zip(rhs.data.iter()).map(|(a, b)| a - b).collect();
        Matrix { dim: self.dim, data }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        let data = self.data.iter().map(|z| -z).collect();
        Matrix { dim: self.dim, data }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
