//! Matrix file parsing.
//!
//! The native format is a JSON object `{"dim": n, "real": [...], "imag": [...]}`
//! with row-major entries; `imag` may be omitted for a real matrix. Files whose
//! first non-whitespace byte is not `{` are parsed as CSV instead: one row per
//! line, comma-separated real entries, dimension inferred from the row count.

use num_complex::Complex64;
use polarlog::linalg::{Matrix, MAX_DIM};
use serde::Deserialize;
use std::path::Path;

#[derive(Deserialize)]
struct MatrixFile {
    dim: usize,
    real: Vec<f64>,
    imag: Option<Vec<f64>>,
}

pub fn load(path: &Path) -> Result<Matrix, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let parsed = if text.trim_start().starts_with('{') {
        from_json(&text)
    } else {
        from_csv(&text)
    };
    parsed.map_err(|e| format!("{}: {e}", path.display()))
}

fn check_dim(dim: usize) -> Result<(), String> {
    if dim == 0 || dim > MAX_DIM {
        return Err(format!("dim {dim} outside supported range 1..={MAX_DIM}"));
    }
    Ok(())
}

fn build(dim: usize, real: &[f64], imag: Option<&[f64]>) -> Result<Matrix, String> {
    let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
    if !finite(real) || !imag.map_or(true, finite) {
        return Err("entries must be finite".to_string());
    }
    let rows: Vec<Vec<Complex64>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let k = i * dim + j;
                    Complex64::new(real[k], imag.map_or(0.0, |v| v[k]))
                })
                .collect()
        })
        .collect();
    Ok(Matrix::from_rows(&rows))
}

fn from_json(text: &str) -> Result<Matrix, String> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    check_dim(file.dim)?;
    let want = file.dim * file.dim;
    if file.real.len() != want {
        return Err(format!(
            "real has {} entries, dim {} needs {want}",
            file.real.len(),
            file.dim
        ));
    }
    if let Some(imag) = &file.imag {
        if imag.len() != want {
            return Err(format!(
                "imag has {} entries, dim {} needs {want}",
                imag.len(),
                file.dim
            ));
        }
    }
    build(file.dim, &file.real, file.imag.as_deref())
}

fn from_csv(text: &str) -> Result<Matrix, String> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Result<Vec<f64>, String> = line
            .split(',')
            .map(|cell| {
                cell.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("line {}: bad number {:?}", ln + 1, cell.trim()))
            })
            .collect();
        rows.push(row?);
    }
    let dim = rows.len();
    check_dim(dim)?;
    let mut real = Vec::with_capacity(dim * dim);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(format!(
                "row {} has {} entries, expected {dim} (square matrix)",
                i + 1,
                row.len()
            ));
        }
        real.extend_from_slice(row);
    }
    build(dim, &real, None)
}
