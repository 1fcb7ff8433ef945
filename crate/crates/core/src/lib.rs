//! Matrix logarithms, polar factors, and rotation-fitting functionals.
//!
//! The crate centers on one question: over the rotations (or unitaries)
//! Q, when is the polar factor of an invertible A the minimizer of
//! weighted norms of log(Q*A) or of Q*A - I? It provides
//!
//! - dense kernels for small complex matrices (`linalg`),
//! - matrix exponentials, principal and non-principal logarithms with
//!   explicit branch enumeration (`matfun`),
//! - the polar decomposition (`polar`) and geodesic-flavored distance
//!   measures (`geodesy`),
//! - coordinate-descent minimization of the weighted functionals over
//!   SO(n) and U(n), with branch-aware objectives (`minimize`),
//! - randomized verification suites for the matrix-norm inequalities the
//!   optimality results rest on (`verify`),
//! - strain-measure evaluators and Procrustes solvers (`strainlab`),
//! - seeded random ensembles shared by tests and experiments (`sample`).
//!
//! Everything is deterministic: random draws go through named ChaCha
//! streams keyed by (seed, stream index), so every reported number is
//! reproducible bit-for-bit.

// Index loops in the kernels mirror the subscripts in the formulas.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod geodesy;
pub mod linalg;
pub mod matfun;
pub mod minimize;
pub mod polar;
pub mod sample;
pub mod strainlab;
pub mod verify;

pub use error::{MatError, Result};
pub use linalg::{norm, Matrix, NormKind};
pub use matfun::{expm, log_branches, logm_principal, BranchSet, LogBranch, ShiftVectors};
pub use minimize::{
    eval_functional, minimize_dev3, minimize_matrix_objective, minimize_over_rotations,
    minimize_scalar_theta, Family, Group, MinimizationReport, Part, RotationChart, SearchConfig,
    WeightedFunctional,
};
pub use polar::{polar_decompose, PolarDecomposition};
pub use strainlab::{
    biot_energy_density, hill_strain, procrustes_euclid, procrustes_geodesic, ProcrustesGroup,
    StrainMeasureId,
};
pub use verify::SuiteReport;
