//! Dense complex linear algebra and special functions.

mod bessel;
mod blocks;
mod lu;
mod matrix;
mod norms;
mod series;

pub use bessel::{bessel_j0, bessel_y0, hankel0_2, SERIES_CROSSOVER};
pub(crate) use bessel::j0_y0;
pub use blocks::{BlockIndexMap, Group};
pub use lu::{invert, invert_checked, Inversion, Lu, RCOND_REFUSE, RCOND_WARN};
pub use matrix::ComplexMatrix;
pub use norms::{spectral_norm, spectral_radius_estimate, SpectralRadiusEstimate};
pub use series::{accumulate, neumann_partial_sum, SeriesMode, SeriesOutcome, AUTO_MAX_TERMS, AUTO_TOLERANCE, DIVERGENCE_RUN};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("matrix is singular (zero pivot at column {pivot_index})")]
    SingularMatrix { pivot_index: usize },
    #[error("matrix is too ill-conditioned to invert (rcond = {rcond:e})")]
    IllConditioned { rcond: f64 },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("no convergence after {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("series diverges (term norms kept growing; stopped after {terms} terms)")]
    DivergenceDetected { terms: usize },
    #[error("argument {x} outside the function's domain")]
    Domain { x: f64 },
    #[error("{0}")]
    InvalidArgument(String),
}
