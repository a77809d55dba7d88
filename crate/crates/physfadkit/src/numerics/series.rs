//! Truncated matrix power series with fixed or adaptive order.

use super::{norms::spectral_norm, ComplexMatrix, NumericsError};

/// Consecutive growing term norms that count as divergence.
pub const DIVERGENCE_RUN: usize = 3;
/// Hard cap on the number of terms in adaptive mode.
pub const AUTO_MAX_TERMS: usize = 5000;
/// Default relative tolerance of adaptive truncation.
pub const AUTO_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SeriesMode {
    /// Exactly `K` terms (orders 0..K).
    Fixed(usize),
    /// Stop once ‖term‖₂ < tolerance·‖sum‖₂; divergence is flagged after
    /// [`DIVERGENCE_RUN`] consecutive growing term norms.
    Auto { tolerance: f64 },
}

impl SeriesMode {
    /// Adaptive truncation with the default tolerance.
    pub fn auto() -> Self {
        SeriesMode::Auto {
            tolerance: AUTO_TOLERANCE,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeriesOutcome {
    pub sum: ComplexMatrix,
    /// Number of terms accumulated.
    pub terms: usize,
    /// Norm of each term (2-norm in auto mode, Frobenius in fixed mode).
    pub term_norms: Vec<f64>,
}

/// Σ_k T_k with `T_0 = first` and `T_{k+1} = next(T_k)`.
pub fn accumulate(
    first: ComplexMatrix,
    mode: SeriesMode,
    mut next: impl FnMut(&ComplexMatrix) -> ComplexMatrix,
) -> Result<SeriesOutcome, NumericsError> {
    match mode {
        SeriesMode::Fixed(k) => {
            if k == 0 {
                return Err(NumericsError::InvalidArgument("series order K must be >= 1".into()));
            }
            let mut norms = vec![first.frobenius_norm()];
            let mut sum = first.clone();
            let mut term = first;
            for _ in 1..k {
                term = next(&term);
                norms.push(term.frobenius_norm());
                sum.add_assign(&term);
            }
            Ok(SeriesOutcome {
                sum,
                terms: k,
                term_norms: norms,
            })
        }
        SeriesMode::Auto { tolerance } => {
            if !(tolerance > 0.0) {
                return Err(NumericsError::InvalidArgument("auto tolerance must be > 0".into()));
            }
            let mut norms = vec![spectral_norm(&first)?];
            let mut sum = first.clone();
            let mut term = first;
            let mut growing = 0;
            while norms.len() < AUTO_MAX_TERMS {
                term = next(&term);
                if !term.is_finite() {
                    return Err(NumericsError::DivergenceDetected { terms: norms.len() });
                }
                let n = spectral_norm(&term)?;
                let prev = *norms.last().unwrap();
                norms.push(n);
                sum.add_assign(&term);
                if n > prev {
                    growing += 1;
                    if growing >= DIVERGENCE_RUN {
                        return Err(NumericsError::DivergenceDetected { terms: norms.len() });
                    }
                } else {
                    growing = 0;
                }
                if n <= tolerance * spectral_norm(&sum)? {
                    return Ok(SeriesOutcome {
                        sum,
                        terms: norms.len(),
                        term_norms: norms,
                    });
                }
            }
            Err(NumericsError::NonConvergence { iterations: AUTO_MAX_TERMS })
        }
    }
}

/// Σ_{k=0}^{K−1} X^k with a running power (one product per term).
pub fn neumann_partial_sum(x: &ComplexMatrix, k: usize) -> Result<ComplexMatrix, NumericsError> {
    if !x.is_square() {
        return Err(NumericsError::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    accumulate(ComplexMatrix::identity(x.rows()), SeriesMode::Fixed(k), |p| p.matmul(x)).map(|o| o.sum)
}
