use super::AnalysisError;
use crate::numerics::ComplexMatrix;

/// Absolute tolerance on diagonal magnitudes and on |a_ij − a_ji|.
pub const HOLLOW_TOLERANCE: f64 = 1e-12;

/// max_i Σ_{j≠i} |a_ij| for a complex symmetric matrix with zero diagonal,
/// which bounds its 2-norm from above.
///
/// For symmetric A the row-sum and column-sum norms coincide, so
/// ‖A‖₂ ≤ sqrt(‖A‖₁‖A‖_∞) = max row sum.
pub fn hollow_symmetric_norm_bound(a: &ComplexMatrix) -> Result<f64, AnalysisError> {
    if !a.is_square() {
        return Err(AnalysisError::NotHollowSymmetric { defect: f64::INFINITY });
    }
    let diag = a.diag().iter().map(|d| d.norm()).fold(0.0, f64::max);
    let defect = diag.max(a.symmetry_defect());
    if !(defect <= HOLLOW_TOLERANCE) {
        return Err(AnalysisError::NotHollowSymmetric { defect });
    }
    Ok((0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.norm())
                .sum::<f64>()
        })
        .fold(0.0, f64::max))
}
