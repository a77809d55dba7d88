use super::{ChannelError, ChannelMatrix, Provenance};
use crate::numerics::{BlockIndexMap, ComplexMatrix, Group, Lu};
use crate::physics::{apply_ris_config, assemble_interaction_matrix, RisConfiguration, Scene};

/// H = [W⁻¹]_RT for the configured scene (proportionality constant 1).
pub fn channel_exact(s: &Scene, c: &RisConfiguration, f: f64) -> Result<ChannelMatrix, ChannelError> {
    let configured = apply_ris_config(s, c)?;
    let (w, b) = assemble_interaction_matrix(&configured, f)?;
    let lu = Lu::factor(&w)?;
    // only the T columns of W⁻¹ are needed
    let mut rhs = ComplexMatrix::zeros(w.rows(), b.len(Group::T));
    for (j, i) in b.range(Group::T).enumerate() {
        rhs[(i, j)] = num_complex::Complex64::new(1.0, 0.0);
    }
    let cols = lu.solve(&rhs);
    let r = b.range(Group::R);
    let entries = cols.block(r.start, r.len(), 0, cols.cols());
    if !entries.is_finite() {
        return Err(crate::numerics::NumericsError::SingularMatrix { pivot_index: w.rows() }.into());
    }
    Ok(ChannelMatrix {
        entries,
        frequency: f,
        provenance: Provenance::Exact,
    })
}

/// Complete W⁻¹ (for reciprocity audits and block inspection).
pub fn full_inverse(s: &Scene, c: &RisConfiguration, f: f64) -> Result<(ComplexMatrix, BlockIndexMap), ChannelError> {
    let configured = apply_ris_config(s, c)?;
    let (w, b) = assemble_interaction_matrix(&configured, f)?;
    Ok((crate::numerics::invert(&w)?, b))
}
