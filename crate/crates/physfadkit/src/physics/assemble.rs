use num_complex::Complex64;

use super::{checked_inverse_polarizability, green::green_at_distance, PhysicsError, Scene};
use crate::numerics::{BlockIndexMap, ComplexMatrix};

/// Interaction matrix W at frequency `f`: W_ii = α_i⁻¹(f), W_ij = G_ij.
pub fn assemble_interaction_matrix(s: &Scene, f: f64) -> Result<(ComplexMatrix, BlockIndexMap), PhysicsError> {
    let pc = &s.constants;
    let dips: Vec<_> = s.dipoles().collect();
    let n = dips.len();
    let k = pc.wavenumber(f);
    let dmin = pc.d_min();
    let mut w = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        w[(i, i)] = checked_inverse_polarizability(dips[i], f, pc).map_err(|e| e.at_index(i))?;
        for j in i + 1..n {
            let d = dips[i].distance(dips[j]);
            if d < dmin {
                return Err(PhysicsError::CoincidentPoints {
                    i: Some(i),
                    j: Some(j),
                    distance: d,
                });
            }
            let g = green_at_distance(d, k, pc);
            w[(i, j)] = g;
            w[(j, i)] = g;
        }
    }
    Ok((w, s.block_map()))
}

/// Off-diagonal (Green's) part of W with zero diagonal — the hollow 𝓜 matrix.
pub fn coupling_part(w: &ComplexMatrix) -> ComplexMatrix {
    let mut m = w.clone();
    for i in 0..m.rows().min(m.cols()) {
        m[(i, i)] = Complex64::new(0.0, 0.0);
    }
    m
}
