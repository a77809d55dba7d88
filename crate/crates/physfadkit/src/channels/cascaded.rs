use num_complex::Complex64;

use super::{ChannelError, ChannelMatrix, Provenance};
use crate::numerics::{invert, ComplexMatrix, Group};
use crate::physics::{assemble_interaction_matrix, checked_inverse_polarizability, Dipole, RisConfiguration, Scene};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Environment {
    /// Requires N_E = 0; blocks of W₁⁻¹.
    FreeSpace,
    /// Blocks of W₃⁻¹ (T, R and E together).
    Generic,
}

/// Which path families enter H1 and H2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pruning {
    /// All families (RIS→T, RIS→R, RIS→E starts; likewise for H2 ends).
    Full,
    /// Drop the RIS→TX start in H1 and the RX→RIS end in H2 (weak, distant
    /// antennas). Lets callers measure what that assumption costs.
    Assumption2,
}

/// Affine channel model H(c) = H0 + H1 diag(c) H2 in the ±1 labels c.
#[derive(Clone, Debug, PartialEq)]
pub struct CascadedModel {
    pub h0: ComplexMatrix,
    pub h1: ComplexMatrix,
    pub h2: ComplexMatrix,
    pub frequency: f64,
}

impl CascadedModel {
    /// Evaluate at arbitrary real labels (not restricted to ±1).
    pub fn predict_labels(&self, labels: &[f64]) -> Result<ComplexMatrix, ChannelError> {
        if labels.len() != self.h1.cols() {
            return Err(ChannelError::LengthMismatch {
                expected: self.h1.cols(),
                found: labels.len(),
            });
        }
        let d: Vec<Complex64> = labels.iter().map(|&l| Complex64::new(l, 0.0)).collect();
        Ok(self.h0.add(&self.h1.scale_cols(&d).matmul(&self.h2)))
    }

    /// SISO reduction (h0, t) with t = h1 ⊙ h2, if the model is 1×1.
    pub fn siso(&self) -> Option<(Complex64, Vec<Complex64>)> {
        if self.h0.shape() != (1, 1) {
            return None;
        }
        let t = (0..self.h1.cols()).map(|i| self.h1[(0, i)] * self.h2[(i, 0)]).collect();
        Some((self.h0[(0, 0)], t))
    }
}

/// H0 + H1·diag(c)·H2 for a configuration's ±1 labels.
pub fn cascaded_predict(m: &CascadedModel, c: &RisConfiguration) -> Result<ChannelMatrix, ChannelError> {
    Ok(ChannelMatrix {
        entries: m.predict_labels(&c.labels())?,
        frequency: m.frequency,
        provenance: Provenance::Cascaded,
    })
}

/// Cascaded model read off the linear-order term of the RIS series, with
/// W_SS⁻¹ ≈ Φ = diag(α).
///
/// Φ_i takes two values; writing Φ_i = ᾱ_i + c_i δ_i with ᾱ = (α_on + α_off)/2
/// and δ = (α_on − α_off)/2 folds the constant part into H0 and scales H1's
/// columns by δ, so the model is affine in the ±1 labels.
pub fn cascaded_from_blocks(s: &Scene, f: f64, env: Environment, pruning: Pruning) -> Result<CascadedModel, ChannelError> {
    if env == Environment::FreeSpace && !s.environment.is_empty() {
        return Err(ChannelError::SceneShape("free-space cascaded model needs an empty environment".into()));
    }
    let (w, b) = assemble_interaction_matrix(s, f)?;
    let (n_t, n_r, n_e) = (b.len(Group::T), b.len(Group::R), b.len(Group::E));
    let i3 = b.indices_of(&[Group::T, Group::R, Group::E]);
    let is = b.indices(Group::S);
    let w3_inv = invert(&w.select(&i3, &i3))?;
    let w3s = w.select(&i3, &is);
    let n3 = i3.len();

    // local index sets inside the 3-block
    let t_loc: Vec<usize> = (0..n_t).collect();
    let r_loc: Vec<usize> = (n_t..n_t + n_r).collect();
    let e_loc: Vec<usize> = (n_t + n_r..n3).collect();
    debug_assert_eq!(e_loc.len(), n_e);
    let (h1_via, h2_via): (Vec<usize>, Vec<usize>) = match pruning {
        Pruning::Full => ((0..n3).collect(), (0..n3).collect()),
        Pruning::Assumption2 => (
            r_loc.iter().chain(&e_loc).copied().collect(),
            t_loc.iter().chain(&e_loc).copied().collect(),
        ),
    };
    let all_s: Vec<usize> = (0..is.len()).collect();
    // H1 = Σ_X [W₃⁻¹]_RX W_XS,  H2 = Σ_X W_SX [W₃⁻¹]_XT
    let h1b = w3_inv.select(&r_loc, &h1_via).matmul(&w3s.select(&h1_via, &all_s));
    let h2b = w3s.select(&h2_via, &all_s).transpose().matmul(&w3_inv.select(&h2_via, &t_loc));

    let (f_on, f_off) = s.ris_states();
    let mut mean = Vec::with_capacity(is.len());
    let mut half = Vec::with_capacity(is.len());
    for d in &s.ris {
        let a_on = checked_inverse_polarizability(&Dipole { f_res: f_on, ..*d }, f, &s.constants)?.inv();
        let a_off = checked_inverse_polarizability(&Dipole { f_res: f_off, ..*d }, f, &s.constants)?.inv();
        mean.push((a_on + a_off) * 0.5);
        half.push((a_on - a_off) * 0.5);
    }
    let h0 = w3_inv
        .select(&r_loc, &t_loc)
        .add(&h1b.scale_cols(&mean).matmul(&h2b));
    Ok(CascadedModel {
        h0,
        h1: h1b.scale_cols(&half),
        h2: h2b,
        frequency: f,
    })
}
