use num_complex::Complex64;

use super::{ChannelError, ChannelMatrix, Provenance};
use crate::numerics::{ComplexMatrix, Group, Lu};
use crate::physics::{assemble_interaction_matrix, checked_inverse_polarizability, Dipole, RisConfiguration, Scene};

/// Exact channel for many RIS configurations of one scene at one frequency.
///
/// Only the RIS diagonal of W depends on the configuration, so the non-RIS
/// block A is factored once and each configuration costs one N_S×N_S solve
/// of the Schur complement S(c) = W_SS(c) − BᵀA⁻¹B:
/// [W⁻¹]_RT = [A⁻¹]_RT + [A⁻¹B]_R S(c)⁻¹ [BᵀA⁻¹]_T.
#[derive(Clone, Debug)]
pub struct ConfigurableChannel {
    frequency: f64,
    direct: ComplexMatrix,
    left: ComplexMatrix,
    right: ComplexMatrix,
    schur_base: ComplexMatrix,
    inv_alpha_on: Vec<Complex64>,
    inv_alpha_off: Vec<Complex64>,
}

impl ConfigurableChannel {
    pub fn new(s: &Scene, f: f64) -> Result<Self, ChannelError> {
        let (w, b) = assemble_interaction_matrix(s, f)?;
        let i3 = b.indices_of(&[Group::T, Group::R, Group::E]);
        let is = b.indices(Group::S);
        let (n_t, n_r, n_s) = (b.len(Group::T), b.len(Group::R), is.len());
        let n3 = i3.len();
        let a = w.select(&i3, &i3);
        let bmat = w.select(&i3, &is);
        let lu = Lu::factor(&a)?;
        // one factorization, RHS = [B | e_T]
        let mut rhs = ComplexMatrix::zeros(n3, n_s + n_t);
        for i in 0..n3 {
            for j in 0..n_s {
                rhs[(i, j)] = bmat[(i, j)];
            }
        }
        for j in 0..n_t {
            rhs[(j, n_s + j)] = Complex64::new(1.0, 0.0);
        }
        let x = lu.solve(&rhs);
        let ainv_b = x.block(0, n3, 0, n_s);
        let ainv_t = x.block(0, n3, n_s, n_t);
        let direct = ainv_t.block(n_t, n_r, 0, n_t);
        let left = ainv_b.block(n_t, n_r, 0, n_s);
        let right = bmat.transpose().matmul(&ainv_t);
        let mut schur_base = w.select(&is, &is).sub(&bmat.transpose().matmul(&ainv_b));
        for i in 0..n_s {
            schur_base[(i, i)] -= w[(is[i], is[i])];
        }
        let (f_on, f_off) = s.ris_states();
        let mut inv_alpha_on = Vec::with_capacity(n_s);
        let mut inv_alpha_off = Vec::with_capacity(n_s);
        for d in &s.ris {
            inv_alpha_on.push(checked_inverse_polarizability(&Dipole { f_res: f_on, ..*d }, f, &s.constants)?);
            inv_alpha_off.push(checked_inverse_polarizability(&Dipole { f_res: f_off, ..*d }, f, &s.constants)?);
        }
        Ok(Self {
            frequency: f,
            direct,
            left,
            right,
            schur_base,
            inv_alpha_on,
            inv_alpha_off,
        })
    }

    pub fn n_ris(&self) -> usize {
        self.inv_alpha_on.len()
    }

    pub fn evaluate(&self, c: &RisConfiguration) -> Result<ChannelMatrix, ChannelError> {
        if c.len() != self.n_ris() {
            return Err(ChannelError::LengthMismatch {
                expected: self.n_ris(),
                found: c.len(),
            });
        }
        let mut sc = self.schur_base.clone();
        for (i, &bit) in c.bits().iter().enumerate() {
            sc[(i, i)] += if bit { self.inv_alpha_on[i] } else { self.inv_alpha_off[i] };
        }
        let entries = if self.n_ris() == 0 {
            self.direct.clone()
        } else {
            let x = Lu::factor(&sc)?.solve(&self.right);
            self.direct.add(&self.left.matmul(&x))
        };
        Ok(ChannelMatrix {
            entries,
            frequency: self.frequency,
            provenance: Provenance::Exact,
        })
    }

    /// SISO channel value for a configuration.
    pub fn evaluate_siso(&self, c: &RisConfiguration) -> Result<Complex64, ChannelError> {
        Ok(self.evaluate(c)?.siso())
    }
}
