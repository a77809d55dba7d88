use num_complex::Complex64;
use serde::Serialize;

use super::{AnalysisError, ALPHA_SPREAD_TOLERANCE};
use crate::numerics::{invert, Group};
use crate::physics::{assemble_interaction_matrix, green, PhysicalConstants, PhysicsError, Scene};

/// C = |α|·max_i Σ_{j≠i} |G_ij| for a group of identical elements.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CouplingConstant {
    pub value: f64,
    pub group: Group,
    pub alpha_magnitude: f64,
    pub max_row_sum: f64,
}

impl CouplingConstant {
    /// Whether the Born series of this group is certified to converge.
    pub fn certifies_convergence(&self) -> bool {
        self.value < 1.0
    }
}

pub fn coupling_constant(
    group: Group,
    alphas: &[Complex64],
    positions: &[[f64; 2]],
    k: f64,
    pc: &PhysicalConstants,
) -> Result<CouplingConstant, AnalysisError> {
    if alphas.len() != positions.len() {
        return Err(AnalysisError::InvalidArgument(format!(
            "{} polarizabilities for {} positions",
            alphas.len(),
            positions.len()
        )));
    }
    if alphas.is_empty() {
        return Err(AnalysisError::InvalidArgument("empty group".into()));
    }
    let mags: Vec<f64> = alphas.iter().map(|a| a.norm()).collect();
    let hi = mags.iter().copied().fold(0.0, f64::max);
    let lo = mags.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = if hi > 0.0 { (hi - lo) / hi } else { 0.0 };
    if spread > ALPHA_SPREAD_TOLERANCE {
        return Err(AnalysisError::HeterogeneousAlpha { spread });
    }
    let n = positions.len();
    let mut max_row_sum: f64 = 0.0;
    for i in 0..n {
        let mut row = 0.0;
        for j in 0..n {
            if j != i {
                row += green(positions[i], positions[j], k, pc)
                    .map_err(|e| match e {
                        PhysicsError::CoincidentPoints { distance, .. } => PhysicsError::CoincidentPoints {
                            i: Some(i),
                            j: Some(j),
                            distance,
                        },
                        other => other,
                    })?
                    .norm();
            }
        }
        max_row_sum = max_row_sum.max(row);
    }
    Ok(CouplingConstant {
        value: hi * max_row_sum,
        group,
        alpha_magnitude: hi,
        max_row_sum,
    })
}

/// Coupling constant of one group of a scene at frequency `f` (RIS elements
/// in whatever state the scene stores).
pub fn group_coupling_constant(s: &Scene, g: Group, f: f64) -> Result<CouplingConstant, AnalysisError> {
    let members = s.group(g);
    let alphas = members
        .iter()
        .map(|d| crate::physics::checked_inverse_polarizability(d, f, &s.constants).map(|a| a.inv()))
        .collect::<Result<Vec<_>, _>>()?;
    let positions: Vec<[f64; 2]> = members.iter().map(|d| d.position()).collect();
    coupling_constant(g, &alphas, &positions, s.constants.wavenumber(f), &s.constants)
}

/// Normalized truncation error bound C^K(1+C)/(1−C) of a K-term Born series.
pub fn truncation_error_bound(c: f64, k: usize) -> Result<f64, AnalysisError> {
    if !(c >= 0.0) {
        return Err(AnalysisError::InvalidArgument(format!("coupling constant {c} must be nonnegative")));
    }
    if c >= 1.0 {
        return Err(AnalysisError::NotConvergent { c });
    }
    if k == 0 {
        return Err(AnalysisError::InvalidArgument("K must be at least 1".into()));
    }
    Ok(c.powi(k as i32) * (1.0 + c) / (1.0 - c))
}

/// Upper bound on ‖W_TR W_RR⁻¹ W_RT W_TT⁻¹‖₂, the common ratio of the TX–RX
/// round-trip series. Decays like 1/D_RT with the closest TX–RX distance.
pub fn mimo_ratio_bound(s: &Scene, f: f64) -> Result<f64, AnalysisError> {
    let (n_t, n_r) = (s.transmitters.len(), s.receivers.len());
    if n_t == 0 || n_r == 0 {
        return Err(AnalysisError::InvalidArgument("needs nonempty T and R groups".into()));
    }
    let ct = group_coupling_constant(s, Group::T, f)?;
    let cr = group_coupling_constant(s, Group::R, f)?;
    for c in [ct.value, cr.value] {
        if c >= 1.0 {
            return Err(AnalysisError::NotConvergent { c });
        }
    }
    let d_rt = s
        .transmitters
        .iter()
        .flat_map(|t| s.receivers.iter().map(move |r| t.distance(r)))
        .fold(f64::INFINITY, f64::min);
    let k = s.constants.wavenumber(f);
    let g = crate::physics::green_at_distance(d_rt, k, &s.constants);
    Ok(ct.alpha_magnitude / (1.0 - ct.value)
        * (cr.alpha_magnitude / (1.0 - cr.value))
        * (n_t * n_r) as f64
        * g.norm_sqr())
}

/// Measured ‖W_TR W_RR⁻¹ W_RT W_TT⁻¹‖₂ (the quantity [`mimo_ratio_bound`] bounds).
pub fn mimo_ratio_norm(s: &Scene, f: f64) -> Result<f64, AnalysisError> {
    let (w, b) = assemble_interaction_matrix(s, f)?;
    let (t, r) = (b.indices(Group::T), b.indices(Group::R));
    let ratio = w
        .select(&t, &r)
        .matmul(&invert(&w.select(&r, &r))?)
        .matmul(&w.select(&r, &t))
        .matmul(&invert(&w.select(&t, &t))?);
    Ok(crate::numerics::spectral_norm(&ratio)?)
}

/// Measured truncation error ‖W_gg⁻¹ − S_K‖₂·‖W_gg‖₂ of the K-term Born
/// series of one group (the quantity bounded by [`truncation_error_bound`]).
pub fn born_truncation_error(s: &Scene, g: Group, f: f64, k: usize) -> Result<f64, AnalysisError> {
    let (w, b) = assemble_interaction_matrix(s, f)?;
    let idx = b.indices(g);
    let block = w.select(&idx, &idx);
    let partial = crate::channels::group_inverse_series(s, g, f, crate::numerics::SeriesMode::Fixed(k))
        .map_err(|e| AnalysisError::InvalidArgument(e.to_string()))?
        .sum;
    let err = invert(&block)?.sub(&partial);
    Ok(crate::numerics::spectral_norm(&err)? * crate::numerics::spectral_norm(&block)?)
}

/// ‖Ω𝓜‖₂ of one group: the norm of the Born series' common ratio, which the
/// coupling constant bounds from above.
pub fn born_ratio_norm(s: &Scene, g: Group, f: f64) -> Result<f64, AnalysisError> {
    let (w, b) = assemble_interaction_matrix(s, f)?;
    let idx = b.indices(g);
    let block = w.select(&idx, &idx);
    let omega: Vec<Complex64> = block.diag().iter().map(|a| a.inv()).collect();
    Ok(crate::numerics::spectral_norm(&crate::physics::coupling_part(&block).scale_rows(&omega))?)
}

/// Rough bounce count 𝒩 = τc/∛V and the suggested truncation order
/// K ≈ (N_S σ_S / A_E)·𝒩 for a reverberant environment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BounceEstimate {
    pub tau: f64,
    pub volume: f64,
    pub bounces: f64,
    pub k_est: f64,
    pub sigma_s: f64,
    pub area_e: f64,
}

pub fn bounce_estimate(tau: f64, volume: f64, n_s: usize, sigma_s: f64, area_e: f64) -> Result<BounceEstimate, AnalysisError> {
    if !(tau >= 0.0 && tau.is_finite()) {
        return Err(AnalysisError::InvalidArgument(format!("tau = {tau}")));
    }
    for (name, v) in [("volume", volume), ("sigma_s", sigma_s), ("area_e", area_e)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(AnalysisError::InvalidArgument(format!("{name} = {v} must be positive")));
        }
    }
    let bounces = tau / volume.cbrt();
    Ok(BounceEstimate {
        tau,
        volume,
        bounces,
        k_est: n_s as f64 * sigma_s / area_e * bounces,
        sigma_s,
        area_e,
    })
}
