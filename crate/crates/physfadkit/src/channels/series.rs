//! Hierarchical series expansions of blocks of W⁻¹.
//!
//! Every series is accumulated term by term with a running product, so the
//! cost is one block product per term and each term's norm is available for
//! truncation and divergence diagnostics.

use num_complex::Complex64;

use super::{ChannelError, ChannelMatrix, Provenance, SeriesLevel};
use crate::numerics::{accumulate, invert, BlockIndexMap, ComplexMatrix, Group, SeriesMode, SeriesOutcome};
use crate::physics::{apply_ris_config, assemble_interaction_matrix, coupling_part, RisConfiguration, Scene};

/// How W_SS⁻¹ is obtained inside the RIS-level series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SsInverse {
    Exact,
    /// Born series Σ(−Φ𝓜_SS)^k Φ truncated as given.
    Series(SeriesMode),
}

/// Σ_k (−Ω𝓜)^k Ω for the self-interaction block of one group, where Ω holds
/// the group's polarizabilities and 𝓜 its mutual Green's functions.
pub fn group_inverse_series(s: &Scene, g: Group, f: f64, mode: SeriesMode) -> Result<SeriesOutcome, ChannelError> {
    let (w, b) = assemble_interaction_matrix(s, f)?;
    let idx = b.indices(g);
    if idx.is_empty() {
        return Err(ChannelError::SceneShape(format!("group {g:?} is empty")));
    }
    let block = w.select(&idx, &idx);
    let omega: Vec<Complex64> = block.diag().iter().map(|a| a.inv()).collect();
    born_series(&omega, &coupling_part(&block), mode)
}

/// Born series of W_TT⁻¹ (antenna-array self term).
pub fn antenna_self_inverse_series(s: &Scene, f: f64, mode: SeriesMode) -> Result<SeriesOutcome, ChannelError> {
    group_inverse_series(s, Group::T, f, mode)
}

/// Σ_k (−Φ𝓜_SS)^k Φ with Φ = diag(α) of the configured RIS elements.
///
/// W_SS = Φ⁻¹ + 𝓜_SS, so the alternating sign is what makes the partial sums
/// converge to W_SS⁻¹.
pub fn wss_inverse_series(phi: &[Complex64], m_ss: &ComplexMatrix, mode: SeriesMode) -> Result<SeriesOutcome, ChannelError> {
    if m_ss.shape() != (phi.len(), phi.len()) {
        return Err(ChannelError::SceneShape(format!(
            "coupling block is {:?}, expected {n}x{n}",
            m_ss.shape(),
            n = phi.len()
        )));
    }
    born_series(phi, m_ss, mode)
}

fn born_series(alpha: &[Complex64], m: &ComplexMatrix, mode: SeriesMode) -> Result<SeriesOutcome, ChannelError> {
    let neg: Vec<Complex64> = alpha.iter().map(|a| -a).collect();
    let ratio = m.scale_rows(&neg);
    Ok(accumulate(ComplexMatrix::from_diag(alpha), mode, |t| ratio.matmul(t))?)
}

/// First term −W_RR⁻¹W_RT W_TT⁻¹ and ratio W_TR W_RR⁻¹ W_RT W_TT⁻¹ of the
/// TX–RX round-trip series.
pub fn mimo_series_ratio(w: &ComplexMatrix, b: &BlockIndexMap) -> Result<(ComplexMatrix, ComplexMatrix), ChannelError> {
    let (t, r) = (b.indices(Group::T), b.indices(Group::R));
    let wtt_inv = invert(&w.select(&t, &t))?;
    let wrr_inv = invert(&w.select(&r, &r))?;
    let wrt = w.select(&r, &t);
    let wtr = w.select(&t, &r);
    let right = wrt.matmul(&wtt_inv); // W_RT W_TT⁻¹
    let first = wrr_inv.matmul(&right).scale(Complex64::new(-1.0, 0.0));
    let ratio = wtr.matmul(&wrr_inv).matmul(&right);
    Ok((first, ratio))
}

/// TX–RX Born-like series for a scene with only T and R groups.
pub fn mimo_series_rt(s: &Scene, f: f64, mode: SeriesMode) -> Result<ChannelMatrix, ChannelError> {
    let b = s.block_map();
    if b.len(Group::E) + b.len(Group::S) != 0 || b.len(Group::T) == 0 || b.len(Group::R) == 0 {
        return Err(ChannelError::SceneShape("MIMO series needs nonempty T and R and no E or S".into()));
    }
    let (w, b) = assemble_interaction_matrix(s, f)?;
    let (first, ratio) = mimo_series_ratio(&w, &b)?;
    let out = accumulate(first, mode, |t| t.matmul(&ratio))?;
    Ok(ChannelMatrix {
        entries: out.sum,
        frequency: f,
        provenance: Provenance::Series {
            level: SeriesLevel::Mimo,
            terms: out.terms,
        },
    })
}

/// Blocks shared by the RIS-level Born-like series.
struct RisBlocks {
    w3_inv: ComplexMatrix,
    ratio: ComplexMatrix,
    n_t: usize,
    n_r: usize,
}

fn ris_blocks(s: &Scene, c: &RisConfiguration, f: f64, ss: SsInverse) -> Result<RisBlocks, ChannelError> {
    let configured = apply_ris_config(s, c)?;
    let (w, b) = assemble_interaction_matrix(&configured, f)?;
    let i3 = b.indices_of(&[Group::T, Group::R, Group::E]);
    let is = b.indices(Group::S);
    let w3_inv = invert(&w.select(&i3, &i3))?;
    let w3s = w.select(&i3, &is);
    let wss = w.select(&is, &is);
    let psi = match ss {
        SsInverse::Exact => invert(&wss)?,
        SsInverse::Series(mode) => {
            let phi: Vec<Complex64> = wss.diag().iter().map(|a| a.inv()).collect();
            wss_inverse_series(&phi, &coupling_part(&wss), mode)?.sum
        }
    };
    // W_S3 = W_3Sᵀ (W is complex symmetric)
    let ratio = w3s.matmul(&psi).matmul(&w3s.transpose()).matmul(&w3_inv);
    Ok(RisBlocks {
        w3_inv,
        ratio,
        n_t: b.len(Group::T),
        n_r: b.len(Group::R),
    })
}

/// Common ratio W_3S W_SS⁻¹ W_S3 W₃⁻¹ of the RIS-level series (for ρ estimates).
pub fn generic_series_ratio(s: &Scene, c: &RisConfiguration, f: f64, ss: SsInverse) -> Result<ComplexMatrix, ChannelError> {
    Ok(ris_blocks(s, c, f, ss)?.ratio)
}

fn ris_level_series(
    s: &Scene,
    c: &RisConfiguration,
    f: f64,
    mode: SeriesMode,
    ss: SsInverse,
    level: SeriesLevel,
) -> Result<ChannelMatrix, ChannelError> {
    let rb = ris_blocks(s, c, f, ss)?;
    let n3 = rb.w3_inv.rows();
    // track only the R rows of W₃⁻¹ Q^k
    let first = rb.w3_inv.block(rb.n_t, rb.n_r, 0, n3);
    let out = accumulate(first, mode, |y| y.matmul(&rb.ratio))?;
    Ok(ChannelMatrix {
        entries: out.sum.block(0, rb.n_r, 0, rb.n_t),
        frequency: f,
        provenance: Provenance::Series { level, terms: out.terms },
    })
}

/// [W₂⁻¹]_RT from the free-space RIS series (requires N_E = 0).
pub fn ris_free_space_series(
    s: &Scene,
    c: &RisConfiguration,
    f: f64,
    mode: SeriesMode,
    ss: SsInverse,
) -> Result<ChannelMatrix, ChannelError> {
    if !s.environment.is_empty() {
        return Err(ChannelError::SceneShape("free-space RIS series needs an empty environment".into()));
    }
    ris_level_series(s, c, f, mode, ss, SeriesLevel::RisFreeSpace)
}

/// [W⁻¹]_RT from the generic-environment series in W_3S W_SS⁻¹ W_S3 W₃⁻¹.
pub fn generic_series_rt(
    s: &Scene,
    c: &RisConfiguration,
    f: f64,
    mode: SeriesMode,
    ss: SsInverse,
) -> Result<ChannelMatrix, ChannelError> {
    ris_level_series(s, c, f, mode, ss, SeriesLevel::Generic)
}
