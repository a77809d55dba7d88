use serde::{Deserialize, Serialize};

use super::specs::{Axis, CirSpec, EnclosureSpec, FreeSpaceSpec, Scenario, SweepSpec};

/// Named campaigns reachable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// ζ vs N_S in free space.
    Fig2a,
    /// ζ vs Δ_S in free space, weakly coupled elements.
    Fig2b,
    /// τ and ζ vs f_res^E in the enclosure, with matched free space.
    Fig4,
}

/// Impulse-response grid used by the enclosure campaigns.
fn campaign_cir() -> CirSpec {
    CirSpec {
        n_f: 128,
        ..CirSpec::default()
    }
}

pub fn preset(p: Preset) -> SweepSpec {
    match p {
        Preset::Fig2a => SweepSpec {
            scenario: Scenario::FreeSpace(FreeSpaceSpec {
                delta_s: 0.3,
                ..FreeSpaceSpec::default()
            }),
            axis: Axis::NS,
            grid: vec![1.0, 2.0, 4.0, 8.0, 16.0, 32.0],
            zeta: true,
            tau: false,
            matched_free_space: false,
            cir: CirSpec::default(),
        },
        Preset::Fig2b => SweepSpec {
            scenario: Scenario::FreeSpace(FreeSpaceSpec {
                chi_s: 0.25,
                ..FreeSpaceSpec::default()
            }),
            axis: Axis::DeltaS,
            grid: vec![0.3, 0.5, 0.8, 1.2],
            zeta: true,
            tau: false,
            matched_free_space: false,
            cir: CirSpec::default(),
        },
        Preset::Fig4 => SweepSpec {
            scenario: Scenario::Enclosure(EnclosureSpec::default()),
            axis: Axis::FResE,
            grid: vec![1.5, 2.0, 3.0, 5.0, 8.0],
            zeta: true,
            tau: true,
            matched_free_space: true,
            cir: campaign_cir(),
        },
    }
}

/// ζ vs χ_S in free space (N_S = 8, Δ_S = 0.5).
pub fn chi_sweep_preset() -> SweepSpec {
    SweepSpec {
        scenario: Scenario::FreeSpace(FreeSpaceSpec::default()),
        axis: Axis::ChiS,
        grid: vec![0.25, 0.5, 0.75, 1.0],
        zeta: true,
        tau: false,
        matched_free_space: false,
        cir: CirSpec::default(),
    }
}

/// τ and ζ vs fence absorption Γ_L^E in the default enclosure.
pub fn absorption_preset() -> SweepSpec {
    SweepSpec {
        scenario: Scenario::Enclosure(EnclosureSpec::default()),
        axis: Axis::GammaLE,
        grid: vec![0.0, 5.0, 15.0, 45.0],
        zeta: true,
        tau: true,
        matched_free_space: false,
        cir: campaign_cir(),
    }
}
