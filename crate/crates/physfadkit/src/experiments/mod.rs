//! Scene generators and the Monte-Carlo sweep harness.

mod generate;
mod geometry;
mod presets;
mod specs;
mod sweep;

pub use generate::{gen_enclosure_scene, gen_free_space_scene, MAX_PLACEMENT_TRIES};
pub use geometry::{point_in_polygon, polygon_is_simple, polygon_perimeter};
pub use presets::{absorption_preset, chi_sweep_preset, preset, Preset};
pub use specs::{Axis, CirSpec, Clearances, EnclosureSpec, FreeSpaceSpec, Scenario, SweepSpec};
pub use sweep::{
    run_sweep, spearman, sweep_tau, sweep_zeta, RealizationOutcome, SweepPoint, SweepResult, ZetaOutcome, ZetaStats,
    SWEEP_SCHEMA,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::channels::ChannelError;
use crate::metrics::MetricsError;
use crate::physics::PhysicsError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("could not place {what} after {tries} attempts")]
    PlacementExhausted { what: String, tries: usize },
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// Independent random stream for one (seed, realization, purpose) triple.
///
/// Streams are keyed by hashing, so any realization can be regenerated in
/// isolation and the result does not depend on evaluation order.
pub fn stream_rng(seed: u64, index: u64, purpose: &str) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(b"physfadkit-stream");
    h.update(seed.to_le_bytes());
    h.update(index.to_le_bytes());
    h.update(purpose.as_bytes());
    ChaCha8Rng::from_seed(h.finalize().into())
}
