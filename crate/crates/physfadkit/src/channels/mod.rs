//! End-to-end channels: exact block inversion, the Born and Born-like series
//! expansions, and the cascaded (linear-in-configuration) model.

mod cascaded;
mod evaluator;
mod exact;
mod series;

pub use cascaded::{cascaded_from_blocks, cascaded_predict, CascadedModel, Environment, Pruning};
pub use evaluator::ConfigurableChannel;
pub use exact::{channel_exact, full_inverse};
pub use series::{
    antenna_self_inverse_series, generic_series_ratio, generic_series_rt, group_inverse_series, mimo_series_ratio,
    mimo_series_rt, ris_free_space_series, wss_inverse_series, SsInverse,
};

use thiserror::Error;

use crate::numerics::{ComplexMatrix, NumericsError, SeriesMode};
use crate::physics::PhysicsError;

pub use crate::numerics::AUTO_TOLERANCE;

/// Truncation control for every expansion level.
pub type SeriesTruncation = SeriesMode;

/// Which expansion produced a series result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesLevel {
    /// Born series of a single group's self-interaction block.
    AntennaSelf,
    /// TX–RX round-trip Born-like series.
    Mimo,
    /// RIS in free space: ratio W_1S W_SS⁻¹ W_S1 W₁⁻¹.
    RisFreeSpace,
    /// Born series of W_SS⁻¹ (RIS mutual coupling).
    RisMutual,
    /// Generic environment: ratio W_3S W_SS⁻¹ W_S3 W₃⁻¹.
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    Series { level: SeriesLevel, terms: usize },
    /// Affine prediction H0 + H1 diag(c) H2.
    Cascaded,
}

/// N_R × N_T channel matrix at one frequency.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelMatrix {
    pub entries: ComplexMatrix,
    pub frequency: f64,
    pub provenance: Provenance,
}

impl ChannelMatrix {
    /// The (0, 0) entry; the SISO channel.
    pub fn siso(&self) -> num_complex::Complex64 {
        self.entries[(0, 0)]
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("scene does not fit this operation: {0}")]
    SceneShape(String),
    #[error("config length {found} does not match the {expected} RIS elements")]
    LengthMismatch { expected: usize, found: usize },
}

impl ChannelError {
    pub fn is_divergence(&self) -> bool {
        matches!(self, ChannelError::Numerics(NumericsError::DivergenceDetected { .. }))
    }
}
