//! Dipole model, polarizabilities, 2D Green's function, scenes and the
//! interaction matrix W.

mod assemble;
mod constants;
mod dipole;
mod green;
mod scene;

pub use assemble::{assemble_interaction_matrix, coupling_part};
pub use constants::PhysicalConstants;
pub use dipole::{
    checked_inverse_polarizability, inverse_polarizability, inverse_polarizability_in, lossless_gamma_r, Dipole,
    DEFAULT_GAMMA_R,
};
pub use green::green;
pub(crate) use green::green_at_distance;
pub use scene::{apply_ris_config, RisConfiguration, Scene};

use thiserror::Error;

use crate::numerics::NumericsError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhysicsError {
    #[error("energy conservation violated{}: Im(1/alpha) = {im_inverse_alpha} < mu = {mu}", fmt_index(.index))]
    EnergyConservationViolation {
        index: Option<usize>,
        im_inverse_alpha: f64,
        mu: f64,
    },
    #[error("dipoles {i:?} and {j:?} are {distance} apart, below the minimum separation")]
    CoincidentPoints {
        i: Option<usize>,
        j: Option<usize>,
        distance: f64,
    },
    #[error("config length {found} does not match the {expected} RIS elements")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid {field}{}: {reason}", fmt_index(.index))]
    InvalidParameter {
        index: Option<usize>,
        field: String,
        reason: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("io error: {0}")]
    Io(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

fn fmt_index(i: &Option<usize>) -> String {
    i.map(|i| format!(" at dipole {i}")).unwrap_or_default()
}

impl PhysicsError {
    pub(crate) fn at_index(self, i: usize) -> Self {
        match self {
            PhysicsError::EnergyConservationViolation {
                im_inverse_alpha, mu, ..
            } => PhysicsError::EnergyConservationViolation {
                index: Some(i),
                im_inverse_alpha,
                mu,
            },
            other => other,
        }
    }
}
