//! Convergence constants, truncation-error and round-trip bounds, the
//! hollow-symmetric norm bound, and bounce-count estimates.

mod bounds;
mod hollow;

pub use bounds::{
    born_ratio_norm, born_truncation_error, mimo_ratio_norm, 
    bounce_estimate, coupling_constant, group_coupling_constant, mimo_ratio_bound, truncation_error_bound,
    BounceEstimate, CouplingConstant,
};
pub use hollow::{hollow_symmetric_norm_bound, HOLLOW_TOLERANCE};

use thiserror::Error;

use crate::numerics::NumericsError;
use crate::physics::PhysicsError;

/// Relative spread of |α| beyond which elements are not "identical".
pub const ALPHA_SPREAD_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("polarizability magnitudes differ (relative spread {spread:e}); the coupling constant assumes identical elements")]
    HeterogeneousAlpha { spread: f64 },
    #[error("coupling constant {c} >= 1: the series is not certified to converge")]
    NotConvergent { c: f64 },
    #[error("matrix is not complex symmetric and hollow (defect {defect:e})")]
    NotHollowSymmetric { defect: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
