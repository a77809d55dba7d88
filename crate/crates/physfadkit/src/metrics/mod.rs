//! Linearity metric ζ with its calibration protocol, and reverberation-time
//! extraction from synthesized impulse responses.

mod linearity;
mod reverb;

pub use linearity::{
    complex_sd, fit_cascaded_siso, linearity_metric, measure, CalibrationSet, LinearityReport, CALIBRATION_PER_ELEMENT,
    TEST_SIZE,
};
pub use reverb::{
    impulse_response, impulse_response_from_spectrum, reverberation_time, ImpulseResponse, ReverbReport, DEFAULT_BAND,
    DEFAULT_N_F, DEFAULT_WINDOW_DB,
};

use thiserror::Error;

use crate::channels::ChannelError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("calibration design is rank deficient (rcond {rcond:e}); retry with a fresh seed")]
    RankDeficient { rcond: f64 },
    #[error("no exponential decay detected (slope {slope:e}, r² {r2:.3})")]
    NoDecayDetected { slope: f64, r2: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Channel(#[from] ChannelError),
}
