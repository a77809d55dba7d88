use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use super::MetricsError;
use crate::channels::channel_exact;
use crate::physics::{RisConfiguration, Scene};

pub const DEFAULT_BAND: [f64; 2] = [0.8, 1.2];
pub const DEFAULT_N_F: usize = 512;
pub const DEFAULT_WINDOW_DB: f64 = 20.0;
/// Fewest samples a decay fit may use.
const MIN_FIT_POINTS: usize = 4;
const MIN_R2: f64 = 0.5;

/// Power envelope |h(t)|² on a uniform delay grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ImpulseResponse {
    pub power: Vec<f64>,
    /// Delay step 1/(f_hi − f_lo).
    pub dt: f64,
    /// Reference frequency used for Q = 2πf₀τ.
    pub f0: f64,
}

impl ImpulseResponse {
    pub fn delays(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.power.len()).map(move |i| i as f64 * self.dt)
    }

    /// Mean of peak-normalized envelopes (all on the same grid).
    pub fn average_normalized(list: &[ImpulseResponse]) -> Result<ImpulseResponse, MetricsError> {
        let first = list
            .first()
            .ok_or_else(|| MetricsError::InvalidArgument("no envelopes to average".into()))?;
        let mut acc = vec![0.0; first.power.len()];
        for r in list {
            if r.power.len() != acc.len() || r.dt != first.dt {
                return Err(MetricsError::InvalidArgument("envelopes on different grids".into()));
            }
            let peak = r.power.iter().copied().fold(0.0, f64::max);
            if peak > 0.0 {
                acc.iter_mut().zip(&r.power).for_each(|(a, p)| *a += p / peak);
            }
        }
        let n = list.len() as f64;
        acc.iter_mut().for_each(|a| *a /= n);
        Ok(ImpulseResponse {
            power: acc,
            dt: first.dt,
            f0: first.f0,
        })
    }
}

/// Channel impulse response of a SISO scene over `band` with `n_f` samples.
///
/// The spectrum is sampled at f_lo + nΔf (n = 0..n_f), Hann-tapered to keep
/// the band-edge sidelobes from masking the decay, and inverse transformed.
pub fn impulse_response(s: &Scene, c: &RisConfiguration, band: [f64; 2], n_f: usize) -> Result<ImpulseResponse, MetricsError> {
    check_grid(band, n_f)?;
    let df = (band[1] - band[0]) / n_f as f64;
    let spectrum = (0..n_f)
        .map(|n| channel_exact(s, c, band[0] + n as f64 * df).map(|h| h.siso()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut r = impulse_response_from_spectrum(&spectrum, band)?;
    r.f0 = s.constants.f0;
    Ok(r)
}

/// Same transform for a spectrum already sampled on the band grid.
pub fn impulse_response_from_spectrum(spectrum: &[Complex64], band: [f64; 2]) -> Result<ImpulseResponse, MetricsError> {
    let n = spectrum.len();
    check_grid(band, n)?;
    let mut buf: Vec<Complex64> = spectrum
        .iter()
        .enumerate()
        .map(|(i, h)| h * (0.5 - 0.5 * (2.0 * PI * i as f64 / n as f64).cos()))
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    Ok(ImpulseResponse {
        power: buf.iter().map(|v| (v * scale).norm_sqr()).collect(),
        dt: 1.0 / (band[1] - band[0]),
        f0: 1.0,
    })
}

fn check_grid(band: [f64; 2], n_f: usize) -> Result<(), MetricsError> {
    if !(band[0] > 0.0 && band[1] > band[0] && band[1].is_finite()) {
        return Err(MetricsError::InvalidArgument(format!("band {band:?} must satisfy 0 < f_lo < f_hi")));
    }
    if n_f < 64 || !n_f.is_power_of_two() {
        return Err(MetricsError::InvalidArgument(format!("n_f = {n_f} must be a power of two >= 64")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReverbReport {
    pub tau: f64,
    /// Composite quality factor 2πf₀τ.
    pub q: f64,
    /// Fit window below the peak, in dB.
    pub fit_range_db: f64,
    pub r2: f64,
}

/// Exponential decay time of a power envelope, τ = −1/slope of ln(power).
///
/// The slope is fitted on the Schroeder backward integral of the envelope
/// from its peak down to `window_db` below it; the integral averages out the
/// interference ripple of single responses. The raw envelope must also trend
/// downward over the same window, otherwise no decay is reported.
pub fn reverberation_time(cir: &ImpulseResponse, window_db: f64) -> Result<ReverbReport, MetricsError> {
    if !(window_db > 0.0) {
        return Err(MetricsError::InvalidArgument(format!("window {window_db} dB must be positive")));
    }
    if cir.power.iter().any(|p| !(*p >= 0.0)) {
        return Err(MetricsError::InvalidArgument("envelope must be nonnegative".into()));
    }
    let (i0, peak) = cir
        .power
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0), |best, (i, p)| if p > best.1 { (i, p) } else { best });
    let no_decay = |slope, r2| MetricsError::NoDecayDetected { slope, r2 };
    if peak == 0.0 {
        return Err(no_decay(0.0, 0.0));
    }
    let tail = &cir.power[i0..];
    let mut schroeder = vec![0.0; tail.len()];
    let mut acc = 0.0;
    for (s, p) in schroeder.iter_mut().zip(tail).rev() {
        acc += p;
        *s = acc;
    }
    let floor = 10f64.powf(-window_db / 10.0) * schroeder[0];
    let end = schroeder.iter().position(|&s| s < floor).unwrap_or(schroeder.len());
    if end < MIN_FIT_POINTS {
        return Err(no_decay(f64::NAN, 0.0));
    }
    let t: Vec<f64> = (0..end).map(|i| i as f64 * cir.dt).collect();
    let y: Vec<f64> = schroeder[..end].iter().map(|s| (s / schroeder[0]).ln()).collect();
    let (slope, r2) = linear_fit(&t, &y);
    let raw: Vec<(f64, f64)> = tail[..end]
        .iter()
        .zip(&t)
        .filter(|(p, _)| **p > 0.0)
        .map(|(p, &ti)| (ti, (p / peak).ln()))
        .collect();
    let (rt, ry): (Vec<f64>, Vec<f64>) = raw.into_iter().unzip();
    let raw_slope = if rt.len() >= 2 { linear_fit(&rt, &ry).0 } else { 0.0 };
    if !(slope < 0.0) || !(raw_slope < 0.0) || !(r2 >= MIN_R2) {
        return Err(no_decay(slope, r2));
    }
    let tau = -1.0 / slope;
    Ok(ReverbReport {
        tau,
        q: 2.0 * PI * cir.f0 * tau,
        fit_range_db: window_db,
        r2,
    })
}

/// Least-squares slope and coefficient of determination.
fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    if sxx == 0.0 {
        return (0.0, 0.0);
    }
    let slope = sxy / sxx;
    let r2 = if syy > 0.0 { (sxy * sxy / (sxx * syy)).min(1.0) } else { 0.0 };
    (slope, r2)
}
