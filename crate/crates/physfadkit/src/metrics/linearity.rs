use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use super::MetricsError;
use crate::channels::{ChannelError, ConfigurableChannel};
use crate::numerics::{invert_checked, ComplexMatrix};
use crate::physics::RisConfiguration;

/// Calibration set size per RIS element.
pub const CALIBRATION_PER_ELEMENT: usize = 5;
/// Test set size.
pub const TEST_SIZE: usize = 100;

/// Below this rcond the (regularized) normal equations count as rank deficient.
const RANK_RCOND: f64 = 1e-10;
const REGULARIZATION: f64 = 1e-12;

/// Configurations with their measured SISO channels.
#[derive(Clone, Debug, PartialEq)]
pub struct CalibrationSet {
    /// Seed the configurations were drawn with (recorded in CSV exports).
    pub seed: u64,
    pub configs: Vec<RisConfiguration>,
    pub h: Vec<Complex64>,
}

impl CalibrationSet {
    pub fn new(seed: u64, configs: Vec<RisConfiguration>, h: Vec<Complex64>) -> Result<Self, MetricsError> {
        if configs.len() != h.len() {
            return Err(MetricsError::InvalidArgument(format!(
                "{} configurations but {} channel values",
                configs.len(),
                h.len()
            )));
        }
        if let Some(first) = configs.first() {
            if configs.iter().any(|c| c.len() != first.len()) {
                return Err(MetricsError::InvalidArgument("configurations differ in length".into()));
            }
        }
        Ok(Self { seed, configs, h })
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn n_ris(&self) -> usize {
        self.configs.first().map_or(0, RisConfiguration::len)
    }

    /// CSV with a schema comment line, then `seed,config_bits,re,im`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# physfadkit calibration v1: seed,config_bits,re,im")?;
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["seed", "config_bits", "re", "im"])?;
        for (c, h) in self.configs.iter().zip(&self.h) {
            out.write_record([self.seed.to_string(), c.bitstring(), h.re.to_string(), h.im.to_string()])?;
        }
        out.flush()
    }
}

/// Evaluate a list of configurations with a prepared evaluator.
pub fn measure(ev: &ConfigurableChannel, seed: u64, configs: Vec<RisConfiguration>) -> Result<CalibrationSet, ChannelError> {
    let h = configs.iter().map(|c| ev.evaluate_siso(c)).collect::<Result<Vec<_>, _>>()?;
    Ok(CalibrationSet { seed, configs, h })
}

/// Least-squares (h0, t) minimizing Σ|h_i − h0 − tᵀc_i|² over ±1 labels.
///
/// Normal equations in the complex field; if they are ill conditioned a
/// 1e-12 diagonal load is tried before giving up.
pub fn fit_cascaded_siso(cal: &CalibrationSet) -> Result<(Complex64, Vec<Complex64>), MetricsError> {
    let n_s = cal.n_ris();
    let m = n_s + 1;
    if cal.len() < m {
        return Err(MetricsError::RankDeficient { rcond: 0.0 });
    }
    let mut gram = ComplexMatrix::zeros(m, m);
    let mut rhs = ComplexMatrix::zeros(m, 1);
    let mut x = vec![0.0; m];
    for (c, &h) in cal.configs.iter().zip(&cal.h) {
        x[0] = 1.0;
        for (xi, l) in x[1..].iter_mut().zip(c.labels()) {
            *xi = l;
        }
        for i in 0..m {
            rhs[(i, 0)] += h * x[i];
            for j in 0..m {
                gram[(i, j)].re += x[i] * x[j];
            }
        }
    }
    let inv = match invert_checked(&gram) {
        Ok(r) if !r.ill_conditioned() => r.inverse,
        _ => {
            let load = REGULARIZATION * gram.diag().iter().map(|d| d.re).fold(0.0, f64::max);
            for i in 0..m {
                gram[(i, i)].re += load;
            }
            match invert_checked(&gram) {
                Ok(r) if r.rcond >= RANK_RCOND => r.inverse,
                Ok(r) => return Err(MetricsError::RankDeficient { rcond: r.rcond }),
                Err(_) => return Err(MetricsError::RankDeficient { rcond: 0.0 }),
            }
        }
    };
    let coef = inv.matmul(&rhs).into_vec();
    Ok((coef[0], coef[1..].to_vec()))
}

/// Population SD of complex samples, sqrt(mean |z − mean z|²).
pub fn complex_sd(z: &[Complex64]) -> f64 {
    if z.is_empty() {
        return 0.0;
    }
    let n = z.len() as f64;
    let mean: Complex64 = z.iter().sum::<Complex64>() / n;
    (z.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>() / n).sqrt()
}

/// Fitted model, ζ and ζ in dB (20·log10, ζ being an amplitude ratio).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearityReport {
    pub h0: Complex64,
    pub t: Vec<Complex64>,
    pub zeta: f64,
    pub zeta_db: f64,
    /// Exactly affine data: ζ = +∞.
    pub degenerate: bool,
    pub n_cal: usize,
    pub n_test: usize,
}

/// ζ = SD(h_test) / SD(h_test − ĥ_test) with ĥ from the model fitted on `cal`.
///
/// A channel of at most one element is affine in its label by construction,
/// so its residual is pure rounding; such reports, and any with an exactly
/// zero residual, are marked degenerate with ζ = +∞.
pub fn linearity_metric(cal: &CalibrationSet, test: &CalibrationSet) -> Result<LinearityReport, MetricsError> {
    if test.is_empty() {
        return Err(MetricsError::InvalidArgument("empty test set".into()));
    }
    if test.n_ris() != cal.n_ris() {
        return Err(MetricsError::InvalidArgument(format!(
            "calibration has {} elements, test has {}",
            cal.n_ris(),
            test.n_ris()
        )));
    }
    let (h0, t) = fit_cascaded_siso(cal)?;
    let resid: Vec<Complex64> = test
        .configs
        .iter()
        .zip(&test.h)
        .map(|(c, &h)| h - h0 - t.iter().zip(c.labels()).map(|(ti, l)| ti * l).sum::<Complex64>())
        .collect();
    let num = complex_sd(&test.h);
    let den = complex_sd(&resid);
    let degenerate = den == 0.0 || cal.n_ris() <= 1;
    let zeta = if degenerate { f64::INFINITY } else { num / den };
    Ok(LinearityReport {
        h0,
        t,
        zeta,
        zeta_db: 20.0 * zeta.log10(),
        degenerate,
        n_cal: cal.len(),
        n_test: test.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn synth(h0: Complex64, t: &[Complex64], n: usize, seed: u64) -> CalibrationSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let configs: Vec<_> = (0..n).map(|_| RisConfiguration::random(t.len(), &mut rng)).collect();
        let h = configs
            .iter()
            .map(|cf| h0 + t.iter().zip(cf.labels()).map(|(ti, l)| ti * l).sum::<Complex64>())
            .collect();
        CalibrationSet::new(seed, configs, h).unwrap()
    }

    #[test]
    fn exact_model_recovery() {
        let t = vec![c(0.1, -0.2), c(0.05, 0.3), c(-0.4, 0.0)];
        let cal = synth(c(1.0, 2.0), &t, 15, 1);
        let (h0, tf) = fit_cascaded_siso(&cal).unwrap();
        assert!((h0 - c(1.0, 2.0)).norm() < 1e-10);
        for (a, b) in tf.iter().zip(&t) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn constant_channel() {
        let cal = synth(c(5.0, 2.0), &[c(0.0, 0.0); 4], 20, 2);
        let (h0, t) = fit_cascaded_siso(&cal).unwrap();
        assert!((h0 - c(5.0, 2.0)).norm() < 1e-12);
        assert!(t.iter().all(|v| v.norm() < 1e-12));
    }

    #[test]
    fn rank_deficient_design() {
        let configs = vec![RisConfiguration::all_on(3); 10];
        let cal = CalibrationSet::new(0, configs, vec![c(1.0, 0.0); 10]).unwrap();
        assert!(matches!(fit_cascaded_siso(&cal), Err(MetricsError::RankDeficient { .. })));
    }

    #[test]
    fn model_consistent_floor() {
        let t = vec![c(0.1, -0.2), c(0.05, 0.3), c(-0.4, 0.0), c(0.2, 0.2)];
        let r = linearity_metric(&synth(c(1.0, 0.0), &t, 20, 3), &synth(c(1.0, 0.0), &t, 100, 4)).unwrap();
        assert!(r.zeta_db >= 120.0, "{}", r.zeta_db);
    }

    #[test]
    fn csv_export_has_schema_line() {
        let cal = synth(c(1.0, 0.0), &[c(0.5, 0.0), c(0.0, 0.5)], 3, 9);
        let mut buf = Vec::new();
        cal.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with('#'));
        assert_eq!(lines[1], "seed,config_bits,re,im");
        assert_eq!(lines.len(), 5);
        assert!(lines[2].starts_with("9,"));
    }
}
