use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::generate::{gen_enclosure_scene, gen_free_space_scene};
use super::specs::{Axis, CirSpec, Scenario, SweepSpec};
use super::{stream_rng, ExperimentError};
use crate::channels::ConfigurableChannel;
use crate::metrics::{
    impulse_response, linearity_metric, measure, reverberation_time, ImpulseResponse, LinearityReport, MetricsError,
    ReverbReport, CALIBRATION_PER_ELEMENT, TEST_SIZE,
};
use crate::physics::{RisConfiguration, Scene};

pub const SWEEP_SCHEMA: &str = "physfadkit sweep v1";

/// ζ outcome of one realization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum ZetaOutcome {
    Ok(f64),
    /// Exactly affine channel (ζ = +∞).
    Degenerate,
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealizationOutcome {
    pub index: u64,
    pub zeta: Option<ZetaOutcome>,
    pub matched_zeta: Option<ZetaOutcome>,
    /// Why no impulse response was produced, if one was requested.
    pub cir_error: Option<String>,
}

/// Summary of ζ_dB over a grid point's realizations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZetaStats {
    /// Mean over non-degenerate realizations; +∞ if all were degenerate.
    pub mean_db: f64,
    /// Population SD over the same realizations.
    pub sd_db: f64,
    pub n_ok: usize,
    /// Realizations whose fit or channel evaluation errored.
    pub n_failed: usize,
    pub n_degenerate: usize,
}

impl ZetaStats {
    fn from_outcomes<'a>(it: impl Iterator<Item = &'a ZetaOutcome>) -> Self {
        let mut ok = Vec::new();
        let (mut degenerate, mut failed) = (0, 0);
        for o in it {
            match o {
                ZetaOutcome::Ok(v) => ok.push(*v),
                ZetaOutcome::Degenerate => degenerate += 1,
                ZetaOutcome::Failed(_) => failed += 1,
            }
        }
        let (mean_db, sd_db) = if ok.is_empty() {
            (if degenerate > 0 { f64::INFINITY } else { f64::NAN }, f64::NAN)
        } else {
            let n = ok.len() as f64;
            let m = ok.iter().sum::<f64>() / n;
            (m, (ok.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n).sqrt())
        };
        Self {
            mean_db,
            sd_db,
            n_ok: ok.len(),
            n_failed: failed,
            n_degenerate: degenerate,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub axis_value: f64,
    /// Seed base; realization i uses streams keyed by (seed, i).
    pub seed: u64,
    pub realizations: usize,
    pub zeta: Option<ZetaStats>,
    pub matched_zeta: Option<ZetaStats>,
    /// Decay fit of the realization-averaged envelope (`None` if no decay was found).
    pub reverb: Option<ReverbReport>,
    pub tau_requested: bool,
    pub outcomes: Vec<RealizationOutcome>,
}

impl SweepPoint {
    pub fn mean_zeta_db(&self) -> Option<f64> {
        self.zeta.map(|z| z.mean_db)
    }

    pub fn mean_tau(&self) -> Option<f64> {
        self.reverb.map(|r| r.tau)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub axis: Axis,
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    pub fn axis_values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.axis_value).collect()
    }

    pub fn mean_zeta_db(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.mean_zeta_db().unwrap_or(f64::NAN)).collect()
    }

    pub fn matched_mean_zeta_db(&self) -> Vec<f64> {
        self.points
            .iter()
            .map(|p| p.matched_zeta.map_or(f64::NAN, |z| z.mean_db))
            .collect()
    }

    pub fn mean_tau(&self) -> Vec<Option<f64>> {
        self.points.iter().map(SweepPoint::mean_tau).collect()
    }

    /// Schema comment, header, one row per grid point. Optional columns
    /// (mean_tau, matched free-space ζ) appear only when recorded.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let tau = self.points.iter().any(|p| p.tau_requested);
        let matched = self.points.iter().any(|p| p.matched_zeta.is_some());
        let mut header = vec!["axis_value", "mean_zeta_db", "sd_zeta_db", "n_ok", "n_degenerate", "n_failed"];
        if tau {
            header.push("mean_tau");
        }
        if matched {
            header.extend(["mean_zeta_db_free_space", "sd_zeta_db_free_space", "n_ok_free_space"]);
        }
        header.extend(["realizations", "seed"]);
        writeln!(w, "# {SWEEP_SCHEMA}; axis={}; columns={}", self.axis.name(), header.join(","))?;
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&header)?;
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for p in &self.points {
            let z = p.zeta;
            let mut row = vec![
                p.axis_value.to_string(),
                opt(z.map(|z| z.mean_db)),
                opt(z.map(|z| z.sd_db)),
                z.map(|z| z.n_ok.to_string()).unwrap_or_default(),
                z.map(|z| z.n_degenerate.to_string()).unwrap_or_default(),
                z.map(|z| z.n_failed.to_string()).unwrap_or_default(),
            ];
            if tau {
                row.push(opt(p.mean_tau()));
            }
            if matched {
                let m = p.matched_zeta;
                row.push(opt(m.map(|z| z.mean_db)));
                row.push(opt(m.map(|z| z.sd_db)));
                row.push(m.map(|z| z.n_ok.to_string()).unwrap_or_default());
            }
            row.push(p.realizations.to_string());
            row.push(p.seed.to_string());
            out.write_record(&row)?;
        }
        out.flush()
    }
}

fn generate(sc: &Scenario, index: u64) -> Result<Scene, ExperimentError> {
    match sc {
        Scenario::FreeSpace(s) => gen_free_space_scene(s, index),
        Scenario::Enclosure(s) => gen_enclosure_scene(s, index),
    }
}

fn random_configs(n_s: usize, count: usize, seed: u64, index: u64, purpose: &str) -> Vec<RisConfiguration> {
    let mut rng = stream_rng(seed, index, purpose);
    (0..count).map(|_| RisConfiguration::random(n_s, &mut rng)).collect()
}

/// The calibration protocol on one scene: 5·N_S random calibration
/// configurations, 100 fresh test configurations, ζ of the fitted model.
fn zeta_of(scene: &Scene, cal: &[RisConfiguration], test: &[RisConfiguration], seed: u64) -> ZetaOutcome {
    let run = || -> Result<LinearityReport, MetricsError> {
        let ev = ConfigurableChannel::new(scene, scene.constants.f0)?;
        let c = measure(&ev, seed, cal.to_vec())?;
        let t = measure(&ev, seed, test.to_vec())?;
        linearity_metric(&c, &t)
    };
    match run() {
        Ok(r) if r.degenerate => ZetaOutcome::Degenerate,
        Ok(r) => ZetaOutcome::Ok(r.zeta_db),
        Err(e) => ZetaOutcome::Failed(e.to_string()),
    }
}

fn realize(
    spec: &SweepSpec,
    sc: &Scenario,
    index: u64,
) -> Result<(RealizationOutcome, Option<ImpulseResponse>), ExperimentError> {
    let scene = generate(sc, index)?;
    let seed = sc.seed();
    let n_s = scene.n_ris();
    let mut out = RealizationOutcome {
        index,
        zeta: None,
        matched_zeta: None,
        cir_error: None,
    };
    if spec.zeta {
        let cal = random_configs(n_s, CALIBRATION_PER_ELEMENT * n_s, seed, index, "calibration");
        let test = random_configs(n_s, TEST_SIZE, seed, index, "test");
        out.zeta = Some(zeta_of(&scene, &cal, &test, seed));
        if spec.matched_free_space {
            out.matched_zeta = Some(zeta_of(&scene.without_environment(), &cal, &test, seed));
        }
    }
    let mut cir = None;
    if spec.tau {
        let c = random_configs(n_s, 1, seed, index, "cir").remove(0);
        match impulse_response(&scene, &c, spec.cir.band, spec.cir.n_f) {
            Ok(r) => cir = Some(r),
            Err(e) => out.cir_error = Some(e.to_string()),
        }
    }
    Ok((out, cir))
}

fn run_point(spec: &SweepSpec, value: f64) -> Result<SweepPoint, ExperimentError> {
    let sc = spec.scenario.with_axis(spec.axis, value)?;
    let n = sc.realizations();
    let results: Vec<_> = (0..n as u64)
        .into_par_iter()
        .map(|i| realize(spec, &sc, i))
        .collect::<Result<Vec<_>, _>>()?;
    let (outcomes, cirs): (Vec<RealizationOutcome>, Vec<Option<ImpulseResponse>>) = results.into_iter().unzip();
    let zeta = spec
        .zeta
        .then(|| ZetaStats::from_outcomes(outcomes.iter().filter_map(|o| o.zeta.as_ref())));
    let matched_zeta = (spec.zeta && spec.matched_free_space)
        .then(|| ZetaStats::from_outcomes(outcomes.iter().filter_map(|o| o.matched_zeta.as_ref())));
    let reverb = if spec.tau {
        let envs: Vec<ImpulseResponse> = cirs.into_iter().flatten().collect();
        if envs.is_empty() {
            None
        } else {
            reverberation_time(&ImpulseResponse::average_normalized(&envs)?, spec.cir.window_db).ok()
        }
    } else {
        None
    };
    Ok(SweepPoint {
        axis_value: value,
        seed: sc.seed(),
        realizations: n,
        zeta,
        matched_zeta,
        reverb,
        tau_requested: spec.tau,
        outcomes,
    })
}

/// Run a sweep on `workers` threads (0 = all cores). The result does not
/// depend on the worker count.
pub fn run_sweep(spec: &SweepSpec, workers: usize) -> Result<SweepResult, ExperimentError> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| ExperimentError::InvalidSpec(format!("thread pool: {e}")))?;
    let points = pool.install(|| spec.grid.iter().map(|&v| run_point(spec, v)).collect::<Result<Vec<_>, _>>())?;
    Ok(SweepResult { axis: spec.axis, points })
}

/// Mean ζ_dB per grid value.
pub fn sweep_zeta(scenario: &Scenario, axis: Axis, grid: &[f64], workers: usize) -> Result<SweepResult, ExperimentError> {
    run_sweep(
        &SweepSpec {
            scenario: scenario.clone(),
            axis,
            grid: grid.to_vec(),
            zeta: true,
            tau: false,
            matched_free_space: false,
            cir: CirSpec::default(),
        },
        workers,
    )
}

/// Reverberation time of the averaged envelope per grid value.
pub fn sweep_tau(
    scenario: &Scenario,
    axis: Axis,
    grid: &[f64],
    cir: &CirSpec,
    workers: usize,
) -> Result<SweepResult, ExperimentError> {
    run_sweep(
        &SweepSpec {
            scenario: scenario.clone(),
            axis,
            grid: grid.to_vec(),
            zeta: false,
            tau: true,
            matched_free_space: false,
            cir: cir.clone(),
        },
        workers,
    )
}

/// Spearman rank correlation (average ranks for ties); NaN if undefined.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let mut r = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            let avg = (i + j) as f64 / 2.0 + 1.0;
            for k in i..=j {
                r[idx[k]] = avg;
            }
            i = j + 1;
        }
        r
    }
    if x.len() != y.len() || x.len() < 2 {
        return f64::NAN;
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let m = (n + 1.0) / 2.0;
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - m) * (b - m)).sum();
    let vx: f64 = rx.iter().map(|a| (a - m).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - m).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::FreeSpaceSpec;

    #[test]
    fn spearman_basics() {
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]), -1.0);
        assert_eq!(spearman(&[1.0, 2.0, 3.0, 4.0], &[1.0, 5.0, 7.0, f64::INFINITY]), 1.0);
    }

    #[test]
    fn single_point_single_realization() {
        let sc = Scenario::FreeSpace(FreeSpaceSpec {
            n_s: 4,
            realizations: 1,
            ..FreeSpaceSpec::default()
        });
        let r = sweep_zeta(&sc, Axis::ChiS, &[1.0], 1).unwrap();
        assert_eq!(r.points.len(), 1);
        let z = r.points[0].zeta.unwrap();
        assert_eq!((z.n_ok, z.n_failed), (1, 0));
        assert!(z.mean_db.is_finite());
    }
}
