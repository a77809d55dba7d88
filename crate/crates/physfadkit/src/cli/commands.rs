use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::{manifest::RunManifest, BoundsArgs, ChannelArgs, CliError, SeriesCompareArgs, ZetaArgs, MANIFEST_FILE};
use crate::analysis::{born_ratio_norm, born_truncation_error, group_coupling_constant, mimo_ratio_bound, mimo_ratio_norm, truncation_error_bound, AnalysisError};
use crate::channels::{
    cascaded_from_blocks, cascaded_predict, channel_exact, generic_series_rt, ChannelMatrix, Environment, Pruning, SsInverse,
};
use crate::experiments::{preset, run_sweep, SweepSpec};
use crate::numerics::{spectral_norm, ComplexMatrix, Group, SeriesMode, DIVERGENCE_RUN};
use crate::physics::{RisConfiguration, Scene};

fn prepare_out_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))
}

fn read_input(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_scene(path: &Path) -> Result<(Scene, String), CliError> {
    let text = read_input(path)?;
    let scene = Scene::from_json_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok((scene, text))
}

fn check_freq(f: f64) -> Result<(), CliError> {
    if f.is_finite() && f > 0.0 {
        Ok(())
    } else {
        Err(CliError::Input(format!("--freq must be finite and > 0, got {f}")))
    }
}

fn parse_config(bits: Option<&str>, s: &Scene) -> Result<RisConfiguration, CliError> {
    let c = match bits {
        None => RisConfiguration::all_on(s.n_ris()),
        Some(b) => RisConfiguration::parse(b).map_err(|e| CliError::Input(e.to_string()))?,
    };
    if c.len() != s.n_ris() {
        return Err(CliError::Input(format!(
            "config length {} does not match the {} RIS elements",
            c.len(),
            s.n_ris()
        )));
    }
    Ok(c)
}

fn csv_writer(path: &Path, schema: &str) -> Result<csv::Writer<BufWriter<File>>, CliError> {
    let mut f = BufWriter::new(File::create(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?);
    writeln!(f, "# {schema}; manifest={MANIFEST_FILE}")?;
    Ok(csv::Writer::from_writer(f))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Input(format!("csv: {e}"))
}

fn finish(manifest: &mut RunManifest, dir: &Path, written: Vec<PathBuf>) -> Result<Vec<PathBuf>, CliError> {
    manifest.outputs = written
        .iter()
        .map(|p| p.file_name().map_or_else(|| p.display().to_string(), |n| n.to_string_lossy().into_owned()))
        .collect();
    let mp = manifest.write(dir)?;
    let mut all = written;
    all.push(mp);
    Ok(all)
}

/// `channel`: writes `channel.csv` with one row per (rx, tx) entry of H.
pub fn cmd_channel(a: &ChannelArgs) -> Result<Vec<PathBuf>, CliError> {
    check_freq(a.freq)?;
    let (scene, text) = load_scene(&a.scene)?;
    let c = parse_config(a.config.as_deref(), &scene)?;
    let h = channel_exact(&scene, &c, a.freq)?;
    prepare_out_dir(&a.common.out_dir)?;
    let path = a.common.out_dir.join("channel.csv");
    let mut w = csv_writer(&path, "physfadkit channel v1: H = [W^-1]_RT")?;
    w.write_record(["rx", "tx", "re", "im"]).map_err(csv_err)?;
    for i in 0..h.entries.rows() {
        for j in 0..h.entries.cols() {
            let z = h.entries[(i, j)];
            w.write_record([i.to_string(), j.to_string(), format!("{:e}", z.re), format!("{:e}", z.im)])
                .map_err(csv_err)?;
        }
    }
    w.flush()?;
    let mut m = RunManifest::new("channel", text.as_bytes(), a.common.seed);
    m.notes.push(format!("freq={}", a.freq));
    m.notes.push(format!("config={}", c.bitstring()));
    finish(&mut m, &a.common.out_dir, vec![path])
}

/// `zeta`: runs a sweep spec (file or preset) and writes `sweep.csv`, the
/// resolved spec and the manifest.
pub fn cmd_zeta(a: &ZetaArgs) -> Result<Vec<PathBuf>, CliError> {
    let mut spec = match (&a.spec, a.preset) {
        (Some(p), _) => SweepSpec::from_json_str(&read_input(p)?).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
        (None, Some(p)) => preset(p.into()),
        (None, None) => return Err(CliError::Input("one of --spec or --preset is required".into())),
    };
    if let Some(seed) = a.common.seed {
        spec.scenario.set_seed(seed);
    }
    if let Some(n) = a.realizations {
        spec.scenario.set_realizations(n);
    }
    spec.validate().map_err(|e| CliError::Input(e.to_string()))?;
    let resolved = spec.to_json_string();
    let result = run_sweep(&spec, a.common.workers)?;
    prepare_out_dir(&a.common.out_dir)?;
    let csv_path = a.common.out_dir.join("sweep.csv");
    let mut f = BufWriter::new(File::create(&csv_path)?);
    result.write_csv(&mut f)?;
    f.flush()?;
    let spec_path = a.common.out_dir.join("spec.json");
    std::fs::write(&spec_path, &resolved)?;
    let mut m = RunManifest::new("zeta", resolved.as_bytes(), Some(spec.scenario.seed()));
    m.notes.push(format!("realizations={}", spec.scenario.realizations()));
    m.notes.push(format!("axis={}", spec.axis.name()));
    let mut failed = 0;
    for p in &result.points {
        failed += p.zeta.as_ref().map_or(0, |z| z.n_failed);
    }
    if failed > 0 {
        m.notes.push(format!("{failed} realizations failed numerically and were excluded"));
    }
    finish(&mut m, &a.common.out_dir, vec![csv_path, spec_path])
}

fn bound_row(
    w: &mut csv::Writer<BufWriter<File>>,
    name: &str,
    bound: Result<f64, AnalysisError>,
    measured: Result<f64, AnalysisError>,
) -> Result<(), CliError> {
    let measured = measured.map_err(CliError::from)?;
    let (b, status) = match bound {
        Ok(b) => (format!("{b:e}"), (measured <= b * (1.0 + 1e-9)).to_string()),
        Err(AnalysisError::NotConvergent { .. }) => (String::new(), "not_convergent".into()),
        Err(AnalysisError::HeterogeneousAlpha { .. }) => (String::new(), "heterogeneous_alpha".into()),
        Err(e) => return Err(e.into()),
    };
    w.write_record([name.to_string(), b, format!("{measured:e}"), status]).map_err(csv_err)
}

/// `bounds`: coupling constants, truncation bounds and the TX–RX round-trip
/// bound next to the measured quantities.
pub fn cmd_bounds(a: &BoundsArgs) -> Result<Vec<PathBuf>, CliError> {
    check_freq(a.freq)?;
    if a.k_max == 0 {
        return Err(CliError::Input("--k-max must be >= 1".into()));
    }
    let (scene, text) = load_scene(&a.scene)?;
    prepare_out_dir(&a.common.out_dir)?;
    let path = a.common.out_dir.join("bounds.csv");
    let mut w = csv_writer(&path, "physfadkit bounds v1")?;
    w.write_record(["quantity", "bound", "measured", "satisfied"]).map_err(csv_err)?;
    let f = a.freq;
    for g in [Group::T, Group::R, Group::S] {
        if scene.group(g).is_empty() {
            continue;
        }
        let c = group_coupling_constant(&scene, g, f);
        bound_row(&mut w, &format!("C_{g:?}"), c.clone().map(|c| c.value), born_ratio_norm(&scene, g, f))?;
        for k in 1..=a.k_max {
            let bound = c.clone().and_then(|c| {
                if c.certifies_convergence() {
                    truncation_error_bound(c.value, k)
                } else {
                    Err(AnalysisError::NotConvergent { c: c.value })
                }
            });
            bound_row(&mut w, &format!("trunc_{g:?}_K{k}"), bound, born_truncation_error(&scene, g, f, k))?;
        }
    }
    if !scene.transmitters.is_empty() && !scene.receivers.is_empty() {
        bound_row(&mut w, "mimo_ratio", mimo_ratio_bound(&scene, f), mimo_ratio_norm(&scene, f))?;
    }
    w.flush()?;
    let mut m = RunManifest::new("bounds", text.as_bytes(), a.common.seed);
    m.notes.push(format!("freq={f}"));
    finish(&mut m, &a.common.out_dir, vec![path])
}

fn rel_residual(h: &ComplexMatrix, exact: &ChannelMatrix, scale: f64) -> Result<f64, CliError> {
    Ok(spectral_norm(&h.sub(&exact.entries))? / scale)
}

/// `series-compare`: residual of the RIS-level series truncated after k RIS
/// interactions (k = 0..K), with exact and single-scattering W_SS⁻¹, and of
/// the cascaded model, all relative to the exact channel.
pub fn cmd_series_compare(a: &SeriesCompareArgs) -> Result<Vec<PathBuf>, CliError> {
    check_freq(a.freq)?;
    let (scene, text) = load_scene(&a.scene)?;
    let c = parse_config(a.config.as_deref(), &scene)?;
    let f = a.freq;
    let exact = channel_exact(&scene, &c, f)?;
    let scale = spectral_norm(&exact.entries)?;
    if !(scale > 0.0) {
        return Err(CliError::Numeric("exact channel vanishes; relative residuals undefined".into()));
    }
    let env = if scene.environment.is_empty() {
        Environment::FreeSpace
    } else {
        Environment::Generic
    };
    let cascaded = cascaded_predict(&cascaded_from_blocks(&scene, f, env, Pruning::Full)?, &c)?;
    let cascaded_res = rel_residual(&cascaded.entries, &exact, scale)?;

    prepare_out_dir(&a.common.out_dir)?;
    let path = a.common.out_dir.join("series_compare.csv");
    let mut w = csv_writer(&path, "physfadkit series-compare v1: k = RIS interactions kept; residuals relative to exact")?;
    w.write_record(["k", "residual", "residual_single_scatter", "cascaded_residual", "diverging"])
        .map_err(csv_err)?;
    let mut prev: Option<ComplexMatrix> = None;
    let mut last_term = f64::INFINITY;
    let mut growing = 0;
    for k in 0..=a.k_max {
        let h = generic_series_rt(&scene, &c, f, SeriesMode::Fixed(k + 1), SsInverse::Exact)?.entries;
        let h1 = generic_series_rt(&scene, &c, f, SeriesMode::Fixed(k + 1), SsInverse::Series(SeriesMode::Fixed(1)))?.entries;
        let term = match &prev {
            None => spectral_norm(&h)?,
            Some(p) => spectral_norm(&h.sub(p))?,
        };
        if k > 0 && term > last_term {
            growing += 1;
        } else {
            growing = 0;
        }
        last_term = term;
        w.write_record([
            k.to_string(),
            format!("{:e}", rel_residual(&h, &exact, scale)?),
            format!("{:e}", rel_residual(&h1, &exact, scale)?),
            format!("{cascaded_res:e}"),
            (growing >= DIVERGENCE_RUN).to_string(),
        ])
        .map_err(csv_err)?;
        prev = Some(h);
    }
    w.flush()?;
    let mut m = RunManifest::new("series-compare", text.as_bytes(), a.common.seed);
    m.notes.push(format!("freq={f}"));
    m.notes.push(format!("config={}", c.bitstring()));
    finish(&mut m, &a.common.out_dir, vec![path])
}
