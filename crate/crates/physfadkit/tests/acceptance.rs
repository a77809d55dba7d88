//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test --test acceptance` (optionally followed by
//! criterion numbers, e.g. `-- 3 9`).

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use physfadkit::analysis::{born_truncation_error, group_coupling_constant, hollow_symmetric_norm_bound, truncation_error_bound};
use physfadkit::channels::{
    cascaded_from_blocks, cascaded_predict, channel_exact, full_inverse, generic_series_ratio, generic_series_rt,
    ris_free_space_series, Environment, Pruning, SsInverse,
};
use physfadkit::experiments::{
    absorption_preset, chi_sweep_preset, gen_enclosure_scene, gen_free_space_scene, preset, run_sweep, spearman,
    EnclosureSpec, FreeSpaceSpec, Preset, SweepResult,
};
use physfadkit::metrics::{linearity_metric, CalibrationSet, CALIBRATION_PER_ELEMENT, TEST_SIZE};
use physfadkit::numerics::{bessel_j0, bessel_y0, invert, spectral_norm, spectral_radius_estimate, ComplexMatrix, Group, SeriesMode};
use physfadkit::physics::{Dipole, RisConfiguration, Scene};

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, fn() -> Outcome);

/// Highest power in the Gelfand estimates; low powers overestimate ρ by a
/// few percent on the RIS-level ratio, which matters right around ρ = 1.
const GELFAND_MAX_POWER: usize = 4096;

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_0000 + tag)
}

fn check(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn within(limit: Duration, start: Instant) -> Result<f64, String> {
    let t = start.elapsed();
    if t > limit {
        Err(format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
    } else {
        Ok(t.as_secs_f64())
    }
}

fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.sub(b).max_abs()
}

fn random_configs(n: usize, count: usize, r: &mut ChaCha8Rng) -> Vec<RisConfiguration> {
    (0..count).map(|_| RisConfiguration::random(n, r)).collect()
}

/// Random homogeneous antenna array (identical α) with pairwise spacing ≥ 0.15.
fn random_array(r: &mut ChaCha8Rng) -> Scene {
    let n = r.gen_range(2..=8);
    let chi = r.gen_range(0.2..1.0);
    let side = r.gen_range(0.6..4.0);
    let mut pts: Vec<[f64; 2]> = Vec::new();
    while pts.len() < n {
        let p = [r.gen_range(0.0..side), r.gen_range(0.0..side)];
        if pts.iter().all(|q| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt() >= 0.15) {
            pts.push(p);
        }
    }
    let tx = pts.iter().map(|p| Dipole::new(p[0], p[1], 1.0, chi)).collect();
    Scene::free_space(tx, vec![], vec![]).expect("valid array")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let (mut arrays, mut worst, mut checks) = (0, f64::NEG_INFINITY, 0);
    while arrays < 100 {
        let s = random_array(&mut r);
        let c = group_coupling_constant(&s, Group::T, 1.0).map_err(|e| e.to_string())?.value;
        if !(c > 0.0 && c < 0.9) {
            continue;
        }
        arrays += 1;
        // both sides are normalized by ‖W‖; allow for rounding in forming W⁻¹ − S_K
        let rounding = 64.0 * f64::EPSILON * (1.0 + c) / (1.0 - c);
        for k in 1..=25 {
            let bound = truncation_error_bound(c, k).map_err(|e| e.to_string())?;
            let err = born_truncation_error(&s, Group::T, 1.0, k).map_err(|e| e.to_string())?;
            checks += 1;
            if err > bound + rounding {
                return Err(format!("array {arrays} C={c:.3} K={k}: error {err:e} > bound {bound:e}"));
            }
            worst = worst.max(err / (bound + rounding));
        }
    }
    let t = within(Duration::from_secs(30), start)?;
    Ok(format!("{checks} checks on {arrays} arrays, max error/bound {worst:.3}, {t:.1}s"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    for i in 0..10_000 {
        let n = r.gen_range(1..=12);
        let scale = [1e-6, 1.0, 1e6][i % 3];
        let mut a = ComplexMatrix::zeros(n, n);
        for p in 0..n {
            for q in p + 1..n {
                let z = Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)) * scale;
                a[(p, q)] = z;
                a[(q, p)] = z;
            }
        }
        let bound = hollow_symmetric_norm_bound(&a).map_err(|e| e.to_string())?;
        let norm = spectral_norm(&a).map_err(|e| e.to_string())?;
        if norm > bound * (1.0 + 1e-12) {
            return Err(format!("matrix {i} (n={n}, scale {scale:e}): ‖A‖₂ = {norm:e} > {bound:e}"));
        }
        if bound > 0.0 {
            worst = worst.max(norm / bound);
        }
    }
    let t = within(Duration::from_secs(60), start)?;
    Ok(format!("10000 matrices, max ‖A‖₂/bound {worst:.4}, {t:.1}s"))
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let mut worst: f64 = 0.0;
    for i in 0..50u64 {
        let spec = FreeSpaceSpec {
            n_s: r.gen_range(2..=16),
            delta_s: r.gen_range(0.2..1.0),
            chi_s: r.gen_range(0.25..1.0),
            seed: 3,
            ..FreeSpaceSpec::default()
        };
        let s = gen_free_space_scene(&spec, i).map_err(|e| e.to_string())?;
        let model = cascaded_from_blocks(&s, 1.0, Environment::FreeSpace, Pruning::Full).map_err(|e| e.to_string())?;
        for c in random_configs(s.n_ris(), 20, &mut r) {
            let a = cascaded_predict(&model, &c).map_err(|e| e.to_string())?;
            let b = ris_free_space_series(&s, &c, 1.0, SeriesMode::Fixed(2), SsInverse::Series(SeriesMode::Fixed(1)))
                .map_err(|e| e.to_string())?;
            let rel = max_abs_diff(&a.entries, &b.entries) / b.entries.max_abs();
            worst = worst.max(rel);
        }
    }
    check(worst <= 1e-12, format!("1000 scene/config pairs, max relative difference {worst:e}"))
}

fn criterion_4() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut converged = 0;
    let base = EnclosureSpec {
        n_s: 8,
        seed: 4,
        ..EnclosureSpec::default()
    };
    let mut r = rng(4);
    let mut i = 0;
    while converged < 50 {
        let s = gen_enclosure_scene(&base, i).map_err(|e| e.to_string())?;
        i += 1;
        let c = RisConfiguration::random(s.n_ris(), &mut r);
        let q = generic_series_ratio(&s, &c, 1.0, SsInverse::Exact).map_err(|e| e.to_string())?;
        let rho = spectral_radius_estimate(&q, GELFAND_MAX_POWER).map_err(|e| e.to_string())?.value;
        if rho >= 0.8 {
            continue;
        }
        converged += 1;
        let h = generic_series_rt(&s, &c, 1.0, SeriesMode::auto(), SsInverse::Exact).map_err(|e| format!("scene {i} ρ={rho:.3}: {e}"))?;
        let e = channel_exact(&s, &c, 1.0).map_err(|e| e.to_string())?;
        worst = worst.max(max_abs_diff(&h.entries, &e.entries) / e.entries.max_abs());
    }
    if worst > 1e-8 {
        return Err(format!("ρ<0.8 scenes: max relative error {worst:e} > 1e-8"));
    }
    // tightly packed RIS: the RIS-level ratio often has ρ > 1
    let dense = EnclosureSpec {
        delta_s: 0.3,
        ..base
    };
    let (mut diverging, mut fired, mut j) = (0, 0, 0);
    while diverging < 10 {
        let s = gen_enclosure_scene(&dense, j).map_err(|e| e.to_string())?;
        j += 1;
        let c = RisConfiguration::all_on(s.n_ris());
        let q = generic_series_ratio(&s, &c, 1.0, SsInverse::Exact).map_err(|e| e.to_string())?;
        let rho = spectral_radius_estimate(&q, GELFAND_MAX_POWER).map_err(|e| e.to_string())?.value;
        if rho <= 1.0 {
            continue;
        }
        diverging += 1;
        match generic_series_rt(&s, &c, 1.0, SeriesMode::auto(), SsInverse::Exact) {
            Err(e) if e.is_divergence() => fired += 1,
            Err(e) => return Err(format!("scene ρ={rho:.3}: unexpected error {e}")),
            Ok(_) => {}
        }
    }
    check(
        fired == diverging,
        format!("50 convergent scenes max relative error {worst:e}; divergence flagged on {fired}/{diverging} scenes with ρ>1"),
    )
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let mut worst = f64::INFINITY;
    for i in 0..20u64 {
        let spec = FreeSpaceSpec {
            n_s: r.gen_range(2..=24),
            seed: 5,
            ..FreeSpaceSpec::default()
        };
        let s = gen_free_space_scene(&spec, i).map_err(|e| e.to_string())?;
        let model = cascaded_from_blocks(&s, 1.0, Environment::FreeSpace, Pruning::Full).map_err(|e| e.to_string())?;
        let synth = |configs: Vec<RisConfiguration>| -> Result<CalibrationSet, String> {
            let h = configs
                .iter()
                .map(|c| cascaded_predict(&model, c).map(|m| m.siso()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            CalibrationSet::new(5, configs, h).map_err(|e| e.to_string())
        };
        let n = s.n_ris();
        let cal = synth(random_configs(n, CALIBRATION_PER_ELEMENT * n, &mut r))?;
        let test = synth(random_configs(n, TEST_SIZE, &mut r))?;
        let rep = linearity_metric(&cal, &test).map_err(|e| e.to_string())?;
        if rep.degenerate {
            return Err(format!("scene {i} (N_S={n}) flagged degenerate"));
        }
        worst = worst.min(rep.zeta_db);
    }
    check(worst >= 120.0, format!("20 synthetic data sets, min ζ = {worst:.1} dB"))
}

fn zeta_curve(res: &SweepResult) -> Vec<f64> {
    res.mean_zeta_db()
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let chi = run_sweep(&chi_sweep_preset(), 0).map_err(|e| e.to_string())?;
    let ns = run_sweep(&preset(Preset::Fig2a), 0).map_err(|e| e.to_string())?;
    let ds = run_sweep(&preset(Preset::Fig2b), 0).map_err(|e| e.to_string())?;
    let t = within(Duration::from_secs(300), start)?;
    let (zc, zn, zd) = (zeta_curve(&chi), zeta_curve(&ns), zeta_curve(&ds));
    let chi_dec = zc.windows(2).all(|w| w[1] < w[0]);
    let ns_noninc = zn.windows(2).all(|w| w[1] <= w[0]);
    let rho_ns = spearman(&ns.axis_values(), &zn);
    let ds_nondec = zd.windows(2).all(|w| w[1] >= w[0]);
    check(
        chi_dec && ns_noninc && rho_ns <= -0.9 && ds_nondec,
        format!(
            "ζ(χ_S) {zc:.2?} decreasing={chi_dec}; ζ(N_S) {zn:.2?} non-increasing={ns_noninc}, Spearman {rho_ns:.3}; ζ(Δ_S) {zd:.2?} non-decreasing={ds_nondec}; {t:.1}s"
        ),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let spec = preset(Preset::Fig4);
    let res = run_sweep(&spec, 0).map_err(|e| e.to_string())?;
    let t = within(Duration::from_secs(900), start)?;
    let grid = res.axis_values();
    let zeta = zeta_curve(&res);
    let matched = res.matched_mean_zeta_db();
    let tau: Vec<f64> = res.mean_tau().iter().map(|t| t.unwrap_or(f64::NAN)).collect();
    let pick = |v: f64| grid.iter().position(|&g| g == v).ok_or(format!("grid lacks {v}"));
    let tau_idx = [1.5, 2.0, 3.0, 5.0].map(pick);
    let tau_sub = tau_idx.iter().map(|i| i.clone().map(|i| tau[i])).collect::<Result<Vec<_>, _>>()?;
    let tau_dec = tau_sub.windows(2).all(|w| w[1] < w[0]);
    let zeta_inc = zeta.windows(2).all(|w| w[1] > w[0]);
    let (i8, i2) = (pick(8.0)?, pick(2.0)?);
    let gap8 = (zeta[i8] - matched[i8]).abs();
    let gap_default = matched[i2] - zeta[i2];
    check(
        tau_dec && zeta_inc && gap8 <= 1.0 && gap_default >= 6.0,
        format!(
            "τ {tau_sub:.2?} decreasing={tau_dec}; ζ {zeta:.2?} increasing={zeta_inc}; |ζ−ζ_fs| at 8: {gap8:.2} dB; default gap {gap_default:.2} dB; {t:.1}s"
        ),
    )
}

fn criterion_8() -> Outcome {
    let res = run_sweep(&absorption_preset(), 0).map_err(|e| e.to_string())?;
    let grid = res.axis_values();
    let zeta = zeta_curve(&res);
    let tau: Vec<f64> = res.mean_tau().iter().map(|t| t.unwrap_or(f64::NAN)).collect();
    let (rt, rz) = (spearman(&grid, &tau), spearman(&grid, &zeta));
    check(
        rt == -1.0 && rz == 1.0,
        format!("Γ_L^E {grid:?}: τ {tau:.2?} (Spearman {rt}), ζ {zeta:.2?} (Spearman {rz})"),
    )
}

fn criterion_9() -> Outcome {
    let data = include_str!("data/bessel_j0_y0.csv");
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for line in data.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let v: Vec<f64> = line.split(',').map(|s| s.trim().parse().expect("oracle value")).collect();
        let (x, j, y) = (v[0], v[1], v[2]);
        let ej = (bessel_j0(x).map_err(|e| e.to_string())? - j).abs() / j.abs();
        let ey = (bessel_y0(x).map_err(|e| e.to_string())? - y).abs() / y.abs();
        worst = worst.max(ej).max(ey);
        n += 1;
    }
    if n < 1000 || worst > 1e-10 {
        return Err(format!("Bessel: {n} points, max relative error {worst:e}"));
    }
    let mut r = rng(9);
    let mut worst_inv: f64 = 0.0;
    for _ in 0..1000 {
        let m = r.gen_range(1..=64);
        let mut a = ComplexMatrix::zeros(m, m);
        for p in 0..m {
            for q in 0..m {
                a[(p, q)] = Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
            }
        }
        let inv = invert(&a).map_err(|e| e.to_string())?;
        worst_inv = worst_inv.max(max_abs_diff(&a.matmul(&inv), &ComplexMatrix::identity(m)));
    }
    check(
        worst_inv <= 1e-9,
        format!("Bessel: {n} points, max relative error {worst:e}; inversion: max |AA⁻¹−I| {worst_inv:e} over 1000 matrices"),
    )
}

fn criterion_10() -> Outcome {
    let mut r = rng(10);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let mut pts: Vec<[f64; 2]> = Vec::new();
        while pts.len() < 3 + 2 + 10 + 6 {
            let p = [r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0)];
            if pts.iter().all(|q| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt() >= 0.3) {
                pts.push(p);
            }
        }
        let d = |p: &[f64; 2]| Dipole::antenna(p[0], p[1]);
        let env = pts[5..15]
            .iter()
            .map(|p| Dipole::new(p[0], p[1], 2.0, 1.2).with_losses(0.3, 1.45 * std::f64::consts::PI.powi(2)))
            .collect();
        let mut s = Scene::free_space(pts[..3].iter().map(d).collect(), pts[3..5].iter().map(d).collect(), pts[15..].iter().map(d).collect())
            .map_err(|e| e.to_string())?;
        s.environment = env;
        s.validate().map_err(|e| e.to_string())?;
        let c = RisConfiguration::random(s.n_ris(), &mut r);
        let (w_inv, b) = full_inverse(&s, &c, r.gen_range(0.8..1.2)).map_err(|e| e.to_string())?;
        let (t, rx) = (b.indices(Group::T), b.indices(Group::R));
        let h_rt = w_inv.select(&rx, &t);
        let h_tr = w_inv.select(&t, &rx);
        worst = worst.max(max_abs_diff(&h_rt, &h_tr.transpose()) / h_rt.max_abs());
    }
    if worst > 1e-10 {
        return Err(format!("reciprocity defect {worst:e}"));
    }
    let mut zeta = preset(Preset::Fig2a);
    zeta.scenario.set_realizations(12);
    let mut tau = absorption_preset();
    tau.grid.truncate(2);
    tau.scenario.set_realizations(3);
    tau.cir.n_f = 64;
    for spec in [&zeta, &tau] {
        let reference = format!("{:?}", run_sweep(spec, 1).map_err(|e| e.to_string())?);
        for w in [2, 3, 0] {
            let other = format!("{:?}", run_sweep(spec, w).map_err(|e| e.to_string())?);
            if other != reference {
                return Err(format!("sweep on {w} workers differs from the single-worker run"));
            }
        }
    }
    Ok(format!("max relative reciprocity defect {worst:e}; ζ and τ sweeps identical on 1/2/3/all workers"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "Born truncation bound", criterion_1),
        (2, "hollow symmetric norm bound", criterion_2),
        (3, "cascaded = two-term RIS series", criterion_3),
        (4, "generic series convergence/divergence", criterion_4),
        (5, "cascaded data is linear", criterion_5),
        (6, "free-space ζ trends", criterion_6),
        (7, "enclosure τ and ζ vs f_res_E", criterion_7),
        (8, "absorption trends", criterion_8),
        (9, "Bessel and inversion accuracy", criterion_9),
        (10, "reciprocity and worker determinism", criterion_10),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, name, f) in criteria {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("PASS {n:>2} {name} ({secs:.1}s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {n:>2} {name} ({secs:.1}s): {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
