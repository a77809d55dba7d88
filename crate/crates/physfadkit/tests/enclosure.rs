use physfadkit::channels::{channel_exact, generic_series_rt, SsInverse};
use physfadkit::experiments::{gen_enclosure_scene, point_in_polygon, EnclosureSpec};
use physfadkit::numerics::SeriesMode;
use physfadkit::physics::{inverse_polarizability_in, lossless_gamma_r, Dipole, PhysicalConstants, RisConfiguration};

fn fence_alpha(chi: f64, f_res: f64) -> f64 {
    let pc = PhysicalConstants::default();
    let d = Dipole::new(0.0, 0.0, f_res, chi).with_losses(0.0, lossless_gamma_r(chi, &pc));
    inverse_polarizability_in(&d, pc.f0, &pc).inv().norm()
}

#[test]
fn detuned_weak_fence_is_nearly_transparent() {
    // a weak (χ_E = 0.3) fence: |α(f₀)| at f_res^E = 10 is under 1% of its resonant value
    let ratio = fence_alpha(0.3, 10.0) / fence_alpha(0.3, 1.0);
    assert!(ratio < 0.01, "ratio {ratio}");
    let spec = EnclosureSpec { chi_e: 0.3, f_res_e: 10.0, ..EnclosureSpec::default() };
    let s = gen_enclosure_scene(&spec, 0).unwrap();
    let pc = s.constants;
    let resonant = fence_alpha(0.3, 1.0);
    for d in &s.environment {
        assert!(inverse_polarizability_in(d, pc.f0, &pc).inv().norm() < 0.01 * resonant);
    }
}

#[test]
fn default_fence_polarizability_falls_with_detuning() {
    let chi = EnclosureSpec::default().chi_e;
    let vals: Vec<f64> = [1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 10.0].iter().map(|&f| fence_alpha(chi, f)).collect();
    assert!(vals.windows(2).all(|w| w[1] < w[0]), "{vals:?}");
}

#[test]
fn everything_inside_the_fence() {
    let spec = EnclosureSpec::default();
    for i in 0..5 {
        let s = gen_enclosure_scene(&spec, i).unwrap();
        for d in s.transmitters.iter().chain(&s.receivers) {
            assert!(point_in_polygon(&spec.fence, d.position()));
        }
        assert_eq!(s.n_ris(), 21);
    }
}

#[test]
fn weak_scattering_series_matches_exact() {
    let spec = EnclosureSpec { n_s: 8, f_res_e: 10.0, ..EnclosureSpec::default() };
    let s = gen_enclosure_scene(&spec, 3).unwrap();
    let c = RisConfiguration::parse("01101001").unwrap();
    let h = generic_series_rt(&s, &c, 1.0, SeriesMode::auto(), SsInverse::Exact).unwrap();
    let e = channel_exact(&s, &c, 1.0).unwrap();
    assert!((h.siso() - e.siso()).norm() < 1e-8 * e.siso().norm());
}

#[test]
fn generation_is_deterministic() {
    let spec = EnclosureSpec::default();
    assert_eq!(gen_enclosure_scene(&spec, 7).unwrap(), gen_enclosure_scene(&spec, 7).unwrap());
    assert_ne!(gen_enclosure_scene(&spec, 7).unwrap(), gen_enclosure_scene(&spec, 8).unwrap());
}
