//! Impulse response of one enclosure realization and its reverberation time,
//! with the resulting bounce-count estimate.

use physfadkit::analysis::bounce_estimate;
use physfadkit::experiments::{gen_enclosure_scene, EnclosureSpec};
use physfadkit::metrics::{impulse_response, reverberation_time, DEFAULT_BAND, DEFAULT_WINDOW_DB};
use physfadkit::physics::RisConfiguration;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = EnclosureSpec::default();
    for f_res_e in [2.0, 8.0] {
        let s = gen_enclosure_scene(&EnclosureSpec { f_res_e, ..spec.clone() }, 0)?;
        let cir = impulse_response(&s, &RisConfiguration::all_on(s.n_ris()), DEFAULT_BAND, 256)?;
        match reverberation_time(&cir, DEFAULT_WINDOW_DB) {
            Ok(r) => {
                // the 10 × 7 λ₀ footprint taken one wavelength tall; wall area ≈ perimeter × 1
                let b = bounce_estimate(r.tau, 70.0, s.n_ris(), 0.5, 33.0)?;
                println!("f_res^E = {f_res_e}: τ = {:.2}, Q = {:.1}, r² = {:.3}, ~{:.1} bounces, K ≈ {:.1}", r.tau, r.q, r.r2, b.bounces, b.k_est);
            }
            Err(e) => println!("f_res^E = {f_res_e}: {e}"),
        }
    }
    Ok(())
}
