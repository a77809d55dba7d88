//! Rich-scattering environment: spectral radius of the RIS-level ratio and
//! the adaptive series (converging or flagged as divergent).

use physfadkit::channels::{channel_exact, generic_series_ratio, generic_series_rt, Provenance, SsInverse};
use physfadkit::experiments::{gen_enclosure_scene, EnclosureSpec};
use physfadkit::numerics::{spectral_radius_estimate, SeriesMode};
use physfadkit::physics::RisConfiguration;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for delta_s in [0.5, 0.3] {
        let spec = EnclosureSpec { n_s: 8, delta_s, ..EnclosureSpec::default() };
        for i in 0..3 {
            let s = gen_enclosure_scene(&spec, i)?;
            let c = RisConfiguration::all_on(s.n_ris());
            let rho = spectral_radius_estimate(&generic_series_ratio(&s, &c, 1.0, SsInverse::Exact)?, 4096)?.value;
            match generic_series_rt(&s, &c, 1.0, SeriesMode::auto(), SsInverse::Exact) {
                Ok(h) => {
                    let e = channel_exact(&s, &c, 1.0)?.siso();
                    let terms = match h.provenance {
                        Provenance::Series { terms, .. } => terms,
                        _ => 0,
                    };
                    println!("Δ_S={delta_s} scene {i}: ρ≈{rho:.3}, converged in {terms} terms, rel. error {:.1e}", (h.siso() - e).norm() / e.norm());
                }
                Err(e) if e.is_divergence() => println!("Δ_S={delta_s} scene {i}: ρ≈{rho:.3}, {e}"),
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(())
}
