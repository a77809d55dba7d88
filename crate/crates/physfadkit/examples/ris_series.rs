//! Free-space RIS: Born-like series in the number of RIS interactions, and the
//! cascaded (linear-in-configuration) model it reduces to at two terms.

use physfadkit::channels::{cascaded_from_blocks, cascaded_predict, channel_exact, ris_free_space_series, Environment, Pruning, SsInverse};
use physfadkit::numerics::SeriesMode;
use physfadkit::physics::{RisConfiguration, Scene};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = Scene::from_json_file(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/free_space_scene.json"))?;
    let c = RisConfiguration::parse("10110010")?;
    let exact = channel_exact(&s, &c, 1.0)?.siso();
    println!("exact H = {exact:.6e}");
    for k in 1..=6 {
        let h = ris_free_space_series(&s, &c, 1.0, SeriesMode::Fixed(k), SsInverse::Exact)?.siso();
        println!("{k} terms: relative error {:.3e}", (h - exact).norm() / exact.norm());
    }
    let model = cascaded_from_blocks(&s, 1.0, Environment::FreeSpace, Pruning::Full)?;
    let cas = cascaded_predict(&model, &c)?.siso();
    let two = ris_free_space_series(&s, &c, 1.0, SeriesMode::Fixed(2), SsInverse::Series(SeriesMode::Fixed(1)))?.siso();
    println!("cascaded model: relative error {:.3e}; differs from the 2-term single-scattering series by {:.1e}", (cas - exact).norm() / exact.norm(), (cas - two).norm());
    Ok(())
}
