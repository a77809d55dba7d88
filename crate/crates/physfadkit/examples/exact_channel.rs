//! Load a scene file and print the end-to-end channel for a few RIS states.
//!
//!     cargo run --example exact_channel [scene.json]

use physfadkit::channels::channel_exact;
use physfadkit::physics::{RisConfiguration, Scene};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/free_space_scene.json").into());
    let scene = Scene::from_json_file(&path)?;
    let n = scene.n_ris();
    println!("{path}: {} TX, {} RX, {} scatterers, {n} RIS elements", scene.transmitters.len(), scene.receivers.len(), scene.environment.len());
    for c in [RisConfiguration::all_on(n), RisConfiguration::all_off(n), RisConfiguration::all_on(n).flipped(0)] {
        let h = channel_exact(&scene, &c, 1.0)?;
        let z = h.siso();
        println!("{}  H = {:+.6e} {:+.6e}j  |H| = {:.4e}", c.bitstring(), z.re, z.im, z.norm());
    }
    Ok(())
}
