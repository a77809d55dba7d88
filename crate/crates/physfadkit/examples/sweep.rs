//! Monte-Carlo sweep from a preset or a spec file, written as CSV to stdout.
//!
//!     cargo run --release --example sweep -- fig2a 20
//!     cargo run --release --example sweep -- examples/data/chi_sweep.json

use physfadkit::experiments::{preset, run_sweep, Preset, SweepSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let which = args.first().map(String::as_str).unwrap_or("fig2b");
    let mut spec = match which {
        "fig2a" => preset(Preset::Fig2a),
        "fig2b" => preset(Preset::Fig2b),
        "fig4" => preset(Preset::Fig4),
        path => SweepSpec::from_json_str(&std::fs::read_to_string(path)?)?,
    };
    let n = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(10);
    spec.scenario.set_realizations(n);
    let res = run_sweep(&spec, 0)?;
    res.write_csv(std::io::stdout().lock())?;
    Ok(())
}
