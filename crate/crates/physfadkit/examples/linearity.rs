//! Calibrate a cascaded model on one free-space realization and report ζ.
//! Writes the calibration set to `calibration.csv` in the temp directory.

use physfadkit::channels::ConfigurableChannel;
use physfadkit::experiments::{gen_free_space_scene, stream_rng, FreeSpaceSpec};
use physfadkit::metrics::{linearity_metric, measure, CALIBRATION_PER_ELEMENT, TEST_SIZE};
use physfadkit::physics::RisConfiguration;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for chi_s in [0.25, 1.0] {
        let spec = FreeSpaceSpec { chi_s, ..FreeSpaceSpec::default() };
        let s = gen_free_space_scene(&spec, 0)?;
        let n = s.n_ris();
        let mut rng = stream_rng(spec.seed, 0, "calibration");
        let cal: Vec<_> = (0..CALIBRATION_PER_ELEMENT * n).map(|_| RisConfiguration::random(n, &mut rng)).collect();
        let mut rng = stream_rng(spec.seed, 0, "test");
        let test: Vec<_> = (0..TEST_SIZE).map(|_| RisConfiguration::random(n, &mut rng)).collect();
        let ev = ConfigurableChannel::new(&s, 1.0)?;
        let cal = measure(&ev, spec.seed, cal)?;
        let rep = linearity_metric(&cal, &measure(&ev, spec.seed, test)?)?;
        println!("χ_S = {chi_s}: ζ = {:.2} dB (h0 = {:.3e}, {} calibration / {} test configurations)", rep.zeta_db, rep.h0, rep.n_cal, rep.n_test);
        let path = std::env::temp_dir().join("calibration.csv");
        cal.write_csv(std::fs::File::create(&path)?)?;
        println!("  calibration data: {}", path.display());
    }
    Ok(())
}
