use rand::Rng;

use super::geometry::{dist, point_in_polygon, segment_distance};
use super::specs::{EnclosureSpec, FreeSpaceSpec, Scenario};
use super::{stream_rng, ExperimentError};
use crate::physics::{lossless_gamma_r, Dipole, PhysicalConstants, Scene};

/// Rejection-sampling budget per generated scene.
pub const MAX_PLACEMENT_TRIES: usize = 10_000;

struct Sampler<R> {
    rng: R,
    tries: usize,
}

impl<R: Rng> Sampler<R> {
    /// Uniform point in the box satisfying `ok`.
    fn place(&mut self, what: &str, bbox: [f64; 4], ok: impl Fn([f64; 2]) -> bool) -> Result<[f64; 2], ExperimentError> {
        loop {
            if self.tries >= MAX_PLACEMENT_TRIES {
                return Err(ExperimentError::PlacementExhausted {
                    what: what.to_string(),
                    tries: self.tries,
                });
            }
            self.tries += 1;
            let p = [self.rng.gen_range(bbox[0]..bbox[1]), self.rng.gen_range(bbox[2]..bbox[3])];
            if ok(p) {
                return Ok(p);
            }
        }
    }
}

fn min_dist(p: [f64; 2], pts: &[[f64; 2]]) -> f64 {
    pts.iter().map(|&q| dist(p, q)).fold(f64::INFINITY, f64::min)
}

/// One free-space realization; deterministic in (spec.seed, index).
pub fn gen_free_space_scene(spec: &FreeSpaceSpec, index: u64) -> Result<Scene, ExperimentError> {
    Scenario::FreeSpace(spec.clone()).validate()?;
    let pc = PhysicalConstants::default();
    let n = spec.n_s;
    let ris: Vec<Dipole> = (0..n)
        .map(|i| Dipole::new((i as f64 - (n - 1) as f64 / 2.0) * spec.delta_s, 0.0, pc.f0, spec.chi_s))
        .collect();
    let ris_pts: Vec<[f64; 2]> = ris.iter().map(Dipole::position).collect();
    let mut s = Sampler {
        rng: stream_rng(spec.seed, index, "scene"),
        tries: 0,
    };
    let excl = spec.exclusion_radius;
    let tx = s.place("transmitter", spec.region, |p| min_dist(p, &ris_pts) >= excl)?;
    let rx = s.place("receiver", spec.region, |p| {
        min_dist(p, &ris_pts) >= excl && dist(p, tx) >= pc.d_min()
    })?;
    Ok(Scene::new(
        pc,
        vec![Dipole::antenna(tx[0], tx[1])],
        vec![Dipole::antenna(rx[0], rx[1])],
        Vec::new(),
        ris,
    )?)
}

/// Fence dipoles along each edge at (approximately) the given spacing.
fn fence_points(poly: &[[f64; 2]], spacing: f64) -> Vec<[f64; 2]> {
    let mut pts = Vec::new();
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        let m = ((dist(a, b) / spacing).round() as usize).max(1);
        for j in 0..m {
            let t = j as f64 / m as f64;
            pts.push([a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t]);
        }
    }
    pts
}

/// One enclosure realization; deterministic in (spec.seed, index).
///
/// The RIS is centered on its wall and replaces the fence dipoles along its
/// span; interior scatterers, TX and RX are rejection-sampled inside.
pub fn gen_enclosure_scene(spec: &EnclosureSpec, index: u64) -> Result<Scene, ExperimentError> {
    Scenario::Enclosure(spec.clone()).validate()?;
    let pc = PhysicalConstants::default();
    let c = &spec.clearances;
    let poly = &spec.fence;
    let a = poly[spec.ris_wall];
    let b = poly[(spec.ris_wall + 1) % poly.len()];
    let len = dist(a, b);
    let u = [(b[0] - a[0]) / len, (b[1] - a[1]) / len];
    let mid = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
    let n = spec.n_s;
    let along = |s: f64| [mid[0] + s * u[0], mid[1] + s * u[1]];
    let half_span = (n - 1) as f64 / 2.0 * spec.delta_s;
    let ris_pts: Vec<[f64; 2]> = (0..n).map(|i| along(i as f64 * spec.delta_s - half_span)).collect();
    let (span_a, span_b) = (along(-half_span - spec.delta_s / 2.0), along(half_span + spec.delta_s / 2.0));
    let fence: Vec<[f64; 2]> = fence_points(poly, spec.fence_spacing)
        .into_iter()
        .filter(|&p| segment_distance(span_a, span_b, p).0 > 1e-9 * (1.0 + len))
        .collect();

    let mut s = Sampler {
        rng: stream_rng(spec.seed, index, "scene"),
        tries: 0,
    };
    let bbox = poly.iter().fold(
        [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY],
        |bb, p| [bb[0].min(p[0]), bb[1].max(p[0]), bb[2].min(p[1]), bb[3].max(p[1])],
    );
    let mut interior: Vec<[f64; 2]> = Vec::with_capacity(spec.n_interior);
    for _ in 0..spec.n_interior {
        let p = s.place("interior scatterer", bbox, |p| {
            point_in_polygon(poly, p)
                && min_dist(p, &fence) >= c.scatterer_to_fence
                && min_dist(p, &ris_pts) >= c.scatterer_to_ris
                && min_dist(p, &interior) >= c.scatterer_spacing
        })?;
        interior.push(p);
    }
    let env_pts: Vec<[f64; 2]> = fence.iter().chain(&interior).copied().collect();
    let antenna_ok = |p: [f64; 2]| {
        point_in_polygon(poly, p)
            && min_dist(p, &env_pts) >= c.antenna_to_environment
            && min_dist(p, &ris_pts) >= c.antenna_to_ris
    };
    let tx = s.place("transmitter", bbox, antenna_ok)?;
    let rx = s.place("receiver", bbox, |p| antenna_ok(p) && dist(p, tx) >= c.antenna_spacing)?;

    let gamma_r = spec.gamma_r_e.unwrap_or_else(|| lossless_gamma_r(spec.chi_e, &pc));
    let environment = env_pts
        .iter()
        .map(|p| Dipole::new(p[0], p[1], spec.f_res_e * pc.f0, spec.chi_e).with_losses(spec.gamma_l_e, gamma_r))
        .collect();
    let ris = ris_pts.iter().map(|p| Dipole::new(p[0], p[1], pc.f0, spec.chi_s)).collect();
    Ok(Scene::new(
        pc,
        vec![Dipole::antenna(tx[0], tx[1])],
        vec![Dipole::antenna(rx[0], rx[1])],
        environment,
        ris,
    )?)
}
