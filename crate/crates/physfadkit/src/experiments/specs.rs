use serde::{Deserialize, Serialize};

use super::geometry::polygon_is_simple;
use super::ExperimentError;
use crate::metrics::{DEFAULT_BAND, DEFAULT_N_F, DEFAULT_WINDOW_DB};
use crate::physics::PhysicalConstants;

/// Free-space campaign: a linear RIS on y = 0 centered at the origin, TX and
/// RX dropped uniformly in a rectangle on the illuminated side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FreeSpaceSpec {
    pub n_s: usize,
    pub delta_s: f64,
    pub chi_s: f64,
    /// Minimum TX/RX distance to every RIS element.
    pub exclusion_radius: f64,
    /// Placement rectangle `[x_min, x_max, y_min, y_max]`.
    pub region: [f64; 4],
    pub realizations: usize,
    pub seed: u64,
}

impl Default for FreeSpaceSpec {
    fn default() -> Self {
        Self {
            n_s: 8,
            delta_s: 0.5,
            chi_s: 1.0,
            exclusion_radius: 6.0,
            region: [-15.0, 15.0, 0.0, 20.0],
            realizations: 100,
            seed: 0,
        }
    }
}

/// Minimum distances used by the enclosure generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Clearances {
    pub scatterer_to_fence: f64,
    pub scatterer_to_ris: f64,
    pub scatterer_spacing: f64,
    pub antenna_to_environment: f64,
    pub antenna_to_ris: f64,
    pub antenna_spacing: f64,
}

impl Default for Clearances {
    fn default() -> Self {
        Self {
            scatterer_to_fence: 0.5,
            scatterer_to_ris: 1.0,
            scatterer_spacing: 0.5,
            antenna_to_environment: 0.5,
            antenna_to_ris: 1.0,
            antenna_spacing: 1.0,
        }
    }
}

/// Rich-scattering campaign: a dipole fence along an irregular polygon with
/// scatterers inside and the RIS embedded in one wall.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnclosureSpec {
    /// Polygon vertices in order (closed implicitly).
    pub fence: Vec<[f64; 2]>,
    pub fence_spacing: f64,
    /// Resonance of fence and interior dipoles, in units of f₀.
    pub f_res_e: f64,
    pub chi_e: f64,
    /// Radiative damping of environment dipoles; `None` = lossless for `chi_e`.
    pub gamma_r_e: Option<f64>,
    /// Absorption of environment dipoles.
    pub gamma_l_e: f64,
    pub n_interior: usize,
    /// Index of the polygon edge (vertex i → i+1) hosting the RIS.
    pub ris_wall: usize,
    pub n_s: usize,
    pub delta_s: f64,
    pub chi_s: f64,
    pub clearances: Clearances,
    pub realizations: usize,
    pub seed: u64,
}

impl Default for EnclosureSpec {
    fn default() -> Self {
        Self {
            fence: vec![[0.0, 0.0], [10.0, 0.0], [10.0, 4.5], [7.5, 7.0], [0.0, 7.0]],
            fence_spacing: 0.3,
            f_res_e: 2.0,
            chi_e: 1.2,
            gamma_r_e: None,
            gamma_l_e: 0.0,
            n_interior: 30,
            ris_wall: 0,
            n_s: 21,
            delta_s: 0.5,
            chi_s: 1.0,
            clearances: Clearances::default(),
            realizations: 100,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scenario {
    FreeSpace(FreeSpaceSpec),
    Enclosure(EnclosureSpec),
}

/// Parameter swept by a campaign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    ChiS,
    NS,
    DeltaS,
    FResE,
    GammaLE,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::ChiS => "chi_s",
            Axis::NS => "n_s",
            Axis::DeltaS => "delta_s",
            Axis::FResE => "f_res_e",
            Axis::GammaLE => "gamma_l_e",
        }
    }
}

impl Scenario {
    pub fn realizations(&self) -> usize {
        match self {
            Scenario::FreeSpace(s) => s.realizations,
            Scenario::Enclosure(s) => s.realizations,
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            Scenario::FreeSpace(s) => s.seed,
            Scenario::Enclosure(s) => s.seed,
        }
    }

    pub fn set_seed(&mut self, seed: u64) {
        match self {
            Scenario::FreeSpace(s) => s.seed = seed,
            Scenario::Enclosure(s) => s.seed = seed,
        }
    }

    pub fn set_realizations(&mut self, n: usize) {
        match self {
            Scenario::FreeSpace(s) => s.realizations = n,
            Scenario::Enclosure(s) => s.realizations = n,
        }
    }

    /// Copy with one parameter replaced.
    pub fn with_axis(&self, axis: Axis, value: f64) -> Result<Scenario, ExperimentError> {
        let mut out = self.clone();
        let count = || {
            if value >= 1.0 && value.fract() == 0.0 && value <= 1e6 {
                Ok(value as usize)
            } else {
                Err(ExperimentError::InvalidSpec(format!("n_s grid value {value} is not a positive integer")))
            }
        };
        match (&mut out, axis) {
            (Scenario::FreeSpace(s), Axis::ChiS) => s.chi_s = value,
            (Scenario::Enclosure(s), Axis::ChiS) => s.chi_s = value,
            (Scenario::FreeSpace(s), Axis::NS) => s.n_s = count()?,
            (Scenario::Enclosure(s), Axis::NS) => s.n_s = count()?,
            (Scenario::FreeSpace(s), Axis::DeltaS) => s.delta_s = value,
            (Scenario::Enclosure(s), Axis::DeltaS) => s.delta_s = value,
            (Scenario::Enclosure(s), Axis::FResE) => s.f_res_e = value,
            (Scenario::Enclosure(s), Axis::GammaLE) => s.gamma_l_e = value,
            (Scenario::FreeSpace(_), a) => {
                return Err(ExperimentError::InvalidSpec(format!(
                    "axis {} needs an enclosure scenario",
                    a.name()
                )))
            }
        }
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let d_min = PhysicalConstants::default().d_min();
        let bad = |m: String| Err(ExperimentError::InvalidSpec(m));
        match self {
            Scenario::FreeSpace(s) => {
                if s.n_s == 0 {
                    return bad("n_s must be at least 1".into());
                }
                if !(s.delta_s > d_min) {
                    return bad(format!("delta_s = {} must exceed d_min = {d_min}", s.delta_s));
                }
                if !(s.chi_s > 0.0) {
                    return bad(format!("chi_s = {} must be positive", s.chi_s));
                }
                if !(s.exclusion_radius >= 6.0) {
                    return bad(format!("exclusion_radius = {} must be at least 6", s.exclusion_radius));
                }
                let [x0, x1, y0, y1] = s.region;
                if !(x1 > x0 && y1 > y0) {
                    return bad(format!("region {:?} is empty", s.region));
                }
            }
            Scenario::Enclosure(s) => {
                if !polygon_is_simple(&s.fence) {
                    return bad("fence must be a closed, non-self-intersecting polygon".into());
                }
                if !(s.fence_spacing > d_min) {
                    return bad(format!("fence_spacing = {} must exceed d_min", s.fence_spacing));
                }
                if s.ris_wall >= s.fence.len() {
                    return bad(format!("ris_wall = {} but the fence has {} edges", s.ris_wall, s.fence.len()));
                }
                if s.n_s == 0 || !(s.delta_s > d_min) || !(s.chi_s > 0.0) {
                    return bad("RIS needs n_s >= 1, delta_s > d_min and chi_s > 0".into());
                }
                if !(s.f_res_e > 0.0) || !(s.chi_e > 0.0) || !(s.gamma_l_e >= 0.0) {
                    return bad("environment needs f_res_e > 0, chi_e > 0 and gamma_l_e >= 0".into());
                }
                let a = s.fence[s.ris_wall];
                let b = s.fence[(s.ris_wall + 1) % s.fence.len()];
                let wall = (b[0] - a[0]).hypot(b[1] - a[1]);
                if (s.n_s - 1) as f64 * s.delta_s > wall + 1e-9 {
                    return bad(format!("RIS span {} exceeds its wall length {wall}", (s.n_s - 1) as f64 * s.delta_s));
                }
            }
        }
        if self.realizations() == 0 {
            return bad("realizations must be at least 1".into());
        }
        Ok(())
    }
}

/// Frequency grid and fit window for impulse responses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CirSpec {
    pub band: [f64; 2],
    pub n_f: usize,
    pub window_db: f64,
}

impl Default for CirSpec {
    fn default() -> Self {
        Self {
            band: DEFAULT_BAND,
            n_f: DEFAULT_N_F,
            window_db: DEFAULT_WINDOW_DB,
        }
    }
}

/// A sweep: scenario, one axis with its grid, and what to record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub scenario: Scenario,
    pub axis: Axis,
    pub grid: Vec<f64>,
    #[serde(default = "yes")]
    pub zeta: bool,
    #[serde(default)]
    pub tau: bool,
    /// Also evaluate each realization with the environment removed.
    #[serde(default)]
    pub matched_free_space: bool,
    #[serde(default)]
    pub cir: CirSpec,
}

fn yes() -> bool {
    true
}

impl SweepSpec {
    pub fn from_json_str(s: &str) -> Result<Self, ExperimentError> {
        let spec: SweepSpec = serde_json::from_str(s).map_err(|e| ExperimentError::InvalidSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep spec serializes")
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.grid.is_empty() {
            return Err(ExperimentError::InvalidSpec("grid is empty".into()));
        }
        if !self.zeta && !self.tau {
            return Err(ExperimentError::InvalidSpec("nothing to measure (zeta and tau both off)".into()));
        }
        if self.matched_free_space && matches!(self.scenario, Scenario::FreeSpace(_)) {
            return Err(ExperimentError::InvalidSpec("matched_free_space needs an enclosure scenario".into()));
        }
        let c = &self.cir;
        if !(c.band[0] > 0.0 && c.band[1] > c.band[0]) || c.n_f < 64 || !c.n_f.is_power_of_two() || !(c.window_db > 0.0) {
            return Err(ExperimentError::InvalidSpec(format!("invalid cir settings {c:?}")));
        }
        self.scenario.validate()?;
        for &v in &self.grid {
            self.scenario.with_axis(self.axis, v)?;
        }
        Ok(())
    }
}
