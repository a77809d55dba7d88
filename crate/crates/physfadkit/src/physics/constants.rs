use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

/// Unit system. The defaults are the dimensionless convention c = ε = δ = f₀ = 1,
/// so λ₀ = 1 and k(f₀) = 2π.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhysicalConstants {
    pub c: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub f0: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            c: 1.0,
            epsilon: 1.0,
            delta: 1.0,
            f0: 1.0,
        }
    }
}

impl PhysicalConstants {
    pub fn wavenumber(&self, f: f64) -> f64 {
        2.0 * PI * f / self.c
    }

    pub fn wavelength(&self) -> f64 {
        self.c / self.f0
    }

    /// Green's-function prefactor k²/(4εδ) for a given wavenumber.
    pub fn coupling_prefactor(&self, k: f64) -> f64 {
        k * k / (4.0 * self.epsilon * self.delta)
    }

    /// Radiation-loss floor μ(f): energy conservation needs Im(α⁻¹) ≥ μ.
    pub fn mu(&self, f: f64) -> f64 {
        self.coupling_prefactor(self.wavenumber(f))
    }

    /// Minimum admissible dipole separation (0.1 λ₀).
    pub fn d_min(&self) -> f64 {
        0.1 * self.wavelength()
    }

    pub fn is_valid(&self) -> bool {
        [self.c, self.epsilon, self.delta, self.f0]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0)
    }
}
