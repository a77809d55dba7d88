use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{PhysicalConstants, PhysicsError};

/// Default radiative loss parameter, μ(f₀) = π² in default units: a χ = 1
/// dipole is then exactly lossless and smaller χ adds absorption.
pub const DEFAULT_GAMMA_R: f64 = PI * PI;

/// Relative slack on the energy-conservation check (absorbs rounding in
/// Γ_R = μ(f₀)χ² style parameter choices).
const ENERGY_SLACK: f64 = 1e-12;

fn default_gamma_r() -> f64 {
    DEFAULT_GAMMA_R
}

/// A polarizable point scatterer with a Lorentzian response.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dipole {
    pub x: f64,
    pub y: f64,
    pub f_res: f64,
    pub chi: f64,
    #[serde(default)]
    pub gamma_l: f64,
    #[serde(default = "default_gamma_r")]
    pub gamma_r: f64,
}

impl Dipole {
    pub fn new(x: f64, y: f64, f_res: f64, chi: f64) -> Self {
        Self {
            x,
            y,
            f_res,
            chi,
            gamma_l: 0.0,
            gamma_r: DEFAULT_GAMMA_R,
        }
    }

    /// Lossless χ = 1 element resonant at f₀ = 1 (antennas and ON RIS elements).
    pub fn antenna(x: f64, y: f64) -> Self {
        Self::new(x, y, 1.0, 1.0)
    }

    pub fn with_losses(mut self, gamma_l: f64, gamma_r: f64) -> Self {
        self.gamma_l = gamma_l;
        self.gamma_r = gamma_r;
        self
    }

    pub fn position(&self) -> [f64; 2] {
        [self.x, self.y]
    }

    pub fn distance(&self, other: &Dipole) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn params_valid(&self) -> Result<(), &'static str> {
        let finite = [self.x, self.y, self.f_res, self.chi, self.gamma_l, self.gamma_r]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err("non-finite value");
        }
        if self.chi <= 0.0 {
            return Err("chi");
        }
        if self.f_res <= 0.0 {
            return Err("f_res");
        }
        if self.gamma_l < 0.0 {
            return Err("gamma_l");
        }
        if self.gamma_r <= 0.0 {
            return Err("gamma_r");
        }
        Ok(())
    }
}

/// α⁻¹(f) = (f_res² − f²)/χ² + j(Γ_R (f/f₀)² + fΓ_L)/χ² with f₀ = 1.
///
/// No energy check; see [`checked_inverse_polarizability`].
pub fn inverse_polarizability(d: &Dipole, f: f64) -> Complex64 {
    inverse_polarizability_in(d, f, &PhysicalConstants::default())
}

pub fn inverse_polarizability_in(d: &Dipole, f: f64, pc: &PhysicalConstants) -> Complex64 {
    let chi2 = d.chi * d.chi;
    let fr = f / pc.f0;
    Complex64::new(
        (d.f_res * d.f_res - f * f) / chi2,
        (d.gamma_r * fr * fr + f * d.gamma_l) / chi2,
    )
}

/// [`inverse_polarizability_in`] plus the Im(α⁻¹) ≥ μ(f) energy check.
pub fn checked_inverse_polarizability(d: &Dipole, f: f64, pc: &PhysicalConstants) -> Result<Complex64, PhysicsError> {
    let a = inverse_polarizability_in(d, f, pc);
    let mu = pc.mu(f);
    if a.im < mu * (1.0 - ENERGY_SLACK) {
        return Err(PhysicsError::EnergyConservationViolation {
            index: None,
            im_inverse_alpha: a.im,
            mu,
        });
    }
    Ok(a)
}

/// Γ_R at which a dipole of coupling strength χ is exactly lossless (the
/// smallest value passing the energy check).
pub fn lossless_gamma_r(chi: f64, pc: &PhysicalConstants) -> f64 {
    pc.mu(pc.f0) * chi * chi
}
