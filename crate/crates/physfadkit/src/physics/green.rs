use num_complex::Complex64;

use super::{PhysicalConstants, PhysicsError};
use crate::numerics::j0_y0;

/// 2D free-space Green's function G = j·k²/(4εδ)·H0⁽²⁾(k|p − q|).
pub fn green(p: [f64; 2], q: [f64; 2], k: f64, pc: &PhysicalConstants) -> Result<Complex64, PhysicsError> {
    let d = (p[0] - q[0]).hypot(p[1] - q[1]);
    if d < pc.d_min() {
        return Err(PhysicsError::CoincidentPoints { i: None, j: None, distance: d });
    }
    Ok(green_at_distance(d, k, pc))
}

/// Same as [`green`] for a pre-validated separation `d > 0`.
pub(crate) fn green_at_distance(d: f64, k: f64, pc: &PhysicalConstants) -> Complex64 {
    let (j0, y0) = j0_y0(k * d);
    // j·H0⁽²⁾ = j(J0 − jY0) = Y0 + jJ0
    Complex64::new(y0, j0) * pc.coupling_prefactor(k)
}
