//! Hankel function, matrix inversion and norm estimates.

use num_complex::Complex64;
use physfadkit::numerics::{hankel0_2, invert_checked, spectral_norm, spectral_radius_estimate, ComplexMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for x in [0.1, 1.0, 2.404_825_557_695_773, 10.0, 25.0, 100.0] {
        let h = hankel0_2(x)?;
        println!("H0⁽²⁾({x}) = {:.15} {:+.15}j", h.re, h.im);
    }
    let a = ComplexMatrix::from_fn(5, 5, |i, j| Complex64::new(1.0 / (1.0 + i as f64 + j as f64), if i == j { 1.0 } else { 0.0 }));
    let inv = invert_checked(&a)?;
    let resid = a.matmul(&inv.inverse).sub(&ComplexMatrix::identity(5)).max_abs();
    println!("rcond = {:.3e}, |AA⁻¹ − I|max = {resid:.1e}", inv.rcond);
    println!("‖A‖₂ = {:.6}, ρ(A) ≤ {:.6}", spectral_norm(&a)?, spectral_radius_estimate(&a, 256)?.value);
    Ok(())
}
