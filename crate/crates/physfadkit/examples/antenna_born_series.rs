//! Born series of an antenna array's self-interaction block: coupling
//! constant, truncation bound and measured error per order.

use physfadkit::analysis::{born_ratio_norm, born_truncation_error, group_coupling_constant, truncation_error_bound};
use physfadkit::numerics::Group;
use physfadkit::physics::{Dipole, Scene};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // four-element linear array, 0.4 λ₀ spacing, χ = 0.6
    let tx = (0..4).map(|i| Dipole::new(0.4 * i as f64, 0.0, 1.0, 0.6)).collect();
    let s = Scene::free_space(tx, vec![], vec![])?;
    let c = group_coupling_constant(&s, Group::T, 1.0)?;
    println!("C_T = {:.4} (|α| = {:.4}, max row sum {:.4}); ‖ΩM‖₂ = {:.4}", c.value, c.alpha_magnitude, c.max_row_sum, born_ratio_norm(&s, Group::T, 1.0)?);
    if !c.certifies_convergence() {
        println!("C_T ≥ 1: convergence not certified");
        return Ok(());
    }
    println!("{:>3} {:>12} {:>12}", "K", "bound", "measured");
    for k in [1, 2, 4, 8, 16] {
        println!("{k:>3} {:>12.4e} {:>12.4e}", truncation_error_bound(c.value, k)?, born_truncation_error(&s, Group::T, 1.0, k)?);
    }
    Ok(())
}
