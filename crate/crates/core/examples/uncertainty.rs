//! `Delta t Delta s >= hbar / 2` on the time axis: Gaussians saturate it,
//! energy eigenvectors have `Delta s = 0`.
//!
//! `cargo run --release --example uncertainty`

use chronos::axes::{energy_eigenvector, energy_lattice, gaussian, presets, PhysicalConstants};
use chronos::constraints::uncertainty_product;

fn main() -> chronos::Result<()> {
    let k = PhysicalConstants::unit();
    let gt = presets::energy_aligned_time_grid(&k, 256)?;
    let centre = 0.5 * gt.period();
    for sigma in [0.2, 0.4, 0.6, 0.785] {
        let u = uncertainty_product(&gaussian(&gt, centre, sigma, 0.0), &gt, &k)?;
        println!("sigma {sigma:<6} dt {:.6}  ds {:.6}  product {:.8}", u.delta_t, u.delta_s, u.product);
    }
    let e = energy_lattice(&gt, &k)[130];
    let u = uncertainty_product(&energy_eigenvector(&gt, e, &k)?, &gt, &k)?;
    println!("energy eigenvector E = {e}: dt {:.4}, ds {:.1e}", u.delta_t, u.delta_s);
    Ok(())
}
