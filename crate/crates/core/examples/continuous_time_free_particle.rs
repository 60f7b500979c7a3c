//! Free particle with `G = hbar p^2 / (m^3 c^4)`: plane waves are
//! `G`-eigenvectors and the time levels crowd together as the box grows.
//!
//! `cargo run --release --example continuous_time_free_particle`

use chronos::axes::{momentum_operator, plane_wave, presets, PhysicalConstants};
use chronos::models::{free_particle_g, ModelSpec};
use chronos::numkernel::{eigenvalues_hermitian, norm, C64};

fn main() -> chronos::Result<()> {
    let k = PhysicalConstants::unit();
    let gq = presets::default_position_grid(&k)?;
    let g = free_particle_g(&ModelSpec::free_particle(k, gq)?)?;
    let p = momentum_operator(&gq, &k)?;
    for m in [0, 1, 3, -5] {
        let psi = plane_wave(&gq, m);
        let pk = p.expectation(&psi).re / norm(&psi).powi(2);
        let t = k.hbar / (k.mass.powi(3) * k.c.powi(4)) * pk * pk;
        let r: Vec<C64> = g.matvec(&psi).iter().zip(&psi).map(|(a, b)| a - t * b).collect();
        println!("k = {m:>2}: p = {pk:>8.5}, t = {t:>9.6}, |G psi - t psi| = {:.1e}", norm(&r));
    }
    for extent in [10.0, 20.0, 40.0] {
        let gq = presets::position_grid(&k, 128, extent)?;
        let t = eigenvalues_hermitian(&free_particle_g(&ModelSpec::free_particle(k, gq)?)?)?;
        println!("box +-{extent}: lowest nonzero time level {:.6}", t[1]);
    }
    Ok(())
}
