//! `(c_s I (x) s + c_t I (x) t - F) Psi = 0` for a few coefficient pairs on a
//! reduced composite. `(1, 0)` with `F = H` recovers the first constraint.
//!
//! `cargo run --release --example generalized_equation`

use chronos::axes::{lift_system, presets, PhysicalConstants};
use chronos::constraints::generalized_solve;
use chronos::models::{harmonic_hamiltonian, oscillator_g, ModelSpec};

fn main() -> chronos::Result<()> {
    let k = PhysicalConstants::unit();
    let gq = presets::position_grid(&k, 32, 6.0)?;
    let gt = presets::energy_aligned_time_grid(&k, 16)?;
    let model = ModelSpec::oscillator(k, gq)?;
    let fh = lift_system(&harmonic_hamiltonian(&model)?, gt.n());
    let fg = lift_system(&oscillator_g(&model)?, gt.n());

    for (c_s, c_t, f, name) in [
        (1.0, 0.0, &fh, "H"),
        (0.0, 1.0, &fg, "G"),
        (1.0, 1.0, &(&fh + &fg), "H + G"),
        (2.0, 0.0, &fh, "H"),
    ] {
        let basis = generalized_solve(c_s, c_t, f, &gt, &k, 1e-6)?;
        println!("c_s = {c_s}, c_t = {c_t}, F = {name}: kernel dimension {}", basis.len());
    }
    let aligned = presets::time_aligned_time_grid(&k, 16)?;
    let fg = lift_system(&oscillator_g(&model)?, aligned.n());
    let basis = generalized_solve(0.0, 1.0, &fg, &aligned, &k, 1e-6)?;
    println!("time-aligned grid, c_t = 1, F = G: kernel dimension {}", basis.len());
    let detuned = presets::periodic_time_grid(4.0 * std::f64::consts::PI * 1.1, 16)?;
    let basis = generalized_solve(1.0, 0.0, &fh, &detuned, &k, 1e-6)?;
    println!("detuned period, F = H: kernel dimension {}", basis.len());
    Ok(())
}
