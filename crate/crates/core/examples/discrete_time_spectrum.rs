//! Lowest eigenvalues of the oscillator's `G` against `t_n = hbar^2 omega / (m^2 c^4) (n + 1/2)`.
//!
//! `cargo run --release --example discrete_time_spectrum`

use chronos::axes::{presets, PhysicalConstants};
use chronos::models::{energy_levels, oscillator_g, predicted_energy, predicted_tn, ModelSpec};
use chronos::numkernel::eigenvalues_hermitian;

fn main() -> chronos::Result<()> {
    let k = PhysicalConstants::new(1.0, 1.0, 1.0, 1.5)?;
    let model = ModelSpec::oscillator(k, presets::default_position_grid(&k)?)?;
    let t = eigenvalues_hermitian(&oscillator_g(&model)?)?;
    let e = energy_levels(&model, 10)?;

    println!("{:>3} {:>14} {:>14} {:>14} {:>10}", "n", "E_n", "t_n", "predicted", "error");
    for (n, tn) in t.iter().take(10).enumerate() {
        let want = predicted_tn(n, &k);
        println!(
            "{n:>3} {:>14.10} {:>14.10} {want:>14.10} {:>10.2e}",
            e.values()[n],
            tn,
            (tn - want).abs()
        );
        assert!((e.values()[n] - predicted_energy(n, &k)).abs() < 1e-7);
    }
    println!("time levels are spaced by {}", k.delta_t());
    Ok(())
}
