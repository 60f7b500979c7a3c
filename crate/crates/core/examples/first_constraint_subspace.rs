//! Near-kernel of `I (x) s - H (x) I`: one separable solution per oscillator
//! level whose energy sits on the energy lattice.
//!
//! `cargo run --release --example first_constraint_subspace`

use chronos::axes::{presets, PhysicalConstants, Preset};
use chronos::constraints::{physical_subspace, physical_subspace_factored, ConstraintOperator};
use chronos::models::{harmonic_hamiltonian, ModelSpec};

fn main() -> chronos::Result<()> {
    let k = PhysicalConstants::unit();
    let (gq, gt) = Preset::EnergyAligned.grids(&k)?;
    let h = harmonic_hamiltonian(&ModelSpec::oscillator(k, gq)?)?;
    let d = ConstraintOperator::first(&h, &gt, &k)?;

    let basis = physical_subspace_factored(&d, 1e-6)?;
    println!("default grids ({} x {}): {} solutions", gq.n(), gt.n(), basis.len());
    for (v, label) in basis.vectors().iter().zip(basis.labels()) {
        println!("  E = {:>6.3}  residual {:.2e}", label.unwrap_or(f64::NAN), d.residual(v)?);
    }

    // The dense path agrees on a reduced composite.
    let gq = presets::position_grid(&k, 32, 6.0)?;
    let gt = presets::energy_aligned_time_grid(&k, 16)?;
    let h = harmonic_hamiltonian(&ModelSpec::oscillator(k, gq)?)?;
    let d = ConstraintOperator::first(&h, &gt, &k)?;
    let dense = physical_subspace(&d, 1e-6)?;
    let factored = physical_subspace_factored(&d, 1e-6)?;
    let gap = (&dense.projector()? - &factored.projector()?).max_norm();
    println!("reduced grids: dense {} / factored {} solutions, projector gap {gap:.1e}", dense.len(), factored.len());
    Ok(())
}
