//! `[q, p] = i hbar` and `[t, s] = -i hbar` on interior Gaussians, and the
//! vanishing cross commutators once the factors are lifted.
//!
//! `cargo run --release --example canonical_commutators`

use chronos::axes::{
    energy_operator, lift_system, lift_time, momentum_operator, position_operator, presets,
    time_operator, PhysicalConstants,
};
use chronos::cli::{commutator_defect, interior_gaussians};
use chronos::numkernel::C64;

fn main() -> chronos::Result<()> {
    let k = PhysicalConstants::unit();
    let gq = presets::default_position_grid(&k)?;
    let gt = presets::energy_aligned_time_grid(&k, 128)?;
    let (q, p) = (position_operator(&gq)?, momentum_operator(&gq, &k)?);
    let (t, s) = (time_operator(&gt)?, energy_operator(&gt, &k)?);
    let ih = C64::new(0.0, k.hbar);

    let psi = interior_gaussians(&gq);
    let phi = interior_gaussians(&gt);
    println!("[q, p] - i hbar : {:.3e} over {} states", commutator_defect(&q, &p, ih, &psi), psi.len());
    println!("[t, s] + i hbar : {:.3e} over {} states", commutator_defect(&t, &s, -ih, &phi), phi.len());

    // The full-grid identity fails at the wrap-around; a delta at the edge shows it.
    let mut edge = vec![C64::new(0.0, 0.0); gq.n()];
    edge[0] = C64::new(1.0, 0.0);
    println!("[q, p] - i hbar on an edge delta: {:.3e}", commutator_defect(&q, &p, ih, &[edge]));

    let small_q = presets::position_grid(&k, 12, 4.0)?;
    let small_t = presets::energy_aligned_time_grid(&k, 6)?;
    let lq = lift_system(&position_operator(&small_q)?, small_t.n());
    let ls = lift_time(&energy_operator(&small_t, &k)?, small_q.n());
    println!("|[q (x) I, I (x) s]|_max = {:.1e}", lq.commutator(&ls).max_norm());
    Ok(())
}
