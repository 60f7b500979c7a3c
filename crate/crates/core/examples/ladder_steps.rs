//! Raising and lowering between time eigenstates on the time-aligned grid:
//! `a^dagger` with a time shift of `-Delta t`, `a` with `+Delta t`.
//!
//! `cargo run --release --example ladder_steps`

use chronos::axes::{PhysicalConstants, Preset};
use chronos::dynamics::{ladder_step_down, ladder_step_up, Lab};
use chronos::models::ModelSpec;

fn main() -> chronos::Result<()> {
    let k = PhysicalConstants::unit();
    let (gq, gt) = Preset::TimeAligned.grids(&k)?;
    let lab = Lab::new(ModelSpec::oscillator(k, gq)?, gt, 8)?;

    let mut s = lab.time_solution(0)?.0;
    for n in 0..7 {
        let (next, c) = ladder_step_up(&s, &lab)?;
        let fid = next.fidelity(&lab.time_solution(n + 1)?.0);
        println!("up   {n} -> {}: coefficient {c:.8} (sqrt {:.8}), fidelity {fid:.12}", n + 1, ((n + 1) as f64).sqrt());
        s = next.normalized();
    }
    for n in (1..8).rev() {
        let (next, c) = ladder_step_down(&s, &lab)?;
        println!("down {n} -> {}: coefficient {c:.8} (sqrt {:.8})", n - 1, (n as f64).sqrt());
        s = next.normalized();
    }
    let (zero, c) = ladder_step_down(&s, &lab)?;
    println!("down 0: coefficient {c}, norm {}", zero.norm());
    match ladder_step_up(&lab.time_solution(7)?.0, &lab) {
        Err(e) => println!("up from the top retained level: {e}"),
        Ok(_) => unreachable!("top level has no partner"),
    }
    Ok(())
}
