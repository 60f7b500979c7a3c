//! Runs a scenario file: evolution and energy jumps between oscillator
//! solutions, one CSV row per step.
//!
//! `cargo run --release --example energy_jump_scenario -- [scenario.json]`

use chronos::cli::{cmd_run, load_scenario};

fn main() -> chronos::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/oscillator_jump.json").to_string()
    });
    let sc = load_scenario(path.as_ref())?;
    let out = cmd_run(&sc)?;
    for line in out.csv.lines() {
        let cols: Vec<&str> = line.split(',').take(9).collect();
        println!("{}", cols.join("  "));
    }
    if let Some(e) = out.error {
        println!("aborted: {e}");
    }
    Ok(())
}
