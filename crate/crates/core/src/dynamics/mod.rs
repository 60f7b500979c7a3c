//! Unitaries acting on solutions and the scenario engine that chains them.
//!
//! Time translation is `exp(-i s dt / hbar)`, which shifts sampled functions
//! `f(t) -> f(t + dt)`. The raising step therefore uses `-dt` and the
//! lowering step `+dt`, carrying `|t_n>` to `|t_{n+1}>` and back.

mod lab;
mod scenario;
mod unitaries;

pub use lab::{energy_jump, ladder_step_down, ladder_step_up, Lab};
pub use scenario::{
    run_scenario, simulate, Aborted, GridSpec, Initial, Scenario, Step, StepKind, Tolerances,
    TrajectoryRecord, EQUIVALENCE_TOL,
};
pub use unitaries::{eigen_swap_unitary, energy_shift, time_translation};
