//! Discretised position and time axes and the canonical operators on them.
//!
//! Derivatives are spectral on a periodic grid, so the momentum and energy
//! operators have exactly the Fourier lattice as their spectrum. Sign
//! conventions: `p = -i hbar d/dq` and `s = +i hbar d/dt`, so that
//! `[q, p] = i hbar` and `[t, s] = -i hbar` on band-limited interior states.

mod constants;
mod grid;
mod operators;
pub mod presets;
mod state;

pub use constants::PhysicalConstants;
pub use grid::{AxisGrid, AxisLabel};
pub use operators::{
    energy_eigenvector, energy_lattice, energy_operator, lattice_offset, lift_system, lift_time,
    momentum_operator, momentum_squared, plane_wave, position_operator, time_operator,
};
pub use presets::Preset;
pub use state::{gaussian, grid_delta, CompositeState};
