//! Standard grid recipes.
//!
//! No single uniform time grid puts both the oscillator energies on the
//! energy lattice and the oscillator time levels on the samples, so there are
//! two time presets.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::constants::PhysicalConstants;
use super::grid::AxisGrid;
use crate::error::{Error, Result};

pub const DEFAULT_N_Q: usize = 128;
pub const DEFAULT_N_T: usize = 32;
/// Half-width of the default position window in oscillator lengths.
pub const DEFAULT_Q_EXTENT: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// Period `4 pi / omega`: energy lattice spacing `hbar omega / 2`, so
    /// every `hbar omega (n + 1/2)` inside the band is a lattice point.
    EnergyAligned,
    /// Spacing `hbar^2 omega / (m^2 c^4)` with origin at half a step, so every
    /// oscillator time level is a sample.
    TimeAligned,
}

impl Preset {
    pub fn as_str(self) -> &'static str {
        match self {
            Preset::EnergyAligned => "energy-aligned",
            Preset::TimeAligned => "time-aligned",
        }
    }

    pub fn time_grid(self, k: &PhysicalConstants, n_t: usize) -> Result<AxisGrid> {
        match self {
            Preset::EnergyAligned => energy_aligned_time_grid(k, n_t),
            Preset::TimeAligned => time_aligned_time_grid(k, n_t),
        }
    }

    /// Default position grid paired with this preset's time grid.
    pub fn grids(self, k: &PhysicalConstants) -> Result<(AxisGrid, AxisGrid)> {
        Ok((default_position_grid(k)?, self.time_grid(k, DEFAULT_N_T)?))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "energy-aligned" => Ok(Preset::EnergyAligned),
            "time-aligned" => Ok(Preset::TimeAligned),
            other => Err(Error::validation(
                "preset",
                format!("unknown preset `{other}` (expected energy-aligned or time-aligned)"),
            )),
        }
    }
}

/// `n_q = 128` samples on `[-10 l, 10 l)`, `l` the oscillator length.
pub fn default_position_grid(k: &PhysicalConstants) -> Result<AxisGrid> {
    position_grid(k, DEFAULT_N_Q, DEFAULT_Q_EXTENT)
}

/// `n` samples on `[-extent l, extent l)`.
pub fn position_grid(k: &PhysicalConstants, n: usize, extent: f64) -> Result<AxisGrid> {
    let l = k.oscillator_length();
    AxisGrid::position(n, -extent * l, 2.0 * extent * l / n as f64)
}

pub fn energy_aligned_time_grid(k: &PhysicalConstants, n_t: usize) -> Result<AxisGrid> {
    periodic_time_grid(4.0 * PI / k.omega, n_t)
}

/// Time grid starting at 0 with period `period`.
pub fn periodic_time_grid(period: f64, n_t: usize) -> Result<AxisGrid> {
    AxisGrid::time(n_t, 0.0, period / n_t as f64)
}

pub fn time_aligned_time_grid(k: &PhysicalConstants, n_t: usize) -> Result<AxisGrid> {
    let dt = k.delta_t();
    AxisGrid::time(n_t, 0.5 * dt, dt)
}
