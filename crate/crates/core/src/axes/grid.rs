use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisLabel {
    Position,
    Time,
}

impl AxisLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            AxisLabel::Position => "position",
            AxisLabel::Time => "time",
        }
    }
}

impl fmt::Display for AxisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Uniform periodic sampling of one continuous variable.
///
/// Samples are `origin + j * spacing` for `j < n`, and the grid is treated as
/// periodic with period `n * spacing`. The induced Fourier lattice is
/// `omega_k = 2 pi k / L` for `k` in `-n/2 ..= n - n/2 - 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisGrid {
    n: usize,
    origin: f64,
    spacing: f64,
    label: AxisLabel,
}

impl AxisGrid {
    pub fn new(n: usize, origin: f64, spacing: f64, label: AxisLabel) -> Result<Self> {
        if n == 0 {
            return Err(Error::validation("n", "grid needs at least one sample"));
        }
        if !origin.is_finite() {
            return Err(Error::validation("origin", "must be finite"));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::validation("spacing", "must be finite and positive"));
        }
        Ok(Self {
            n,
            origin,
            spacing,
            label,
        })
    }

    pub fn position(n: usize, origin: f64, spacing: f64) -> Result<Self> {
        Self::new(n, origin, spacing, AxisLabel::Position)
    }

    pub fn time(n: usize, origin: f64, spacing: f64) -> Result<Self> {
        Self::new(n, origin, spacing, AxisLabel::Time)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn label(&self) -> AxisLabel {
        self.label
    }

    pub fn sample(&self, j: usize) -> f64 {
        self.origin + j as f64 * self.spacing
    }

    pub fn samples(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.sample(j)).collect()
    }

    pub fn first(&self) -> f64 {
        self.origin
    }

    pub fn last(&self) -> f64 {
        self.sample(self.n - 1)
    }

    pub fn period(&self) -> f64 {
        self.n as f64 * self.spacing
    }

    /// Lowest lattice index, `-floor(n/2)`.
    pub fn k_min(&self) -> i64 {
        -((self.n / 2) as i64)
    }

    /// Lattice index carried by FFT bin `m`.
    pub fn bin_index(&self, m: usize) -> i64 {
        let n = self.n as i64;
        let m = m as i64;
        if m < n + self.k_min() {
            m
        } else {
            m - n
        }
    }

    pub fn frequency(&self, k: i64) -> f64 {
        2.0 * PI * k as f64 / self.period()
    }

    /// Fourier lattice frequencies in ascending `k` order.
    pub fn frequencies(&self) -> Vec<f64> {
        let k0 = self.k_min();
        (0..self.n as i64).map(|j| self.frequency(k0 + j)).collect()
    }

    /// Largest representable frequency magnitude, `pi / spacing`.
    pub fn nyquist(&self) -> f64 {
        PI / self.spacing
    }

    /// Index and distance of the sample closest to `x`, without wrapping.
    pub fn nearest_sample(&self, x: f64) -> (usize, f64) {
        let j = ((x - self.origin) / self.spacing).round();
        let j = j.clamp(0.0, (self.n - 1) as f64) as usize;
        (j, (x - self.sample(j)).abs())
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.first() && x <= self.last()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_spacing() {
        assert!(AxisGrid::time(4, 0.0, 0.0).is_err());
        assert!(AxisGrid::time(4, 0.0, f64::NAN).is_err());
        assert!(AxisGrid::time(0, 0.0, 1.0).is_err());
    }

    #[test]
    fn lattice_layout() {
        let g = AxisGrid::position(4, -1.0, 0.5).unwrap();
        assert_eq!(g.samples(), vec![-1.0, -0.5, 0.0, 0.5]);
        assert_eq!(g.period(), 2.0);
        let ks: Vec<i64> = (0..4).map(|m| g.bin_index(m)).collect();
        assert_eq!(ks, vec![0, 1, -2, -1]);
        assert_eq!(g.frequencies()[0], -2.0 * PI);

        let odd = AxisGrid::position(5, 0.0, 1.0).unwrap();
        let ks: Vec<i64> = (0..5).map(|m| odd.bin_index(m)).collect();
        assert_eq!(ks, vec![0, 1, 2, -2, -1]);
    }

    #[test]
    fn nearest_sample_clamps() {
        let g = AxisGrid::time(4, 0.5, 1.0).unwrap();
        let (j, d) = g.nearest_sample(2.4);
        assert_eq!(j, 2);
        assert!((d - 0.1).abs() < 1e-12);
        assert_eq!(g.nearest_sample(-3.0).0, 0);
        assert_eq!(g.nearest_sample(99.0).0, 3);
    }
}
