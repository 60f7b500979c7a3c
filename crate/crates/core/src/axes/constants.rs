use crate::error::{Error, Result};

/// `hbar`, `m`, `c` and `omega` in one consistent unit system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mass: f64,
    pub c: f64,
    pub omega: f64,
}

impl PhysicalConstants {
    pub fn new(hbar: f64, mass: f64, c: f64, omega: f64) -> Result<Self> {
        let k = Self {
            hbar,
            mass,
            c,
            omega,
        };
        k.validate()?;
        Ok(k)
    }

    pub fn unit() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
            c: 1.0,
            omega: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("hbar", self.hbar),
            ("mass", self.mass),
            ("c", self.c),
            ("omega", self.omega),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::validation(
                    format!("constants.{name}"),
                    format!("must be finite and strictly positive, got {v}"),
                ));
            }
        }
        Ok(())
    }

    /// Spacing of the oscillator time levels, `hbar^2 omega / (m^2 c^4)`.
    pub fn delta_t(&self) -> f64 {
        self.hbar * self.hbar * self.omega / (self.mass * self.mass * self.c.powi(4))
    }

    /// `sqrt(hbar / (m omega))`.
    pub fn oscillator_length(&self) -> f64 {
        (self.hbar / (self.mass * self.omega)).sqrt()
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::unit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive() {
        let err = PhysicalConstants::new(1.0, 0.0, 1.0, 1.0).unwrap_err();
        assert!(err.to_string().contains("constants.mass"));
        assert!(PhysicalConstants::new(1.0, 1.0, -1.0, 1.0).is_err());
        assert!(PhysicalConstants::new(f64::INFINITY, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn derived_scales() {
        let k = PhysicalConstants::new(2.0, 1.0, 1.0, 3.0).unwrap();
        assert_eq!(k.delta_t(), 12.0);
        assert!((k.oscillator_length() - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }
}
