//! The two worked systems: the harmonic oscillator, whose `G` has a discrete
//! spectrum of time levels, and the free particle, whose `G` is continuous.

use std::fmt;
use std::str::FromStr;

use crate::axes::{
    momentum_operator, momentum_squared, position_operator, AxisGrid, AxisLabel,
    PhysicalConstants,
};
use crate::error::{Error, Result};
use crate::numkernel::{eig_hermitian, EigenSystem, OperatorMatrix, C64};

/// Retained oscillator levels. Grid eigenvectors above this are visibly
/// affected by the box on the default position grid.
pub const DEFAULT_LEVELS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Oscillator,
    FreeParticle,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Oscillator => "oscillator",
            ModelKind::FreeParticle => "free_particle",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oscillator" => Ok(ModelKind::Oscillator),
            "free_particle" => Ok(ModelKind::FreeParticle),
            other => Err(Error::validation(
                "model",
                format!("unknown model `{other}` (expected oscillator or free_particle)"),
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelSpec {
    kind: ModelKind,
    constants: PhysicalConstants,
    grid: AxisGrid,
}

impl ModelSpec {
    pub fn new(kind: ModelKind, constants: PhysicalConstants, grid: AxisGrid) -> Result<Self> {
        constants.validate()?;
        if grid.label() != AxisLabel::Position {
            return Err(Error::WrongAxis {
                expected: AxisLabel::Position.as_str(),
                found: grid.label().as_str(),
            });
        }
        Ok(Self {
            kind,
            constants,
            grid,
        })
    }

    pub fn oscillator(constants: PhysicalConstants, grid: AxisGrid) -> Result<Self> {
        Self::new(ModelKind::Oscillator, constants, grid)
    }

    pub fn free_particle(constants: PhysicalConstants, grid: AxisGrid) -> Result<Self> {
        Self::new(ModelKind::FreeParticle, constants, grid)
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    pub fn grid(&self) -> &AxisGrid {
        &self.grid
    }

    /// Spacing of the oscillator time levels.
    pub fn delta_t(&self) -> f64 {
        self.constants.delta_t()
    }

    fn require(&self, kind: ModelKind, requested: &'static str) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::WrongKind {
                requested,
                found: self.kind.as_str(),
            })
        }
    }
}

/// `p^2 / 2m + m omega^2 q^2 / 2`.
pub fn harmonic_hamiltonian(m: &ModelSpec) -> Result<OperatorMatrix> {
    m.require(ModelKind::Oscillator, "harmonic Hamiltonian")?;
    oscillator_hamiltonian(m)
}

fn oscillator_hamiltonian(m: &ModelSpec) -> Result<OperatorMatrix> {
    let k = m.constants();
    let kinetic = momentum_squared(m.grid(), k)?.scale_real(0.5 / k.mass);
    let q = m.grid().samples();
    let potential: Vec<f64> = q
        .iter()
        .map(|x| 0.5 * k.mass * k.omega * k.omega * x * x)
        .collect();
    let h = &kinetic + &OperatorMatrix::from_real_diagonal(&potential);
    h.assert_hermitian()
}

/// `p^2 / 2m`.
pub fn free_hamiltonian(m: &ModelSpec) -> Result<OperatorMatrix> {
    let k = m.constants();
    Ok(momentum_squared(m.grid(), k)?.scale_real(0.5 / k.mass))
}

/// The Hamiltonian that belongs to the model kind.
pub fn system_hamiltonian(m: &ModelSpec) -> Result<OperatorMatrix> {
    match m.kind() {
        ModelKind::Oscillator => oscillator_hamiltonian(m),
        ModelKind::FreeParticle => free_hamiltonian(m),
    }
}

/// `hbar / (m^2 c^4) H`, with the potential written as `m omega^2 q^2 / 2` so
/// that the spectrum is `hbar^2 omega / (m^2 c^4) (n + 1/2)`.
pub fn oscillator_g(m: &ModelSpec) -> Result<OperatorMatrix> {
    let h = harmonic_hamiltonian(m)?;
    let k = m.constants();
    h.scale_real(k.hbar / (k.mass * k.mass * k.c.powi(4)))
        .assert_hermitian()
}

/// `hbar / (m^3 c^4) p^2`.
pub fn free_particle_g(m: &ModelSpec) -> Result<OperatorMatrix> {
    m.require(ModelKind::FreeParticle, "free-particle G")?;
    let k = m.constants();
    Ok(momentum_squared(m.grid(), k)?.scale_real(k.hbar / (k.mass.powi(3) * k.c.powi(4))))
}

/// The `G` operator that belongs to the model kind.
pub fn system_g(m: &ModelSpec) -> Result<OperatorMatrix> {
    match m.kind() {
        ModelKind::Oscillator => oscillator_g(m),
        ModelKind::FreeParticle => free_particle_g(m),
    }
}

/// `hbar^2 omega / (m^2 c^4) (n + 1/2)`.
pub fn predicted_tn(n: usize, k: &PhysicalConstants) -> f64 {
    k.delta_t() * (n as f64 + 0.5)
}

/// `hbar omega (n + 1/2)`.
pub fn predicted_energy(n: usize, k: &PhysicalConstants) -> f64 {
    k.hbar * k.omega * (n as f64 + 0.5)
}

/// Lowest `levels` eigenpairs of the model Hamiltonian.
pub fn energy_levels(m: &ModelSpec, levels: usize) -> Result<EigenSystem> {
    Ok(eig_hermitian(&system_hamiltonian(m)?)?.truncated(levels))
}

/// Lowering and raising operators on the span of `levels`, returned in the
/// grid basis.
///
/// In the eigenbasis `a|n> = sqrt(n)|n-1>` and `a^+|n> = sqrt(n+1)|n+1>`,
/// except that `a^+` annihilates the top retained level.
pub fn ladder_operators(
    m: &ModelSpec,
    levels: &EigenSystem,
) -> Result<(OperatorMatrix, OperatorMatrix)> {
    m.require(ModelKind::Oscillator, "ladder operators")?;
    let n_max = levels.len();
    if n_max < 2 {
        return Err(Error::validation("levels", "ladder operators need at least two levels"));
    }
    if levels.dim() != m.grid().n() {
        return Err(Error::DimensionMismatch {
            expected: m.grid().n(),
            found: levels.dim(),
        });
    }
    let dim = levels.dim();
    let mut lower = vec![C64::new(0.0, 0.0); dim * dim];
    for n in 1..n_max {
        let c = (n as f64).sqrt();
        let (dst, src) = (levels.vector(n - 1), levels.vector(n));
        for i in 0..dim {
            let di = dst[i] * c;
            for (j, sj) in src.iter().enumerate() {
                lower[i * dim + j] += di * sj.conj();
            }
        }
    }
    let a = OperatorMatrix::new(dim, lower)?;
    let a_dag = a.adjoint();
    Ok((a, a_dag))
}

/// `(q / l + i l p / hbar) / sqrt(2)` on the grid, with `l` the oscillator
/// length. Agrees with the eigenbasis ladder operator up to per-level phases.
pub fn quadrature_lowering(m: &ModelSpec) -> Result<OperatorMatrix> {
    m.require(ModelKind::Oscillator, "quadrature lowering operator")?;
    let k = m.constants();
    let l = k.oscillator_length();
    let q = position_operator(m.grid())?.scale_real(1.0 / l);
    let p = momentum_operator(m.grid(), k)?.scale(C64::new(0.0, l / k.hbar));
    Ok((&q + &p).scale_real(std::f64::consts::FRAC_1_SQRT_2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axes::presets::default_position_grid;
    use crate::numkernel::{inner, norm};

    fn oscillator() -> ModelSpec {
        let k = PhysicalConstants::unit();
        ModelSpec::oscillator(k, default_position_grid(&k).unwrap()).unwrap()
    }

    fn free() -> ModelSpec {
        let k = PhysicalConstants::unit();
        ModelSpec::free_particle(k, default_position_grid(&k).unwrap()).unwrap()
    }

    #[test]
    fn kind_checks() {
        assert!(matches!(harmonic_hamiltonian(&free()), Err(Error::WrongKind { .. })));
        assert!(matches!(oscillator_g(&free()), Err(Error::WrongKind { .. })));
        assert!(matches!(free_particle_g(&oscillator()), Err(Error::WrongKind { .. })));
        let t = AxisGrid::time(4, 0.0, 1.0).unwrap();
        assert!(ModelSpec::oscillator(PhysicalConstants::unit(), t).is_err());
    }

    #[test]
    fn predicted_levels() {
        let k = PhysicalConstants::unit();
        assert_eq!(predicted_tn(0, &k), 0.5);
        assert_eq!(predicted_tn(3, &k), 3.5);
        let k2 = PhysicalConstants::new(1.0, 1.0, 1.0, 2.0).unwrap();
        assert_eq!(predicted_tn(1, &k2), 3.0);
    }

    #[test]
    fn oscillator_spectrum() {
        let es = energy_levels(&oscillator(), 9).unwrap();
        for (n, &e) in es.values().iter().enumerate() {
            assert!((e - (n as f64 + 0.5)).abs() < 1e-8, "n={n}: {e}");
        }
    }

    #[test]
    fn g_commutes_with_h() {
        let m = oscillator();
        let h = harmonic_hamiltonian(&m).unwrap();
        let g = oscillator_g(&m).unwrap();
        assert!(g.commutator(&h).max_norm() < 1e-12 * h.max_norm().powi(2));
    }

    #[test]
    fn ladder_on_eigenbasis() {
        let m = oscillator();
        let levels = energy_levels(&m, DEFAULT_LEVELS).unwrap();
        let (a, a_dag) = ladder_operators(&m, &levels).unwrap();
        assert!(norm(&a.matvec(levels.vector(0))) < 1e-12);
        let up = a_dag.matvec(levels.vector(3));
        assert!((inner(levels.vector(4), &up) - C64::new(2.0, 0.0)).norm() < 1e-12);
        let top = a_dag.matvec(levels.vector(DEFAULT_LEVELS - 1));
        assert!(norm(&top) < 1e-12);
        let number = &a_dag * &a;
        for n in 0..DEFAULT_LEVELS {
            let v = levels.vector(n);
            assert!((number.expectation(v).re - n as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn ladder_matches_quadratures() {
        let m = oscillator();
        let levels = energy_levels(&m, 10).unwrap();
        let b = quadrature_lowering(&m).unwrap();
        for n in 1..10 {
            let elem = inner(levels.vector(n - 1), &b.matvec(levels.vector(n)));
            assert!((elem.norm() - (n as f64).sqrt()).abs() < 1e-7, "n={n}");
        }
    }

    #[test]
    fn free_particle_plane_waves() {
        let m = free();
        let g = free_particle_g(&m).unwrap();
        for idx in [-5i64, 0, 3, 17] {
            let v = crate::axes::plane_wave(m.grid(), idx);
            let p = m.grid().frequency(idx);
            let gv = g.matvec(&v);
            let r: f64 = gv.iter().zip(&v).map(|(a, b)| (a - b * (p * p)).norm_sqr()).sum();
            assert!(r.sqrt() < 1e-10);
        }
    }
}
