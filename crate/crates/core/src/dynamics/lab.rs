use super::unitaries::{eigen_swap_unitary, energy_shift, time_translation};
use crate::axes::{lattice_offset, AxisGrid, AxisLabel, CompositeState, PhysicalConstants};
use crate::constraints::{separable_first, separable_second};
use crate::error::{Error, Result};
use crate::models::{ladder_operators, system_g, system_hamiltonian, ModelKind, ModelSpec};
use crate::numkernel::{apply_kron, eig_hermitian, EigenSystem, OperatorMatrix, C64};

/// A state is attributed to a ladder level only if more than this fraction of
/// its weight sits there.
const LADDER_WEIGHT: f64 = 0.5;

/// A model on a fixed time grid with its Hamiltonian spectrum worked out once.
#[derive(Clone, Debug)]
pub struct Lab {
    model: ModelSpec,
    time_grid: AxisGrid,
    hamiltonian: OperatorMatrix,
    spectrum: EigenSystem,
    levels: EigenSystem,
    ladder: Option<(OperatorMatrix, OperatorMatrix)>,
}

impl Lab {
    /// Keeps the lowest `n_max` levels of the model Hamiltonian.
    pub fn new(model: ModelSpec, time_grid: AxisGrid, n_max: usize) -> Result<Self> {
        if time_grid.label() != AxisLabel::Time {
            return Err(Error::WrongAxis {
                expected: AxisLabel::Time.as_str(),
                found: time_grid.label().as_str(),
            });
        }
        if n_max == 0 || n_max > model.grid().n() {
            return Err(Error::validation(
                "levels",
                format!("must lie in 1..={}, got {n_max}", model.grid().n()),
            ));
        }
        let hamiltonian = system_hamiltonian(&model)?;
        let spectrum = eig_hermitian(&hamiltonian)?;
        let levels = spectrum.truncated(n_max);
        let ladder = match model.kind() {
            ModelKind::Oscillator if n_max >= 2 => Some(ladder_operators(&model, &levels)?),
            _ => None,
        };
        Ok(Self {
            model,
            time_grid,
            hamiltonian,
            spectrum,
            levels,
            ladder,
        })
    }

    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn constants(&self) -> &PhysicalConstants {
        self.model.constants()
    }

    pub fn position_grid(&self) -> &AxisGrid {
        self.model.grid()
    }

    pub fn time_grid(&self) -> &AxisGrid {
        &self.time_grid
    }

    pub fn hamiltonian(&self) -> &OperatorMatrix {
        &self.hamiltonian
    }

    pub fn levels(&self) -> &EigenSystem {
        &self.levels
    }

    pub fn n_max(&self) -> usize {
        self.levels.len()
    }

    pub fn g_operator(&self) -> Result<OperatorMatrix> {
        system_g(&self.model)
    }

    /// `exp(-i H dt / hbar)` from the cached spectrum.
    pub fn hamiltonian_propagator(&self, dt: f64) -> Result<OperatorMatrix> {
        let theta = dt / self.constants().hbar;
        self.spectrum
            .spectral_map(|x| C64::from_polar(1.0, -theta * x))
            .assert_unitary()
    }

    fn check_level(&self, n: usize) -> Result<()> {
        if n < self.n_max() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: n,
                levels: self.n_max(),
            })
        }
    }

    fn check_shape(&self, s: &CompositeState) -> Result<()> {
        let (n_q, n_t) = (self.position_grid().n(), self.time_grid.n());
        if s.n_q() != n_q || s.n_t() != n_t {
            return Err(Error::DimensionMismatch {
                expected: n_q * n_t,
                found: s.len(),
            });
        }
        Ok(())
    }

    /// Lattice energy within `tol` of level `n`, or `OffLattice`.
    pub fn lattice_energy(&self, n: usize, tol: f64) -> Result<f64> {
        self.check_level(n)?;
        let e = self.levels.values()[n];
        let k = self.constants();
        let band = k.hbar * self.time_grid.nyquist();
        let (nearest, offset) = lattice_offset(&self.time_grid, k, e);
        if offset > tol || e.abs() > band * (1.0 + 1e-12) {
            return Err(Error::OffLattice { energy: e, nearest });
        }
        Ok(nearest)
    }

    /// Levels whose energy sits on the lattice within `tol`.
    pub fn matched_levels(&self, tol: f64) -> Vec<usize> {
        (0..self.n_max())
            .filter(|&n| self.lattice_energy(n, tol).is_ok())
            .collect()
    }

    /// `psi_n ⊗ |E_n>`, using the lattice energy when level `n` is within
    /// `tol` of it.
    pub fn energy_solution(&self, n: usize, tol: f64) -> Result<CompositeState> {
        self.check_level(n)?;
        let e = self
            .lattice_energy(n, tol)
            .unwrap_or(self.levels.values()[n]);
        separable_first((e, self.levels.vector(n)), &self.time_grid, self.constants())
    }

    /// `psi_n ⊗ |t_n>`, with `t_n` the computed `G` eigenvalue of level `n`.
    pub fn time_solution(&self, n: usize) -> Result<(CompositeState, f64)> {
        self.check_level(n)?;
        let k = self.constants();
        let t_n = self.levels.values()[n] * k.hbar / (k.mass * k.mass * k.c.powi(4));
        separable_second((t_n, self.levels.vector(n)), &self.time_grid)
    }

    /// Weight of `s` on each retained level, `|(<psi_n| ⊗ I) s|^2 / |s|^2`.
    pub fn level_weights(&self, s: &CompositeState) -> Result<Vec<f64>> {
        self.check_shape(s)?;
        let ns2 = s.norm().powi(2);
        let n_t = s.n_t();
        let mut row = vec![C64::new(0.0, 0.0); n_t];
        let weights = self
            .levels
            .vectors()
            .iter()
            .map(|alpha| {
                row.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
                for (q, a) in alpha.iter().enumerate() {
                    let c = a.conj();
                    for (dst, x) in row.iter_mut().zip(&s.amplitudes()[q * n_t..(q + 1) * n_t]) {
                        *dst += c * x;
                    }
                }
                let w: f64 = row.iter().map(|z| z.norm_sqr()).sum();
                if ns2 > 0.0 {
                    w / ns2
                } else {
                    0.0
                }
            })
            .collect();
        Ok(weights)
    }

    /// Level carrying the largest weight, and that weight.
    pub fn dominant_level(&self, s: &CompositeState) -> Result<(usize, f64)> {
        let w = self.level_weights(s)?;
        let (n, &best) = w
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("at least one level");
        Ok((n, best))
    }

    fn ladder(&self) -> Result<&(OperatorMatrix, OperatorMatrix)> {
        self.ladder.as_ref().ok_or(Error::WrongKind {
            requested: "ladder operators",
            found: self.model.kind().as_str(),
        })
    }

    fn ladder_level(&self, s: &CompositeState) -> Result<(usize, f64)> {
        let (n, weight) = self.dominant_level(s)?;
        if weight < LADDER_WEIGHT {
            return Err(Error::NotALadderState { weight });
        }
        Ok((n, weight))
    }
}

/// `a^+ ⊗ exp(+i s dt / hbar)` with `dt` the level spacing: moves
/// `psi_n ⊗ |t_n>` to `sqrt(n+1) psi_{n+1} ⊗ |t_{n+1}>`.
///
/// Returns the unnormalised image and its norm.
pub fn ladder_step_up(s: &CompositeState, lab: &Lab) -> Result<(CompositeState, f64)> {
    let (_, raise) = lab.ladder()?;
    let (n, _) = lab.ladder_level(s)?;
    if n + 1 >= lab.n_max() {
        return Err(Error::TruncationTop { level: n });
    }
    let shift = time_translation(lab.time_grid(), lab.constants(), -lab.model().delta_t())?;
    step(s, raise, &shift)
}

/// `a ⊗ exp(-i s dt / hbar)`: moves `psi_n ⊗ |t_n>` to
/// `sqrt(n) psi_{n-1} ⊗ |t_{n-1}>`. A pure ground state maps to the exact
/// zero vector with coefficient 0.
pub fn ladder_step_down(s: &CompositeState, lab: &Lab) -> Result<(CompositeState, f64)> {
    let (lower, _) = lab.ladder()?;
    let (n, weight) = lab.ladder_level(s)?;
    if n == 0 && weight >= 1.0 - 1e-8 {
        return Ok((CompositeState::zeros(s.n_q(), s.n_t()), 0.0));
    }
    let shift = time_translation(lab.time_grid(), lab.constants(), lab.model().delta_t())?;
    step(s, lower, &shift)
}

fn step(
    s: &CompositeState,
    system: &OperatorMatrix,
    time: &OperatorMatrix,
) -> Result<(CompositeState, f64)> {
    let out = CompositeState::new(s.n_q(), s.n_t(), apply_kron(system, time, s.amplitudes()))?;
    let c = out.norm();
    Ok((out, c))
}

/// `U(i, j) ⊗ exp(-i t dE / hbar)` with `dE = E_j - E_i` taken on the energy
/// lattice. Both energies must sit on the lattice within `tol`.
pub fn energy_jump(
    s: &CompositeState,
    i: usize,
    j: usize,
    lab: &Lab,
    tol: f64,
) -> Result<CompositeState> {
    if i == j {
        return Err(Error::InvalidJump(format!("jump from level {i} to itself")));
    }
    lab.check_shape(s)?;
    let e_i = lab.lattice_energy(i, tol)?;
    let e_j = lab.lattice_energy(j, tol)?;
    let u = eigen_swap_unitary(i, j, lab.levels())?;
    let shift = energy_shift(lab.time_grid(), lab.constants(), e_j - e_i)?;
    CompositeState::new(s.n_q(), s.n_t(), apply_kron(&u, &shift, s.amplitudes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axes::Preset;
    use crate::constraints::first_constraint_residual;
    use crate::models::DEFAULT_LEVELS;

    fn lab(preset: Preset) -> Lab {
        let k = PhysicalConstants::unit();
        let (gq, gt) = preset.grids(&k).unwrap();
        Lab::new(ModelSpec::oscillator(k, gq).unwrap(), gt, DEFAULT_LEVELS).unwrap()
    }

    #[test]
    fn ladder_coefficients() {
        let lab = lab(Preset::TimeAligned);
        let (psi0, _) = lab.time_solution(0).unwrap();
        let (zero, c) = ladder_step_down(&psi0, &lab).unwrap();
        assert_eq!(c, 0.0);
        assert!(zero.amplitudes().iter().all(|z| *z == C64::new(0.0, 0.0)));

        let (up, c) = ladder_step_up(&psi0, &lab).unwrap();
        assert!((c - 1.0).abs() < 1e-6);
        let (psi1, _) = lab.time_solution(1).unwrap();
        assert!(up.normalized().fidelity(&psi1) > 1.0 - 1e-8);

        let (psi4, _) = lab.time_solution(4).unwrap();
        let (down, c) = ladder_step_down(&psi4, &lab).unwrap();
        assert!((c - 2.0).abs() < 1e-6);
        let (psi3, _) = lab.time_solution(3).unwrap();
        assert!(down.normalized().fidelity(&psi3) > 1.0 - 1e-8);

        let (top, _) = lab.time_solution(DEFAULT_LEVELS - 1).unwrap();
        assert!(matches!(ladder_step_up(&top, &lab), Err(Error::TruncationTop { .. })));
    }

    #[test]
    fn jump_and_back() {
        let lab = lab(Preset::EnergyAligned);
        let k = *lab.constants();
        let s0 = lab.energy_solution(0, 1e-6).unwrap();
        let s1 = lab.energy_solution(1, 1e-6).unwrap();
        let jumped = energy_jump(&s0, 0, 1, &lab, 1e-6).unwrap();
        assert!(jumped.fidelity(&s1) > 1.0 - 1e-8);
        let r = first_constraint_residual(&jumped, lab.hamiltonian(), lab.time_grid(), &k).unwrap();
        assert!(r < 1e-6);
        let back = energy_jump(&jumped, 1, 0, &lab, 1e-6).unwrap();
        assert!(back.fidelity(&s0) > 1.0 - 1e-9);
        assert!(matches!(energy_jump(&s0, 2, 2, &lab, 1e-6), Err(Error::InvalidJump(_))));
        assert!(matches!(energy_jump(&s0, 0, 9, &lab, 1e-6), Err(Error::OffLattice { .. })));
    }
}
