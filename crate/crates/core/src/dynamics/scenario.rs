use std::fmt;

use super::lab::{energy_jump, Lab};
use super::unitaries::time_translation;
use crate::axes::{
    momentum_operator, position_operator, AxisGrid, CompositeState, PhysicalConstants, Preset,
};
use crate::constraints::{measurement_probabilities, ConstraintOperator, SubspaceBasis};
use crate::error::{Error, Result};
use crate::models::{ModelKind, ModelSpec, DEFAULT_LEVELS};
use crate::numkernel::{apply_system, apply_time, eigenvalues_hermitian, norm, C64};

/// Largest allowed disagreement between the two evolution operators on a
/// constraint solution.
pub const EQUIVALENCE_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum GridSpec {
    Preset(Preset),
    Explicit { q: AxisGrid, t: AxisGrid },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Initial {
    /// `psi_n ⊗ |E_n>`.
    Level(usize),
    /// The retained level whose energy matches, times `|E>`.
    Energy(f64),
    /// Composite amplitudes, normalised on use.
    Amplitudes(Vec<C64>),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Step {
    Evolve { dt: f64 },
    Jump { from: usize, to: usize, at_time: f64 },
}

impl Step {
    pub fn kind(&self) -> StepKind {
        match self {
            Step::Evolve { .. } => StepKind::Evolve,
            Step::Jump { .. } => StepKind::Jump,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Near-kernel and lattice-matching threshold.
    pub constraint_tol: f64,
    /// Matching threshold for energies named in the scenario.
    pub eigen_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            constraint_tol: 1e-6,
            eigen_tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub constants: PhysicalConstants,
    pub grids: GridSpec,
    pub model: ModelKind,
    pub initial: Initial,
    pub steps: Vec<Step>,
    pub tolerances: Tolerances,
}

impl Scenario {
    pub fn grids(&self) -> Result<(AxisGrid, AxisGrid)> {
        match &self.grids {
            GridSpec::Preset(p) => p.grids(&self.constants),
            GridSpec::Explicit { q, t } => Ok((*q, *t)),
        }
    }

    pub fn model_spec(&self) -> Result<ModelSpec> {
        let (q, _) = self.grids()?;
        ModelSpec::new(self.model, self.constants, q)
    }

    pub fn lab(&self) -> Result<Lab> {
        let (_, t) = self.grids()?;
        let model = self.model_spec()?;
        let n_max = DEFAULT_LEVELS.min(model.grid().n());
        Lab::new(model, t, n_max)
    }

    /// Checks everything that does not require running the steps.
    pub fn validate(&self) -> Result<()> {
        self.constants.validate()?;
        for (name, v) in [
            ("tolerances.constraint_tol", self.tolerances.constraint_tol),
            ("tolerances.eigen_tol", self.tolerances.eigen_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::validation(name, "must be finite and positive"));
            }
        }
        let lab = self.lab()?;
        self.validate_with(&lab)
    }

    fn validate_with(&self, lab: &Lab) -> Result<()> {
        let n_max = lab.n_max();
        match &self.initial {
            Initial::Level(n) if *n >= n_max => {
                return Err(Error::validation(
                    "initial.level",
                    format!("level {n} is not below the {n_max} retained levels"),
                ));
            }
            Initial::Energy(e) if !e.is_finite() => {
                return Err(Error::validation("initial.energy", "must be finite"));
            }
            Initial::Amplitudes(a) => {
                let want = lab.position_grid().n() * lab.time_grid().n();
                if a.len() != want {
                    return Err(Error::validation(
                        "initial.amplitudes",
                        format!("expected {want} amplitudes, got {}", a.len()),
                    ));
                }
                if norm(a).is_nan() || norm(a) <= 0.0 || a.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
                    return Err(Error::validation(
                        "initial.amplitudes",
                        "must be finite with nonzero norm",
                    ));
                }
            }
            _ => {}
        }
        let mut g_spectrum: Option<Vec<f64>> = None;
        for (idx, step) in self.steps.iter().enumerate() {
            match *step {
                Step::Evolve { dt } => {
                    if !dt.is_finite() {
                        return Err(Error::validation(format!("steps[{idx}].evolve"), "must be finite"));
                    }
                }
                Step::Jump { from, to, at_time } => {
                    let field = format!("steps[{idx}].jump");
                    if from == to {
                        return Err(Error::validation(
                            field,
                            format!("from and to are both level {from}"),
                        ));
                    }
                    if from >= n_max || to >= n_max {
                        return Err(Error::validation(
                            field,
                            format!("levels must be below {n_max}"),
                        ));
                    }
                    if !at_time.is_finite() {
                        return Err(Error::validation(field, "at_time must be finite"));
                    }
                    if g_spectrum.is_none() {
                        g_spectrum = Some(eigenvalues_hermitian(&lab.g_operator()?)?);
                    }
                    let spectrum = g_spectrum.as_deref().unwrap_or_default();
                    let tol = self.tolerances.constraint_tol;
                    let nearest = spectrum
                        .iter()
                        .copied()
                        .min_by(|a, b| (a - at_time).abs().total_cmp(&(b - at_time).abs()))
                        .unwrap_or(f64::NAN);
                    if nearest.is_nan() || (nearest - at_time).abs() > tol {
                        return Err(Error::validation(
                            field,
                            format!(
                                "at_time {at_time} is not within {tol:e} of the G spectrum (nearest {nearest})"
                            ),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Initial,
    Evolve,
    Jump,
}

impl StepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::Initial => "initial",
            StepKind::Evolve => "evolve",
            StepKind::Jump => "jump",
        }
    }
}

/// Observables after one step. Index 0 is the initial state.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryRecord {
    pub step_index: usize,
    pub kind: StepKind,
    pub q_mean: f64,
    pub p_mean: f64,
    pub energy_mean: f64,
    pub residual1: f64,
    pub subspace_weight: f64,
    /// Outcome probabilities over the matched-level basis, in level order.
    pub probabilities: Vec<f64>,
}

/// A step failed; `records` holds everything recorded before it.
#[derive(Debug)]
pub struct Aborted {
    pub records: Vec<TrajectoryRecord>,
    pub error: Error,
}

impl fmt::Display for Aborted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "after {} records: {}", self.records.len(), self.error)
    }
}

impl std::error::Error for Aborted {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.error)
    }
}

impl From<Error> for Aborted {
    fn from(error: Error) -> Self {
        Aborted {
            records: Vec::new(),
            error,
        }
    }
}

/// Runs the steps in order and records observables after each.
pub fn run_scenario(sc: &Scenario) -> std::result::Result<Vec<TrajectoryRecord>, Aborted> {
    simulate(sc).map(|(records, _)| records)
}

/// [`run_scenario`] that also returns the final state.
pub fn simulate(
    sc: &Scenario,
) -> std::result::Result<(Vec<TrajectoryRecord>, CompositeState), Aborted> {
    sc.constants.validate()?;
    let lab = sc.lab()?;
    sc.validate_with(&lab)?;
    let observer = Observer::new(&lab, sc.tolerances.constraint_tol)?;

    let mut state = initial_state(sc, &lab)?;
    let mut records = vec![observer.record(0, StepKind::Initial, &state)?];
    for (idx, step) in sc.steps.iter().enumerate() {
        match apply_step(step, &state, &lab, &observer, sc.tolerances.constraint_tol) {
            Ok(next) => state = next,
            Err(error) => return Err(Aborted { records, error }),
        }
        match observer.record(idx + 1, step.kind(), &state) {
            Ok(r) => records.push(r),
            Err(error) => return Err(Aborted { records, error }),
        }
    }
    Ok((records, state))
}

fn initial_state(sc: &Scenario, lab: &Lab) -> Result<CompositeState> {
    let tol = sc.tolerances.constraint_tol;
    match &sc.initial {
        Initial::Level(n) => lab.energy_solution(*n, tol),
        Initial::Energy(e) => {
            let n = lab
                .levels()
                .values()
                .iter()
                .position(|x| (x - e).abs() <= sc.tolerances.eigen_tol.max(tol))
                .ok_or_else(|| {
                    Error::validation(
                        "initial.energy",
                        format!("no retained level has energy {e}"),
                    )
                })?;
            crate::constraints::separable_first(
                (*e, lab.levels().vector(n)),
                lab.time_grid(),
                lab.constants(),
            )
        }
        Initial::Amplitudes(a) => {
            let s = CompositeState::new(lab.position_grid().n(), lab.time_grid().n(), a.clone())?;
            Ok(s.normalized())
        }
    }
}

fn apply_step(
    step: &Step,
    state: &CompositeState,
    lab: &Lab,
    observer: &Observer,
    tol: f64,
) -> Result<CompositeState> {
    match *step {
        Step::Evolve { dt } => {
            let u = time_translation(lab.time_grid(), lab.constants(), dt)?;
            let next = CompositeState::new(
                state.n_q(),
                state.n_t(),
                apply_time(&u, state.amplitudes(), state.n_q()),
            )?;
            if observer.first.residual(state)? <= tol {
                let alt = apply_system(&lab.hamiltonian_propagator(dt)?, state.amplitudes(), state.n_t());
                let diff: Vec<C64> = next.amplitudes().iter().zip(&alt).map(|(a, b)| a - b).collect();
                let mismatch = norm(&diff) / state.norm();
                if mismatch > EQUIVALENCE_TOL {
                    return Err(Error::EquivalenceViolated { mismatch });
                }
            }
            Ok(next)
        }
        Step::Jump { from, to, .. } => energy_jump(state, from, to, lab, tol),
    }
}

struct Observer {
    first: ConstraintOperator,
    q: crate::numkernel::OperatorMatrix,
    p: crate::numkernel::OperatorMatrix,
    basis: SubspaceBasis,
}

impl Observer {
    fn new(lab: &Lab, tol: f64) -> Result<Self> {
        let first = ConstraintOperator::first(lab.hamiltonian(), lab.time_grid(), lab.constants())?;
        let q = position_operator(lab.position_grid())?;
        let p = momentum_operator(lab.position_grid(), lab.constants())?;
        let matched = lab.matched_levels(tol);
        let vectors = matched
            .iter()
            .map(|&n| lab.energy_solution(n, tol))
            .collect::<Result<Vec<_>>>()?;
        let labels = matched.iter().map(|&n| Some(lab.levels().values()[n])).collect();
        let basis = SubspaceBasis::new(vectors, labels, tol)?;
        Ok(Self { first, q, p, basis })
    }

    fn record(&self, step_index: usize, kind: StepKind, s: &CompositeState) -> Result<TrajectoryRecord> {
        let n2 = s.norm().powi(2);
        let amps = s.amplitudes();
        let mean = |op: &crate::numkernel::OperatorMatrix| {
            let v = apply_system(op, amps, s.n_t());
            crate::numkernel::inner(amps, &v).re / n2
        };
        let q_mean = mean(&self.q);
        let p_mean = mean(&self.p);
        let energy_mean = match self.first.lifted_system() {
            Some(h) => mean(h),
            None => f64::NAN,
        };
        let residual1 = self.first.residual(s)?;
        let (subspace_weight, probabilities) = if self.basis.is_empty() {
            (0.0, Vec::new())
        } else {
            match measurement_probabilities(s, &self.basis) {
                Ok(m) => (m.subspace_weight, m.probabilities()),
                Err(Error::ZeroOverlap { weight }) => (weight, vec![0.0; self.basis.len()]),
                Err(e) => return Err(e),
            }
        };
        Ok(TrajectoryRecord {
            step_index,
            kind,
            q_mean,
            p_mean,
            energy_mean,
            residual1,
            subspace_weight,
            probabilities,
        })
    }
}
