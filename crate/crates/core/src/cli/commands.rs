use std::fmt::Write as _;

use super::table::{write_real, Cell, ResultTable};
use crate::axes::{AxisGrid, PhysicalConstants, Preset};
use crate::constraints::{physical_subspace, ConstraintOperator};
use crate::dynamics::{simulate, GridSpec, Initial, Scenario, Tolerances};
use crate::error::{Error, Result};
use crate::models::{
    predicted_tn, system_g, system_hamiltonian, ModelKind, ModelSpec, DEFAULT_LEVELS,
};
use crate::numkernel::eigenvalues_hermitian;

/// Unit-constant oscillator on the energy-aligned preset.
pub fn default_scenario() -> Scenario {
    Scenario {
        constants: PhysicalConstants::unit(),
        grids: GridSpec::Preset(Preset::EnergyAligned),
        model: ModelKind::Oscillator,
        initial: Initial::Level(0),
        steps: Vec::new(),
        tolerances: Tolerances::default(),
    }
}

/// Columns `n, E_n, t_n, t_n_predicted, abs_error` for the lowest `levels`
/// eigenvalues of `H` and `G`.
///
/// The prediction is `hbar^2 omega / (m^2 c^4) (n + 1/2)` for the oscillator
/// and the sorted `hbar / (m^3 c^4) p_k^2` over lattice momenta for the free
/// particle.
pub fn cmd_spectrum(sc: &Scenario, levels: usize) -> Result<ResultTable> {
    let model = sc.model_spec()?;
    let k = *model.constants();
    let mut table = ResultTable::new(["n", "E_n", "t_n", "t_n_predicted", "abs_error"]);
    let rows = levels.min(model.grid().n());
    if rows == 0 {
        return Ok(table);
    }
    let e = eigenvalues_hermitian(&system_hamiltonian(&model)?)?;
    let t = eigenvalues_hermitian(&system_g(&model)?)?;
    let predicted: Vec<f64> = match model.kind() {
        ModelKind::Oscillator => (0..rows).map(|n| predicted_tn(n, &k)).collect(),
        ModelKind::FreeParticle => {
            let scale = k.hbar / (k.mass.powi(3) * k.c.powi(4));
            let mut p2: Vec<f64> = model
                .grid()
                .frequencies()
                .iter()
                .map(|w| scale * (k.hbar * w).powi(2))
                .collect();
            p2.sort_by(f64::total_cmp);
            p2
        }
    };
    for n in 0..rows {
        table.push(vec![
            Cell::Int(n as i64),
            Cell::Real(e[n]),
            Cell::Real(t[n]),
            Cell::Real(predicted[n]),
            Cell::Real((t[n] - predicted[n]).abs()),
        ]);
    }
    Ok(table)
}

/// CSV from a scenario run. `error` is set when a step aborted the run; the
/// CSV then ends with `# aborted: <reason>`.
#[derive(Debug)]
pub struct RunOutput {
    pub csv: String,
    pub error: Option<Error>,
}

pub fn cmd_run(sc: &Scenario) -> Result<RunOutput> {
    let (records, error) = match simulate(sc) {
        Ok((records, _)) => (records, None),
        Err(aborted) if aborted.records.is_empty() => return Err(aborted.error),
        Err(aborted) => (aborted.records, Some(aborted.error)),
    };
    let k = records[0].probabilities.len();
    let mut csv = String::from(
        "step_index,kind,q_mean,p_mean,energy_mean,residual1,subspace_weight",
    );
    for j in 0..k {
        write!(csv, ",p{j}").unwrap();
    }
    csv.push('\n');
    for r in &records {
        write!(csv, "{},{}", r.step_index, r.kind.as_str()).unwrap();
        for v in [
            r.q_mean,
            r.p_mean,
            r.energy_mean,
            r.residual1,
            r.subspace_weight,
        ]
        .into_iter()
        .chain(r.probabilities.iter().copied())
        {
            csv.push(',');
            write_real(&mut csv, v);
        }
        csv.push('\n');
    }
    if let Some(e) = &error {
        let reason = e.to_string().replace('\n', " ");
        writeln!(csv, "# aborted: {reason}").unwrap();
    }
    Ok(RunOutput { csv, error })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equation {
    First,
    Second,
}

impl std::str::FromStr for Equation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(Equation::First),
            "second" => Ok(Equation::Second),
            other => Err(Error::validation(
                "equation",
                format!("expected first or second, got `{other}`"),
            )),
        }
    }
}

/// Near-kernel of the first or second constraint on the scenario grids.
/// Columns `index, label, residual, multiplet` (`-1` outside any multiplet,
/// `NaN` for an unresolved label).
pub fn cmd_subspace(sc: &Scenario, equation: Equation, tol: f64) -> Result<ResultTable> {
    let (gq, gt) = sc.grids()?;
    let model = ModelSpec::new(sc.model, sc.constants, gq)?;
    let d = constraint_for(&model, &gt, equation)?;
    let basis = physical_subspace(&d, tol)?;
    let mut table = ResultTable::new(["index", "label", "residual", "multiplet"]);
    for (i, v) in basis.vectors().iter().enumerate() {
        let group = basis
            .multiplets()
            .iter()
            .position(|g| g.contains(&i))
            .map_or(-1, |g| g as i64);
        table.push(vec![
            Cell::Int(i as i64),
            Cell::Real(basis.labels()[i].unwrap_or(f64::NAN)),
            Cell::Real(d.residual(v)?),
            Cell::Int(group),
        ]);
    }
    Ok(table)
}

pub(crate) fn constraint_for(
    model: &ModelSpec,
    gt: &AxisGrid,
    equation: Equation,
) -> Result<ConstraintOperator> {
    match equation {
        Equation::First => {
            ConstraintOperator::first(&system_hamiltonian(model)?, gt, model.constants())
        }
        Equation::Second => ConstraintOperator::second(&system_g(model)?, gt),
    }
}

/// Retained levels used by the run and check commands.
pub fn retained_levels(model: &ModelSpec) -> usize {
    DEFAULT_LEVELS.min(model.grid().n())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oscillator_spectrum_rows() {
        let t = cmd_spectrum(&default_scenario(), 8).unwrap();
        assert_eq!(t.rows().len(), 8);
        for c in t.column("abs_error").unwrap() {
            match c {
                Cell::Real(x) => assert!(*x <= 1e-7),
                _ => unreachable!(),
            }
        }
        assert_eq!(cmd_spectrum(&default_scenario(), 0).unwrap().to_csv().lines().count(), 1);
    }

    #[test]
    fn free_particle_spectrum_is_p_squared() {
        let mut sc = default_scenario();
        sc.model = ModelKind::FreeParticle;
        let t = cmd_spectrum(&sc, 6).unwrap();
        for c in t.column("abs_error").unwrap() {
            match c {
                Cell::Real(x) => assert!(*x <= 1e-10),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn run_empty_scenario() {
        let out = cmd_run(&default_scenario()).unwrap();
        assert!(out.error.is_none());
        let lines: Vec<&str> = out.csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("step_index,kind,q_mean,p_mean,energy_mean,residual1,subspace_weight,p0,"));
        assert!(!out.csv.contains('\r'));
    }
}
