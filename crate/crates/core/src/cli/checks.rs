//! Invariant suites behind `chronos check`.
//!
//! Each suite yields rows `name, measured, bound, pass`. Rows named `*_min`
//! pass when `measured >= bound`; rows named `*_info` always pass and only
//! report a count; every other row passes when `measured <= bound`.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::commands::{constraint_for, retained_levels, Equation};
use super::table::{Cell, ResultTable};
use crate::axes::{
    energy_eigenvector, energy_operator, gaussian, lift_system, lift_time, momentum_operator,
    position_operator, presets, time_operator, AxisGrid, CompositeState, Preset,
};
use crate::constraints::{
    first_constraint_residual, generalized_residual, generalized_solve, physical_subspace,
    second_constraint_residual, uncertainty_product, ConstraintOperator,
};
use crate::dynamics::{ladder_step_down, ladder_step_up, GridSpec, Lab, Scenario};
use crate::error::{Error, Result};
use crate::models::{harmonic_hamiltonian, oscillator_g, ModelSpec};
use crate::numkernel::{eig_hermitian, norm, OperatorMatrix, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Commutators,
    Constraint1,
    Constraint2,
    Generalized,
    Uncertainty,
    Ladder,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Commutators,
        Suite::Constraint1,
        Suite::Constraint2,
        Suite::Generalized,
        Suite::Uncertainty,
        Suite::Ladder,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Commutators => "commutators",
            Suite::Constraint1 => "constraint1",
            Suite::Constraint2 => "constraint2",
            Suite::Generalized => "generalized",
            Suite::Uncertainty => "uncertainty",
            Suite::Ladder => "ladder",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRow {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
}

impl CheckRow {
    fn at_most(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            bound,
            pass: measured <= bound,
        }
    }

    fn at_least(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            bound,
            pass: measured >= bound,
        }
    }

    fn info(name: impl Into<String>, measured: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            bound: f64::NAN,
            pass: true,
        }
    }
}

pub struct CheckReport {
    pub rows: Vec<CheckRow>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn table(&self) -> ResultTable {
        let mut t = ResultTable::new(["name", "measured", "bound", "pass"]);
        for r in &self.rows {
            t.push(vec![
                Cell::Text(r.name.clone()),
                Cell::Real(r.measured),
                Cell::Real(r.bound),
                Cell::Bool(r.pass),
            ]);
        }
        t
    }
}

/// Runs one suite. `tol` is the near-kernel threshold for the constraint
/// suites.
pub fn cmd_check(suite: Suite, sc: &Scenario, tol: f64) -> Result<CheckReport> {
    let rows = match suite {
        Suite::Commutators => commutators(sc)?,
        Suite::Constraint1 => constraint1(sc, tol)?,
        Suite::Constraint2 => constraint2(sc, tol)?,
        Suite::Generalized => generalized(sc, tol)?,
        Suite::Uncertainty => uncertainty(sc)?,
        Suite::Ladder => ladder(sc)?,
    };
    Ok(CheckReport { rows })
}

/// The scenario's time axis resampled with `n_t` points over the same
/// window. Explicit grids are used as given.
fn resampled_time_grid(sc: &Scenario, preset: Preset, n_t: usize) -> Result<AxisGrid> {
    match &sc.grids {
        GridSpec::Explicit { t, .. } => Ok(*t),
        GridSpec::Preset(_) => {
            let base = preset.time_grid(&sc.constants, presets::DEFAULT_N_T)?;
            AxisGrid::time(n_t, base.origin(), base.period() / n_t as f64)
        }
    }
}

/// Preset grids for one equation, or the scenario's explicit grids.
fn equation_grids(sc: &Scenario, preset: Preset) -> Result<(AxisGrid, AxisGrid)> {
    match &sc.grids {
        GridSpec::Explicit { q, t } => Ok((*q, *t)),
        GridSpec::Preset(_) => preset.grids(&sc.constants),
    }
}

/// Interior Gaussians: width at least four samples, boundary amplitude below
/// 1e-12, and Fourier content confined to the lower half of the lattice.
pub fn interior_gaussians(g: &AxisGrid) -> Vec<Vec<C64>> {
    let lo = 4.0 * g.spacing();
    let centre = g.origin() + 0.5 * g.period();
    let room = 0.5 * g.period() - g.spacing();
    let hi = room / 10.6;
    let mut out = Vec::new();
    if hi < lo {
        return out;
    }
    let kick = g.nyquist() / 8.0;
    for i in 0..3 {
        let sigma = lo + (hi - lo) * i as f64 / 2.0;
        let slack = room - 10.6 * sigma;
        for shift in [-0.5 * slack, 0.0, 0.5 * slack] {
            for kappa in [-kick, 0.0, kick] {
                out.push(gaussian(g, centre + shift, sigma, kappa));
            }
        }
    }
    out
}

/// `max |(A B - B A - c I) psi| / |psi|` over the test states.
pub fn commutator_defect(a: &OperatorMatrix, b: &OperatorMatrix, c: C64, states: &[Vec<C64>]) -> f64 {
    states
        .iter()
        .map(|psi| {
            let ab = a.matvec(&b.matvec(psi));
            let ba = b.matvec(&a.matvec(psi));
            let r: Vec<C64> = ab
                .iter()
                .zip(&ba)
                .zip(psi)
                .map(|((x, y), p)| x - y - c * p)
                .collect();
            norm(&r) / norm(psi)
        })
        .fold(0.0, f64::max)
}

fn relative_hermiticity(a: &OperatorMatrix) -> f64 {
    a.hermiticity_defect() / a.max_norm().max(f64::MIN_POSITIVE)
}

fn commutators(sc: &Scenario) -> Result<Vec<CheckRow>> {
    let k = sc.constants;
    let (gq, _) = sc.grids()?;
    let gt = resampled_time_grid(sc, Preset::EnergyAligned, 128)?;
    let q = position_operator(&gq)?;
    let p = momentum_operator(&gq, &k)?;
    let t = time_operator(&gt)?;
    let s = energy_operator(&gt, &k)?;
    let mut rows = Vec::new();
    for (name, op) in [("hermitian_q", &q), ("hermitian_p", &p), ("hermitian_t", &t), ("hermitian_s", &s)] {
        rows.push(CheckRow::at_most(name, relative_hermiticity(op), 1e-12));
    }
    let ih = C64::new(0.0, k.hbar);
    let psi = interior_gaussians(&gq);
    let phi = interior_gaussians(&gt);
    rows.push(CheckRow::info("qp_test_states_info", psi.len() as f64));
    if !psi.is_empty() {
        rows.push(CheckRow::at_most("ccr_qp", commutator_defect(&q, &p, ih, &psi), 1e-6));
    }
    rows.push(CheckRow::info("ts_test_states_info", phi.len() as f64));
    if !phi.is_empty() {
        rows.push(CheckRow::at_most("ccr_ts", commutator_defect(&t, &s, -ih, &phi), 1e-6));
    }

    // Cross-factor commutators on a reduced composite; the Kronecker
    // structure does not depend on the factor sizes.
    let gq_small = presets::position_grid(&k, 16, 4.0)?;
    let gt_small = AxisGrid::time(8, gt.origin(), gt.period() / 8.0)?;
    let sys = [
        ("q", position_operator(&gq_small)?),
        ("p", momentum_operator(&gq_small, &k)?),
    ];
    let tim = [
        ("t", time_operator(&gt_small)?),
        ("s", energy_operator(&gt_small, &k)?),
    ];
    for (na, a) in &sys {
        let la = lift_system(a, gt_small.n());
        for (nb, b) in &tim {
            let lb = lift_time(b, gq_small.n());
            rows.push(CheckRow::at_most(
                format!("cross_{na}{nb}"),
                la.commutator(&lb).max_norm(),
                1e-14,
            ));
        }
    }
    Ok(rows)
}

/// Pairs `(n, k)` with `|b_k - a_n| <= tol` from the factor spectra.
fn kernel_count(d: &ConstraintOperator, tol: f64) -> Result<usize> {
    let a = eig_hermitian(d.lifted_system().expect("lifted constraint"))?;
    let b = eig_hermitian(d.time_part())?;
    Ok(a.values()
        .iter()
        .map(|an| b.values().iter().filter(|bk| (*bk - an).abs() <= tol).count())
        .sum())
}

fn subspace_rows(rows: &mut Vec<CheckRow>, d: &ConstraintOperator, tol: f64) -> Result<()> {
    let expected = kernel_count(d, tol)?;
    let basis = physical_subspace(d, tol)?;
    rows.push(CheckRow::info("kernel_pairs_info", expected as f64));
    rows.push(CheckRow::at_most(
        "subspace_dim_mismatch",
        (basis.len() as f64 - expected as f64).abs(),
        0.0,
    ));
    if !basis.is_empty() {
        let worst = basis
            .vectors()
            .iter()
            .map(|v| d.residual(v))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        rows.push(CheckRow::at_most("member_residual", worst, 2.0 * tol));
    }
    Ok(())
}

fn constraint1(sc: &Scenario, tol: f64) -> Result<Vec<CheckRow>> {
    let (gq, gt) = equation_grids(sc, Preset::EnergyAligned)?;
    let model = ModelSpec::new(sc.model, sc.constants, gq)?;
    let lab = Lab::new(model, gt, retained_levels(&model))?;
    let matched = lab.matched_levels(tol);
    let mut rows = vec![CheckRow::info("matched_pairs_info", matched.len() as f64)];
    for &n in &matched {
        let s = lab.energy_solution(n, tol)?;
        let r = first_constraint_residual(&s, lab.hamiltonian(), &gt, &sc.constants)?;
        rows.push(CheckRow::at_most(format!("residual_level_{n}"), r, tol));
    }
    let d = constraint_for(&model, &gt, Equation::First)?;
    subspace_rows(&mut rows, &d, tol)?;
    Ok(rows)
}

fn constraint2(sc: &Scenario, tol: f64) -> Result<Vec<CheckRow>> {
    let (gq, gt) = equation_grids(sc, Preset::TimeAligned)?;
    let model = ModelSpec::new(sc.model, sc.constants, gq)?;
    let lab = Lab::new(model, gt, retained_levels(&model))?;
    let g = lab.g_operator()?;
    let mut matched = 0;
    let mut rows = Vec::new();
    for n in 0..lab.n_max() {
        let Ok((s, rounding)) = lab.time_solution(n) else {
            continue;
        };
        let r = second_constraint_residual(&s, &g, &gt)?;
        rows.push(CheckRow::at_most(
            format!("residual_minus_rounding_level_{n}"),
            (r - rounding).abs(),
            1e-8,
        ));
        if rounding <= tol {
            matched += 1;
            rows.push(CheckRow::at_most(format!("residual_level_{n}"), r, tol));
        }
    }
    rows.insert(0, CheckRow::info("matched_levels_info", matched as f64));
    let d = constraint_for(&model, &gt, Equation::Second)?;
    subspace_rows(&mut rows, &d, tol)?;
    Ok(rows)
}

/// Seeded random composite state.
pub fn random_state(rng: &mut ChaCha8Rng, n_q: usize, n_t: usize) -> CompositeState {
    let amps = (0..n_q * n_t)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    CompositeState::new(n_q, n_t, amps)
        .expect("sized by construction")
        .normalized()
}

fn generalized(sc: &Scenario, tol: f64) -> Result<Vec<CheckRow>> {
    let k = sc.constants;
    let gq = presets::position_grid(&k, 32, 6.0)?;
    let gt = presets::energy_aligned_time_grid(&k, 16)?;
    let model = ModelSpec::oscillator(k, gq)?;
    let h = harmonic_hamiltonian(&model)?;
    let g = oscillator_g(&model)?;
    let fh = lift_system(&h, gt.n());
    let fg = lift_system(&g, gt.n());
    let fhg = &fh + &fg;

    let mut rng = ChaCha8Rng::seed_from_u64(0x6e6e_0005);
    let (mut d1, mut d2, mut tri) = (0.0f64, 0.0f64, f64::NEG_INFINITY);
    for _ in 0..100 {
        let s = random_state(&mut rng, gq.n(), gt.n());
        let r1 = first_constraint_residual(&s, &h, &gt, &k)?;
        let r2 = second_constraint_residual(&s, &g, &gt)?;
        d1 = d1.max((generalized_residual(&s, 1.0, 0.0, &fh, &gt, &k)? - r1).abs());
        d2 = d2.max((generalized_residual(&s, 0.0, 1.0, &fg, &gt, &k)? - r2).abs());
        let r5 = generalized_residual(&s, 1.0, 1.0, &fhg, &gt, &k)?;
        tri = tri.max(r5 - (r1 + r2));
    }
    let mut rows = vec![
        CheckRow::at_most("reduction_first", d1, 1e-12),
        CheckRow::at_most("reduction_second", d2, 1e-12),
        CheckRow::at_most("triangle_excess", tri, 1e-12),
    ];

    let a = generalized_solve(1.0, 0.0, &fh, &gt, &k, tol)?;
    let b = physical_subspace(&ConstraintOperator::first(&h, &gt, &k)?, tol)?;
    rows.push(CheckRow::info("reduced_first_dim_info", a.len() as f64));
    rows.push(CheckRow::at_most(
        "reduced_first_dim_mismatch",
        (a.len() as f64 - b.len() as f64).abs(),
        0.0,
    ));
    if !a.is_empty() && a.len() == b.len() {
        let diff = (&a.projector()? - &b.projector()?).max_norm();
        rows.push(CheckRow::at_most("reduced_first_projector", diff, 1e-8));
    }

    let detuned = presets::periodic_time_grid(4.0 * std::f64::consts::PI / k.omega * 1.1, 16)?;
    let e = generalized_solve(1.0, 0.0, &fh, &detuned, &k, tol)?;
    rows.push(CheckRow::at_most("detuned_dim", e.len() as f64, 0.0));
    Ok(rows)
}

fn uncertainty(sc: &Scenario) -> Result<Vec<CheckRow>> {
    let k = sc.constants;
    let gt = resampled_time_grid(sc, Preset::EnergyAligned, 256)?;
    let (lo, hi) = (4.0 * gt.spacing(), gt.period() / 16.0);
    let mut rows = Vec::new();
    if hi < lo {
        rows.push(CheckRow::info("gaussians_info", 0.0));
        return Ok(rows);
    }
    let centre = gt.origin() + 0.5 * gt.period();
    let (mut min_product, mut worst_eq, mut worst_dt) = (f64::INFINITY, 0.0f64, 0.0f64);
    let count = 9;
    for i in 0..count {
        let sigma = lo * (hi / lo).powf(i as f64 / (count - 1) as f64);
        let u = uncertainty_product(&gaussian(&gt, centre, sigma, 0.0), &gt, &k)?;
        min_product = min_product.min(u.product);
        worst_eq = worst_eq.max((u.product - 0.5 * k.hbar).abs() / (0.5 * k.hbar));
        worst_dt = worst_dt.max((u.delta_t - sigma).abs() / sigma);
    }
    rows.push(CheckRow::info("gaussians_info", count as f64));
    rows.push(CheckRow::at_least("product_min", min_product / k.hbar, 0.49));
    rows.push(CheckRow::at_most("minimum_uncertainty_rel_err", worst_eq, 0.01));
    rows.push(CheckRow::at_most("delta_t_rel_err", worst_dt, 0.01));

    let base = presets::energy_aligned_time_grid(&k, presets::DEFAULT_N_T)?;
    let e = crate::axes::energy_lattice(&base, &k)[presets::DEFAULT_N_T / 2 + 1];
    let phi = energy_eigenvector(&base, e, &k)?;
    rows.push(CheckRow::at_most(
        "lattice_eigenvector_delta_s",
        uncertainty_product(&phi, &base, &k)?.delta_s,
        1e-8,
    ));
    Ok(rows)
}

fn ladder(sc: &Scenario) -> Result<Vec<CheckRow>> {
    let (gq, gt) = equation_grids(sc, Preset::TimeAligned)?;
    let model = ModelSpec::oscillator(sc.constants, gq)?;
    let lab = Lab::new(model, gt, retained_levels(&model))?;
    let top = lab.n_max();
    let mut rows = Vec::new();
    let solutions = (0..top)
        .map(|n| lab.time_solution(n).map(|(s, _)| s))
        .collect::<Result<Vec<_>>>()?;

    let (zero, c0) = ladder_step_down(&solutions[0], &lab)?;
    let zero_norm = zero
        .amplitudes()
        .iter()
        .map(|z| z.norm())
        .fold(c0.abs(), f64::max);
    rows.push(CheckRow::at_most("down_0_exact_zero", zero_norm, 0.0));
    for n in 0..top - 1 {
        let (up, c) = ladder_step_up(&solutions[n], &lab)?;
        let want = ((n + 1) as f64).sqrt();
        rows.push(CheckRow::at_most(format!("up_{n}_coeff_rel_err"), (c - want).abs() / want, 1e-6));
        rows.push(CheckRow::at_most(
            format!("up_{n}_infidelity"),
            1.0 - up.fidelity(&solutions[n + 1]),
            1e-8,
        ));
    }
    for n in 1..top {
        let (down, c) = ladder_step_down(&solutions[n], &lab)?;
        let want = (n as f64).sqrt();
        rows.push(CheckRow::at_most(format!("down_{n}_coeff_rel_err"), (c - want).abs() / want, 1e-6));
        rows.push(CheckRow::at_most(
            format!("down_{n}_infidelity"),
            1.0 - down.fidelity(&solutions[n - 1]),
            1e-8,
        ));
    }
    Ok(rows)
}
