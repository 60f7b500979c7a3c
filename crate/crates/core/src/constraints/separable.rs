use super::operator::{ConstraintOperator, Forcing};
use crate::axes::{energy_eigenvector, grid_delta, AxisGrid, CompositeState, PhysicalConstants};
use crate::error::{Error, Result};
use crate::numkernel::{normalize, OperatorMatrix, C64};

/// `psi_E ⊗ |E>`: the discrete `psi_E(q) exp(-i E t / hbar)`.
///
/// Logs a warning when `energy` is off the energy lattice, in which case the
/// product is not an exact solution.
pub fn separable_first(
    pair: (f64, &[C64]),
    tg: &AxisGrid,
    k: &PhysicalConstants,
) -> Result<CompositeState> {
    let (energy, psi) = pair;
    let phi = energy_eigenvector(tg, energy, k)?;
    let mut psi = psi.to_vec();
    normalize(&mut psi);
    Ok(CompositeState::product(&psi, &phi))
}

/// `psi_t ⊗ |t_j>` with `t_j` the sample nearest to `t`. Returns the state
/// and the rounding distance `|t - t_j|`.
pub fn separable_second(pair: (f64, &[C64]), tg: &AxisGrid) -> Result<(CompositeState, f64)> {
    let (t, psi) = pair;
    let slack = 1e-12 * tg.spacing();
    if !t.is_finite() || t < tg.first() - slack || t > tg.last() + slack {
        return Err(Error::OutOfRange {
            time: t,
            first: tg.first(),
            last: tg.last(),
        });
    }
    let (j, rounding) = tg.nearest_sample(t);
    let mut psi = psi.to_vec();
    normalize(&mut psi);
    Ok((CompositeState::product(&psi, &grid_delta(tg.n(), j)), rounding))
}

/// `|(I ⊗ s - H ⊗ I) s| / |s|`.
pub fn first_constraint_residual(
    s: &CompositeState,
    h: &OperatorMatrix,
    tg: &AxisGrid,
    k: &PhysicalConstants,
) -> Result<f64> {
    ConstraintOperator::first(h, tg, k)?.residual(s)
}

/// `|(I ⊗ t - G ⊗ I) s| / |s|`.
pub fn second_constraint_residual(
    s: &CompositeState,
    g: &OperatorMatrix,
    tg: &AxisGrid,
) -> Result<f64> {
    ConstraintOperator::second(g, tg)?.residual(s)
}

/// `|(c_s I ⊗ s + c_t I ⊗ t - F) s| / |s|` with `F` a Hermitian composite.
pub fn generalized_residual(
    s: &CompositeState,
    c_s: f64,
    c_t: f64,
    f: &OperatorMatrix,
    tg: &AxisGrid,
    k: &PhysicalConstants,
) -> Result<f64> {
    ConstraintOperator::generalized(c_s, c_t, Forcing::Dense(f.clone()), tg, k)?.residual(s)
}
