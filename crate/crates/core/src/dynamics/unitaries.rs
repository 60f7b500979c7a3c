use crate::axes::{energy_operator, AxisGrid, PhysicalConstants};
use crate::error::{Error, Result};
use crate::numkernel::{unitary_exp, EigenSystem, OperatorMatrix, C64};

/// `exp(-i s dt / hbar)`: shifts sampled functions `f(t) -> f(t + dt)`.
pub fn time_translation(tg: &AxisGrid, k: &PhysicalConstants, dt: f64) -> Result<OperatorMatrix> {
    if !dt.is_finite() {
        return Err(Error::validation("dt", "must be finite"));
    }
    unitary_exp(&energy_operator(tg, k)?, dt / k.hbar)
}

/// `diag(exp(-i dE t_j / hbar))`: maps `|E>` to `|E + dE>`.
pub fn energy_shift(tg: &AxisGrid, k: &PhysicalConstants, de: f64) -> Result<OperatorMatrix> {
    if !de.is_finite() {
        return Err(Error::validation("dE", "must be finite"));
    }
    let d: Vec<C64> = tg
        .samples()
        .iter()
        .map(|&t| C64::from_polar(1.0, -de * t / k.hbar))
        .collect();
    OperatorMatrix::from_diagonal(&d).assert_unitary()
}

/// Two-level swap `|i> <-> |j>` in the eigenbasis of `es`, identity on the
/// complement. Hermitian and unitary.
pub fn eigen_swap_unitary(i: usize, j: usize, es: &EigenSystem) -> Result<OperatorMatrix> {
    let levels = es.len();
    for idx in [i, j] {
        if idx >= levels {
            return Err(Error::IndexOutOfRange { index: idx, levels });
        }
    }
    if i == j {
        return Err(Error::InvalidJump(format!("swap needs two distinct levels, got {i} twice")));
    }
    let (vi, vj) = (es.vector(i), es.vector(j));
    let dim = es.dim();
    let u = OperatorMatrix::from_fn(dim, |r, c| {
        let id = if r == c { 1.0 } else { 0.0 };
        C64::new(id, 0.0) - vi[r] * vi[c].conj() - vj[r] * vj[c].conj()
            + vj[r] * vi[c].conj()
            + vi[r] * vj[c].conj()
    });
    u.assert_hermitian()?.assert_unitary()
}
