use super::eigen::eig_hermitian;
use super::matrix::{OperatorMatrix, C64};
use crate::error::Result;

/// `exp(-i theta A)` for Hermitian `A`, through the eigendecomposition
/// `V exp(-i theta Lambda) V^H`. With `theta = dt / hbar` this is the
/// propagator `e^{(1/i hbar) A dt}`.
pub fn unitary_exp(a: &OperatorMatrix, theta: f64) -> Result<OperatorMatrix> {
    let es = eig_hermitian(a)?;
    let u = es.spectral_map(|x| C64::from_polar(1.0, -theta * x));
    u.assert_unitary()
}
