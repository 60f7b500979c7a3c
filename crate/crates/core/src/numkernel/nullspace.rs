use super::eigen::eigenpairs_where;
use super::matrix::{norm, OperatorMatrix, C64};
use crate::error::{Error, Result};

/// Orthonormal right-singular vectors of `a` whose singular value is at most
/// `tol`, ordered by singular value.
///
/// Hermitian input is solved through its eigenvalues directly (singular
/// values are `|lambda|`), which keeps the threshold at the scale of `a`.
/// Other input goes through `A^H A` with threshold `tol^2`.
pub fn near_null_space(a: &OperatorMatrix, tol: f64) -> Result<Vec<Vec<C64>>> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::validation("tol", "must be a positive finite number"));
    }
    let mut pairs: Vec<(f64, Vec<C64>)> = if a.flags().hermitian || a.is_hermitian() {
        let es = eigenpairs_where(a, |x| x.abs() <= tol)?;
        es.values()
            .iter()
            .map(|x| x.abs())
            .zip(es.vectors().iter().cloned())
            .collect()
    } else {
        let gram = a.adjoint().matmul(a).symmetrized();
        let es = eigenpairs_where(&gram, |x| x <= tol * tol)?;
        es.values()
            .iter()
            .map(|x| x.max(0.0).sqrt())
            .zip(es.vectors().iter().cloned())
            .collect()
    };
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    for (_, v) in &pairs {
        let r = norm(&a.matvec(v));
        if r > 2.0 * tol {
            return Err(Error::NoConvergence(format!(
                "near-null vector residual {r:.3e} exceeds 2*tol = {:.3e}",
                2.0 * tol
            )));
        }
    }
    Ok(pairs.into_iter().map(|(_, v)| v).collect())
}
