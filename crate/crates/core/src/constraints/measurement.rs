use super::subspace::SubspaceBasis;
use crate::axes::{energy_operator, AxisGrid, CompositeState, PhysicalConstants};
use crate::error::{Error, Result};
use crate::numkernel::{inner, norm, C64};

/// Below this subspace weight a state is treated as having no overlap.
pub const MIN_SUBSPACE_WEIGHT: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Outcome {
    pub index: usize,
    pub label: Option<f64>,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Measurement {
    pub outcomes: Vec<Outcome>,
    /// `sum_j |<Phi_j|s>|^2 / |s|^2` before renormalisation.
    pub subspace_weight: f64,
}

impl Measurement {
    pub fn probabilities(&self) -> Vec<f64> {
        self.outcomes.iter().map(|o| o.probability).collect()
    }
}

/// Outcome probabilities with the resolution of identity restricted to the
/// subspace: `p_k = |<Phi_k|s>|^2 / sum_j |<Phi_j|s>|^2`.
pub fn measurement_probabilities(s: &CompositeState, basis: &SubspaceBasis) -> Result<Measurement> {
    if basis.is_empty() {
        return Err(Error::EmptyBasis);
    }
    let c = basis.coefficients(s)?;
    let sq: Vec<f64> = c.iter().map(|z| z.norm_sqr()).collect();
    let total: f64 = sq.iter().sum();
    let ns = s.norm();
    let weight = if ns > 0.0 { total / (ns * ns) } else { 0.0 };
    if weight.is_nan() || weight < MIN_SUBSPACE_WEIGHT {
        return Err(Error::ZeroOverlap { weight });
    }
    let outcomes = sq
        .iter()
        .zip(basis.labels())
        .enumerate()
        .map(|(index, (&p, &label))| Outcome {
            index,
            label,
            probability: p / total,
        })
        .collect();
    Ok(Measurement {
        outcomes,
        subspace_weight: weight,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Uncertainty {
    pub delta_t: f64,
    pub delta_s: f64,
    pub product: f64,
}

/// Standard deviations of `t` and `s` in the state `phi` on the time axis.
pub fn uncertainty_product(
    phi: &[C64],
    tg: &AxisGrid,
    k: &PhysicalConstants,
) -> Result<Uncertainty> {
    if phi.len() != tg.n() {
        return Err(Error::DimensionMismatch {
            expected: tg.n(),
            found: phi.len(),
        });
    }
    let n2 = inner(phi, phi).re;
    if n2 <= 0.0 {
        return Err(Error::validation("phi", "state has zero norm"));
    }
    let ts = tg.samples();
    let mean_t: f64 = phi.iter().zip(&ts).map(|(z, t)| z.norm_sqr() * t).sum::<f64>() / n2;
    let var_t: f64 = phi
        .iter()
        .zip(&ts)
        .map(|(z, t)| z.norm_sqr() * (t - mean_t).powi(2))
        .sum::<f64>()
        / n2;
    let s = energy_operator(tg, k)?;
    let sphi = s.matvec(phi);
    let mean_s = inner(phi, &sphi).re / n2;
    let var_s = (norm(&sphi).powi(2) / n2 - mean_s * mean_s).max(0.0);
    let (delta_t, delta_s) = (var_t.sqrt(), var_s.sqrt());
    Ok(Uncertainty {
        delta_t,
        delta_s,
        product: delta_t * delta_s,
    })
}
