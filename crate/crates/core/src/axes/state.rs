use super::grid::AxisGrid;
use crate::error::{Error, Result};
use crate::numkernel::{inner, norm, C64};

/// Amplitudes on `H_q ⊗ H_t`, row-major with `q` outermost (`q * n_t + t`).
#[derive(Clone, Debug, PartialEq)]
pub struct CompositeState {
    n_q: usize,
    n_t: usize,
    amplitudes: Vec<C64>,
}

impl CompositeState {
    pub fn new(n_q: usize, n_t: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != n_q * n_t {
            return Err(Error::DimensionMismatch {
                expected: n_q * n_t,
                found: amplitudes.len(),
            });
        }
        Ok(Self {
            n_q,
            n_t,
            amplitudes,
        })
    }

    /// `psi ⊗ phi`.
    pub fn product(psi: &[C64], phi: &[C64]) -> Self {
        let mut amplitudes = Vec::with_capacity(psi.len() * phi.len());
        for &a in psi {
            amplitudes.extend(phi.iter().map(|&b| a * b));
        }
        Self {
            n_q: psi.len(),
            n_t: phi.len(),
            amplitudes,
        }
    }

    pub fn zeros(n_q: usize, n_t: usize) -> Self {
        Self {
            n_q,
            n_t,
            amplitudes: vec![C64::new(0.0, 0.0); n_q * n_t],
        }
    }

    pub fn n_q(&self) -> usize {
        self.n_q
    }

    pub fn n_t(&self) -> usize {
        self.n_t
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn get(&self, q: usize, t: usize) -> C64 {
        self.amplitudes[q * self.n_t + t]
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// Copy scaled to unit norm. A zero state is returned unchanged.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        let mut out = self.clone();
        if n > 0.0 {
            for z in &mut out.amplitudes {
                *z /= n;
            }
        }
        out
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &Self) -> C64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// `|<a|b>|^2 / (|a|^2 |b|^2)`, insensitive to global phase.
    pub fn fidelity(&self, other: &Self) -> f64 {
        let (na, nb) = (self.norm(), other.norm());
        if na == 0.0 || nb == 0.0 {
            return 0.0;
        }
        self.overlap(other).norm_sqr() / (na * na * nb * nb)
    }

    pub fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n_q != other.n_q || self.n_t != other.n_t {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }
}

/// Normalised Gaussian `exp(-(x - center)^2 / (4 sigma^2) + i kappa x)` on the
/// grid, so that the position spread is `sigma`.
pub fn gaussian(g: &AxisGrid, center: f64, sigma: f64, kappa: f64) -> Vec<C64> {
    let mut v: Vec<C64> = g
        .samples()
        .iter()
        .map(|&x| {
            let d = x - center;
            C64::from_polar((-d * d / (4.0 * sigma * sigma)).exp(), kappa * x)
        })
        .collect();
    crate::numkernel::normalize(&mut v);
    v
}

/// Unit vector at sample `j`.
pub fn grid_delta(n: usize, j: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); n];
    v[j] = C64::new(1.0, 0.0);
    v
}
