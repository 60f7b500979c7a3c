use crate::axes::{energy_operator, time_operator, AxisGrid, CompositeState, PhysicalConstants};
use crate::error::{Error, Result};
use crate::numkernel::{apply_system, apply_time, norm, OperatorMatrix, C64};

/// Largest composite dimension for which constraint matrices are assembled.
pub const DENSE_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConstraintKind {
    /// `I ⊗ s - H ⊗ I`.
    First,
    /// `I ⊗ t - G ⊗ I`.
    Second,
    /// `c_s I ⊗ s + c_t I ⊗ t - F`.
    Generalized { c_s: f64, c_t: f64 },
}

/// Right-hand side of a constraint.
#[derive(Clone, Debug)]
pub enum Forcing {
    /// `A ⊗ I` for an operator `A` on the system factor.
    Lifted(OperatorMatrix),
    /// An arbitrary Hermitian composite operator.
    Dense(OperatorMatrix),
}

/// `D = I ⊗ B - F`, with `B` on the time factor.
///
/// Application is Kronecker-factored; the composite matrix is only built on
/// request.
#[derive(Clone, Debug)]
pub struct ConstraintOperator {
    kind: ConstraintKind,
    n_q: usize,
    n_t: usize,
    time_part: OperatorMatrix,
    forcing: Forcing,
}

impl ConstraintOperator {
    /// `I ⊗ s - H ⊗ I`.
    pub fn first(h: &OperatorMatrix, tg: &AxisGrid, k: &PhysicalConstants) -> Result<Self> {
        let s = energy_operator(tg, k)?;
        Self::build(ConstraintKind::First, s, Forcing::Lifted(h.clone()))
    }

    /// `I ⊗ t - G ⊗ I`.
    pub fn second(g: &OperatorMatrix, tg: &AxisGrid) -> Result<Self> {
        let t = time_operator(tg)?;
        Self::build(ConstraintKind::Second, t, Forcing::Lifted(g.clone()))
    }

    /// `c_s I ⊗ s + c_t I ⊗ t - F`.
    pub fn generalized(
        c_s: f64,
        c_t: f64,
        forcing: Forcing,
        tg: &AxisGrid,
        k: &PhysicalConstants,
    ) -> Result<Self> {
        if !(c_s.is_finite() && c_t.is_finite()) {
            return Err(Error::validation("c_s/c_t", "coefficients must be finite"));
        }
        let b = &energy_operator(tg, k)?.scale_real(c_s) + &time_operator(tg)?.scale_real(c_t);
        Self::build(ConstraintKind::Generalized { c_s, c_t }, b, forcing)
    }

    fn build(kind: ConstraintKind, time_part: OperatorMatrix, forcing: Forcing) -> Result<Self> {
        let time_part = time_part.assert_hermitian()?;
        let n_t = time_part.dim();
        let (forcing, n_q) = match forcing {
            Forcing::Lifted(a) => {
                let a = a.assert_hermitian()?;
                let n_q = a.dim();
                (Forcing::Lifted(a), n_q)
            }
            Forcing::Dense(f) => {
                let f = f.assert_hermitian()?;
                if f.dim() % n_t != 0 {
                    return Err(Error::DimensionMismatch {
                        expected: n_t * (f.dim() / n_t).max(1),
                        found: f.dim(),
                    });
                }
                let n_q = f.dim() / n_t;
                (Forcing::Dense(f), n_q)
            }
        };
        Ok(Self {
            kind,
            n_q,
            n_t,
            time_part,
            forcing,
        })
    }

    pub fn kind(&self) -> ConstraintKind {
        self.kind
    }

    pub fn n_q(&self) -> usize {
        self.n_q
    }

    pub fn n_t(&self) -> usize {
        self.n_t
    }

    pub fn dim(&self) -> usize {
        self.n_q * self.n_t
    }

    /// `B` in `I ⊗ B - F`.
    pub fn time_part(&self) -> &OperatorMatrix {
        &self.time_part
    }

    pub fn forcing(&self) -> &Forcing {
        &self.forcing
    }

    /// The system-factor operator when `F = A ⊗ I`.
    pub fn lifted_system(&self) -> Option<&OperatorMatrix> {
        match &self.forcing {
            Forcing::Lifted(a) => Some(a),
            Forcing::Dense(_) => None,
        }
    }

    fn check(&self, psi: &[C64]) -> Result<()> {
        if psi.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: psi.len(),
            });
        }
        Ok(())
    }

    /// `D psi`.
    pub fn apply(&self, psi: &[C64]) -> Result<Vec<C64>> {
        self.check(psi)?;
        let mut out = apply_time(&self.time_part, psi, self.n_q);
        let f = match &self.forcing {
            Forcing::Lifted(a) => apply_system(a, psi, self.n_t),
            Forcing::Dense(f) => f.matvec(psi),
        };
        for (o, x) in out.iter_mut().zip(f) {
            *o -= x;
        }
        Ok(out)
    }

    /// `|D s| / |s|`.
    pub fn residual(&self, s: &CompositeState) -> Result<f64> {
        if s.n_q() != self.n_q || s.n_t() != self.n_t {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: s.len(),
            });
        }
        let ns = s.norm();
        if ns == 0.0 {
            return Err(Error::validation("state", "residual of the zero state is undefined"));
        }
        Ok(norm(&self.apply(s.amplitudes())?) / ns)
    }

    /// The composite matrix. Refused above [`DENSE_LIMIT`].
    pub fn dense(&self) -> Result<OperatorMatrix> {
        let dim = self.dim();
        if dim > DENSE_LIMIT {
            return Err(Error::TooLarge {
                dim,
                limit: DENSE_LIMIT,
            });
        }
        let (n_q, n_t) = (self.n_q, self.n_t);
        let mut entries = match &self.forcing {
            Forcing::Lifted(a) => {
                let mut e = vec![C64::new(0.0, 0.0); dim * dim];
                for q in 0..n_q {
                    for qp in 0..n_q {
                        let aqq = a.get(q, qp);
                        for t in 0..n_t {
                            e[(q * n_t + t) * dim + qp * n_t + t] = -aqq;
                        }
                    }
                }
                e
            }
            Forcing::Dense(f) => f.entries().iter().map(|z| -z).collect(),
        };
        for q in 0..n_q {
            for t in 0..n_t {
                let row = (q * n_t + t) * dim + q * n_t;
                for (dst, b) in entries[row..row + n_t].iter_mut().zip(self.time_part.row(t)) {
                    *dst += b;
                }
            }
        }
        OperatorMatrix::new(dim, entries)?.assert_hermitian()
    }
}
