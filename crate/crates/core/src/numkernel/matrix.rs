use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Relative bound on `max|A - A^H|` for the Hermitian assertion.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Absolute bound on `max|A^H A - I|` for the unitary assertion.
pub const UNITARY_TOL: f64 = 1e-10;

/// Structural assertions carried by an [`OperatorMatrix`]. A flag is only ever
/// set after the corresponding property has been checked, or when it follows
/// exactly from the way the matrix was assembled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub hermitian: bool,
    pub unitary: bool,
    pub diagonal: bool,
}

/// Dense complex square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<C64>,
    flags: Flags,
}

impl OperatorMatrix {
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self {
            dim,
            entries,
            flags: Flags::default(),
        })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self {
            dim,
            entries,
            flags: Flags::default(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
            flags: Flags {
                hermitian: true,
                unitary: false,
                diagonal: true,
            },
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_real_diagonal(&vec![1.0; dim]).with_unitary_flag()
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let dim = diag.len();
        let mut m = Self::zeros(dim);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * dim + i] = d;
        }
        m.flags = Flags {
            hermitian: diag.iter().all(|d| d.im == 0.0),
            unitary: false,
            diagonal: true,
        };
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diagonal(&d)
    }

    /// Outer product `|a><b|`.
    pub fn outer(a: &[C64], b: &[C64]) -> Self {
        assert_eq!(a.len(), b.len(), "outer product of unequal lengths");
        Self::from_fn(a.len(), |i, j| a[i] * b[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.entries[i * self.dim + j] = value;
        self.flags = Flags::default();
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn into_entries(self) -> Vec<C64> {
        self.entries
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// `max|A[i][j] - conj(A[j][i])|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// `max|A^H A - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        self.adjoint().matmul(self).sub_identity_max()
    }

    fn sub_identity_max(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.get(i, j) - target).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() <= HERMITIAN_TOL * self.max_norm().max(f64::MIN_POSITIVE)
    }

    /// Verifies Hermiticity and sets the flag.
    pub fn assert_hermitian(mut self) -> Result<Self> {
        if !self.flags.hermitian {
            let defect = self.hermiticity_defect();
            let bound = HERMITIAN_TOL * self.max_norm();
            if defect > bound {
                return Err(Error::NotHermitian { defect, bound });
            }
            self.flags.hermitian = true;
        }
        Ok(self)
    }

    /// Copies the upper triangle onto the lower one so the matrix is
    /// Hermitian bit-for-bit, then sets the flag. Only meant for matrices that
    /// already pass the Hermitian check up to rounding.
    pub(crate) fn symmetrized(mut self) -> Self {
        let n = self.dim;
        for i in 0..n {
            let d = self.entries[i * n + i];
            self.entries[i * n + i] = C64::new(d.re, 0.0);
            for j in i + 1..n {
                self.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        self.flags.hermitian = true;
        self
    }

    /// Verifies unitarity and sets the flag.
    pub fn assert_unitary(mut self) -> Result<Self> {
        if !self.flags.unitary {
            let defect = self.unitarity_defect();
            if defect > UNITARY_TOL {
                return Err(Error::NoConvergence(format!(
                    "unitary check failed with defect {defect:.3e}"
                )));
            }
            self.flags.unitary = true;
        }
        Ok(self)
    }

    pub(crate) fn with_unitary_flag(mut self) -> Self {
        self.flags.unitary = true;
        self
    }

    pub(crate) fn with_flags(mut self, flags: Flags) -> Self {
        self.flags = flags;
        self
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::from_fn(n, |i, j| self.get(j, i).conj());
        out.flags = self.flags;
        out
    }

    pub fn scale(&self, factor: C64) -> Self {
        let entries = self.entries.iter().map(|&z| z * factor).collect();
        let hermitian = self.flags.hermitian && factor.im == 0.0;
        Self {
            dim: self.dim,
            entries,
            flags: Flags {
                hermitian,
                unitary: false,
                diagonal: self.flags.diagonal,
            },
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let b_row = &other.entries[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Self {
            dim: n,
            entries: out,
            flags: Flags {
                hermitian: false,
                unitary: false,
                diagonal: self.flags.diagonal && other.flags.diagonal,
            },
        }
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.dim, v.len(), "matvec dimension mismatch");
        self.entries
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(&a, &x)| a * x).sum())
            .collect()
    }

    /// `A B - B A`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    pub fn expectation(&self, v: &[C64]) -> C64 {
        let av = self.matvec(v);
        v.iter().zip(&av).map(|(x, y)| x.conj() * y).sum()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        assert_eq!(self.dim, other.dim, "elementwise dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self {
            dim: self.dim,
            entries,
            flags: Flags {
                hermitian: self.flags.hermitian && other.flags.hermitian,
                unitary: false,
                diagonal: self.flags.diagonal && other.flags.diagonal,
            },
        }
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.matmul(rhs)
    }
}

/// `sum conj(a_i) b_i`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalize(v: &mut [C64]) -> f64 {
    let n = norm(v);
    if n > 0.0 {
        for z in v.iter_mut() {
            *z /= n;
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rejects_wrong_entry_count() {
        assert!(matches!(
            OperatorMatrix::new(2, vec![c(1.0, 0.0); 3]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hermitian_assertion() {
        let h = OperatorMatrix::new(2, vec![c(1.0, 0.0), c(0.0, 2.0), c(0.0, -2.0), c(3.0, 0.0)])
            .unwrap();
        assert!(h.clone().assert_hermitian().unwrap().flags().hermitian);
        let not = OperatorMatrix::new(2, vec![c(1.0, 0.0), c(0.0, 2.0), c(0.0, 2.0), c(3.0, 0.0)])
            .unwrap();
        assert!(matches!(not.assert_hermitian(), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn commutator_of_pauli_x_and_z() {
        let x = OperatorMatrix::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let z = OperatorMatrix::from_real_diagonal(&[1.0, -1.0]);
        // [X, Z] = -2iY = [[0, -2], [2, 0]]
        let comm = x.commutator(&z);
        assert_eq!(comm.get(0, 1), c(-2.0, 0.0));
        assert_eq!(comm.get(1, 0), c(2.0, 0.0));
    }

    #[test]
    fn identity_is_unitary() {
        let id = OperatorMatrix::identity(4);
        assert!(id.flags().unitary && id.flags().hermitian && id.flags().diagonal);
        assert_eq!(id.unitarity_defect(), 0.0);
    }
}
