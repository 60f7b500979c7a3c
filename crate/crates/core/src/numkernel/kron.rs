//! Kronecker products and their factored application.
//!
//! Composite vectors are stored row-major with the first (system) factor
//! outermost: index `q * n_t + t`.

use super::matrix::{Flags, OperatorMatrix, C64};

/// `kron(A, B)[(i*dB + k), (j*dB + l)] = A[i][j] * B[k][l]`.
pub fn kron(a: &OperatorMatrix, b: &OperatorMatrix) -> OperatorMatrix {
    let (da, db) = (a.dim(), b.dim());
    let n = da * db;
    let mut entries = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..da {
        for j in 0..da {
            let aij = a.get(i, j);
            if aij.re == 0.0 && aij.im == 0.0 {
                continue;
            }
            for k in 0..db {
                let row = (i * db + k) * n + j * db;
                let b_row = b.row(k);
                for (dst, &bkl) in entries[row..row + db].iter_mut().zip(b_row) {
                    *dst = aij * bkl;
                }
            }
        }
    }
    let (fa, fb) = (a.flags(), b.flags());
    OperatorMatrix::new(n, entries)
        .expect("kron dimensions are consistent")
        .with_flags(Flags {
            hermitian: fa.hermitian && fb.hermitian,
            unitary: fa.unitary && fb.unitary,
            diagonal: fa.diagonal && fb.diagonal,
        })
}

/// `(A ⊗ I) psi` without materialising the composite matrix.
pub fn apply_system(a: &OperatorMatrix, psi: &[C64], n_t: usize) -> Vec<C64> {
    let n_q = a.dim();
    assert_eq!(psi.len(), n_q * n_t, "composite length mismatch");
    let mut out = vec![C64::new(0.0, 0.0); psi.len()];
    for q in 0..n_q {
        let dst = &mut out[q * n_t..(q + 1) * n_t];
        for (qp, &aqq) in a.row(q).iter().enumerate() {
            if aqq.re == 0.0 && aqq.im == 0.0 {
                continue;
            }
            for (d, &s) in dst.iter_mut().zip(&psi[qp * n_t..(qp + 1) * n_t]) {
                *d += aqq * s;
            }
        }
    }
    out
}

/// `(I ⊗ B) psi` without materialising the composite matrix.
pub fn apply_time(b: &OperatorMatrix, psi: &[C64], n_q: usize) -> Vec<C64> {
    let n_t = b.dim();
    assert_eq!(psi.len(), n_q * n_t, "composite length mismatch");
    let mut out = Vec::with_capacity(psi.len());
    for slice in psi.chunks_exact(n_t) {
        out.extend(b.matvec(slice));
    }
    out
}

/// `(A ⊗ B) psi = A Psi B^T` on the row-major amplitude matrix.
pub fn apply_kron(a: &OperatorMatrix, b: &OperatorMatrix, psi: &[C64]) -> Vec<C64> {
    let tmp = apply_time(b, psi, a.dim());
    apply_system(a, &tmp, b.dim())
}
