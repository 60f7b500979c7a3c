//! Hermitian eigendecomposition.
//!
//! The matrix is reduced to real symmetric tridiagonal form with Householder
//! reflectors (followed by a diagonal phase similarity), the tridiagonal
//! problem is solved with implicit QL and Wilkinson shifts, and eigenvectors
//! are mapped back through the reflectors. When only a window of the spectrum
//! is wanted, eigenvalues come from QL without accumulation and the selected
//! eigenvectors from inverse iteration with re-orthogonalisation inside
//! clusters.
//!
//! The inner tridiagonalisation pass fuses the rank-2 update of step `k` with
//! the Hermitian matrix-vector product of step `k + 1`, so the trailing block
//! is swept once per step. Reductions use a fixed lane layout, so results do
//! not depend on how the work is scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{OperatorMatrix, C64};
use crate::error::{Error, Result};

const QL_MAX_SWEEPS: usize = 60;
const INVERSE_ITERATIONS: usize = 3;
const LANES: usize = 8;

/// Ascending eigenvalues with orthonormal eigenvectors of a Hermitian
/// operator.
///
/// Ordering is deterministic: ascending value, with exact and near ties broken
/// by the lexicographically smallest vector. Every vector has its first
/// significant component made real and positive.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSystem {
    values: Vec<f64>,
    vectors: Vec<Vec<C64>>,
}

impl EigenSystem {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vector(&self, k: usize) -> &[C64] {
        &self.vectors[k]
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Length of each eigenvector.
    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    pub fn pair(&self, k: usize) -> (f64, &[C64]) {
        (self.values[k], &self.vectors[k])
    }

    /// Keeps the lowest `levels` pairs.
    pub fn truncated(&self, levels: usize) -> EigenSystem {
        let levels = levels.min(self.len());
        EigenSystem {
            values: self.values[..levels].to_vec(),
            vectors: self.vectors[..levels].to_vec(),
        }
    }

    /// `V diag(f(lambda)) V^H` over the retained pairs.
    pub fn spectral_map(&self, f: impl Fn(f64) -> C64) -> OperatorMatrix {
        let n = self.dim();
        let mut entries = vec![C64::new(0.0, 0.0); n * n];
        for (&lambda, v) in self.values.iter().zip(&self.vectors) {
            let w = f(lambda);
            for i in 0..n {
                let vi = v[i] * w;
                if vi.re == 0.0 && vi.im == 0.0 {
                    continue;
                }
                let row = &mut entries[i * n..(i + 1) * n];
                for (dst, vj) in row.iter_mut().zip(v) {
                    *dst += vi * vj.conj();
                }
            }
        }
        OperatorMatrix::new(n, entries).expect("square by construction")
    }

    /// `V Lambda V^H`.
    pub fn reconstruct(&self) -> OperatorMatrix {
        self.spectral_map(|x| C64::new(x, 0.0))
    }
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn eig_hermitian(a: &OperatorMatrix) -> Result<EigenSystem> {
    let a = require_hermitian(a)?;
    let red = Reduction::new(&a);
    let n = red.n;
    let mut d = red.diag.clone();
    let mut e = red.off.clone();
    e.push(0.0);
    let mut zt = vec![0.0; n * n];
    for i in 0..n {
        zt[i * n + i] = 1.0;
    }
    tql(&mut d, &mut e, Some(&mut zt))?;
    let vectors = (0..n)
        .map(|j| red.back_transform(&zt[j * n..(j + 1) * n]))
        .collect();
    Ok(canonicalize(d, vectors))
}

/// Eigenvalues only, ascending.
pub fn eigenvalues_hermitian(a: &OperatorMatrix) -> Result<Vec<f64>> {
    let a = require_hermitian(a)?;
    let red = Reduction::new(&a);
    let mut values = red.eigenvalues()?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Eigenpairs whose eigenvalue satisfies `select`, ascending.
pub fn eigenpairs_where(
    a: &OperatorMatrix,
    select: impl Fn(f64) -> bool,
) -> Result<EigenSystem> {
    let a = require_hermitian(a)?;
    let red = Reduction::new(&a);
    let mut chosen: Vec<f64> = red.eigenvalues()?.into_iter().filter(|&x| select(x)).collect();
    chosen.sort_by(f64::total_cmp);
    let z = inverse_iteration(&red.diag, &red.off, &chosen);
    let vectors = z.iter().map(|zj| red.back_transform(zj)).collect();
    Ok(canonicalize(chosen, vectors))
}

fn require_hermitian(a: &OperatorMatrix) -> Result<OperatorMatrix> {
    let checked = a.clone().assert_hermitian()?;
    Ok(checked.symmetrized())
}

/// `Q^H A Q = T` with `T` real symmetric tridiagonal and
/// `Q = H_0 H_1 ... H_{n-3} diag(phases)`.
struct Reduction {
    n: usize,
    diag: Vec<f64>,
    off: Vec<f64>,
    phases: Vec<C64>,
    reflectors: Vec<Reflector>,
}

/// `H = I - beta u u^H` acting on indices `start..n`.
struct Reflector {
    start: usize,
    beta: f64,
    u: Vec<C64>,
}

impl Reduction {
    fn new(a: &OperatorMatrix) -> Self {
        let n = a.dim();
        let mut re: Vec<f64> = a.entries().iter().map(|z| z.re).collect();
        let mut im: Vec<f64> = a.entries().iter().map(|z| z.im).collect();
        let mut diag = vec![0.0; n];
        let mut off_c = vec![C64::new(0.0, 0.0); n.saturating_sub(1)];
        let mut reflectors = Vec::with_capacity(n.saturating_sub(2));

        if n >= 3 {
            let mut ur = vec![0.0; n];
            let mut ui = vec![0.0; n];
            let mut wr = vec![0.0; n];
            let mut wi = vec![0.0; n];
            let mut vr = vec![0.0; n];
            let mut vi = vec![0.0; n];
            let mut pr = vec![0.0; n];
            let mut pi = vec![0.0; n];

            // Step 0 reflector and its matrix-vector product (w = 0 leaves
            // the block untouched).
            let (mut alpha, mut beta) = make_reflector(&re, &im, n, 0, &mut ur, &mut ui);
            fused_pass(
                &mut re, &mut im, n, 1, &wr, &wi, &wr, &wi, &ur, &ui, &mut pr, &mut pi,
            );
            scale_pair(&mut pr[1..], &mut pi[1..], beta);

            for k in 0..n - 2 {
                let s = k + 1;
                diag[k] = re[k * n + k];
                off_c[k] = alpha;
                reflectors.push(Reflector {
                    start: s,
                    beta,
                    u: (s..n).map(|i| C64::new(ur[i], ui[i])).collect(),
                });

                // w = p - (beta/2)(u^H p) u
                let mut uhp = 0.0;
                for i in s..n {
                    uhp += ur[i] * pr[i] + ui[i] * pi[i];
                }
                let kappa = 0.5 * beta * uhp;
                for i in s..n {
                    wr[i] = pr[i] - kappa * ur[i];
                    wi[i] = pi[i] - kappa * ui[i];
                }

                // Column s of the trailing block.
                {
                    let (usr, usi, wsr, wsi) = (ur[s], ui[s], wr[s], wi[s]);
                    re[s * n + s] -= 2.0 * (usr * wsr + usi * wsi);
                    im[s * n + s] = 0.0;
                    for i in s + 1..n {
                        let idx = i * n + s;
                        re[idx] -= ur[i] * wsr + ui[i] * wsi + wr[i] * usr + wi[i] * usi;
                        im[idx] -= ui[i] * wsr - ur[i] * wsi + wi[i] * usr - wr[i] * usi;
                    }
                }

                if s + 2 < n {
                    let (a_next, b_next) = make_reflector(&re, &im, n, s, &mut vr, &mut vi);
                    for i in s + 1..n {
                        pr[i] = 0.0;
                        pi[i] = 0.0;
                    }
                    fused_pass(
                        &mut re, &mut im, n, s + 1, &ur, &ui, &wr, &wi, &vr, &vi, &mut pr,
                        &mut pi,
                    );
                    scale_pair(&mut pr[s + 1..], &mut pi[s + 1..], b_next);
                    std::mem::swap(&mut ur, &mut vr);
                    std::mem::swap(&mut ui, &mut vi);
                    alpha = a_next;
                    beta = b_next;
                } else {
                    // Last step: only the trailing diagonal entry remains.
                    let i = s + 1;
                    re[i * n + i] -= 2.0 * (ur[i] * wr[i] + ui[i] * wi[i]);
                    im[i * n + i] = 0.0;
                }
            }
        }
        if n >= 2 {
            diag[n - 2] = re[(n - 2) * n + n - 2];
            off_c[n - 2] = C64::new(re[(n - 1) * n + n - 2], im[(n - 1) * n + n - 2]);
        }
        diag[n - 1] = re[(n - 1) * n + n - 1];

        // Diagonal similarity making the off-diagonal real and nonnegative.
        let mut phases = vec![C64::new(1.0, 0.0); n];
        let mut off = vec![0.0; n.saturating_sub(1)];
        for k in 0..n.saturating_sub(1) {
            let mag = off_c[k].norm();
            off[k] = mag;
            phases[k + 1] = if mag > 0.0 {
                phases[k] * (off_c[k] / mag)
            } else {
                phases[k]
            };
        }

        Self {
            n,
            diag,
            off,
            phases,
            reflectors,
        }
    }

    fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        e.push(0.0);
        tql(&mut d, &mut e, None)?;
        Ok(d)
    }

    /// `Q z` for a tridiagonal eigenvector `z`.
    fn back_transform(&self, z: &[f64]) -> Vec<C64> {
        let mut y: Vec<C64> = z.iter().zip(&self.phases).map(|(&x, &p)| p * x).collect();
        for r in self.reflectors.iter().rev() {
            if r.beta == 0.0 {
                continue;
            }
            let tail = &mut y[r.start..];
            let s: C64 = r.u.iter().zip(tail.iter()).map(|(u, x)| u.conj() * x).sum();
            let f = s * r.beta;
            for (x, u) in tail.iter_mut().zip(&r.u) {
                *x -= u * f;
            }
        }
        y
    }
}

/// Householder vector annihilating column `col` below row `col + 1`.
/// Writes `u` into indices `col+1..n` and returns `(alpha, beta)` with
/// `H x = alpha e_1`.
fn make_reflector(
    re: &[f64],
    im: &[f64],
    n: usize,
    col: usize,
    ur: &mut [f64],
    ui: &mut [f64],
) -> (C64, f64) {
    let r0 = col + 1;
    let mut sigma2 = 0.0;
    for i in r0..n {
        let (x, y) = (re[i * n + col], im[i * n + col]);
        ur[i] = x;
        ui[i] = y;
        sigma2 += x * x + y * y;
    }
    let sigma = sigma2.sqrt();
    if sigma == 0.0 {
        return (C64::new(0.0, 0.0), 0.0);
    }
    let x1 = C64::new(ur[r0], ui[r0]);
    let ax1 = x1.norm();
    let phase = if ax1 > 0.0 { x1 / ax1 } else { C64::new(1.0, 0.0) };
    let alpha = -phase * sigma;
    ur[r0] -= alpha.re;
    ui[r0] -= alpha.im;
    (alpha, 1.0 / (sigma * (sigma + ax1)))
}

fn scale_pair(a: &mut [f64], b: &mut [f64], s: f64) {
    for x in a.iter_mut().chain(b.iter_mut()) {
        *x *= s;
    }
}

/// One sweep over the lower triangle of rows/cols `from..n`: applies
/// `A -= u w^H + w u^H` and accumulates `p += A v` with the updated entries.
#[allow(clippy::too_many_arguments)]
fn fused_pass(
    re: &mut [f64],
    im: &mut [f64],
    n: usize,
    from: usize,
    ur: &[f64],
    ui: &[f64],
    wr: &[f64],
    wi: &[f64],
    vr: &[f64],
    vi: &[f64],
    pr: &mut [f64],
    pi: &mut [f64],
) {
    for i in from..n {
        let base = i * n;
        let (uir, uii, wir, wii, vir, vii) = (ur[i], ui[i], wr[i], wi[i], vr[i], vi[i]);
        let (sr, si) = fused_row(
            &mut re[base + from..base + i],
            &mut im[base + from..base + i],
            &ur[from..i],
            &ui[from..i],
            &wr[from..i],
            &wi[from..i],
            &vr[from..i],
            &vi[from..i],
            &mut pr[from..i],
            &mut pi[from..i],
            [uir, uii, wir, wii, vir, vii],
        );
        let dii = re[base + i] - 2.0 * (uir * wir + uii * wii);
        re[base + i] = dii;
        im[base + i] = 0.0;
        pr[i] += sr + dii * vir;
        pi[i] += si + dii * vii;
    }
}

#[allow(clippy::too_many_arguments)]
#[inline(always)]
fn fused_row(
    row_re: &mut [f64],
    row_im: &mut [f64],
    ur: &[f64],
    ui: &[f64],
    wr: &[f64],
    wi: &[f64],
    vr: &[f64],
    vi: &[f64],
    pr: &mut [f64],
    pi: &mut [f64],
    coeffs: [f64; 6],
) -> (f64, f64) {
    let [uir, uii, wir, wii, vir, vii] = coeffs;
    let m = row_re.len();
    let (row_im, ur, ui, wr, wi, vr, vi) = (
        &mut row_im[..m],
        &ur[..m],
        &ui[..m],
        &wr[..m],
        &wi[..m],
        &vr[..m],
        &vi[..m],
    );
    let (pr, pi) = (&mut pr[..m], &mut pi[..m]);
    let mut acc_r = [0.0; LANES];
    let mut acc_i = [0.0; LANES];
    let full = m - m % LANES;
    let mut j0 = 0;
    while j0 < full {
        let span = j0..j0 + LANES;
        let rr: &mut [f64; LANES] = (&mut row_re[span.clone()]).try_into().unwrap();
        let ri: &mut [f64; LANES] = (&mut row_im[span.clone()]).try_into().unwrap();
        let cur: &[f64; LANES] = ur[span.clone()].try_into().unwrap();
        let cui: &[f64; LANES] = ui[span.clone()].try_into().unwrap();
        let cwr: &[f64; LANES] = wr[span.clone()].try_into().unwrap();
        let cwi: &[f64; LANES] = wi[span.clone()].try_into().unwrap();
        let cvr: &[f64; LANES] = vr[span.clone()].try_into().unwrap();
        let cvi: &[f64; LANES] = vi[span.clone()].try_into().unwrap();
        let cpr: &mut [f64; LANES] = (&mut pr[span.clone()]).try_into().unwrap();
        let cpi: &mut [f64; LANES] = (&mut pi[span]).try_into().unwrap();
        for l in 0..LANES {
            let ar = rr[l] - (uir * cwr[l] + uii * cwi[l] + wir * cur[l] + wii * cui[l]);
            let ai = ri[l] - (uii * cwr[l] - uir * cwi[l] + wii * cur[l] - wir * cui[l]);
            rr[l] = ar;
            ri[l] = ai;
            acc_r[l] += ar * cvr[l] - ai * cvi[l];
            acc_i[l] += ar * cvi[l] + ai * cvr[l];
            cpr[l] += ar * vir + ai * vii;
            cpi[l] += ar * vii - ai * vir;
        }
        j0 += LANES;
    }
    for j in full..m {
        let ar = row_re[j] - (uir * wr[j] + uii * wi[j] + wir * ur[j] + wii * ui[j]);
        let ai = row_im[j] - (uii * wr[j] - uir * wi[j] + wii * ur[j] - wir * ui[j]);
        row_re[j] = ar;
        row_im[j] = ai;
        acc_r[0] += ar * vr[j] - ai * vi[j];
        acc_i[0] += ar * vi[j] + ai * vr[j];
        pr[j] += ar * vir + ai * vii;
        pi[j] += ar * vii - ai * vir;
    }
    let mut sr = 0.0;
    let mut si = 0.0;
    for l in 0..LANES {
        sr += acc_r[l];
        si += acc_i[l];
    }
    (sr, si)
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
/// `e[i]` couples `i` and `i+1`; `e` has length `n` with `e[n-1]` unused.
/// When `zt` is given, rotations are accumulated into its rows (row `j` of
/// `zt` is eigenvector `j`). Eigenvalues are left unsorted in `d`.
fn tql(d: &mut [f64], e: &mut [f64], mut zt: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > QL_MAX_SWEEPS {
                return Err(Error::NoConvergence(format!(
                    "tridiagonal QL exceeded {QL_MAX_SWEEPS} sweeps at index {l}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = zt.as_deref_mut() {
                    let (lo, hi) = z.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..];
                    let zi1 = &mut hi[..n];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let f = *b;
                        *b = s * *a + c * f;
                        *a = c * *a - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Eigenvectors of the tridiagonal matrix for the given (ascending)
/// eigenvalues. Vectors whose eigenvalues fall within `1e-3 ||T||` of each
/// other are re-orthogonalised against each other.
fn inverse_iteration(diag: &[f64], off: &[f64], values: &[f64]) -> Vec<Vec<f64>> {
    let n = diag.len();
    let mut tnorm: f64 = 0.0;
    for i in 0..n {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off[i].abs() } else { 0.0 };
        tnorm = tnorm.max(diag[i].abs() + left + right);
    }
    let tnorm = tnorm.max(f64::MIN_POSITIVE);
    let ortol = 1e-3 * tnorm;
    let pivot_floor = f64::EPSILON * tnorm;
    let separation = 10.0 * f64::EPSILON * tnorm;

    let mut out: Vec<Vec<f64>> = Vec::with_capacity(values.len());
    let mut cluster_start = 0;
    let mut prev_shift = f64::NEG_INFINITY;
    for (j, &lambda) in values.iter().enumerate() {
        if j > 0 && lambda - values[j - 1] > ortol {
            cluster_start = j;
        }
        let shift = if j > cluster_start && lambda - prev_shift < separation {
            prev_shift + separation
        } else {
            lambda
        };
        prev_shift = shift;

        let lu = TridiagonalLu::factor(diag, off, shift, pivot_floor);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + j as u64);
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for _ in 0..INVERSE_ITERATIONS {
            normalize_real(&mut x);
            lu.solve(&mut x);
            for prev in &out[cluster_start..j] {
                let dot: f64 = prev.iter().zip(&x).map(|(a, b)| a * b).sum();
                for (xi, pi) in x.iter_mut().zip(prev) {
                    *xi -= dot * pi;
                }
            }
            normalize_real(&mut x);
        }
        out.push(x);
    }
    out
}

fn normalize_real(x: &mut [f64]) {
    let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if nrm > 0.0 && nrm.is_finite() {
        for v in x.iter_mut() {
            *v /= nrm;
        }
    }
}

/// LU factorisation with partial pivoting of `T - shift I`.
struct TridiagonalLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    fn factor(diag: &[f64], off: &[f64], shift: f64, pivot_floor: f64) -> Self {
        let n = diag.len();
        let mut d: Vec<f64> = diag.iter().map(|x| x - shift).collect();
        let mut dl = off.to_vec();
        let mut du = off.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        for x in d.iter_mut() {
            if x.abs() < pivot_floor {
                *x = if *x < 0.0 { -pivot_floor } else { pivot_floor };
            }
        }
        Self {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

/// Sorts pairs ascending, fixes phases and breaks near ties
/// lexicographically.
fn canonicalize(values: Vec<f64>, vectors: Vec<Vec<C64>>) -> EigenSystem {
    let mut pairs: Vec<(f64, Vec<C64>)> = values
        .into_iter()
        .zip(vectors)
        .map(|(x, mut v)| {
            fix_phase(&mut v);
            (x, v)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let scale = pairs.iter().map(|p| p.0.abs()).fold(0.0, f64::max).max(1.0);
    let tie = 1e-12 * scale;
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && pairs[end].0 - pairs[end - 1].0 <= tie {
            end += 1;
        }
        if end - start > 1 {
            pairs[start..end].sort_by(|a, b| lex_cmp(&a.1, &b.1));
        }
        start = end;
    }
    let (values, vectors) = pairs.into_iter().unzip();
    EigenSystem { values, vectors }
}

/// Rotates `v` so that its first component above `1e-8 max|v_i|` is real and
/// positive.
pub(crate) fn fix_phase(v: &mut [C64]) {
    let peak = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return;
    }
    if let Some(idx) = v.iter().position(|z| z.norm() > 1e-8 * peak) {
        let lead = v[idx];
        let rot = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= rot;
        }
        v[idx] = C64::new(v[idx].re, 0.0);
    }
}

fn lex_cmp(a: &[C64], b: &[C64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if ord.is_ne() {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}
