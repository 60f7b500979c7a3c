use super::operator::{ConstraintKind, ConstraintOperator, Forcing, DENSE_LIMIT};
use crate::axes::{AxisGrid, CompositeState, PhysicalConstants};
use crate::error::{Error, Result};
use crate::numkernel::{
    apply_system, eig_hermitian, fix_phase, inner, near_null_space, EigenSystem, OperatorMatrix,
    C64,
};

/// Labels closer than this (relative) are treated as the same level, and two
/// level weights closer than this make a label ambiguous.
const LABEL_TOL: f64 = 1e-6;
const ORTHONORMAL_TOL: f64 = 1e-10;

/// Orthonormal basis of a constraint's near-kernel.
///
/// For the first and second equations each vector carries the system-factor
/// eigenvalue (`E` or `t`) it projects onto most strongly. Vectors that share
/// a label, or whose two strongest levels are tied, are grouped into
/// multiplets and left unresolved.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    vectors: Vec<CompositeState>,
    labels: Vec<Option<f64>>,
    multiplets: Vec<Vec<usize>>,
    tol: f64,
}

impl SubspaceBasis {
    /// Wraps an orthonormal set. Fails if the vectors are not orthonormal to
    /// 1e-10 or do not share one shape.
    pub fn new(vectors: Vec<CompositeState>, labels: Vec<Option<f64>>, tol: f64) -> Result<Self> {
        if labels.len() != vectors.len() {
            return Err(Error::DimensionMismatch {
                expected: vectors.len(),
                found: labels.len(),
            });
        }
        for (i, a) in vectors.iter().enumerate() {
            a.same_shape(&vectors[0])?;
            for b in &vectors[..=i] {
                let want = if std::ptr::eq(a, b) { 1.0 } else { 0.0 };
                let got = a.overlap(b);
                if (got - want).norm() > ORTHONORMAL_TOL {
                    return Err(Error::validation(
                        "basis",
                        format!("vectors are not orthonormal (deviation {:.3e})", (got - want).norm()),
                    ));
                }
            }
        }
        let multiplets = group_multiplets(&labels);
        Ok(Self {
            vectors,
            labels,
            multiplets,
            tol,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[CompositeState] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &CompositeState {
        &self.vectors[i]
    }

    pub fn labels(&self) -> &[Option<f64>] {
        &self.labels
    }

    /// Index groups whose members cannot be told apart by label.
    pub fn multiplets(&self) -> &[Vec<usize>] {
        &self.multiplets
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `<Phi_k|s>` for every member.
    pub fn coefficients(&self, s: &CompositeState) -> Result<Vec<C64>> {
        if let Some(first) = self.vectors.first() {
            first.same_shape(s)?;
        }
        Ok(self.vectors.iter().map(|v| v.overlap(s)).collect())
    }

    /// `|(I - P) s|`.
    pub fn distance(&self, s: &CompositeState) -> Result<f64> {
        let c = self.coefficients(s)?;
        let mut rest = s.amplitudes().to_vec();
        for (ck, v) in c.iter().zip(&self.vectors) {
            for (r, x) in rest.iter_mut().zip(v.amplitudes()) {
                *r -= ck * x;
            }
        }
        Ok(crate::numkernel::norm(&rest))
    }

    /// Dense projector `sum_k |Phi_k><Phi_k|`. Refused above the dense limit.
    pub fn projector(&self) -> Result<OperatorMatrix> {
        let Some(first) = self.vectors.first() else {
            return Err(Error::EmptyBasis);
        };
        let dim = first.len();
        if dim > DENSE_LIMIT {
            return Err(Error::TooLarge {
                dim,
                limit: DENSE_LIMIT,
            });
        }
        let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
        for v in &self.vectors {
            let a = v.amplitudes();
            for i in 0..dim {
                if a[i] == C64::new(0.0, 0.0) {
                    continue;
                }
                let row = &mut entries[i * dim..(i + 1) * dim];
                for (dst, aj) in row.iter_mut().zip(a) {
                    *dst += a[i] * aj.conj();
                }
            }
        }
        OperatorMatrix::new(dim, entries)?.assert_hermitian()
    }
}

fn same_label(a: f64, b: f64) -> bool {
    (a - b).abs() <= LABEL_TOL * a.abs().max(b.abs()).max(1.0)
}

fn group_multiplets(labels: &[Option<f64>]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut ambiguous = Vec::new();
    let mut labelled: Vec<(usize, f64)> = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        match l {
            Some(x) => labelled.push((i, *x)),
            None => ambiguous.push(i),
        }
    }
    labelled.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    let mut current: Vec<usize> = Vec::new();
    let mut anchor = f64::NAN;
    for (i, x) in labelled {
        if !current.is_empty() && same_label(anchor, x) {
            current.push(i);
        } else {
            if current.len() > 1 {
                groups.push(std::mem::take(&mut current));
            }
            current = vec![i];
            anchor = x;
        }
    }
    if current.len() > 1 {
        groups.push(current);
    }
    if !ambiguous.is_empty() {
        groups.push(ambiguous);
    }
    groups
}

/// Near-kernel of `D`: every eigenvector with `|lambda| <= tol`.
///
/// Up to [`DENSE_LIMIT`] the composite matrix is decomposed directly. Above
/// it the operator must have the form `I ⊗ B - A ⊗ I`, whose eigenvectors are
/// the products of factor eigenvectors; the kernel is then read off from the
/// factor spectra.
pub fn physical_subspace(d: &ConstraintOperator, tol: f64) -> Result<SubspaceBasis> {
    check_tol(tol)?;
    if d.dim() <= DENSE_LIMIT {
        dense_subspace(d, tol)
    } else {
        factored_subspace(d, tol)
    }
}

/// [`physical_subspace`] forced through the factor spectra, at any size.
pub fn physical_subspace_factored(d: &ConstraintOperator, tol: f64) -> Result<SubspaceBasis> {
    check_tol(tol)?;
    factored_subspace(d, tol)
}

/// Near-kernel of `c_s I ⊗ s + c_t I ⊗ t - F`; members are unlabelled.
pub fn generalized_solve(
    c_s: f64,
    c_t: f64,
    f: &OperatorMatrix,
    tg: &AxisGrid,
    k: &PhysicalConstants,
    tol: f64,
) -> Result<SubspaceBasis> {
    let d = ConstraintOperator::generalized(c_s, c_t, Forcing::Dense(f.clone()), tg, k)?;
    physical_subspace(&d, tol)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::validation("tol", "must be finite and positive"))
    }
}

fn dense_subspace(d: &ConstraintOperator, tol: f64) -> Result<SubspaceBasis> {
    let kernel = {
        let dense = d.dense()?;
        near_null_space(&dense, tol)?
    };
    match (d.kind(), d.lifted_system()) {
        (ConstraintKind::Generalized { .. }, _) | (_, None) => {
            let states = to_states(d, kernel)?;
            let labels = vec![None; states.len()];
            SubspaceBasis::new(states, labels, tol)
        }
        (_, Some(a)) => {
            let rotated = rayleigh_ritz(kernel, a, d.n_t())?;
            label_and_wrap(d, a, rotated, tol)
        }
    }
}

fn factored_subspace(d: &ConstraintOperator, tol: f64) -> Result<SubspaceBasis> {
    let Some(a) = d.lifted_system() else {
        if d.dim() <= DENSE_LIMIT {
            return dense_subspace(d, tol);
        }
        return Err(Error::TooLarge {
            dim: d.dim(),
            limit: DENSE_LIMIT,
        });
    };
    let sys = eig_hermitian(a)?;
    let time = eig_hermitian(d.time_part())?;
    let mut pairs = Vec::new();
    for (n, &an) in sys.values().iter().enumerate() {
        for (kk, &bk) in time.values().iter().enumerate() {
            if (bk - an).abs() <= tol {
                pairs.push((n, kk));
            }
        }
    }
    let vectors: Vec<Vec<C64>> = pairs
        .iter()
        .map(|&(n, kk)| CompositeState::product(sys.vector(n), time.vector(kk)).into_amplitudes())
        .collect();
    if let ConstraintKind::Generalized { .. } = d.kind() {
        let states = to_states(d, vectors)?;
        let labels = vec![None; states.len()];
        return SubspaceBasis::new(states, labels, tol);
    }
    label_with(d, &sys, vectors, tol)
}

fn to_states(d: &ConstraintOperator, vectors: Vec<Vec<C64>>) -> Result<Vec<CompositeState>> {
    vectors
        .into_iter()
        .map(|v| CompositeState::new(d.n_q(), d.n_t(), v))
        .collect()
}

/// Diagonalises `A ⊗ I` inside the span of `vectors`, so that mixtures of
/// different levels inside a near-zero cluster are separated.
fn rayleigh_ritz(vectors: Vec<Vec<C64>>, a: &OperatorMatrix, n_t: usize) -> Result<Vec<Vec<C64>>> {
    let r = vectors.len();
    if r < 2 {
        return Ok(vectors);
    }
    let av: Vec<Vec<C64>> = vectors.iter().map(|v| apply_system(a, v, n_t)).collect();
    let raw = OperatorMatrix::from_fn(r, |i, j| inner(&vectors[i], &av[j]));
    let m = (&raw + &raw.adjoint()).scale_real(0.5).assert_hermitian()?;
    let es = eig_hermitian(&m)?;
    let len = vectors[0].len();
    let mut out = Vec::with_capacity(r);
    for y in es.vectors() {
        let mut w = vec![C64::new(0.0, 0.0); len];
        for (yi, v) in y.iter().zip(&vectors) {
            for (dst, x) in w.iter_mut().zip(v) {
                *dst += yi * x;
            }
        }
        fix_phase(&mut w);
        out.push(w);
    }
    Ok(out)
}

fn label_and_wrap(
    d: &ConstraintOperator,
    a: &OperatorMatrix,
    vectors: Vec<Vec<C64>>,
    tol: f64,
) -> Result<SubspaceBasis> {
    let sys = eig_hermitian(a)?;
    label_with(d, &sys, vectors, tol)
}

fn label_with(
    d: &ConstraintOperator,
    sys: &EigenSystem,
    vectors: Vec<Vec<C64>>,
    tol: f64,
) -> Result<SubspaceBasis> {
    let clusters = cluster_levels(sys.values());
    let labels = vectors
        .iter()
        .map(|v| max_weight_label(sys, &clusters, v, d.n_t()))
        .collect();
    SubspaceBasis::new(to_states(d, vectors)?, labels, tol)
}

/// Groups sorted eigenvalues that agree within [`LABEL_TOL`].
fn cluster_levels(values: &[f64]) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || !same_label(values[start], values[i]) {
            out.push(start..i);
            start = i;
        }
    }
    out
}

fn max_weight_label(
    sys: &EigenSystem,
    clusters: &[std::ops::Range<usize>],
    v: &[C64],
    n_t: usize,
) -> Option<f64> {
    let n_q = sys.dim();
    let mut level_weight = vec![0.0; sys.len()];
    let mut row = vec![C64::new(0.0, 0.0); n_t];
    for (n, w) in level_weight.iter_mut().enumerate() {
        row.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
        let alpha = sys.vector(n);
        for q in 0..n_q {
            let c = alpha[q].conj();
            for (dst, x) in row.iter_mut().zip(&v[q * n_t..(q + 1) * n_t]) {
                *dst += c * x;
            }
        }
        *w = row.iter().map(|z| z.norm_sqr()).sum();
    }
    let mut best = (f64::NEG_INFINITY, 0usize);
    let mut second = f64::NEG_INFINITY;
    for (ci, range) in clusters.iter().enumerate() {
        let w: f64 = level_weight[range.clone()].iter().sum();
        if w > best.0 {
            second = best.0;
            best = (w, ci);
        } else if w > second {
            second = w;
        }
    }
    if best.0 - second < LABEL_TOL {
        return None;
    }
    let range = clusters[best.1].clone();
    let top = range
        .clone()
        .max_by(|&i, &j| level_weight[i].total_cmp(&level_weight[j]).then(j.cmp(&i)))
        .expect("clusters are non-empty");
    Some(sys.values()[top])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axes::{presets, CompositeState};
    use crate::models::{energy_levels, harmonic_hamiltonian, ModelSpec};

    fn small_first(period: f64) -> (ConstraintOperator, ModelSpec, AxisGrid) {
        let k = PhysicalConstants::unit();
        let gq = presets::position_grid(&k, 48, 7.0).unwrap();
        let m = ModelSpec::oscillator(k, gq).unwrap();
        let tg = presets::periodic_time_grid(period, 16).unwrap();
        let h = harmonic_hamiltonian(&m).unwrap();
        (ConstraintOperator::first(&h, &tg, &k).unwrap(), m, tg)
    }

    #[test]
    fn matched_levels_only() {
        let (d, _, _) = small_first(4.0 * std::f64::consts::PI);
        // lattice spacing 1/2, band edge 4: levels n = 0..3 match.
        let basis = physical_subspace(&d, 1e-6).unwrap();
        let labels: Vec<f64> = basis.labels().iter().map(|l| l.unwrap()).collect();
        assert_eq!(labels.len(), 4);
        for (n, l) in labels.iter().enumerate() {
            assert!((l - (n as f64 + 0.5)).abs() < 1e-5, "{labels:?}");
        }
        for v in basis.vectors() {
            assert!(d.residual(v).unwrap() <= 2e-6);
        }
        assert!(basis.multiplets().is_empty());
    }

    #[test]
    fn detuned_grid_is_empty() {
        let (d, _, _) = small_first(4.0 * std::f64::consts::PI * 1.1);
        assert!(physical_subspace(&d, 1e-6).unwrap().is_empty());
    }

    #[test]
    fn dense_and_factored_agree() {
        let (d, m, tg) = small_first(4.0 * std::f64::consts::PI);
        let a = physical_subspace(&d, 1e-6).unwrap();
        let b = physical_subspace_factored(&d, 1e-6).unwrap();
        let diff = (&a.projector().unwrap() - &b.projector().unwrap()).max_norm();
        assert!(diff < 1e-8, "{diff}");
        let p = a.projector().unwrap();
        assert!((&(&p * &p) - &p).max_norm() < 1e-9);

        let levels = energy_levels(&m, 4).unwrap();
        for n in 0..4 {
            let s = super::super::separable_first(levels.pair(n), &tg, m.constants()).unwrap();
            assert!(a.distance(&s).unwrap() < 1e-6);
        }
    }

    #[test]
    fn shared_labels_form_multiplets() {
        let s = |j: usize| {
            let mut v = vec![C64::new(0.0, 0.0); 4];
            v[j] = C64::new(1.0, 0.0);
            CompositeState::new(2, 2, v).unwrap()
        };
        let basis = SubspaceBasis::new(
            vec![s(0), s(1), s(2), s(3)],
            vec![Some(1.0), Some(2.0), Some(1.0 + 1e-9), None],
            1e-6,
        )
        .unwrap();
        assert_eq!(basis.multiplets(), &[vec![0, 2], vec![3]]);
    }

    #[test]
    fn rejects_non_orthonormal() {
        let v = CompositeState::new(1, 2, vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
        assert!(SubspaceBasis::new(vec![v.clone(), v], vec![None, None], 1e-6).is_err());
    }
}
