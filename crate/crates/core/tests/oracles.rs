//! The in-house kernel against nalgebra on the same inputs.

use chronos::axes::{presets, PhysicalConstants};
use chronos::constraints::{physical_subspace, ConstraintOperator};
use chronos::models::{harmonic_hamiltonian, oscillator_g, ModelSpec};
use chronos::numkernel::{eig_hermitian, eigenvalues_hermitian, kron, unitary_exp, OperatorMatrix, C64};
use nalgebra::linalg::{SymmetricEigen, SVD};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn to_na(a: &OperatorMatrix) -> DMatrix<C64> {
    DMatrix::from_fn(a.dim(), a.dim(), |i, j| a.get(i, j))
}

fn random_hermitian(n: usize, seed: u64) -> OperatorMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = DMatrix::from_fn(n, n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let h = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    OperatorMatrix::from_fn(n, |i, j| h[(i, j)])
}

fn sorted_na_eigenvalues(a: &OperatorMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(to_na(a)).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

#[test]
fn eigenvalues_match_nalgebra() {
    for (n, seed) in [(1, 1), (2, 2), (7, 3), (40, 4), (96, 5)] {
        let a = random_hermitian(n, seed);
        let ours = eigenvalues_hermitian(&a).unwrap();
        let theirs = sorted_na_eigenvalues(&a);
        for (x, y) in ours.iter().zip(&theirs) {
            assert!((x - y).abs() <= 1e-11 * (1.0 + y.abs()), "n = {n}: {x} vs {y}");
        }
    }
}

#[test]
fn oscillator_operators_match_nalgebra() {
    let k = PhysicalConstants::unit();
    let model = ModelSpec::oscillator(k, presets::default_position_grid(&k).unwrap()).unwrap();
    for op in [harmonic_hamiltonian(&model).unwrap(), oscillator_g(&model).unwrap()] {
        let ours = eig_hermitian(&op).unwrap();
        let theirs = sorted_na_eigenvalues(&op);
        for (x, y) in ours.values().iter().zip(&theirs) {
            assert!((x - y).abs() <= 1e-9, "{x} vs {y}");
        }
    }
}

#[test]
fn kron_matches_nalgebra() {
    let a = random_hermitian(3, 10);
    let b = random_hermitian(4, 11);
    let ours = kron(&a, &b);
    let theirs = to_na(&a).kronecker(&to_na(&b));
    for i in 0..12 {
        for j in 0..12 {
            assert!((ours.get(i, j) - theirs[(i, j)]).norm() < 1e-15);
        }
    }
}

#[test]
fn unitary_exp_matches_nalgebra() {
    let a = random_hermitian(12, 20);
    let theta = 0.7;
    let ours = unitary_exp(&a, theta).unwrap();
    let theirs = (to_na(&a) * C64::new(0.0, -theta)).exp();
    for i in 0..12 {
        for j in 0..12 {
            assert!((ours.get(i, j) - theirs[(i, j)]).norm() < 1e-12);
        }
    }
}

/// The block reduction used by the acceptance oracle agrees with a full
/// dense eigendecomposition of `D1^H D1`, and both agree with the
/// physical-subspace dimension.
#[test]
fn first_constraint_kernel_matches_dense_oracles() {
    let k = PhysicalConstants::unit();
    let gq = presets::position_grid(&k, 24, 5.0).unwrap();
    let gt = presets::energy_aligned_time_grid(&k, 8).unwrap();
    let h = harmonic_hamiltonian(&ModelSpec::oscillator(k, gq).unwrap()).unwrap();
    let d = ConstraintOperator::first(&h, &gt, &k).unwrap();
    let tol = 1e-6;

    let dense = to_na(&d.dense().unwrap());
    let mut full: Vec<f64> = SymmetricEigen::new(dense.adjoint() * &dense)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    full.sort_by(f64::total_cmp);

    let sigma = sorted_na_eigenvalues(d.time_part());
    let h_na = to_na(&h);
    let mut blocks = Vec::new();
    for s in sigma {
        let b = DMatrix::<C64>::identity(gq.n(), gq.n()) * C64::new(s, 0.0) - &h_na;
        blocks.extend(SymmetricEigen::new(b).eigenvalues.iter().map(|mu| mu * mu));
    }
    blocks.sort_by(f64::total_cmp);
    for (x, y) in full.iter().zip(&blocks) {
        assert!((x - y).abs() <= 1e-9 * (1.0 + y), "{x} vs {y}");
    }

    let svd = SVD::new(dense, false, false);
    let svd_count = svd.singular_values.iter().filter(|s| **s <= tol).count();
    let block_count = blocks.iter().filter(|l| **l <= tol * tol).count();
    let basis = physical_subspace(&d, tol).unwrap();
    assert!(block_count > 0);
    assert_eq!(svd_count, block_count);
    assert_eq!(basis.len(), block_count);
}
