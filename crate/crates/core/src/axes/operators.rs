use rustfft::FftPlanner;

use super::constants::PhysicalConstants;
use super::grid::{AxisGrid, AxisLabel};
use crate::error::{Error, Result};
use crate::numkernel::{kron, OperatorMatrix, C64};

fn require(g: &AxisGrid, expected: AxisLabel) -> Result<()> {
    if g.label() == expected {
        Ok(())
    } else {
        Err(Error::WrongAxis {
            expected: expected.as_str(),
            found: g.label().as_str(),
        })
    }
}

/// `F^H diag(symbol(omega_k)) F` with `F` the unitary DFT on the grid.
///
/// The result is circulant; its first column is the inverse transform of the
/// symbol, with conjugate symmetry imposed so the matrix is exactly Hermitian.
fn spectral_operator(g: &AxisGrid, symbol: impl Fn(f64) -> f64) -> OperatorMatrix {
    let n = g.n();
    let mut col: Vec<C64> = (0..n)
        .map(|m| C64::new(symbol(g.frequency(g.bin_index(m))), 0.0))
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut col);
    let scale = 1.0 / n as f64;
    for z in &mut col {
        *z *= scale;
    }
    col[0].im = 0.0;
    for d in 1..=n / 2 {
        let e = n - d;
        if d == e {
            col[d].im = 0.0;
        } else {
            let avg = (col[d] + col[e].conj()) * 0.5;
            col[d] = avg;
            col[e] = avg.conj();
        }
    }
    OperatorMatrix::from_fn(n, |j, l| col[(j + n - l) % n])
        .assert_hermitian()
        .expect("real symbol gives a Hermitian circulant")
}

/// Multiplication by the sample values.
pub fn position_operator(g: &AxisGrid) -> Result<OperatorMatrix> {
    require(g, AxisLabel::Position)?;
    Ok(OperatorMatrix::from_real_diagonal(&g.samples()))
}

/// `-i hbar d/dq`, with eigenvalues exactly `hbar omega_k`.
pub fn momentum_operator(g: &AxisGrid, k: &PhysicalConstants) -> Result<OperatorMatrix> {
    require(g, AxisLabel::Position)?;
    Ok(spectral_operator(g, |w| k.hbar * w))
}

/// `-hbar^2 d^2/dq^2` taken directly from the squared symbol.
pub fn momentum_squared(g: &AxisGrid, k: &PhysicalConstants) -> Result<OperatorMatrix> {
    require(g, AxisLabel::Position)?;
    Ok(spectral_operator(g, |w| (k.hbar * w).powi(2)))
}

/// Multiplication by the time samples.
pub fn time_operator(g: &AxisGrid) -> Result<OperatorMatrix> {
    require(g, AxisLabel::Time)?;
    Ok(OperatorMatrix::from_real_diagonal(&g.samples()))
}

/// `i hbar d/dt`, with eigenvalues exactly `-hbar omega_k`.
pub fn energy_operator(g: &AxisGrid, k: &PhysicalConstants) -> Result<OperatorMatrix> {
    require(g, AxisLabel::Time)?;
    Ok(spectral_operator(g, |w| -k.hbar * w))
}

/// Eigenvalues of the energy operator, ascending.
pub fn energy_lattice(g: &AxisGrid, k: &PhysicalConstants) -> Vec<f64> {
    let mut e: Vec<f64> = g.frequencies().iter().map(|w| -k.hbar * w).collect();
    e.reverse();
    e
}

/// Nearest lattice energy to `energy` and the distance to it.
pub fn lattice_offset(g: &AxisGrid, k: &PhysicalConstants, energy: f64) -> (f64, f64) {
    let k_min = g.k_min();
    let k_max = g.n() as i64 + k_min - 1;
    let idx = (-energy * g.period() / (2.0 * std::f64::consts::PI * k.hbar)).round();
    let idx = (idx as i64).clamp(k_min, k_max);
    let nearest = -k.hbar * g.frequency(idx);
    (nearest, (energy - nearest).abs())
}

/// `exp(-i E t_j / hbar) / sqrt(n)` on the time grid.
///
/// Exact eigenvector of [`energy_operator`] when `energy` lies on the lattice;
/// otherwise a warning is logged and the sampled wave is still returned.
pub fn energy_eigenvector(g: &AxisGrid, energy: f64, k: &PhysicalConstants) -> Result<Vec<C64>> {
    require(g, AxisLabel::Time)?;
    let band = k.hbar * g.nyquist();
    if !energy.is_finite() || energy.abs() > band * (1.0 + 1e-12) {
        return Err(Error::OutOfBand { energy, band });
    }
    let (nearest, offset) = lattice_offset(g, k, energy);
    if offset > 1e-12 * band.max(1.0) {
        log::warn!("energy {energy} is off the lattice (nearest {nearest}, offset {offset:.3e})");
    }
    let amp = 1.0 / (g.n() as f64).sqrt();
    Ok(g.samples()
        .iter()
        .map(|&t| C64::from_polar(amp, -energy * t / k.hbar))
        .collect())
}

/// Normalised `exp(i omega_k x_j)` for lattice index `k_index`.
pub fn plane_wave(g: &AxisGrid, k_index: i64) -> Vec<C64> {
    let w = g.frequency(k_index);
    let amp = 1.0 / (g.n() as f64).sqrt();
    g.samples()
        .iter()
        .map(|&x| C64::from_polar(amp, w * x))
        .collect()
}

/// `A ⊗ I_{n_t}`.
pub fn lift_system(a: &OperatorMatrix, n_t: usize) -> OperatorMatrix {
    kron(a, &OperatorMatrix::identity(n_t))
}

/// `I_{n_q} ⊗ B`.
pub fn lift_time(b: &OperatorMatrix, n_q: usize) -> OperatorMatrix {
    kron(&OperatorMatrix::identity(n_q), b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{inner, norm};

    fn unit() -> PhysicalConstants {
        PhysicalConstants::unit()
    }

    #[test]
    fn position_two_samples() {
        let g = AxisGrid::position(2, -1.0, 2.0).unwrap();
        let q = position_operator(&g).unwrap();
        assert_eq!(q, OperatorMatrix::from_real_diagonal(&[-1.0, 1.0]));
        assert!(q.flags().hermitian);
    }

    #[test]
    fn wrong_axis() {
        let t = AxisGrid::time(4, 0.0, 1.0).unwrap();
        assert!(matches!(position_operator(&t), Err(Error::WrongAxis { .. })));
        assert!(matches!(momentum_operator(&t, &unit()), Err(Error::WrongAxis { .. })));
        let q = AxisGrid::position(4, 0.0, 1.0).unwrap();
        assert!(matches!(time_operator(&q), Err(Error::WrongAxis { .. })));
        assert!(matches!(energy_operator(&q, &unit()), Err(Error::WrongAxis { .. })));
    }

    #[test]
    fn derivative_kills_constants() {
        let g = AxisGrid::position(16, -3.0, 0.4).unwrap();
        let p = momentum_operator(&g, &unit()).unwrap();
        let ones = vec![C64::new(1.0, 0.0); 16];
        assert!(norm(&p.matvec(&ones)) < 1e-13);
    }

    #[test]
    fn plane_waves_are_momentum_eigenvectors() {
        let g = AxisGrid::position(16, -3.0, 0.4).unwrap();
        let k = PhysicalConstants::new(0.7, 1.0, 1.0, 1.0).unwrap();
        let p = momentum_operator(&g, &k).unwrap();
        for idx in -8..8 {
            let v = plane_wave(&g, idx);
            let pv = p.matvec(&v);
            let lambda = k.hbar * g.frequency(idx);
            let r: f64 = pv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b * lambda).norm_sqr())
                .sum();
            assert!(r.sqrt() < 1e-10, "k={idx}");
        }
    }

    #[test]
    fn lattice_energies_are_exact_and_orthonormal() {
        let g = AxisGrid::time(16, 0.25, 0.3).unwrap();
        let s = energy_operator(&g, &unit()).unwrap();
        let lattice = energy_lattice(&g, &unit());
        assert!(lattice.windows(2).all(|w| w[0] < w[1]));
        let vecs: Vec<Vec<C64>> = lattice
            .iter()
            .map(|&e| energy_eigenvector(&g, e, &unit()).unwrap())
            .collect();
        for (e, v) in lattice.iter().zip(&vecs) {
            let sv = s.matvec(v);
            let r: f64 = sv.iter().zip(v).map(|(a, b)| (a - b * *e).norm_sqr()).sum();
            assert!(r.sqrt() < 1e-10);
        }
        for i in 0..vecs.len() {
            for j in 0..vecs.len() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((inner(&vecs[i], &vecs[j]) - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_energy_is_uniform() {
        let g = AxisGrid::time(8, 0.0, 1.0).unwrap();
        let v = energy_eigenvector(&g, 0.0, &unit()).unwrap();
        for z in v {
            assert!((z - C64::new(8f64.sqrt().recip(), 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn band_edges() {
        let g = AxisGrid::time(8, 0.0, 1.0).unwrap();
        let edge = std::f64::consts::PI;
        assert!(energy_eigenvector(&g, edge, &unit()).is_ok());
        assert!(energy_eigenvector(&g, -edge, &unit()).is_ok());
        assert!(matches!(
            energy_eigenvector(&g, 1.01 * edge, &unit()),
            Err(Error::OutOfBand { .. })
        ));
        let (nearest, off) = lattice_offset(&g, &unit(), edge);
        assert!((nearest - edge).abs() < 1e-15 && off < 1e-15);
        assert!(lattice_offset(&g, &unit(), -edge).1 > 0.5);
    }

    #[test]
    fn lifted_cross_commutator_vanishes() {
        let gq = AxisGrid::position(4, -1.0, 0.5).unwrap();
        let gt = AxisGrid::time(3, 0.0, 1.0).unwrap();
        let q = lift_system(&position_operator(&gq).unwrap(), 3);
        let s = lift_time(&energy_operator(&gt, &unit()).unwrap(), 4);
        assert!(q.commutator(&s).max_norm() < 1e-14);
        assert_eq!(lift_system(&OperatorMatrix::identity(4), 3).entries(), OperatorMatrix::identity(12).entries());
    }
}
