//! Seeded random states for property checks.
//!
//! All generators draw from [`StateRng`], ChaCha8 seeded through
//! `seed_from_u64`, whose output stream is fixed across platforms.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::matcore::{multiply, ComplexMatrix};
use crate::state::{DensityMatrix, QuditDim};

pub type StateRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian with unit variance per component.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-distributed unit vector of length `dim`.
pub fn haar_pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// `G G† / Tr(G G†)` with G a 2d×2d complex Gaussian matrix.
pub fn ginibre_density<R: Rng + ?Sized>(d: QuditDim, rng: &mut R) -> Result<DensityMatrix> {
    let n = d.joint();
    let g = ComplexMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let gg = multiply(&g, &g.adjoint())?;
    let tr = gg.trace().re;
    // Exact Hermiticity after normalization.
    let rho = ComplexMatrix::from_fn(n, n, |r, c| 0.5 * (gg[(r, c)] + gg[(c, r)].conj()) / tr);
    DensityMatrix::new(d, rho)
}

/// Product |a⟩ ⊗ |b⟩ of Haar-random qubit and qudit states.
pub fn random_product_state<R: Rng + ?Sized>(d: QuditDim, rng: &mut R) -> Vec<Complex64> {
    let qubit = haar_pure_state(2, rng);
    let qudit = haar_pure_state(d.get(), rng);
    qubit.iter().flat_map(|a| qudit.iter().map(move |b| a * b)).collect()
}

/// Equal-weight mixture of 2d random product states.
pub fn random_separable<R: Rng + ?Sized>(d: QuditDim, rng: &mut R) -> Result<DensityMatrix> {
    let n = d.joint();
    let weight = Complex64::new(1.0 / n as f64, 0.0);
    let mut rho = ComplexMatrix::zeros(n, n);
    for _ in 0..n {
        let psi = random_product_state(d, rng);
        rho = rho.add(&ComplexMatrix::outer(&psi, &psi).scale(weight))?;
    }
    DensityMatrix::new(d, rho)
}

/// Haar-random 2×2 unitary `e^{iφ} [[a, -b*], [b, a*]]`.
pub fn random_qubit_unitary<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let v = haar_pure_state(2, rng);
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    let (a, b) = (v[0], v[1]);
    ComplexMatrix::from_fn(2, 2, |r, c| {
        phase
            * match (r, c) {
                (0, 0) => a,
                (0, 1) => -b.conj(),
                (1, 0) => b,
                _ => a.conj(),
            }
    })
}

/// Random X-shaped 4×4 PSD matrix of unit trace: two independent PSD 2×2
/// blocks on the outer `{0, 3}` and inner `{1, 2}` index pairs.
pub fn random_x_state<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    for idx in [[0usize, 3], [1, 2]] {
        let g = ComplexMatrix::from_fn(2, 2, |_, _| complex_gaussian(rng));
        let block = multiply(&g, &g.adjoint()).expect("2x2 product");
        for r in 0..2 {
            for c in 0..2 {
                m[(idx[r], idx[c])] = block[(r, c)];
            }
        }
    }
    let tr = m.trace();
    m.map(|z| z / tr)
}
