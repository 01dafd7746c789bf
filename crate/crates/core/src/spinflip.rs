//! Spin-flip matrices on the full 2d×2d space and the reference route to
//! the pairwise concurrences.
//!
//! For a level pair `(i, j)` the matrix `S^ij` has exactly four nonzero
//! entries: `+1` at `(i, d+j)` and `(d+j, i)`, `-1` at `(j, d+i)` and
//! `(d+i, j)`. It equals `-σ_y ⊗ σ_y^(ij)` on the embedded two-qubit space.
//!
//! The λ values of a pair are the square roots of the four largest
//! eigenvalues of `ρ S ρ* S`. Squaring loses half the significant digits
//! for λ near zero, so [`lambda_spectrum`] instead factors `ρ = W W†` and
//! takes the singular values of `W† S W*`, whose squares are exactly the
//! nonzero eigenvalues of `ρ S ρ* S`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{conjugate, eigen_noise_floor, hermitian_eigen, hermitian_eigenvalues, multiply, psd_sqrt, ComplexMatrix, DEFAULT_TOL};
use crate::partition::{BoundReport, Route};
use crate::state::{BlockPair, DensityMatrix, QuditDim};

/// Four λ values in descending order.
pub type Lambdas = [f64; 4];

/// `S^ij` on the 2d×2d qubit-qudit space.
pub fn build_s_full(d: QuditDim, pair: BlockPair) -> Result<ComplexMatrix> {
    pair.check(d)?;
    let n = d.joint();
    let (i, j, d) = (pair.i(), pair.j(), d.get());
    let mut s = ComplexMatrix::zeros(n, n);
    let plus = Complex64::new(1.0, 0.0);
    s[(i, j + d)] = plus;
    s[(j + d, i)] = plus;
    s[(j, i + d)] = -plus;
    s[(i + d, j)] = -plus;
    Ok(s)
}

/// The single two-qubit spin-flip matrix, antidiagonal `(-1, 1, 1, -1)`.
pub fn build_s_2q() -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(4, 4);
    s[(0, 3)] = Complex64::new(-1.0, 0.0);
    s[(1, 2)] = Complex64::new(1.0, 0.0);
    s[(2, 1)] = Complex64::new(1.0, 0.0);
    s[(3, 0)] = Complex64::new(-1.0, 0.0);
    s
}

/// Factorization `ρ = W W†` of a (possibly subnormalized) PSD matrix,
/// reusable across several spin-flip matrices.
#[derive(Debug, Clone)]
pub struct SpinFlipFactor {
    w: ComplexMatrix,
    w_adjoint: ComplexMatrix,
    w_conj: ComplexMatrix,
}

impl SpinFlipFactor {
    pub fn new(rho_like: &ComplexMatrix, tol: f64) -> Result<Self> {
        let eig = hermitian_eigen(rho_like, tol)?;
        let values = eig.values.values();
        if let Some(&min) = values.first().filter(|&&v| v < -tol) {
            return Err(Error::NotPositiveSemidefinite { eigenvalue: min, tol });
        }
        let n = rho_like.rows();
        let top = values.last().copied().unwrap_or(0.0).max(0.0);
        let floor = eigen_noise_floor(n, top);
        let kept: Vec<usize> = (0..n).filter(|&k| values[k] > floor).collect();
        let w = ComplexMatrix::from_fn(n, kept.len(), |r, c| {
            let k = kept[c];
            eig.vectors[(r, k)] * values[k].sqrt()
        });
        Ok(Self {
            w_adjoint: w.adjoint(),
            w_conj: conjugate(&w),
            w,
        })
    }

    /// Numerical rank retained in the factor.
    pub fn rank(&self) -> usize {
        self.w.cols()
    }

    /// λ values for spin-flip matrix `s`, descending, zero padded.
    pub fn lambdas(&self, s: &ComplexMatrix) -> Result<Lambdas> {
        if s.rows() != self.w.rows() || s.cols() != self.w.rows() {
            return Err(Error::DimensionMismatch {
                left_rows: self.w.rows(),
                left_cols: self.w.rows(),
                right_rows: s.rows(),
                right_cols: s.cols(),
            });
        }
        let r = self.rank();
        let mut out = [0.0; 4];
        if r == 0 {
            return Ok(out);
        }
        let m = multiply(&multiply(&self.w_adjoint, s)?, &self.w_conj)?;
        let sv = singular_values(&m)?;
        for (slot, value) in out.iter_mut().zip(sv) {
            *slot = value;
        }
        Ok(out)
    }
}

/// Singular values (descending) via the Hermitian dilation `[[0, M], [M†, 0]]`,
/// whose eigenvalues are `±σ_k`. Accurate to roughly ε‖M‖ in absolute terms.
fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let r = m.rows();
    let dilation = ComplexMatrix::from_fn(2 * r, 2 * r, |row, col| match (row < r, col < r) {
        (true, false) => m[(row, col - r)],
        (false, true) => m[(col, row - r)].conj(),
        _ => Complex64::new(0.0, 0.0),
    });
    let spectrum = hermitian_eigenvalues(&dilation, f64::INFINITY)?;
    Ok(spectrum.values().iter().rev().take(r).map(|&v| v.max(0.0)).collect())
}

/// Square roots of the four largest eigenvalues of `ρ S ρ* S`, descending.
///
/// `rho_like` may be subnormalized; it must be Hermitian and PSD within
/// `tol`.
pub fn lambda_spectrum(rho_like: &ComplexMatrix, s: &ComplexMatrix, tol: f64) -> Result<Lambdas> {
    SpinFlipFactor::new(rho_like, tol)?.lambdas(s)
}

/// Same spectrum computed from the Hermitian similarity transform
/// `√ρ S ρ* S √ρ`. Near-zero λ carry errors of order √(ε‖ρ‖²) on this
/// route; it is kept as an independent cross-check of [`lambda_spectrum`].
pub fn lambda_spectrum_similarity(rho_like: &ComplexMatrix, s: &ComplexMatrix, tol: f64) -> Result<Lambdas> {
    let root = psd_sqrt(rho_like, tol)?;
    let a = multiply(
        &multiply(&multiply(&multiply(&root, s)?, &conjugate(rho_like))?, s)?,
        &root,
    )?;
    // A is Hermitian up to roundoff in the products.
    let spectrum = hermitian_eigenvalues(&a, tol.max(1e-12 * a.max_abs()))?;
    let mut out = [0.0; 4];
    for (slot, &value) in out.iter_mut().zip(spectrum.values().iter().rev()) {
        if value < -tol {
            return Err(Error::NotPositiveSemidefinite { eigenvalue: value, tol });
        }
        *slot = value.max(0.0).sqrt();
    }
    Ok(out)
}

/// `max(0, λ1 - λ2 - λ3 - λ4)`.
pub fn pair_concurrence(lambdas: &Lambdas) -> Result<f64> {
    if lambdas.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotSorted);
    }
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Every pairwise concurrence from the full-space `S^ij`, aggregated into
/// the lower bound.
pub fn c_db_full(rho: &DensityMatrix) -> Result<BoundReport> {
    let d = rho.d();
    let factor = SpinFlipFactor::new(rho.matrix(), DEFAULT_TOL)?;
    let per_pair = d
        .pairs()
        .map(|pair| {
            let s = build_s_full(d, pair)?;
            Ok((pair, pair_concurrence(&factor.lambdas(&s)?)?))
        })
        .collect::<Result<Vec<_>>>()?;
    BoundReport::new(per_pair, Route::Full)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: usize) -> QuditDim {
        QuditDim::new(d).unwrap()
    }

    fn pair(i: usize, j: usize, d: usize) -> BlockPair {
        BlockPair::new(i, j, dim(d)).unwrap()
    }

    fn real(n: usize, v: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_real(n, n, v).unwrap()
    }

    fn r(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[rustfmt::skip]
    const EQ7: [f64; 16] = [
         0., 0., 0., -1.,
         0., 0., 1.,  0.,
         0., 1., 0.,  0.,
        -1., 0., 0.,  0.,
    ];

    #[test]
    fn s_2q_matches_printed_matrix() {
        let s = build_s_2q();
        assert_eq!(s, real(4, &EQ7));
        assert_eq!(multiply(&s, &s).unwrap(), ComplexMatrix::identity(4));
        assert_eq!(s, build_s_full(dim(2), pair(0, 1, 2)).unwrap().scale(r(-1.0)));
    }

    #[test]
    fn s_full_rejects_invalid_pair() {
        // BlockPair validation already guards construction; a pair valid
        // for a larger d must still be rejected.
        let p = pair(1, 4, 5);
        assert_eq!(
            build_s_full(dim(3), p).unwrap_err(),
            Error::InvalidPair { i: 1, j: 4, d: 3 }
        );
    }

    #[test]
    fn s_full_structure() {
        for d in 2..=6 {
            for p in dim(d).pairs() {
                let s = build_s_full(dim(d), p).unwrap();
                let nonzero = s.as_slice().iter().filter(|z| z.norm() != 0.0).count();
                assert_eq!(nonzero, 4);
                assert_eq!(s, s.transpose());
                let sq = multiply(&s, &s).unwrap();
                let diag: Vec<f64> = (0..2 * d).map(|k| sq[(k, k)].re).collect();
                assert_eq!(diag.iter().filter(|&&x| x == 1.0).count(), 4);
                assert!(diag.iter().all(|&x| x == 0.0 || x == 1.0));
                assert_eq!(sq.as_slice().iter().filter(|z| z.norm() != 0.0).count(), 4);
            }
        }
    }

    #[test]
    fn lambda_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = [r(h), r(0.0), r(0.0), r(h)];
        let rho = ComplexMatrix::outer(&bell, &bell);
        let l = lambda_spectrum(&rho, &build_s_2q(), DEFAULT_TOL).unwrap();
        assert!((l[0] - 1.0).abs() < 1e-12);
        assert!(l[1..].iter().all(|&x| x.abs() < 1e-12));

        let mixed = ComplexMatrix::identity(4).scale(r(0.25));
        let l = lambda_spectrum(&mixed, &build_s_2q(), DEFAULT_TOL).unwrap();
        assert!(l.iter().all(|&x| (x - 0.25).abs() < 1e-12), "{l:?}");
    }

    #[test]
    fn lambda_pads_small_dimensions_and_zero_input() {
        let l = lambda_spectrum(&ComplexMatrix::zeros(4, 4), &build_s_2q(), DEFAULT_TOL).unwrap();
        assert_eq!(l, [0.0; 4]);
        let s = real(2, &[0.0, 1.0, 1.0, 0.0]);
        let rho = real(2, &[0.5, 0.0, 0.0, 0.5]);
        let l = lambda_spectrum(&rho, &s, DEFAULT_TOL).unwrap();
        assert!((l[0] - 0.5).abs() < 1e-14 && (l[1] - 0.5).abs() < 1e-14);
        assert_eq!(&l[2..], &[0.0, 0.0]);
    }

    #[test]
    fn lambda_rejects_non_psd_and_shape_mismatch() {
        let bad = real(4, &[1., 0., 0., 0., 0., -0.5, 0., 0., 0., 0., 0.25, 0., 0., 0., 0., 0.25]);
        assert!(matches!(
            lambda_spectrum(&bad, &build_s_2q(), DEFAULT_TOL),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
        let s6 = build_s_full(dim(3), pair(0, 1, 3)).unwrap();
        assert!(matches!(
            lambda_spectrum(&ComplexMatrix::identity(4), &s6, DEFAULT_TOL),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn similarity_route_agrees() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = [r(h), r(0.0), Complex64::new(0.0, 0.3), r(0.5)];
        let mut rho = ComplexMatrix::outer(&bell, &bell).scale(r(0.6));
        for k in 0..4 {
            rho[(k, k)] += r(0.1);
        }
        let a = lambda_spectrum(&rho, &build_s_2q(), DEFAULT_TOL).unwrap();
        let b = lambda_spectrum_similarity(&rho, &build_s_2q(), DEFAULT_TOL).unwrap();
        for k in 0..4 {
            assert!((a[k] - b[k]).abs() < 1e-10, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn pair_concurrence_examples() {
        assert_eq!(pair_concurrence(&[1.0, 0.0, 0.0, 0.0]).unwrap(), 1.0);
        assert_eq!(pair_concurrence(&[0.25; 4]).unwrap(), 0.0);
        let x = 0.123;
        assert_eq!(pair_concurrence(&[x, x, 0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(pair_concurrence(&[0.1, 0.2, 0.0, 0.0]).unwrap_err(), Error::NotSorted);
    }

    #[test]
    fn c_db_full_examples() {
        let d = dim(3);
        let mut product = vec![r(0.0); 6];
        product[0] = r(1.0);
        let report = c_db_full(&DensityMatrix::from_pure(d, &product).unwrap()).unwrap();
        assert_eq!(report.route, Route::Full);
        assert!(report.c_db.abs() < 1e-12);
        assert!(report.per_pair.iter().all(|&(_, c)| c.abs() < 1e-12));

        // (|0,0⟩ + |1,1⟩)/√2 embedded in 2×3
        let mut bell = vec![r(0.0); 6];
        bell[0] = r(1.0);
        bell[4] = r(1.0);
        let report = c_db_full(&DensityMatrix::from_pure(d, &bell).unwrap()).unwrap();
        let values: Vec<f64> = report.per_pair.iter().map(|&(_, c)| c).collect();
        assert!((values[0] - 1.0).abs() < 1e-12);
        assert!(values[1].abs() < 1e-12 && values[2].abs() < 1e-12);
        assert!((report.c_db - 1.0).abs() < 1e-12);
        assert!((report.eof - 1.0).abs() < 1e-9);
    }
}
