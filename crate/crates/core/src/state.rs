//! Qubit-qudit state types shared by both concurrence routes.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigenvalues, ComplexMatrix, DEFAULT_TOL};

/// Number of qudit levels, at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuditDim(usize);

impl QuditDim {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        Ok(Self(d))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Dimension of the joint qubit ⊗ qudit space.
    pub fn joint(self) -> usize {
        2 * self.0
    }

    /// Number of level pairs, d(d-1)/2.
    pub fn pair_count(self) -> usize {
        self.0 * (self.0 - 1) / 2
    }

    /// All level pairs in lexicographic order.
    pub fn pairs(self) -> impl Iterator<Item = BlockPair> {
        let d = self.0;
        (0..d).flat_map(move |i| (i + 1..d).map(move |j| BlockPair { i, j }))
    }
}

impl fmt::Display for QuditDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A pair of qudit levels `i < j`; together with the qubit it spans one
/// embedded two-qubit subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockPair {
    i: usize,
    j: usize,
}

impl BlockPair {
    pub fn new(i: usize, j: usize, d: QuditDim) -> Result<Self> {
        if i >= j || j >= d.get() {
            return Err(Error::InvalidPair { i, j, d: d.get() });
        }
        Ok(Self { i, j })
    }

    pub fn i(self) -> usize {
        self.i
    }

    pub fn j(self) -> usize {
        self.j
    }

    /// Parent indices `[i, j, d+i, d+j]`, i.e. the basis
    /// `|0,i⟩, |0,j⟩, |1,i⟩, |1,j⟩`.
    pub fn parent_indices(self, d: QuditDim) -> [usize; 4] {
        let d = d.get();
        [self.i, self.j, d + self.i, d + self.j]
    }

    pub(crate) fn check(self, d: QuditDim) -> Result<()> {
        Self::new(self.i, self.j, d).map(|_| ())
    }
}

impl fmt::Display for BlockPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.i, self.j)
    }
}

/// Validated 2d×2d density matrix in the basis `|α, k⟩ ↦ α·d + k`.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    d: QuditDim,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity at the default
    /// tolerance of 1e-9.
    pub fn new(d: QuditDim, mat: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(d, mat, DEFAULT_TOL)
    }

    pub fn with_tolerance(d: QuditDim, mat: ComplexMatrix, tol: f64) -> Result<Self> {
        let n = d.joint();
        if mat.rows() != n || mat.cols() != n {
            return Err(Error::DimensionMismatch {
                left_rows: mat.rows(),
                left_cols: mat.cols(),
                right_rows: n,
                right_cols: n,
            });
        }
        let deviation = mat.hermiticity_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation, tol });
        }
        let trace = mat.trace().re;
        if (trace - 1.0).abs() > tol {
            return Err(Error::InvalidTrace { trace, tol });
        }
        let spectrum = hermitian_eigenvalues(&mat, tol)?;
        if let Some(min) = spectrum.min().filter(|&m| m < -tol) {
            return Err(Error::NotPositiveSemidefinite { eigenvalue: min, tol });
        }
        Ok(Self { d, mat })
    }

    /// Pure state |ψ⟩⟨ψ| from 2d amplitudes, normalized here.
    pub fn from_pure(d: QuditDim, psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let normalized: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(d, ComplexMatrix::outer(&normalized, &normalized))
    }

    pub fn d(&self) -> QuditDim {
        self.d
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Qubit reduction Tr_qudit ρ.
    pub fn qubit_reduction(&self) -> ComplexMatrix {
        let d = self.d.get();
        ComplexMatrix::from_fn(2, 2, |a, b| (0..d).map(|k| self.mat[(a * d + k, b * d + k)]).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_and_pairs() {
        assert_eq!(QuditDim::new(1).unwrap_err(), Error::InvalidDimension(1));
        let d = QuditDim::new(4).unwrap();
        let pairs: Vec<_> = d.pairs().map(|p| (p.i(), p.j())).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(d.pair_count(), 6);
    }

    #[test]
    fn pair_validation() {
        let d = QuditDim::new(3).unwrap();
        assert!(BlockPair::new(0, 2, d).is_ok());
        assert_eq!(BlockPair::new(1, 1, d).unwrap_err(), Error::InvalidPair { i: 1, j: 1, d: 3 });
        assert!(BlockPair::new(2, 1, d).is_err());
        assert!(BlockPair::new(0, 3, d).is_err());
        assert_eq!(BlockPair::new(1, 2, d).unwrap().parent_indices(d), [1, 2, 4, 5]);
    }

    #[test]
    fn density_validation_names_the_violation() {
        let d = QuditDim::new(2).unwrap();
        let scaled = ComplexMatrix::identity(4).scale(Complex64::new(0.9 / 4.0, 0.0));
        assert!(matches!(DensityMatrix::new(d, scaled), Err(Error::InvalidTrace { .. })));

        let mut skew = ComplexMatrix::identity(4).scale(Complex64::new(0.25, 0.0));
        skew[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(matches!(DensityMatrix::new(d, skew), Err(Error::NotHermitian { .. })));

        let negative = ComplexMatrix::from_diagonal(&[1.5, -0.5, 0.0, 0.0].map(|x| Complex64::new(x, 0.0)));
        assert!(matches!(
            DensityMatrix::new(d, negative),
            Err(Error::NotPositiveSemidefinite { .. })
        ));

        assert!(matches!(
            DensityMatrix::new(d, ComplexMatrix::identity(6)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn qubit_reduction_of_product_state() {
        let d = QuditDim::new(3).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        // |1⟩ ⊗ |2⟩
        let rho = DensityMatrix::from_pure(d, &[zero, zero, zero, zero, zero, one]).unwrap();
        let red = rho.qubit_reduction();
        assert_eq!(red[(1, 1)], one);
        assert_eq!(red[(0, 0)], zero);
    }
}
