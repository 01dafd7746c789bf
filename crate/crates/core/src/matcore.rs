//! Small dense complex linear algebra.
//!
//! Everything here works on [`ComplexMatrix`], a row-major matrix of
//! `Complex64` entries. Dimensions in this crate never exceed a few dozen,
//! so the eigensolver is a plain cyclic Jacobi method for Hermitian matrices.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default absolute tolerance for Hermiticity and positivity checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Jacobi stops once the off-diagonal Frobenius norm drops below this
/// fraction of the input's Frobenius norm.
const JACOBI_REL_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and
    /// non-finite components.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::EntryCount {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                row: k / cols.max(1),
                col: k % cols.max(1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Real matrix from row-major values.
    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        Self::new(rows, cols, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (k, &z) in diag.iter().enumerate() {
            m[(k, k)] = z;
        }
        m
    }

    /// Outer product |u⟩⟨v|.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        Self::from_fn(u.len(), v.len(), |r, c| u[r] * v[c].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Option<Complex64> {
        (row < self.rows && col < self.cols).then(|| self.data[row * self.cols + col])
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.mismatch(other));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::DimensionMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// max |m - m†| over all entries; infinite for non-square input.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self[(r / other.rows, c / other.cols)] * other[(r % other.rows, c % other.cols)]
        })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, col)]).collect()
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare(self.rows, self.cols))
        }
    }

    fn require_hermitian(&self, tol: f64) -> Result<usize> {
        let n = self.require_square()?;
        let deviation = self.hermiticity_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation, tol });
        }
        Ok(n)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.6e}{:+.6e}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Standard matrix product `a · b`.
pub fn multiply(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.cols != b.rows {
        return Err(a.mismatch(b));
    }
    let mut out = ComplexMatrix::zeros(a.rows, b.cols);
    for r in 0..a.rows {
        for k in 0..a.cols {
            let lhs = a.data[r * a.cols + k];
            if lhs == ZERO {
                continue;
            }
            let row = &b.data[k * b.cols..(k + 1) * b.cols];
            let dst = &mut out.data[r * b.cols..(r + 1) * b.cols];
            for (d, &x) in dst.iter_mut().zip(row) {
                *d += lhs * x;
            }
        }
    }
    Ok(out)
}

/// Entrywise complex conjugate (no transpose).
pub fn conjugate(a: &ComplexMatrix) -> ComplexMatrix {
    a.map(|z| z.conj())
}

/// Eigenvalues sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpectrum(Vec<f64>);

impl EigenSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<f64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<f64> {
        self.0.last().copied()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

/// Eigenvalues with their orthonormal eigenvectors stored as the columns of
/// `vectors`, in the same ascending order.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: EigenSpectrum,
    pub vectors: ComplexMatrix,
}

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
pub fn hermitian_eigen(m: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    let n = m.require_hermitian(tol)?;

    // Work on the exactly Hermitian part.
    let mut a = ComplexMatrix::from_fn(n, n, |r, c| 0.5 * (m[(r, c)] + m[(c, r)].conj()));
    for k in 0..n {
        a[(k, k)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_REL_TOL * a.frobenius_norm();

    let mut converged = off_diagonal_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a) <= threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen {
        values: EigenSpectrum(values),
        vectors,
    })
}

/// Real eigenvalues of a Hermitian matrix, ascending, with multiplicity.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<EigenSpectrum> {
    hermitian_eigen(m, tol).map(|e| e.values)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows;
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += a[(r, c)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation annihilating `a[p][q]`; accumulates into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    // Phase that makes the pivot real, followed by a real plane rotation.
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let zeta = (aqq - app) / (2.0 * mag);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
    } else {
        -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Rotation U acting on columns (p, q):
    //   U = [[c, s], [-s·conj(phase), c·conj(phase)]]
    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = -s * phase.conj();
    let u_qq = c * phase.conj();

    let n = a.rows;
    // a <- a · U
    for r in 0..n {
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        a[(r, p)] = arp * u_pp + arq * u_qp;
        a[(r, q)] = arp * u_pq + arq * u_qq;
    }
    // a <- U† · a
    for col in 0..n {
        let apc = a[(p, col)];
        let aqc = a[(q, col)];
        a[(p, col)] = u_pp.conj() * apc + u_qp.conj() * aqc;
        a[(q, col)] = u_pq.conj() * apc + u_qq.conj() * aqc;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
    // v <- v · U
    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = vrp * u_pp + vrq * u_qp;
        v[(r, q)] = vrp * u_pq + vrq * u_qq;
    }
}

/// Square root of a positive semidefinite matrix together with the number
/// of slightly negative eigenvalues that were clamped to zero.
#[derive(Debug, Clone)]
pub struct PsdSqrt {
    pub root: ComplexMatrix,
    pub clamped: usize,
}

/// Eigenvalues within this many ulps (scaled by dimension and the largest
/// eigenvalue) of zero are indistinguishable from roundoff in Jacobi.
pub(crate) const EIGEN_NOISE_ULPS: f64 = 16.0;

/// Roundoff band around zero for the spectrum of an `n`×`n` matrix whose
/// largest eigenvalue modulus is `scale`.
pub(crate) fn eigen_noise_floor(n: usize, scale: f64) -> f64 {
    EIGEN_NOISE_ULPS * f64::EPSILON * n as f64 * scale
}

/// Hermitian square root of a PSD matrix. Eigenvalues in `[-tol, 0)` are
/// clamped to zero, as are positive ones inside the solver's roundoff band.
pub fn psd_sqrt(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    psd_sqrt_with_diagnostics(m, tol).map(|s| s.root)
}

pub fn psd_sqrt_with_diagnostics(m: &ComplexMatrix, tol: f64) -> Result<PsdSqrt> {
    let eig = hermitian_eigen(m, tol)?;
    let values = eig.values.values();
    let scale = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let floor = eigen_noise_floor(values.len(), scale);
    let mut clamped = 0;
    let mut roots = Vec::with_capacity(values.len());
    for &value in values {
        if value < -tol {
            return Err(Error::NotPositiveSemidefinite { eigenvalue: value, tol });
        }
        if value < 0.0 {
            clamped += 1;
        }
        roots.push(if value <= floor { 0.0 } else { value.sqrt() });
    }
    let n = m.rows;
    let vecs = &eig.vectors;
    let root = ComplexMatrix::from_fn(n, n, |r, c| {
        roots
            .iter()
            .enumerate()
            .map(|(k, &s)| vecs[(r, k)] * vecs[(c, k)].conj() * s)
            .sum()
    });
    Ok(PsdSqrt { root, clamped })
}

/// Principal submatrix picking rows and columns in the order given by
/// `indices`.
pub fn principal_submatrix(m: &ComplexMatrix, indices: &[usize]) -> Result<ComplexMatrix> {
    let n = m.require_square()?;
    if let Some(&index) = indices.iter().find(|&&k| k >= n) {
        return Err(Error::IndexOutOfRange { index, dim: n });
    }
    Ok(ComplexMatrix::from_fn(indices.len(), indices.len(), |r, c| {
        m[(indices[r], indices[c])]
    }))
}
