//! Partition of a 2×d state into d(d-1)/2 embedded two-qubit blocks.
//!
//! Block `(i, j)` is the principal 4×4 submatrix of ρ on the parent indices
//! `[i, j, d+i, d+j]`. Blocks are not renormalized. Each block's
//! concurrence uses only the single two-qubit spin-flip matrix, and the
//! per-pair values are combined by root-sum-square into the lower bound
//! `C_db` on the concurrence of ρ.

use std::fmt;

use crate::error::{Error, Result};
use crate::matcore::{principal_submatrix, ComplexMatrix, DEFAULT_TOL};
use crate::spinflip::{build_s_2q, lambda_spectrum, pair_concurrence};
use crate::state::{BlockPair, DensityMatrix, QuditDim};

/// Off-pattern magnitude allowed by the X-form fast path.
pub const X_FORM_TOL: f64 = 1e-10;

/// Slack beyond [0, 1] that [`eof_from_concurrence`] clamps instead of
/// rejecting.
const CONCURRENCE_SLACK: f64 = 1e-9;

/// Which construction produced a [`BoundReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Full-space `S^ij` matrices.
    Full,
    /// 4×4 blocks with the two-qubit spin flip.
    Partition,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Full => "full",
            Route::Partition => "partition",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-pair concurrences (lexicographic pair order), their root-sum-square
/// `c_db`, and the entanglement of formation derived from `c_db`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub per_pair: Vec<(BlockPair, f64)>,
    pub c_db: f64,
    pub eof: f64,
    pub route: Route,
}

impl BoundReport {
    pub fn new(mut per_pair: Vec<(BlockPair, f64)>, route: Route) -> Result<Self> {
        per_pair.sort_by_key(|&(pair, _)| pair);
        let c_db = per_pair.iter().map(|&(_, c)| c * c).sum::<f64>().sqrt();
        let eof = eof_from_concurrence(c_db)?;
        Ok(Self {
            per_pair,
            c_db,
            eof,
            route,
        })
    }

    pub fn concurrence(&self, pair: BlockPair) -> Option<f64> {
        self.per_pair.iter().find(|&&(p, _)| p == pair).map(|&(_, c)| c)
    }
}

/// 4×4 principal block of ρ for one level pair, ordered
/// `|0,i⟩, |0,j⟩, |1,i⟩, |1,j⟩`.
#[derive(Debug, Clone)]
pub struct TwoQubitBlock {
    pub pair: BlockPair,
    pub mat: ComplexMatrix,
    pub parent_d: QuditDim,
}

pub fn extract_block(rho: &DensityMatrix, pair: BlockPair) -> Result<TwoQubitBlock> {
    let d = rho.d();
    pair.check(d)?;
    let mat = principal_submatrix(rho.matrix(), &pair.parent_indices(d))?;
    Ok(TwoQubitBlock {
        pair,
        mat,
        parent_d: d,
    })
}

/// Wootters concurrence of the (subnormalized) block from its λ spectrum.
pub fn block_concurrence(block: &TwoQubitBlock) -> Result<f64> {
    pair_concurrence(&lambda_spectrum(&block.mat, &build_s_2q(), DEFAULT_TOL)?)
}

/// Largest modulus among entries off both the main and the anti-diagonal.
fn off_pattern_magnitude(m: &ComplexMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for r in 0..4 {
        for c in 0..4 {
            if r != c && r + c != 3 {
                worst = worst.max(m[(r, c)].norm());
            }
        }
    }
    worst
}

/// True when every entry outside the diagonal and anti-diagonal is at most
/// `tol` in magnitude.
pub fn is_x_form(block: &TwoQubitBlock, tol: f64) -> bool {
    off_pattern_magnitude(&block.mat) <= tol
}

/// Closed-form concurrence of an X-shaped block:
/// `2 max(0, |m03| - √(m11 m22), |m12| - √(m00 m33))`.
pub fn xform_concurrence(block: &TwoQubitBlock) -> Result<f64> {
    let m = &block.mat;
    let magnitude = off_pattern_magnitude(m);
    if magnitude > X_FORM_TOL {
        return Err(Error::NotXForm {
            magnitude,
            tol: X_FORM_TOL,
        });
    }
    let diag = |k: usize| m[(k, k)].re.max(0.0);
    let outer = m[(0, 3)].norm() - (diag(1) * diag(2)).sqrt();
    let inner = m[(1, 2)].norm() - (diag(0) * diag(3)).sqrt();
    Ok(2.0 * outer.max(inner).max(0.0))
}

/// Concurrence of one block, taking the closed form when the block is X
/// shaped.
pub fn block_concurrence_fast(block: &TwoQubitBlock) -> Result<f64> {
    if is_x_form(block, X_FORM_TOL) {
        let closed = xform_concurrence(block)?;
        debug_assert!(
            block_concurrence(block).map_or(true, |c| (c - closed).abs() < 1e-8),
            "X-form closed form disagrees with the spectrum for pair {}",
            block.pair
        );
        Ok(closed)
    } else {
        block_concurrence(block)
    }
}

/// Lower bound assembled from the 4×4 blocks.
pub fn c_db_partition(rho: &DensityMatrix) -> Result<BoundReport> {
    let per_pair = rho
        .d()
        .pairs()
        .map(|pair| Ok((pair, block_concurrence_fast(&extract_block(rho, pair)?)?)))
        .collect::<Result<Vec<_>>>()?;
    BoundReport::new(per_pair, Route::Partition)
}

/// Binary entropy in bits, with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// Entanglement of formation `h((1 + √(1 - c²)) / 2)`.
pub fn eof_from_concurrence(c: f64) -> Result<f64> {
    if !(-CONCURRENCE_SLACK..=1.0 + CONCURRENCE_SLACK).contains(&c) {
        return Err(Error::OutOfRange(c));
    }
    let c = c.clamp(0.0, 1.0);
    Ok(binary_entropy(0.5 * (1.0 + (1.0 - c * c).sqrt())))
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn block(mat: ComplexMatrix) -> TwoQubitBlock {
        let d = QuditDim::new(2).unwrap();
        TwoQubitBlock {
            pair: BlockPair::new(0, 1, d).unwrap(),
            mat,
            parent_d: d,
        }
    }

    #[test]
    fn eof_values() {
        assert_eq!(eof_from_concurrence(0.0).unwrap(), 0.0);
        assert!((eof_from_concurrence(1.0).unwrap() - 1.0).abs() < 1e-15);
        // h(0.9), reference evaluated with 50-digit arithmetic.
        let expected = 0.468_995_593_589_281_1;
        assert!((eof_from_concurrence(0.6).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn eof_range_checks() {
        assert_eq!(eof_from_concurrence(1.1).unwrap_err(), Error::OutOfRange(1.1));
        assert!(eof_from_concurrence(-0.01).is_err());
        assert!((eof_from_concurrence(1.0 + 5e-10).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(eof_from_concurrence(-5e-10).unwrap(), 0.0);
        assert!(eof_from_concurrence(f64::NAN).is_err());
    }

    #[test]
    fn eof_monotone_on_grid() {
        let mut prev = 0.0;
        for k in 0..=1000 {
            let e = eof_from_concurrence(k as f64 / 1000.0).unwrap();
            assert!(e >= prev);
            prev = e;
        }
    }

    #[test]
    fn x_form_detection() {
        let diag = block(ComplexMatrix::from_diagonal(&[r(0.1), r(0.2), r(0.3), r(0.4)]));
        assert!(is_x_form(&diag, X_FORM_TOL));
        let mut m = diag.mat.clone();
        m[(0, 1)] = r(1e-3);
        m[(1, 0)] = r(1e-3);
        let b = block(m);
        assert!(!is_x_form(&b, X_FORM_TOL));
        assert!(matches!(xform_concurrence(&b), Err(Error::NotXForm { .. })));
    }

    #[test]
    fn x_form_zero_and_bell() {
        assert_eq!(xform_concurrence(&block(ComplexMatrix::zeros(4, 4))).unwrap(), 0.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = [r(h), r(0.0), r(0.0), r(h)];
        let b = block(ComplexMatrix::outer(&bell, &bell));
        assert!((xform_concurrence(&b).unwrap() - 1.0).abs() < 1e-15);
        assert!((block_concurrence(&b).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn werner_like_x_state() {
        // p|Ψ-⟩⟨Ψ-| + (1-p) I/4 has concurrence max(0, (3p-1)/2).
        for &p in &[0.1, 1.0 / 3.0, 0.5, 0.9] {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let psi = [r(0.0), r(h), r(-h), r(0.0)];
            let mut m = ComplexMatrix::outer(&psi, &psi).scale(r(p));
            for k in 0..4 {
                m[(k, k)] += r((1.0 - p) / 4.0);
            }
            let b = block(m);
            let expected = ((3.0 * p - 1.0) / 2.0).max(0.0);
            assert!((xform_concurrence(&b).unwrap() - expected).abs() < 1e-14);
            assert!((block_concurrence(&b).unwrap() - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn extract_block_uniform_state() {
        let d = QuditDim::new(3).unwrap();
        let rho = DensityMatrix::new(d, ComplexMatrix::identity(6).scale(r(1.0 / 6.0))).unwrap();
        for pair in d.pairs() {
            let b = extract_block(&rho, pair).unwrap();
            assert!(b.mat.max_abs_diff(&ComplexMatrix::identity(4).scale(r(1.0 / 6.0))) < 1e-16);
            assert!((b.mat.trace().re - 2.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn extract_block_rejects_foreign_pair() {
        let d3 = QuditDim::new(3).unwrap();
        let rho = DensityMatrix::new(d3, ComplexMatrix::identity(6).scale(r(1.0 / 6.0))).unwrap();
        let pair = BlockPair::new(2, 4, QuditDim::new(5).unwrap()).unwrap();
        assert!(matches!(extract_block(&rho, pair), Err(Error::InvalidPair { .. })));
    }

    #[test]
    fn product_state_bound_is_zero() {
        let d = QuditDim::new(4).unwrap();
        let qubit = [r(0.6), Complex64::new(0.0, 0.8)];
        let qudit = [r(0.5), r(-0.5), Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.5)];
        let psi: Vec<Complex64> = qubit.iter().flat_map(|a| qudit.iter().map(move |b| a * b)).collect();
        let report = c_db_partition(&DensityMatrix::from_pure(d, &psi).unwrap()).unwrap();
        assert_eq!(report.route, Route::Partition);
        assert!(report.c_db < 1e-7, "{}", report.c_db);
    }

    #[test]
    fn report_sorts_pairs() {
        let d = QuditDim::new(3).unwrap();
        let p01 = BlockPair::new(0, 1, d).unwrap();
        let p12 = BlockPair::new(1, 2, d).unwrap();
        let report = BoundReport::new(vec![(p12, 0.3), (p01, 0.4)], Route::Full).unwrap();
        assert_eq!(report.per_pair[0].0, p01);
        assert!((report.c_db - 0.5).abs() < 1e-15);
        assert_eq!(report.concurrence(p12), Some(0.3));
    }
}
