//! Two-atom Tavis-Cummings evolution and the atom-cavity reduced state.
//!
//! Atoms A and B couple resonantly to one cavity mode, starting from
//! `(α|0_A 0_B⟩ + β|1_A 1_B⟩)|n_C⟩`. The excitation number is conserved, so
//! the state at time t is fixed by six amplitudes:
//!
//! ```text
//! |ψ(t)⟩ = c1 |00⟩|n+2⟩ + c2 |+⟩|n+1⟩ + c3 |11⟩|n⟩
//!        + c4 |00⟩|n⟩   + c5 |+⟩|n-1⟩ + c6 |11⟩|n-2⟩,   |+⟩ = (|10⟩ + |01⟩)/√2
//! ```
//!
//! Tracing out atom B leaves a qubit (A) ⊗ qudit (C) state with d = 3, 4, 5
//! cavity levels for n = 0, 1, ≥ 2. Cavity index 0 is Fock level
//! `max(n - 2, 0)`. We use ħ = 1, so time enters only as g·t.

pub mod patterns;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::ComplexMatrix;
use crate::state::{DensityMatrix, QuditDim};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Tolerance on |α|² + |β|² = 1.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Initial-state amplitudes, photon number and evolution time g·t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TCParams {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub n: u32,
    pub gt: f64,
}

impl TCParams {
    pub fn new(alpha: Complex64, beta: Complex64, n: u32, gt: f64) -> Result<Self> {
        Self::with_tolerance(alpha, beta, n, gt, NORMALIZATION_TOL)
    }

    pub fn with_tolerance(alpha: Complex64, beta: Complex64, n: u32, gt: f64, tol: f64) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > tol || !gt.is_finite() {
            return Err(Error::Unnormalized { norm });
        }
        Ok(Self { alpha, beta, n, gt })
    }

    /// α = β = 1/√2, the setting of both figures.
    pub fn balanced(n: u32, gt: f64) -> Self {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self {
            alpha: h,
            beta: h,
            n,
            gt,
        }
    }
}

/// The six amplitudes c1..c6.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TCAmplitudes {
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
    pub c4: Complex64,
    pub c5: Complex64,
    pub c6: Complex64,
}

impl TCAmplitudes {
    pub fn as_array(&self) -> [Complex64; 6] {
        [self.c1, self.c2, self.c3, self.c4, self.c5, self.c6]
    }

    /// `c_k` for k in 1..=6.
    pub fn get(&self, k: usize) -> Complex64 {
        self.as_array()[k - 1]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.as_array().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Closed-form amplitudes at time g·t.
///
/// For n = 0 the α branch never leaves `|00⟩|0⟩`: c4 = α and c5 = c6 = 0.
pub fn amplitudes(p: &TCParams) -> TCAmplitudes {
    let n = f64::from(p.n);

    // β branch: |11⟩|n⟩ ↔ |+⟩|n+1⟩ ↔ |00⟩|n+2⟩
    let k = 2.0 * n + 3.0;
    let phase = (2.0 * k).sqrt() * p.gt;
    let one_minus_cos = 1.0 - phase.cos();
    let c1 = -p.beta * (((n + 1.0) * (n + 2.0)).sqrt() / k * one_minus_cos);
    let c2 = -I * p.beta * ((n + 1.0).sqrt() / k.sqrt() * phase.sin());
    let c3 = p.beta * (1.0 - (n + 1.0) / k * one_minus_cos);

    // α branch: |00⟩|n⟩ ↔ |+⟩|n-1⟩ ↔ |11⟩|n-2⟩
    let (c4, c5, c6) = if p.n == 0 {
        (p.alpha, ZERO, ZERO)
    } else {
        let k = 2.0 * n - 1.0;
        let phase = (2.0 * k).sqrt() * p.gt;
        let one_minus_cos = 1.0 - phase.cos();
        (
            p.alpha * (1.0 - n / k * one_minus_cos),
            -I * p.alpha * (n.sqrt() / k.sqrt() * phase.sin()),
            -p.alpha * ((n * (n - 1.0)).sqrt() / k * one_minus_cos),
        )
    };

    TCAmplitudes { c1, c2, c3, c4, c5, c6 }
}

/// Cavity levels retained: 3, 4, 5 for n = 0, 1, ≥ 2.
pub fn cavity_dim(n: u32) -> usize {
    match n {
        0 => 3,
        1 => 4,
        _ => 5,
    }
}

/// Fock number stored at cavity index 0.
pub fn level_offset(n: u32) -> u32 {
    n.saturating_sub(2)
}

/// Pure A⊗B⊗C state vector of length 4d; component `(a, b, k)` sits at
/// `(2a + b)·d + k`, with cavity index k holding Fock level
/// `k + level_offset(n)`.
pub fn build_state(a: &TCAmplitudes, n: u32) -> Vec<Complex64> {
    let d = cavity_dim(n);
    let offset = i64::from(level_offset(n));
    let n = i64::from(n);
    let mut psi = vec![ZERO; 4 * d];
    let mut put = |atom_a: usize, atom_b: usize, fock: i64, amp: Complex64| {
        let k = fock - offset;
        if (0..d as i64).contains(&k) {
            psi[(2 * atom_a + atom_b) * d + k as usize] += amp;
        } else {
            debug_assert!(amp == ZERO, "amplitude outside the retained cavity space");
        }
    };
    let split = FRAC_1_SQRT_2;
    put(0, 0, n + 2, a.c1);
    put(1, 0, n + 1, a.c2 * split);
    put(0, 1, n + 1, a.c2 * split);
    put(1, 1, n, a.c3);
    put(0, 0, n, a.c4);
    put(1, 0, n - 1, a.c5 * split);
    put(0, 1, n - 1, a.c5 * split);
    put(1, 1, n - 2, a.c6);
    psi
}

/// Atom-cavity state after tracing out atom B.
#[derive(Debug, Clone)]
pub struct ReducedState {
    pub d: QuditDim,
    pub rho_ac: DensityMatrix,
    pub level_offset: u32,
}

/// `ρ_AC = Σ_b ⟨b_B|ψ⟩⟨ψ|b_B⟩` in the basis `|α_A, k_C⟩ ↦ α·d + k`.
pub fn reduce_over_b(psi: &[Complex64], n: u32) -> Result<ReducedState> {
    let d = cavity_dim(n);
    if psi.len() != 4 * d {
        return Err(Error::DimensionMismatch {
            left_rows: psi.len(),
            left_cols: 1,
            right_rows: 4 * d,
            right_cols: 1,
        });
    }
    let amp = |a: usize, b: usize, k: usize| psi[(2 * a + b) * d + k];
    let rho = ComplexMatrix::from_fn(2 * d, 2 * d, |row, col| {
        let (a, k) = (row / d, row % d);
        let (a2, k2) = (col / d, col % d);
        (0..2).map(|b| amp(a, b, k) * amp(a2, b, k2).conj()).sum()
    });
    let qd = QuditDim::new(d)?;
    Ok(ReducedState {
        d: qd,
        rho_ac: DensityMatrix::new(qd, rho)?,
        level_offset: level_offset(n),
    })
}

/// Amplitudes, state vector and reduction in one step.
pub fn reduced_state(p: &TCParams) -> Result<ReducedState> {
    reduce_over_b(&build_state(&amplitudes(p), p.n), p.n)
}

/// Closed-form qutrit bound (n = 0):
/// `√(2[|c1 c2|² + (|c2 c4| - |c2 c3|)²])`.
pub fn c_ac_qutrit_closed(a: &TCAmplitudes) -> f64 {
    let m = |z: Complex64| z.norm();
    let (c1, c2, c3, c4) = (m(a.c1), m(a.c2), m(a.c3), m(a.c4));
    (2.0 * ((c1 * c2).powi(2) + (c2 * c4 - c2 * c3).powi(2))).sqrt()
}

/// Closed-form d = 5 bound (n ≥ 2), every `c_k` taken by modulus.
pub fn c_b5_closed(a: &TCAmplitudes) -> f64 {
    let m = |z: Complex64| z.norm();
    let (c1, c2, c3, c4, c5, c6) = (m(a.c1), m(a.c2), m(a.c3), m(a.c4), m(a.c5), m(a.c6));
    let sum = (c2 * c3 - c2 * c4).powi(2)
        + (c3 * c5 - c4 * c5).powi(2)
        + (c1 * c2).powi(2)
        + (c1 * c5).powi(2)
        + (c2 * c6).powi(2)
        + (c5 * c6).powi(2);
    2f64.sqrt() * sum.sqrt()
}

/// Dimensionless time to g·t: `τ = √6 gt / 2π` for n = 0 and
/// `τ = √14 gt / 6π` for n = 2.
pub fn tau_to_gt(tau: f64, n: u32) -> Result<f64> {
    match n {
        0 => Ok(2.0 * PI * tau / 6f64.sqrt()),
        2 => Ok(6.0 * PI * tau / 14f64.sqrt()),
        other => Err(Error::UnsupportedTauConvention(other)),
    }
}

pub fn gt_to_tau(gt: f64, n: u32) -> Result<f64> {
    match n {
        0 => Ok(6f64.sqrt() * gt / (2.0 * PI)),
        2 => Ok(14f64.sqrt() * gt / (6.0 * PI)),
        other => Err(Error::UnsupportedTauConvention(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::c_db_partition;

    fn balanced(n: u32, gt: f64) -> TCParams {
        TCParams::balanced(n, gt)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn params_validation() {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        assert!(TCParams::new(h, h, 0, 1.0).is_ok());
        assert!(matches!(
            TCParams::new(h, Complex64::new(0.5, 0.0), 0, 1.0),
            Err(Error::Unnormalized { .. })
        ));
        assert!(TCParams::new(h, h, 0, f64::NAN).is_err());
    }

    #[test]
    fn amplitudes_at_time_zero() {
        let alpha = Complex64::new(0.6, 0.0);
        let beta = Complex64::new(0.0, 0.8);
        for n in 0..5 {
            let a = amplitudes(&TCParams::new(alpha, beta, n, 0.0).unwrap());
            assert_eq!(a.as_array(), [ZERO, ZERO, beta, alpha, ZERO, ZERO]);
        }
    }

    #[test]
    fn amplitudes_at_half_period_n0() {
        let beta = Complex64::new(0.8, 0.0);
        let alpha = Complex64::new(0.6, 0.0);
        let gt = PI / 6f64.sqrt();
        let a = amplitudes(&TCParams::new(alpha, beta, 0, gt).unwrap());
        assert!(close(a.c1, -beta * (2.0 * 2f64.sqrt() / 3.0), 1e-14));
        assert!(close(a.c2, ZERO, 1e-14));
        assert!(close(a.c3, beta / 3.0, 1e-14));
        assert_eq!(a.c4, alpha);
    }

    #[test]
    fn zero_amplitudes_by_photon_number() {
        for &gt in &[0.3, 1.7, 9.1] {
            let a0 = amplitudes(&balanced(0, gt));
            assert_eq!((a0.c5, a0.c6), (ZERO, ZERO));
            let a1 = amplitudes(&balanced(1, gt));
            assert_eq!(a1.c6.norm(), 0.0);
        }
    }

    #[test]
    fn state_layout() {
        let a = amplitudes(&balanced(2, 0.0));
        let psi = build_state(&a, 2);
        assert_eq!(psi.len(), 20);
        let h = FRAC_1_SQRT_2;
        // α|00⟩|2⟩ → index (0)·5 + 2; β|11⟩|2⟩ → index 3·5 + 2
        assert!((psi[2].re - h).abs() < 1e-16);
        assert!((psi[17].re - h).abs() < 1e-16);
        assert!(psi.iter().enumerate().all(|(k, z)| k == 2 || k == 17 || *z == ZERO));

        let a = amplitudes(&balanced(2, 0.77));
        let psi = build_state(&a, 2);
        let nonzero: Vec<usize> = (0..20).filter(|&k| psi[k] != ZERO).collect();
        // c1:|00,4⟩ c2:|10,3⟩,|01,3⟩ c3:|11,2⟩ c4:|00,2⟩ c5:|10,1⟩,|01,1⟩ c6:|11,0⟩
        assert_eq!(nonzero, vec![2, 4, 6, 8, 11, 13, 15, 17]);
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn n0_state_has_three_cavity_slots() {
        let psi = build_state(&amplitudes(&balanced(0, 1.3)), 0);
        assert_eq!(psi.len(), 12);
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reduction_at_time_zero_is_separable() {
        let red = reduced_state(&balanced(2, 0.0)).unwrap();
        assert_eq!(red.level_offset, 0);
        let m = red.rho_ac.matrix();
        let expected_nonzero = [(2, 2), (7, 7)];
        for r in 0..10 {
            for c in 0..10 {
                let v = m[(r, c)];
                if expected_nonzero.contains(&(r, c)) {
                    assert!((v.re - 0.5).abs() < 1e-15);
                } else {
                    assert_eq!(v, ZERO);
                }
            }
        }
        assert_eq!(c_db_partition(&red.rho_ac).unwrap().c_db, 0.0);
    }

    #[test]
    fn dims_and_offsets() {
        assert_eq!((cavity_dim(0), cavity_dim(1), cavity_dim(2), cavity_dim(7)), (3, 4, 5, 5));
        assert_eq!((level_offset(0), level_offset(1), level_offset(2), level_offset(6)), (0, 0, 0, 4));
        let red = reduced_state(&balanced(6, 0.4)).unwrap();
        assert_eq!((red.d.get(), red.level_offset), (5, 4));
    }

    #[test]
    fn reduce_rejects_wrong_length() {
        assert!(matches!(reduce_over_b(&[ZERO; 11], 0), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn tau_conversion() {
        assert!((tau_to_gt(1.0, 0).unwrap() - 2.565_099_660_323_728).abs() < 1e-14);
        assert!((tau_to_gt(1.0, 2).unwrap() - 5.037_755_725_088_142).abs() < 1e-14);
        assert_eq!(tau_to_gt(0.0, 0).unwrap(), 0.0);
        assert_eq!(tau_to_gt(0.0, 2).unwrap(), 0.0);
        assert_eq!(tau_to_gt(1.0, 1).unwrap_err(), Error::UnsupportedTauConvention(1));
        assert!((gt_to_tau(tau_to_gt(0.37, 2).unwrap(), 2).unwrap() - 0.37).abs() < 1e-15);
    }

    #[test]
    fn closed_forms_vanish() {
        let a = amplitudes(&balanced(0, 0.0));
        assert_eq!(c_ac_qutrit_closed(&a), 0.0);
        assert_eq!(c_b5_closed(&amplitudes(&balanced(2, 0.0))), 0.0);
        // sin term zero at a full β-branch period
        let a = amplitudes(&balanced(0, 2.0 * PI / 6f64.sqrt()));
        assert!(c_ac_qutrit_closed(&a) < 1e-15);
        let only_34 = TCAmplitudes {
            c1: ZERO,
            c2: ZERO,
            c3: Complex64::new(0.6, 0.0),
            c4: Complex64::new(0.0, 0.8),
            c5: ZERO,
            c6: ZERO,
        };
        assert_eq!(c_b5_closed(&only_34), 0.0);
    }

    #[test]
    fn closed_forms_match_pipeline_at_sample_times() {
        let gt = tau_to_gt(0.25, 0).unwrap();
        let p = balanced(0, gt);
        let pipeline = c_db_partition(&reduced_state(&p).unwrap().rho_ac).unwrap().c_db;
        assert!((pipeline - c_ac_qutrit_closed(&amplitudes(&p))).abs() < 1e-9);

        let gt = tau_to_gt(0.3, 2).unwrap();
        let p = balanced(2, gt);
        let pipeline = c_db_partition(&reduced_state(&p).unwrap().rho_ac).unwrap().c_db;
        assert!((pipeline - c_b5_closed(&amplitudes(&p))).abs() < 1e-9);
    }
}
