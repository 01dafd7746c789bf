//! Numerical Tavis-Cummings propagation, independent of the closed-form
//! amplitudes.
//!
//! The Hamiltonian `H = g[(σ_A + σ_B) a† + (σ_A† + σ_B†) a]` (g = 1, ħ = 1)
//! is assembled on A ⊗ B ⊗ Fock{0..=n+2} and the Schrödinger equation
//! `dψ/dt = -i H ψ` is stepped with classical fourth-order Runge-Kutta.
//! The six amplitudes are then read off the evolved vector.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::Result;
use crate::matcore::ComplexMatrix;
use crate::tcsim::TCAmplitudes;

/// Default RK4 step in units of g·t.
pub const DEFAULT_STEP: f64 = 1e-3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Basis index of `|a⟩_A |b⟩_B |f⟩_C` with `fock_levels` cavity states.
fn index(a: usize, b: usize, f: usize, fock_levels: usize) -> usize {
    (2 * a + b) * fock_levels + f
}

/// Tavis-Cummings Hamiltonian with g = 1 on a truncated Fock space.
/// Atomic `|1⟩` is excited; `σ` lowers it.
pub fn tc_hamiltonian(fock_levels: usize) -> ComplexMatrix {
    let dim = 4 * fock_levels;
    let mut h = ComplexMatrix::zeros(dim, dim);
    for a in 0..2 {
        for b in 0..2 {
            for f in 0..fock_levels {
                let from = index(a, b, f, fock_levels);
                // σ_x a†: atom x goes 1 → 0, photon added
                if f + 1 < fock_levels {
                    let amp = Complex64::new(((f + 1) as f64).sqrt(), 0.0);
                    if a == 1 {
                        h[(index(0, b, f + 1, fock_levels), from)] += amp;
                    }
                    if b == 1 {
                        h[(index(a, 0, f + 1, fock_levels), from)] += amp;
                    }
                }
                // σ_x† a: atom x goes 0 → 1, photon removed
                if f > 0 {
                    let amp = Complex64::new((f as f64).sqrt(), 0.0);
                    if a == 0 {
                        h[(index(1, b, f - 1, fock_levels), from)] += amp;
                    }
                    if b == 0 {
                        h[(index(a, 1, f - 1, fock_levels), from)] += amp;
                    }
                }
            }
        }
    }
    h
}

fn derivative(h: &ComplexMatrix, psi: &[Complex64]) -> Vec<Complex64> {
    let minus_i = Complex64::new(0.0, -1.0);
    h.apply(psi).expect("square Hamiltonian").into_iter().map(|z| minus_i * z).collect()
}

fn axpy(y: &[Complex64], x: &[Complex64], s: f64) -> Vec<Complex64> {
    y.iter().zip(x).map(|(a, b)| a + b * s).collect()
}

/// One classical RK4 step of size `dt`.
pub fn rk4_step(h: &ComplexMatrix, psi: &[Complex64], dt: f64) -> Vec<Complex64> {
    let k1 = derivative(h, psi);
    let k2 = derivative(h, &axpy(psi, &k1, dt / 2.0));
    let k3 = derivative(h, &axpy(psi, &k2, dt / 2.0));
    let k4 = derivative(h, &axpy(psi, &k3, dt));
    psi.iter()
        .enumerate()
        .map(|(i, &z)| z + (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (dt / 6.0))
        .collect()
}

/// Integrates from g·t = 0 through each (ascending) sample time and
/// returns the amplitudes c1..c6 at every sample.
pub fn propagate_amplitudes(
    alpha: Complex64,
    beta: Complex64,
    n: u32,
    samples: &[f64],
    max_step: f64,
) -> Result<Vec<TCAmplitudes>> {
    let n = n as usize;
    let fock_levels = n + 3;
    let h = tc_hamiltonian(fock_levels);
    let mut psi = vec![ZERO; 4 * fock_levels];
    psi[index(0, 0, n, fock_levels)] = alpha;
    psi[index(1, 1, n, fock_levels)] = beta;

    let read = |psi: &[Complex64]| {
        let at = |a: usize, b: usize, f: Option<usize>| f.map_or(ZERO, |f| psi[index(a, b, f, fock_levels)]);
        let plus = |f: Option<usize>| (at(1, 0, f) + at(0, 1, f)) * FRAC_1_SQRT_2;
        TCAmplitudes {
            c1: at(0, 0, Some(n + 2)),
            c2: plus(Some(n + 1)),
            c3: at(1, 1, Some(n)),
            c4: at(0, 0, Some(n)),
            c5: plus(n.checked_sub(1)),
            c6: at(1, 1, n.checked_sub(2)),
        }
    };

    let mut t = 0.0;
    let mut out = Vec::with_capacity(samples.len());
    for &target in samples {
        let span = target - t;
        if span > 0.0 {
            let steps = (span / max_step).ceil() as usize;
            let dt = span / steps as f64;
            for _ in 0..steps {
                psi = rk4_step(&h, &psi, dt);
            }
            t = target;
        }
        out.push(read(&psi));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamiltonian_is_hermitian_and_conserves_excitations() {
        let fock = 4;
        let h = tc_hamiltonian(fock);
        assert_eq!(h.hermiticity_deviation(), 0.0);
        let excitations = |k: usize| {
            let (ab, f) = (k / fock, k % fock);
            (ab >> 1) + (ab & 1) + f
        };
        for r in 0..16 {
            for c in 0..16 {
                if h[(r, c)] != ZERO {
                    assert_eq!(excitations(r), excitations(c));
                }
            }
        }
    }

    #[test]
    fn single_excitation_rabi_oscillation() {
        // n = 1, α = 1: |00⟩|1⟩ ↔ |+⟩|0⟩ at frequency √2.
        let one = Complex64::new(1.0, 0.0);
        let gt = 0.8;
        let amps = propagate_amplitudes(one, ZERO, 1, &[gt], 1e-3).unwrap();
        let expected = (2f64.sqrt() * gt).cos();
        assert!((amps[0].c4.re - expected).abs() < 1e-9);
    }
}
