//! Seeded verification suites over both concurrence routes and the
//! Tavis-Cummings example.
//!
//! Each suite reports the largest deviation it observed against a fixed
//! tolerance. Results depend only on the configuration, never on timing.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::matcore::{multiply, ComplexMatrix};
use crate::partition::{block_concurrence, c_db_partition, extract_block, is_x_form, xform_concurrence, TwoQubitBlock, X_FORM_TOL};
use crate::propagator::{propagate_amplitudes, DEFAULT_STEP};
use crate::random::{ginibre_density, haar_pure_state, random_separable, random_x_state, seeded_rng};
use crate::spinflip::c_db_full;
use crate::state::{BlockPair, DensityMatrix, QuditDim};
use crate::tcsim::patterns::patterns_for;
use crate::tcsim::{amplitudes, c_ac_qutrit_closed, c_b5_closed, reduced_state, tau_to_gt, TCParams};

pub const ROUTE_PAIR_TOL: f64 = 1e-8;
pub const ROUTE_CDB_TOL: f64 = 1e-10;
pub const PURE_SATURATION_TOL: f64 = 1e-8;
pub const SEPARABLE_TOL: f64 = 1e-7;
pub const XFORM_TOL: f64 = 1e-9;
pub const PROPAGATOR_TOL: f64 = 1e-6;
pub const BLOCK_TOL: f64 = 1e-12;
pub const CLOSED_FORM_TOL: f64 = 1e-9;

/// Points on the τ grids for the figure settings.
pub const FIGURE_GRID_POINTS: usize = 201;
/// τ range of the n = 0 figure.
pub const QUTRIT_TAU_MAX: f64 = 2.0;
/// τ range of the n = 2 figure.
pub const QUDIT5_TAU_MAX: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Random draws per qudit dimension.
    pub trials: usize,
    pub d_list: Vec<usize>,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            trials: 100,
            d_list: vec![3, 4, 5],
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checks: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.max_deviation < self.tolerance
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} checks={:<6} max_dev={:.3e} tol={:.0e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checks,
            self.max_deviation,
            self.tolerance
        )
    }
}

/// Running maximum of |deviation| over a suite; NaN counts as a failure.
#[derive(Debug, Default)]
struct Tracker {
    checks: usize,
    worst: f64,
}

impl Tracker {
    fn record(&mut self, deviation: f64) {
        self.checks += 1;
        let deviation = if deviation.is_nan() { f64::INFINITY } else { deviation.abs() };
        self.worst = self.worst.max(deviation);
    }

    fn finish(self, name: &'static str, tolerance: f64) -> SuiteOutcome {
        SuiteOutcome {
            name,
            checks: self.checks,
            max_deviation: self.worst,
            tolerance,
        }
    }
}

/// Independent per-suite seeds so suites can be run separately.
fn suite_rng(seed: u64, salt: u64) -> crate::random::StateRng {
    seeded_rng(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn dims(config: &VerifyConfig) -> Result<Vec<QuditDim>> {
    config.d_list.iter().map(|&d| QuditDim::new(d)).collect()
}

/// Evenly spaced grid of `points` values on `[0, max]`.
pub fn grid(max: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points).map(|k| max * k as f64 / (points - 1) as f64).collect(),
    }
}

/// Full vs partition route on Ginibre states: per-pair and aggregate
/// deviations.
pub fn route_equivalence(config: &VerifyConfig) -> Result<(SuiteOutcome, SuiteOutcome)> {
    let mut rng = suite_rng(config.seed, 1);
    let mut pairs = Tracker::default();
    let mut totals = Tracker::default();
    for d in dims(config)? {
        for _ in 0..config.trials {
            let rho = ginibre_density(d, &mut rng)?;
            let full = c_db_full(&rho)?;
            let part = c_db_partition(&rho)?;
            for (&(_, a), &(_, b)) in full.per_pair.iter().zip(&part.per_pair) {
                pairs.record(a - b);
            }
            totals.record(full.c_db - part.c_db);
        }
    }
    Ok((
        pairs.finish("route-equivalence/pairs", ROUTE_PAIR_TOL),
        totals.finish("route-equivalence/c_db", ROUTE_CDB_TOL),
    ))
}

/// Purity of the qubit reduction computed straight from amplitudes.
pub fn qubit_purity(psi: &[Complex64], d: usize) -> f64 {
    let mut purity = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            let entry: Complex64 = (0..d).map(|k| psi[a * d + k] * psi[b * d + k].conj()).sum();
            purity += entry.norm_sqr();
        }
    }
    purity
}

/// Pure states: `C_db = √(2(1 - Tr ρ_A²))`.
pub fn pure_state_saturation(config: &VerifyConfig) -> Result<SuiteOutcome> {
    let mut rng = suite_rng(config.seed, 2);
    let mut t = Tracker::default();
    for d in dims(config)? {
        for _ in 0..config.trials {
            let psi = haar_pure_state(d.joint(), &mut rng);
            let expected = (2.0 * (1.0 - qubit_purity(&psi, d.get()))).max(0.0).sqrt();
            let rho = DensityMatrix::from_pure(d, &psi)?;
            t.record(c_db_partition(&rho)?.c_db - expected);
            t.record(c_db_full(&rho)?.c_db - expected);
        }
    }
    Ok(t.finish("pure-state-saturation", PURE_SATURATION_TOL))
}

/// Separable mixtures must give `C_db ≈ 0`.
pub fn separable_zero(config: &VerifyConfig) -> Result<SuiteOutcome> {
    let mut rng = suite_rng(config.seed, 3);
    let mut t = Tracker::default();
    for d in dims(config)? {
        for _ in 0..config.trials {
            let rho = random_separable(d, &mut rng)?;
            t.record(c_db_partition(&rho)?.c_db);
        }
    }
    Ok(t.finish("separable-zero", SEPARABLE_TOL))
}

/// Records |closed form - spectrum| when the block is X shaped; returns
/// whether it was.
fn check_x_block(block: &TwoQubitBlock, t: &mut Tracker) -> Result<bool> {
    if !is_x_form(block, X_FORM_TOL) {
        return Ok(false);
    }
    t.record(xform_concurrence(block)? - block_concurrence(block)?);
    Ok(true)
}

/// Figure settings: (n, τ_max).
pub const FIGURE_SETTINGS: [(u32, f64); 2] = [(0, QUTRIT_TAU_MAX), (2, QUDIT5_TAU_MAX)];

/// Closed-form X concurrence vs spectrum on every X block of the figure
/// grids, plus random X states.
pub fn xform_consistency(config: &VerifyConfig) -> Result<SuiteOutcome> {
    let mut t = Tracker::default();
    for (n, tau_max) in FIGURE_SETTINGS {
        for tau in grid(tau_max, FIGURE_GRID_POINTS) {
            let red = reduced_state(&TCParams::balanced(n, tau_to_gt(tau, n)?))?;
            for pair in red.d.pairs() {
                check_x_block(&extract_block(&red.rho_ac, pair)?, &mut t)?;
            }
        }
    }
    let mut rng = suite_rng(config.seed, 4);
    let d = QuditDim::new(2)?;
    for _ in 0..config.trials {
        let block = TwoQubitBlock {
            pair: BlockPair::new(0, 1, d)?,
            mat: random_x_state(&mut rng),
            parent_d: d,
        };
        check_x_block(&block, &mut t)?;
    }
    Ok(t.finish("x-form-consistency", XFORM_TOL))
}

/// Closed-form amplitudes vs RK4 integration, n ∈ {0,1,2,3}, 101 samples of
/// g·t on [0, 10].
pub fn propagator_oracle(config: &VerifyConfig) -> Result<SuiteOutcome> {
    let mut rng = suite_rng(config.seed, 5);
    let samples = grid(10.0, 101);
    let mut t = Tracker::default();
    for n in 0..=3 {
        // One balanced and one random complex initial state per n.
        let theta: f64 = rng.random_range(0.0..std::f64::consts::FRAC_PI_2);
        let phase: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let random = (
            Complex64::new(theta.cos(), 0.0),
            Complex64::from_polar(theta.sin(), phase),
        );
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        for (alpha, beta) in [(h, h), random] {
            let numeric = propagate_amplitudes(alpha, beta, n, &samples, DEFAULT_STEP)?;
            for (&gt, num) in samples.iter().zip(&numeric) {
                let closed = amplitudes(&TCParams::with_tolerance(alpha, beta, n, gt, 1e-12)?);
                for (a, b) in closed.as_array().iter().zip(num.as_array()) {
                    t.record((a - b).norm());
                }
            }
        }
    }
    Ok(t.finish("propagator-oracle", PROPAGATOR_TOL))
}

/// Extracted blocks vs the symbolic patterns on a 21-point g·t grid.
pub fn block_reproduction() -> Result<SuiteOutcome> {
    let mut t = Tracker::default();
    for n in [0, 2] {
        let patterns = patterns_for(n).expect("tabulated photon number");
        for gt in grid(10.0, 21) {
            let p = TCParams::balanced(n, gt);
            let a = amplitudes(&p);
            let red = reduced_state(&p)?;
            for pattern in patterns {
                let pair = BlockPair::new(pattern.pair.0, pattern.pair.1, red.d)?;
                let block = extract_block(&red.rho_ac, pair)?;
                t.record(block.mat.max_abs_diff(&pattern.evaluate(&a)));
            }
        }
    }
    Ok(t.finish("block-reproduction", BLOCK_TOL))
}

/// Printed closed forms vs the partition pipeline on the figure grids.
pub fn closed_form_agreement() -> Result<SuiteOutcome> {
    let mut t = Tracker::default();
    for (n, tau_max) in FIGURE_SETTINGS {
        for tau in grid(tau_max, FIGURE_GRID_POINTS) {
            let p = TCParams::balanced(n, tau_to_gt(tau, n)?);
            let a = amplitudes(&p);
            let closed = if n == 0 { c_ac_qutrit_closed(&a) } else { c_b5_closed(&a) };
            let pipeline = c_db_partition(&reduced_state(&p)?.rho_ac)?.c_db;
            t.record(closed - pipeline);
        }
    }
    Ok(t.finish("closed-form-agreement", CLOSED_FORM_TOL))
}

/// Every suite in a fixed order.
pub fn run_all(config: &VerifyConfig) -> Result<Vec<SuiteOutcome>> {
    let (pairs, totals) = route_equivalence(config)?;
    Ok(vec![
        pairs,
        totals,
        pure_state_saturation(config)?,
        separable_zero(config)?,
        xform_consistency(config)?,
        propagator_oracle(config)?,
        block_reproduction()?,
        closed_form_agreement()?,
    ])
}

/// `(U ⊗ I_d) ρ (U ⊗ I_d)†` for a qubit unitary `u`.
pub fn apply_qubit_unitary(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<DensityMatrix> {
    let full = u.kron(&ComplexMatrix::identity(rho.d().get()));
    let m = multiply(&multiply(&full, rho.matrix())?, &full.adjoint())?;
    DensityMatrix::new(rho.d(), m)
}
