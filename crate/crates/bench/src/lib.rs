//! Benchmark fixtures shared by the criterion targets.

use qqpart::random::{ginibre_density, seeded_rng};
use qqpart::{DensityMatrix, QuditDim};

/// Seeded Ginibre states for one qudit dimension.
pub fn fixture_states(d: usize, count: usize, seed: u64) -> Vec<DensityMatrix> {
    let d = QuditDim::new(d).expect("d >= 2");
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|_| ginibre_density(d, &mut rng).expect("valid Ginibre state"))
        .collect()
}
