//! Lower bounds on the concurrence and entanglement of formation of
//! qubit-qudit (2×d) mixed states.
//!
//! Two interchangeable routes compute the same pairwise concurrences
//! `C_ij`, one per pair of qudit levels:
//!
//! - [`spinflip::c_db_full`] uses 2d×2d spin-flip matrices `S^ij` on the
//!   whole space;
//! - [`partition::c_db_partition`] cuts ρ into d(d-1)/2 embedded two-qubit
//!   4×4 blocks and applies the ordinary two-qubit spin flip to each, with
//!   a closed form for X-shaped blocks.
//!
//! The root-sum-square `C_db = √(Σ C_ij²)` bounds the concurrence from
//! below, and `h((1 + √(1 - C_db²))/2)` bounds the entanglement of
//! formation. [`tcsim`] builds the two-atom Tavis-Cummings example whose
//! atom-cavity state exercises both routes.
//!
//! ```
//! use qqpart::{c_db_partition, DensityMatrix, QuditDim};
//! use num_complex::Complex64;
//!
//! let d = QuditDim::new(3).unwrap();
//! let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
//! let zero = Complex64::new(0.0, 0.0);
//! // (|0,0⟩ + |1,1⟩)/√2
//! let rho = DensityMatrix::from_pure(d, &[h, zero, zero, zero, h, zero]).unwrap();
//! let report = c_db_partition(&rho).unwrap();
//! assert!((report.c_db - 1.0).abs() < 1e-12);
//! ```

pub mod error;
pub mod matcore;
pub mod partition;
pub mod propagator;
pub mod random;
pub mod spinflip;
pub mod state;
pub mod tcsim;
pub mod verify;

pub use error::{Error, Result};
pub use matcore::{ComplexMatrix, EigenSpectrum, DEFAULT_TOL};
pub use num_complex::Complex64;
pub use partition::{
    block_concurrence, c_db_partition, eof_from_concurrence, extract_block, is_x_form, xform_concurrence,
    BoundReport, Route, TwoQubitBlock,
};
pub use spinflip::{build_s_2q, build_s_full, c_db_full, lambda_spectrum, pair_concurrence};
pub use state::{BlockPair, DensityMatrix, QuditDim};
pub use tcsim::{ReducedState, TCAmplitudes, TCParams};
