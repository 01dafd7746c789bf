//! Symbolic 4×4 blocks of the Tavis-Cummings reduced state.
//!
//! Each block is listed entry by entry as `coeff · c_k · conj(c_l)`, exactly
//! as the block appears when written out by hand for n = 0 (d = 3) and
//! n = 2 (d = 5). Entries not listed are zero. Evaluating a pattern on
//! computed amplitudes and comparing with the extracted block checks the
//! whole amplitude → state → partial trace → block chain.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::TCAmplitudes;
use crate::matcore::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coeff {
    One,
    Half,
    InvSqrt2,
}

impl Coeff {
    pub fn value(self) -> f64 {
        match self {
            Coeff::One => 1.0,
            Coeff::Half => 0.5,
            Coeff::InvSqrt2 => FRAC_1_SQRT_2,
        }
    }
}

/// Entry `(row, col) = coeff · c_k · conj(c_l)`.
#[derive(Debug, Clone, Copy)]
pub struct Term {
    pub row: usize,
    pub col: usize,
    pub coeff: Coeff,
    pub k: usize,
    pub l: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct BlockPattern {
    /// Initial photon number the pattern belongs to.
    pub n: u32,
    pub pair: (usize, usize),
    pub terms: &'static [Term],
}

impl BlockPattern {
    pub fn evaluate(&self, a: &TCAmplitudes) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(4, 4);
        for t in self.terms {
            m[(t.row, t.col)] += a.get(t.k) * a.get(t.l).conj() * Complex64::new(t.coeff.value(), 0.0);
        }
        m
    }
}

const fn t(row: usize, col: usize, coeff: Coeff, k: usize, l: usize) -> Term {
    Term { row, col, coeff, k, l }
}

use Coeff::{Half, InvSqrt2, One};

/// n = 0, d = 3: blocks (0,1), (0,2), (1,2).
pub const QUTRIT_BLOCKS: [BlockPattern; 3] = [
    BlockPattern {
        n: 0,
        pair: (0, 1),
        terms: &[
            t(0, 0, One, 4, 4),
            t(0, 3, InvSqrt2, 4, 2),
            t(1, 1, Half, 2, 2),
            t(1, 2, InvSqrt2, 2, 3),
            t(2, 1, InvSqrt2, 3, 2),
            t(2, 2, One, 3, 3),
            t(3, 0, InvSqrt2, 2, 4),
            t(3, 3, Half, 2, 2),
        ],
    },
    BlockPattern {
        n: 0,
        pair: (0, 2),
        terms: &[
            t(0, 0, One, 4, 4),
            t(0, 1, One, 4, 1),
            t(1, 0, One, 1, 4),
            t(1, 1, One, 1, 1),
            t(2, 2, One, 3, 3),
        ],
    },
    BlockPattern {
        n: 0,
        pair: (1, 2),
        terms: &[
            t(0, 0, Half, 2, 2),
            t(1, 1, One, 1, 1),
            t(1, 2, InvSqrt2, 1, 2),
            t(2, 1, InvSqrt2, 2, 1),
            t(2, 2, Half, 2, 2),
        ],
    },
];

/// n = 2, d = 5: all ten blocks in lexicographic pair order.
pub const QUDIT5_BLOCKS: [BlockPattern; 10] = [
    BlockPattern {
        n: 2,
        pair: (0, 1),
        terms: &[
            t(1, 1, Half, 5, 5),
            t(1, 2, InvSqrt2, 5, 6),
            t(2, 1, InvSqrt2, 6, 5),
            t(2, 2, One, 6, 6),
            t(3, 3, Half, 5, 5),
        ],
    },
    BlockPattern {
        n: 2,
        pair: (0, 2),
        terms: &[
            t(1, 1, One, 4, 4),
            t(2, 2, One, 6, 6),
            t(2, 3, One, 6, 3),
            t(3, 2, One, 3, 6),
            t(3, 3, One, 3, 3),
        ],
    },
    BlockPattern {
        n: 2,
        pair: (0, 3),
        terms: &[
            t(1, 1, Half, 2, 2),
            t(1, 2, InvSqrt2, 2, 6),
            t(2, 1, InvSqrt2, 6, 2),
            t(2, 2, One, 6, 6),
            t(3, 3, Half, 2, 2),
        ],
    },
    BlockPattern {
        n: 2,
        pair: (0, 4),
        terms: &[t(1, 1, One, 1, 1), t(2, 2, One, 6, 6)],
    },
    BlockPattern {
        n: 2,
        pair: (1, 2),
        terms: &[
            t(0, 0, Half, 5, 5),
            t(0, 3, InvSqrt2, 5, 3),
            t(1, 1, One, 4, 4),
            t(1, 2, InvSqrt2, 4, 5),
            t(2, 1, InvSqrt2, 5, 4),
            t(2, 2, Half, 5, 5),
            t(3, 0, InvSqrt2, 3, 5),
            t(3, 3, One, 3, 3),
        ],
    },
    BlockPattern {
        n: 2,
        pair: (1, 3),
        terms: &[
            t(0, 0, Half, 5, 5),
            t(0, 1, Half, 5, 2),
            t(1, 0, Half, 2, 5),
            t(1, 1, Half, 2, 2),
            t(2, 2, Half, 5, 5),
            t(2, 3, Half, 5, 2),
            t(3, 2, Half, 2, 5),
            t(3, 3, Half, 2, 2),
        ],
    },
    BlockPattern {
        n: 2,
        pair: (1, 4),
        terms: &[
            t(0, 0, Half, 5, 5),
            t(1, 1, One, 1, 1),
            t(1, 2, InvSqrt2, 1, 5),
            t(2, 1, InvSqrt2, 5, 1),
            t(2, 2, Half, 5, 5),
        ],
    },
    BlockPattern {
        n: 2,
        pair: (2, 3),
        terms: &[
            t(0, 0, One, 4, 4),
            t(0, 3, InvSqrt2, 4, 2),
            t(1, 1, Half, 2, 2),
            t(1, 2, InvSqrt2, 2, 3),
            t(2, 1, InvSqrt2, 3, 2),
            t(2, 2, One, 3, 3),
            t(3, 0, InvSqrt2, 2, 4),
            t(3, 3, Half, 2, 2),
        ],
    },
    BlockPattern {
        n: 2,
        pair: (2, 4),
        terms: &[
            t(0, 0, One, 4, 4),
            t(0, 1, One, 4, 1),
            t(1, 0, One, 1, 4),
            t(1, 1, One, 1, 1),
            t(2, 2, One, 3, 3),
        ],
    },
    BlockPattern {
        n: 2,
        pair: (3, 4),
        terms: &[
            t(0, 0, Half, 2, 2),
            t(1, 1, One, 1, 1),
            t(1, 2, InvSqrt2, 1, 2),
            t(2, 1, InvSqrt2, 2, 1),
            t(2, 2, Half, 2, 2),
        ],
    },
];

/// Patterns for photon number `n`, if tabulated (n = 0 or n = 2).
pub fn patterns_for(n: u32) -> Option<&'static [BlockPattern]> {
    match n {
        0 => Some(&QUTRIT_BLOCKS),
        2 => Some(&QUDIT5_BLOCKS),
        _ => None,
    }
}
