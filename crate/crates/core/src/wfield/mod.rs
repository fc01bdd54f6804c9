//! Polynomials and rational functions in one complex variable `λ`.

mod poly;
mod rational;
mod roots;

use std::fmt;
use std::ops::Add;

use thiserror::Error;

pub use poly::{Poly, TRIM_TOL};
pub use rational::{Eval, RationalFn};
pub use roots::{poly_roots, poly_roots_with, RootError, RootOptions, SpectrumList};

/// Relative remainder tolerance for deciding that a gcd candidate divides.
pub const GCD_TOL: f64 = 1e-9;

/// Relative threshold for reporting a pole in [`RationalFn::eval`].
pub const EVAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
}

/// `deg(p) − deg(q)` for `p/q`; `NegInf` is reserved for the zero function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PiIndex {
    NegInf,
    Finite(i64),
}

impl PiIndex {
    pub fn finite(self) -> Option<i64> {
        match self {
            PiIndex::NegInf => None,
            PiIndex::Finite(k) => Some(k),
        }
    }
}

impl Add for PiIndex {
    type Output = PiIndex;
    fn add(self, rhs: PiIndex) -> PiIndex {
        match (self, rhs) {
            (PiIndex::Finite(a), PiIndex::Finite(b)) => PiIndex::Finite(a + b),
            _ => PiIndex::NegInf,
        }
    }
}

impl fmt::Display for PiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiIndex::NegInf => write!(f, "-inf"),
            PiIndex::Finite(k) => write!(f, "{k}"),
        }
    }
}
