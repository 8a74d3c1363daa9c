//! Errors of the exact-arithmetic kernel.

use std::fmt;

/// Failure modes of polynomial, rational-function and solver operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithError {
    /// gcd(0, 0) is undefined.
    BothZero,
    /// A rational function was constructed with a zero denominator.
    ZeroDenominator,
    /// Division of a rational function by zero.
    DivisionByZero,
    /// A substitution made a denominator identically zero.
    PoleHit,
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::BothZero => write!(f, "gcd of two zero polynomials is undefined"),
            ArithError::ZeroDenominator => write!(f, "denominator is the zero polynomial"),
            ArithError::DivisionByZero => write!(f, "division by the zero rational function"),
            ArithError::PoleHit => {
                write!(f, "substitution makes a denominator identically zero")
            }
        }
    }
}

impl std::error::Error for ArithError {}
