//! Exact rational scalars and big-integer combinatorics.
//!
//! All coefficients in this crate are arbitrary-precision rationals
//! ([`BigRational`]). The re-exported type keeps the usual canonical form:
//! positive denominator, fully reduced, zero stored as 0/1. Binomial
//! coefficients are computed from big-integer factorials so they stay exact
//! at any size.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_bigint::BigInt as Integer;
pub use num_rational::BigRational;

/// Shorthand for a rational from an integer.
pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Shorthand for the rational p/q. Panics if q = 0.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parse an exact rational literal: either "p" or "p/q" in base 10.
pub fn parse_rational(src: &str) -> Option<BigRational> {
    let src = src.trim();
    match src.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => {
            let p: BigInt = src.parse().ok()?;
            Some(BigRational::from_integer(p))
        }
    }
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient C(n, k) computed as n! / (k! (n-k)!).
///
/// Exact at any size; C(n, k) = 0 when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Generalized binomial C(a, b) for signed integers.
///
/// Defined as a(a-1)...(a-b+1)/b! for b >= 0 and as 0 for b < 0, so it
/// agrees with the usual convention for negative upper arguments.
pub fn binomial_signed(a: &BigInt, b: &BigInt) -> BigInt {
    if b.is_negative() {
        return BigInt::zero();
    }
    let b = b.to_u64().expect("binomial lower argument out of range");
    let mut num = BigInt::one();
    let mut i = BigInt::zero();
    for _ in 0..b {
        num *= a - &i;
        i += 1;
    }
    num / factorial(b)
}
