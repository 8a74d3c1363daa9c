//! Normalized rational functions in Q(n, k, x).
//!
//! Every value is kept in the unique canonical form: numerator and
//! denominator fully cancelled (gcd 1), denominator monic under the
//! canonical monomial order, zero represented as 0/1. Equality of canonical
//! forms is therefore structural equality, which is what makes identity
//! checks (a WZ residual being zero, two telescoping sides agreeing) a
//! simple comparison.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::ArithError;
use crate::gcd::gcd_inner;
use crate::poly::{MultiPoly, RatPoint, Var};
use crate::rational::BigRational;

/// A quotient of two polynomials in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    /// Canonicalize num/den: cancel the gcd and make the denominator monic.
    ///
    /// Errors with [`ArithError::ZeroDenominator`] when den = 0.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num: MultiPoly::zero(),
                den: MultiPoly::one(),
            });
        }
        let g = gcd_inner(&num, &den);
        let mut num = num.exact_div(&g).expect("gcd divides");
        let mut den = den.exact_div(&g).expect("gcd divides");
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if !lc.is_one() {
            let inv = BigRational::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction {
            num: MultiPoly::one(),
            den: MultiPoly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        RationalFunction {
            num: MultiPoly::constant(c),
            den: MultiPoly::one(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(crate::rational::rat(v))
    }

    pub fn var(v: Var) -> Self {
        RationalFunction {
            num: MultiPoly::var(v),
            den: MultiPoly::one(),
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value is a polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_free_of(&self, v: Var) -> bool {
        self.num.is_free_of(v) && self.den.is_free_of(v)
    }

    pub fn div(&self, rhs: &RationalFunction) -> Result<RationalFunction, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn inv(&self) -> Result<RationalFunction, ArithError> {
        RationalFunction::one().div(self)
    }

    /// Integer power; negative exponents invert, which fails on zero.
    pub fn pow_i(&self, e: i64) -> Result<RationalFunction, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RationalFunction::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Substitute rational functions for variables; unbound variables pass
    /// through. Errors with [`ArithError::PoleHit`] when the substituted
    /// denominator is identically zero.
    pub fn substitute(
        &self,
        bindings: &[(Var, RationalFunction)],
    ) -> Result<RationalFunction, ArithError> {
        let num = compose(&self.num, bindings);
        let den = compose(&self.den, bindings);
        if den.is_zero() {
            return Err(ArithError::PoleHit);
        }
        num.div(&den)
    }

    /// Substitute exact integer values for n and k, leaving x symbolic.
    pub fn at_lattice(&self, n: i64, k: i64) -> Result<RationalFunction, ArithError> {
        self.substitute(&[
            (Var::N, RationalFunction::from_int(n)),
            (Var::K, RationalFunction::from_int(k)),
        ])
    }

    /// Evaluate at an exact rational point; None when the denominator
    /// vanishes there.
    pub fn eval(&self, at: &RatPoint) -> Option<BigRational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(at) / d)
    }
}

/// Evaluate a polynomial at rational-function images of its variables.
fn compose(p: &MultiPoly, bindings: &[(Var, RationalFunction)]) -> RationalFunction {
    let image = |v: Var| -> RationalFunction {
        bindings
            .iter()
            .find(|(bv, _)| *bv == v)
            .map(|(_, f)| f.clone())
            .unwrap_or_else(|| RationalFunction::var(v))
    };
    let mut powers: Vec<Vec<RationalFunction>> = Vec::with_capacity(3);
    for v in Var::ALL {
        let max_e = p.degree_in(v).unwrap_or(0);
        let base = image(v);
        let mut pows = Vec::with_capacity(max_e as usize + 1);
        pows.push(RationalFunction::one());
        for e in 1..=max_e {
            let next = &pows[(e - 1) as usize] * &base;
            pows.push(next);
        }
        powers.push(pows);
    }
    let mut acc = RationalFunction::zero();
    for (m, c) in p.terms() {
        let mut term = RationalFunction::constant(c.clone());
        for v in Var::ALL {
            let e = m.exp(v);
            if e > 0 {
                term = &term * &powers[v as usize][e as usize];
            }
        }
        acc = &acc + &term;
    }
    acc
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalFunction::new(num, den).expect("product of nonzero denominators is nonzero")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalFunction::new(num, den).expect("product of nonzero denominators is nonzero")
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &self.num * &rhs.num;
        let den = &self.den * &rhs.den;
        RationalFunction::new(num, den).expect("product of nonzero denominators is nonzero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl From<MultiPoly> for RationalFunction {
    fn from(p: MultiPoly) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    /// Canonical rendering: plain polynomial text when the denominator is 1,
    /// otherwise `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
