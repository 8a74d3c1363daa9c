//! Sparse multivariate polynomials in the fixed variable set {x, n, k}
//! over exact rationals.
//!
//! The canonical monomial order used everywhere is graded lexicographic
//! with variable precedence n > k > x: monomials compare first by total
//! degree, ties broken by the exponent of n, then k, then x. Polynomials
//! are stored as ordered term maps with no zero coefficients, so two
//! polynomials are equal iff their representations are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::BigRational;

/// The three variables of the polynomial ring, in canonical precedence
/// order n > k > x.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    N = 0,
    K = 1,
    X = 2,
}

impl Var {
    /// All variables in precedence order.
    pub const ALL: [Var; 3] = [Var::N, Var::K, Var::X];

    /// One-character variable name.
    pub fn symbol(self) -> char {
        match self {
            Var::N => 'n',
            Var::K => 'k',
            Var::X => 'x',
        }
    }
}

/// A power product n^a k^b x^c, stored as the exponent triple (a, b, c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u32; 3],
}

impl Monomial {
    /// The constant monomial 1.
    pub fn one() -> Self {
        Monomial { exps: [0, 0, 0] }
    }

    /// The monomial consisting of a single variable.
    pub fn var(v: Var) -> Self {
        let mut exps = [0, 0, 0];
        exps[v as usize] = 1;
        Monomial { exps }
    }

    /// Build from explicit exponents of n, k, x.
    pub fn new(n: u32, k: u32, x: u32) -> Self {
        Monomial { exps: [n, k, x] }
    }

    /// Exponent of one variable.
    pub fn exp(&self, v: Var) -> u32 {
        self.exps[v as usize]
    }

    /// Sum of all exponents.
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps == [0, 0, 0]
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: [
                self.exps[0] + other.exps[0],
                self.exps[1] + other.exps[1],
                self.exps[2] + other.exps[2],
            ],
        }
    }

    /// Exact quotient, or None when some exponent would go negative.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = [0u32; 3];
        for (e, (s, o)) in exps.iter_mut().zip(self.exps.iter().zip(&other.exps)) {
            *e = s.checked_sub(*o)?;
        }
        Some(Monomial { exps })
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial {
            exps: [self.exps[0] * e, self.exps[1] * e, self.exps[2] * e],
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // graded lex, n > k > x
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.symbol())?;
            } else {
                write!(f, "{}^{}", v.symbol(), e)?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial in Q[n, k, x], kept in canonical form: the term map
/// never stores a zero coefficient and the zero polynomial is the empty map.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(crate::rational::rat(v))
    }

    pub fn var(v: Var) -> Self {
        Self::from_monomial(Monomial::var(v), BigRational::one())
    }

    pub fn from_monomial(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// Sum of (monomial, coefficient) pairs; repeated monomials accumulate.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(iter: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    /// Value as a constant, if the polynomial is one.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Leading term under the canonical order (None for the zero polynomial).
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.leading().map(|(_, c)| c)
    }

    /// Total degree; None encodes the -infinity degree of the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Degree in one variable; None for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn is_free_of(&self, v: Var) -> bool {
        self.terms.keys().all(|m| m.exp(v) == 0)
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiply by a bare monomial.
    pub fn mul_monomial(&self, mono: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.mul(mono), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divide, requiring the division to be exact; None when it is not.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "exact_div by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        let (dm, dc) = d.leading().map(|(m, c)| (*m, c.clone())).unwrap();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().map(|(m, c)| (*m, c.clone())).unwrap();
            let qm = rm.try_div(&dm)?;
            let qc = rc / &dc;
            let t = MultiPoly::from_monomial(qm, qc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Divide by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => MultiPoly::zero(),
            Some(lc) => {
                let inv = BigRational::one() / lc;
                self.scale(&inv)
            }
        }
    }

    /// Positive rational u such that self/u has coprime integer coefficients.
    /// Returns 1 for the zero polynomial.
    pub fn scalar_content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut numer_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            numer_gcd = num_integer::gcd(numer_gcd, scaled);
        }
        BigRational::new(numer_gcd.abs(), denom_lcm)
    }

    /// Partial derivative.
    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut exps = [m.exp(Var::N), m.exp(Var::K), m.exp(Var::X)];
            exps[v as usize] -= 1;
            out.add_term(
                Monomial::new(exps[0], exps[1], exps[2]),
                c * BigRational::from_integer(BigInt::from(e)),
            );
        }
        out
    }

    /// View as a dense coefficient vector in one variable; entry e is the
    /// coefficient of v^e, itself a polynomial free of v. Empty for zero.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        let deg = match self.degree_in(v) {
            None => return Vec::new(),
            Some(d) => d,
        };
        let mut out = vec![MultiPoly::zero(); deg as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut exps = [m.exp(Var::N), m.exp(Var::K), m.exp(Var::X)];
            exps[v as usize] = 0;
            out[e as usize].add_term(Monomial::new(exps[0], exps[1], exps[2]), c.clone());
        }
        out
    }

    /// Inverse of [`coeffs_in`]: sum of coeffs[e] * v^e.
    pub fn from_coeffs_in(v: Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let shifted = c.mul_monomial(&Monomial::var(v).pow(e as u32));
            out = &out + &shifted;
        }
        out
    }

    /// Substitute polynomials for variables; unbound variables pass through.
    pub fn substitute(&self, bindings: &[(Var, MultiPoly)]) -> MultiPoly {
        let image = |v: Var| -> MultiPoly {
            bindings
                .iter()
                .find(|(bv, _)| *bv == v)
                .map(|(_, p)| p.clone())
                .unwrap_or_else(|| MultiPoly::var(v))
        };
        // cache powers per variable up to the maximal exponent used
        let mut powers: Vec<Vec<MultiPoly>> = Vec::with_capacity(3);
        for v in Var::ALL {
            let max_e = self.degree_in(v).unwrap_or(0);
            let base = image(v);
            let mut pows = Vec::with_capacity(max_e as usize + 1);
            pows.push(MultiPoly::one());
            for e in 1..=max_e {
                let next = &pows[(e - 1) as usize] * &base;
                pows.push(next);
            }
            powers.push(pows);
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            for v in Var::ALL {
                let e = m.exp(v);
                if e > 0 {
                    term = &term * &powers[v as usize][e as usize];
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Evaluate at an exact rational point.
    pub fn eval(&self, at: &RatPoint) -> BigRational {
        let mut pow_cache: [Vec<BigRational>; 3] = [
            vec![BigRational::one()],
            vec![BigRational::one()],
            vec![BigRational::one()],
        ];
        for v in Var::ALL {
            let max_e = self.degree_in(v).unwrap_or(0) as usize;
            let base = at.get(v);
            let cache = &mut pow_cache[v as usize];
            for e in 1..=max_e {
                let next = &cache[e - 1] * base;
                cache.push(next);
            }
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m.exp(v) as usize;
                if e > 0 {
                    t *= &pow_cache[v as usize][e];
                }
            }
            acc += t;
        }
        acc
    }
}

/// An exact rational point (n, k, x) for evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoint {
    pub n: BigRational,
    pub k: BigRational,
    pub x: BigRational,
}

impl RatPoint {
    pub fn new(n: BigRational, k: BigRational, x: BigRational) -> Self {
        RatPoint { n, k, x }
    }

    pub fn get(&self, v: Var) -> &BigRational {
        match v {
            Var::N => &self.n,
            Var::K => &self.k,
            Var::X => &self.x,
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical rendering: terms in descending canonical order, `^` for
    /// powers, explicit `*` between coefficient and variables.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}
