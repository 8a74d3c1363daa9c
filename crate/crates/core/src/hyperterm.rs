//! Proper hypergeometric terms T(n,k), represented by a base value and two
//! shift quotients.
//!
//! A term is determined by
//!
//! - `base`: the value T(0,0), a rational function of x only,
//! - `rn`:   the quotient T(n+1,k) / T(n,k),
//! - `rk`:   the quotient T(n,k+1) / T(n,k),
//!
//! both quotients rational functions of (x, n, k). The two quotients must
//! commute: walking n-then-k must equal walking k-then-n, which is the
//! mixed-shift compatibility identity
//!
//! ```text
//! rn(n, k+1) * rk(n, k) = rk(n+1, k) * rn(n, k)
//! ```
//!
//! checked at construction. Evaluation at a lattice point multiplies the
//! quotients along the canonical path (0,0) -> (n,0) -> (n,k).

use std::fmt;

use num_traits::Zero;

use crate::error::ArithError;
use crate::poly::{MultiPoly, Var};
use crate::ratfunc::RationalFunction;
use crate::rational::BigRational;

/// A point of the summation lattice N0 x N0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub n: u32,
    pub k: u32,
}

impl LatticePoint {
    pub fn new(n: u32, k: u32) -> Self {
        LatticePoint { n, k }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.k)
    }
}

/// Direction of a unit shift on the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftDir {
    N,
    K,
}

/// One step of an evaluation path: the shift taken at a lattice point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathStep {
    pub at: LatticePoint,
    pub dir: ShiftDir,
}

impl fmt::Display for PathStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.dir {
            ShiftDir::N => "n-shift",
            ShiftDir::K => "k-shift",
        };
        write!(f, "{} at {}", dir, self.at)
    }
}

/// Why a path factor is unusable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoleKind {
    /// The factor's denominator vanishes identically at the step.
    ZeroDenominator,
    /// The factor itself vanishes at the step, so later quotients are
    /// meaningless.
    ZeroValue,
}

/// Errors of term construction and evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermError {
    /// A shift quotient is the zero rational function.
    ZeroShiftQuotient,
    /// The base value mentions n or k.
    BaseNotParameterOnly,
    /// The mixed-shift compatibility identity fails.
    IncompatibleShifts,
    /// A factor on the evaluation path is unusable.
    PathPole { step: PathStep, kind: PoleKind },
    /// The numeric x-value hits a denominator zero.
    XPole,
}

impl fmt::Display for TermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermError::ZeroShiftQuotient => write!(f, "shift quotient is zero"),
            TermError::BaseNotParameterOnly => {
                write!(f, "base value must be a rational function of x only")
            }
            TermError::IncompatibleShifts => write!(
                f,
                "shift quotients are incompatible: rn(n,k+1)*rk(n,k) != rk(n+1,k)*rn(n,k)"
            ),
            TermError::PathPole { step, kind } => {
                let what = match kind {
                    PoleKind::ZeroDenominator => "denominator vanishes",
                    PoleKind::ZeroValue => "factor vanishes",
                };
                write!(f, "evaluation path pole: {} ({})", step, what)
            }
            TermError::XPole => write!(f, "denominator vanishes at the given x value"),
        }
    }
}

impl std::error::Error for TermError {}

/// A proper hypergeometric term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperTerm {
    base: RationalFunction,
    rn: RationalFunction,
    rk: RationalFunction,
}

impl HyperTerm {
    /// Build a term from base value and shift quotients, validating the
    /// mixed-shift compatibility identity.
    pub fn new(
        base: RationalFunction,
        rn: RationalFunction,
        rk: RationalFunction,
    ) -> Result<Self, TermError> {
        if rn.is_zero() || rk.is_zero() {
            return Err(TermError::ZeroShiftQuotient);
        }
        if !base.is_free_of(Var::N) || !base.is_free_of(Var::K) {
            return Err(TermError::BaseNotParameterOnly);
        }
        if !shifts_compatible(&rn, &rk) {
            return Err(TermError::IncompatibleShifts);
        }
        Ok(HyperTerm { base, rn, rk })
    }

    /// The constant term 1: base 1 and both quotients 1.
    pub fn constant_one() -> Self {
        HyperTerm {
            base: RationalFunction::one(),
            rn: RationalFunction::one(),
            rk: RationalFunction::one(),
        }
    }

    /// T(0,0).
    pub fn base(&self) -> &RationalFunction {
        &self.base
    }

    /// T(n+1,k) / T(n,k).
    pub fn shift_n(&self) -> &RationalFunction {
        &self.rn
    }

    /// T(n,k+1) / T(n,k).
    pub fn shift_k(&self) -> &RationalFunction {
        &self.rk
    }

    /// Pointwise product of terms: bases and shift quotients multiply, and
    /// the product inherits compatibility from the factors.
    pub fn mul(&self, other: &HyperTerm) -> HyperTerm {
        HyperTerm {
            base: &self.base * &other.base,
            rn: &self.rn * &other.rn,
            rk: &self.rk * &other.rk,
        }
    }

    /// Exact value at a lattice point as a rational function of x:
    ///
    /// ```text
    /// T(n,k) = base * prod_{i=0}^{n-1} rn(i,0) * prod_{j=0}^{k-1} rk(n,j)
    /// ```
    ///
    /// evaluated along the canonical path (0,0) -> (n,0) -> (n,k).
    pub fn eval_point(&self, p: LatticePoint) -> Result<RationalFunction, TermError> {
        let mut acc = self.base.clone();
        for (factor, step) in PathFactors::new(self, p) {
            let f = factor?;
            acc = &acc * &f;
            let _ = step;
        }
        Ok(acc)
    }

    /// Exact numeric value at a lattice point and a concrete rational x.
    ///
    /// Follows the same canonical path as [`eval_point`](Self::eval_point);
    /// each path factor and the base are evaluated at `x_val`.
    pub fn eval_numeric(
        &self,
        p: LatticePoint,
        x_val: &BigRational,
    ) -> Result<BigRational, TermError> {
        let mut acc = eval_in_x(&self.base, x_val).ok_or(TermError::XPole)?;
        for (factor, _) in PathFactors::new(self, p) {
            let f = factor?;
            let v = eval_in_x(&f, x_val).ok_or(TermError::XPole)?;
            acc *= v;
        }
        Ok(acc)
    }
}

/// rn(n,k+1) * rk(n,k) = rk(n+1,k) * rn(n,k), as canonical forms.
fn shifts_compatible(rn: &RationalFunction, rk: &RationalFunction) -> bool {
    let k_shift = [(
        Var::K,
        RationalFunction::from_poly(&MultiPoly::var(Var::K) + &MultiPoly::one()),
    )];
    let n_shift = [(
        Var::N,
        RationalFunction::from_poly(&MultiPoly::var(Var::N) + &MultiPoly::one()),
    )];
    let rn_up_k = rn
        .substitute(&k_shift)
        .expect("shift substitution preserves nonzero denominators");
    let rk_up_n = rk
        .substitute(&n_shift)
        .expect("shift substitution preserves nonzero denominators");
    &rn_up_k * rk == &rk_up_n * rn
}

/// Iterator over the canonical path factors of a lattice evaluation, each a
/// rational function of x, paired with the lattice step it came from.
struct PathFactors<'a> {
    term: &'a HyperTerm,
    target: LatticePoint,
    i: u32,
    j: u32,
}

impl<'a> PathFactors<'a> {
    fn new(term: &'a HyperTerm, target: LatticePoint) -> Self {
        PathFactors {
            term,
            target,
            i: 0,
            j: 0,
        }
    }
}

impl Iterator for PathFactors<'_> {
    type Item = (Result<RationalFunction, TermError>, PathStep);

    fn next(&mut self) -> Option<Self::Item> {
        let step = if self.i < self.target.n {
            let s = PathStep {
                at: LatticePoint::new(self.i, 0),
                dir: ShiftDir::N,
            };
            self.i += 1;
            s
        } else if self.j < self.target.k {
            let s = PathStep {
                at: LatticePoint::new(self.target.n, self.j),
                dir: ShiftDir::K,
            };
            self.j += 1;
            s
        } else {
            return None;
        };
        let quotient = match step.dir {
            ShiftDir::N => self.term.shift_n(),
            ShiftDir::K => self.term.shift_k(),
        };
        let factor = quotient
            .at_lattice(i64::from(step.at.n), i64::from(step.at.k))
            .map_err(|e| match e {
                ArithError::PoleHit => TermError::PathPole {
                    step,
                    kind: PoleKind::ZeroDenominator,
                },
                other => unreachable!("lattice substitution cannot fail with {other}"),
            })
            .and_then(|f| {
                if f.is_zero() {
                    Err(TermError::PathPole {
                        step,
                        kind: PoleKind::ZeroValue,
                    })
                } else {
                    Ok(f)
                }
            });
        Some((factor, step))
    }
}

/// Evaluate a rational function of x alone at a rational x; None on a pole.
fn eval_in_x(f: &RationalFunction, x_val: &BigRational) -> Option<BigRational> {
    let den = eval_poly_in_x(f.den(), x_val);
    if den.is_zero() {
        return None;
    }
    Some(eval_poly_in_x(f.num(), x_val) / den)
}

fn eval_poly_in_x(p: &MultiPoly, x_val: &BigRational) -> BigRational {
    debug_assert!(p.is_free_of(Var::N) && p.is_free_of(Var::K));
    p.eval(&crate::poly::RatPoint::new(
        BigRational::zero(),
        BigRational::zero(),
        x_val.clone(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::rational::{rat, ratio};

    fn n() -> MultiPoly {
        MultiPoly::var(Var::N)
    }
    fn k() -> MultiPoly {
        MultiPoly::var(Var::K)
    }
    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn one() -> MultiPoly {
        MultiPoly::one()
    }
    fn rf(num: MultiPoly, den: MultiPoly) -> RationalFunction {
        RationalFunction::new(num, den).unwrap()
    }

    /// C(n+k,k) x^k (1-x)^(n+1) via its shift quotients.
    fn cb_f() -> HyperTerm {
        let np1 = &n() + &one();
        let kp1 = &k() + &one();
        let nk1 = &(&n() + &k()) + &one();
        let omx = &one() - &x();
        HyperTerm::new(
            RationalFunction::from_poly(omx.clone()),
            rf(&nk1 * &omx, np1),
            rf(&nk1 * &x(), kp1),
        )
        .unwrap()
    }

    /// Independent binomial oracle: Pascal's triangle, additions only.
    fn pascal(n: u32, k: u32) -> BigRational {
        if k > n {
            return BigRational::zero();
        }
        let mut row = vec![BigRational::from_integer(1.into())];
        for _ in 0..n {
            let mut next = vec![BigRational::from_integer(1.into())];
            for i in 1..row.len() {
                next.push(&row[i - 1] + &row[i]);
            }
            next.push(BigRational::from_integer(1.into()));
            row = next;
        }
        row[k as usize].clone()
    }

    /// Independent closed-form oracle: C(n+k,k) x^k (1-x)^(n+1) expanded
    /// directly, binomial from Pascal's triangle.
    fn cb_f_oracle(np: u32, kp: u32) -> RationalFunction {
        let c = pascal(np + kp, kp);
        let xk = MultiPoly::from_monomial(Monomial::var(Var::X).pow(kp), rat(1));
        let omx = (&one() - &x()).pow(np + 1);
        RationalFunction::from_poly((&xk * &omx).scale(&c))
    }

    #[test]
    fn builtin_pair_term_is_valid() {
        cb_f(); // construction runs the compatibility check
    }

    #[test]
    fn constant_term_is_valid() {
        let t = HyperTerm::constant_one();
        assert!(t.base().is_one());
        assert_eq!(
            t.eval_point(LatticePoint::new(5, 7)).unwrap(),
            RationalFunction::one()
        );
    }

    #[test]
    fn incompatible_shifts_are_rejected() {
        // rn = (n+k+1)/(n+1), rk = (n+2k)/(k+1) do not commute
        let np1 = &n() + &one();
        let kp1 = &k() + &one();
        let nk1 = &(&n() + &k()) + &one();
        let rn = rf(nk1, np1);
        let rk = rf(&n() + &k().scale(&rat(2)), kp1);
        assert_eq!(
            HyperTerm::new(RationalFunction::one(), rn, rk),
            Err(TermError::IncompatibleShifts)
        );
    }

    #[test]
    fn base_must_be_x_only() {
        let bad = rf(n(), one());
        assert_eq!(
            HyperTerm::new(bad, RationalFunction::one(), RationalFunction::one()),
            Err(TermError::BaseNotParameterOnly)
        );
    }

    #[test]
    fn zero_quotient_is_rejected() {
        assert_eq!(
            HyperTerm::new(
                RationalFunction::one(),
                RationalFunction::zero(),
                RationalFunction::one()
            ),
            Err(TermError::ZeroShiftQuotient)
        );
    }

    #[test]
    fn product_with_unit_is_identity() {
        let f = cb_f();
        let g = f.mul(&HyperTerm::constant_one());
        assert_eq!(f, g);
    }

    #[test]
    fn product_multiplies_quotients() {
        // x^k term squared has rk = x^2, rn = 1
        let xk = HyperTerm::new(
            RationalFunction::one(),
            RationalFunction::one(),
            RationalFunction::from_poly(x()),
        )
        .unwrap();
        let sq = xk.mul(&xk);
        assert_eq!(sq.shift_k(), &RationalFunction::from_poly(&x() * &x()));
        assert!(sq.shift_n().is_one());
    }

    #[test]
    fn eval_point_base_case() {
        let f = cb_f();
        assert_eq!(
            f.eval_point(LatticePoint::new(0, 0)).unwrap(),
            RationalFunction::from_poly(&one() - &x())
        );
    }

    #[test]
    fn eval_point_1_1() {
        // F(1,1) = C(2,1) x (1-x)^2 = 2x(1-x)^2
        let f = cb_f();
        let got = f.eval_point(LatticePoint::new(1, 1)).unwrap();
        let expected = RationalFunction::from_poly((&x() * &(&one() - &x()).pow(2)).scale(&rat(2)));
        assert_eq!(got, expected);
    }

    #[test]
    fn initial_row_sums_to_geometric_form() {
        // sum_{k=0..2} F(0,k) = 1 - x^3
        let f = cb_f();
        let mut acc = RationalFunction::zero();
        for kk in 0..=2 {
            acc = &acc + &f.eval_point(LatticePoint::new(0, kk)).unwrap();
        }
        let x3 = MultiPoly::from_monomial(Monomial::var(Var::X).pow(3), rat(1));
        assert_eq!(acc, RationalFunction::from_poly(&one() - &x3));
    }

    #[test]
    fn eval_numeric_matches_hand_value() {
        // F(1,1) at x = 1/2 is 2 * 1/2 * 1/4 = 1/4
        let f = cb_f();
        let v = f
            .eval_numeric(LatticePoint::new(1, 1), &ratio(1, 2))
            .unwrap();
        assert_eq!(v, ratio(1, 4));
    }

    #[test]
    fn eval_numeric_row_edges() {
        let f = cb_f();
        // x = 0 on the k = 0 column: (1-0)^(n+1) = 1
        for nn in 0..6 {
            assert_eq!(
                f.eval_numeric(LatticePoint::new(nn, 0), &rat(0)).unwrap(),
                rat(1)
            );
        }
        // x = 1 on the n = 0 row: the (1-x) factor kills everything
        for kk in 0..6 {
            assert_eq!(
                f.eval_numeric(LatticePoint::new(0, kk), &rat(1)).unwrap(),
                rat(0)
            );
        }
    }

    #[test]
    fn path_pole_reports_the_offending_step() {
        // C(n,k): rk(n,j) = (n-j)/(j+1) vanishes at j = n, so (1,2) is
        // unreachable multiplicatively
        let rn = rf(&n() + &one(), &(&n() + &one()) - &k());
        let rk = rf(&n() - &k(), &k() + &one());
        let t = HyperTerm::new(RationalFunction::one(), rn, rk).unwrap();
        let err = t.eval_point(LatticePoint::new(1, 2)).unwrap_err();
        assert_eq!(
            err,
            TermError::PathPole {
                step: PathStep {
                    at: LatticePoint::new(1, 1),
                    dir: ShiftDir::K,
                },
                kind: PoleKind::ZeroValue,
            }
        );
    }

    #[test]
    fn shift_recurrence_holds_on_grid() {
        // T(n+1,k) = rn(n,k) * T(n,k) for integer points
        let f = cb_f();
        for nn in 0..5i64 {
            for kk in 0..5i64 {
                let here = f
                    .eval_point(LatticePoint::new(nn as u32, kk as u32))
                    .unwrap();
                let up = f
                    .eval_point(LatticePoint::new(nn as u32 + 1, kk as u32))
                    .unwrap();
                let quotient = f.shift_n().at_lattice(nn, kk).unwrap();
                assert_eq!(up, &quotient * &here, "failed at ({nn},{kk})");
            }
        }
    }

    #[test]
    fn path_independence_on_small_grid() {
        // alternate path (0,0) -> (0,k) -> (n,k)
        let f = cb_f();
        for nn in 0..=8u32 {
            for kk in 0..=8u32 {
                let canonical = f.eval_point(LatticePoint::new(nn, kk)).unwrap();
                let mut alt = f.base().clone();
                for j in 0..kk {
                    alt = &alt * &f.shift_k().at_lattice(0, i64::from(j)).unwrap();
                }
                for i in 0..nn {
                    alt = &alt * &f.shift_n().at_lattice(i64::from(i), i64::from(kk)).unwrap();
                }
                assert_eq!(canonical, alt, "paths disagree at ({nn},{kk})");
            }
        }
    }

    #[test]
    fn oracle_equivalence_grid() {
        let f = cb_f();
        for nn in 0..=12u32 {
            for kk in 0..=12u32 {
                assert_eq!(
                    f.eval_point(LatticePoint::new(nn, kk)).unwrap(),
                    cb_f_oracle(nn, kk),
                    "oracle mismatch at ({nn},{kk})"
                );
            }
        }
    }
}
