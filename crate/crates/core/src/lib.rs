//! Exact Wilf-Zeilberger kernel.
//!
//! This crate verifies WZ pairs, discovers rational certificates, applies
//! the telescoping summation identity and mechanically reproduces the
//! Chaundy-Bullard identity
//!
//! ```text
//! 1 = (1-x)^(n+1) * sum_{k=0}^{m} C(n+k,k) x^k
//!   + x^(m+1)     * sum_{k=0}^{n} C(m+k,k) (1-x)^k
//! ```
//!
//! for arbitrary nonnegative integers m, n, entirely in exact rational
//! arithmetic. The layers, bottom up:
//!
//! - [`rational`], [`poly`], [`gcd`], [`ratfunc`], [`linsolve`]: the exact
//!   arithmetic kernel (big rationals, sparse polynomials in n, k, x,
//!   canonical rational functions, multivariate GCD, exact linear solves).
//! - [`hyperterm`]: proper hypergeometric terms T(n,k) modelled by a base
//!   value and the two shift quotients T(n+1,k)/T(n,k), T(n,k+1)/T(n,k).
//! - [`dsl`]: a small textual language for terms and certificates.
//! - [`wz`]: WZ pair verification, telescoping, partial-sum closed forms,
//!   the identity check and machine-checkable proof traces.
//! - [`discovery`]: certificate discovery by bounded-degree linear ansatz.
//! - [`selftest`]: seeded randomized property suites and desk-scale grids.

pub mod discovery;
pub mod dsl;
pub mod error;
pub mod gcd;
pub mod hyperterm;
pub mod linsolve;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod selftest;
pub mod wz;

pub use error::ArithError;
pub use hyperterm::{HyperTerm, LatticePoint, TermError};
pub use poly::{Monomial, MultiPoly, RatPoint, Var};
pub use ratfunc::RationalFunction;
pub use rational::{BigRational, Integer};
pub use wz::{ProofTrace, WZPair, WzError};
