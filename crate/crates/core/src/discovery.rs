//! Certificate discovery by bounded-degree linear ansatz.
//!
//! Given a term F with shift quotients rn, rk, a certificate is a rational
//! R(n,k) satisfying
//!
//! ```text
//! rn - 1 = R(n,k+1) * rk - R(n,k)
//! ```
//!
//! The search fixes a denominator v(n,k) built from the x-free factors of
//! the quotient denominators and writes R = u/v with unknown coefficients
//! on all (n,k)-monomials of u up to a total degree bound. Clearing
//! denominators turns the identity into one polynomial equation
//!
//! ```text
//! (An - Bn) Bk v v+ - u+ Ak Bn v + u Bn Bk v+ = 0
//! ```
//!
//! (rn = An/Bn, rk = Ak/Bk, and + marks the shift k -> k+1), whose
//! monomial coefficients are affine in the unknowns. Solving that linear
//! system and cancelling u/v reproduces, for the built-in term, the
//! certificate -k/(n+1).

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;

use crate::gcd::{content_in, squarefree_part};
use crate::hyperterm::HyperTerm;
use crate::linsolve;
use crate::poly::{Monomial, MultiPoly, Var};
use crate::ratfunc::RationalFunction;
use crate::rational::BigRational;
use crate::wz::verify_pair;

/// The search space for one discovery attempt: a fixed denominator and
/// the numerator monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ansatz {
    /// Candidate denominator v, nonzero and free of x.
    pub denominator: MultiPoly,
    /// Total degree bound d on the numerator in (n, k).
    pub degree_bound: u32,
    /// All (n,k)-monomials of total degree <= d, in canonical order.
    pub monomials: Vec<Monomial>,
}

impl Ansatz {
    /// Build an ansatz over an explicit denominator.
    pub fn new(denominator: MultiPoly, degree_bound: u32) -> Ansatz {
        assert!(!denominator.is_zero(), "ansatz denominator must be nonzero");
        assert!(
            denominator.is_free_of(Var::X),
            "ansatz denominator must be free of x"
        );
        let mut monomials = Vec::new();
        for total in 0..=degree_bound {
            for i in 0..=total {
                monomials.push(Monomial::new(i, total - i, 0));
            }
        }
        monomials.sort();
        Ansatz {
            denominator,
            degree_bound,
            monomials,
        }
    }
}

/// No numerator over the ansatz denominator satisfies the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NoCertificate;

impl fmt::Display for NoCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "no certificate in this ansatz; raise the degree bound or the shift span"
        )
    }
}

impl std::error::Error for NoCertificate {}

fn shift_k_by(p: &MultiPoly, amount: u32) -> MultiPoly {
    let image = &MultiPoly::var(Var::K) + &MultiPoly::from_int(i64::from(amount));
    p.substitute(&[(Var::K, image)])
}

/// The standard ansatz for a term: denominator = product of the distinct
/// x-free factors of den(rn) and den(rk), each shifted in k by 0..=s,
/// deduplicated; numerator degree bound d.
pub fn default_ansatz(f: &HyperTerm, d: u32, s: u32) -> Ansatz {
    // the x-free part of a denominator is its content as a polynomial in
    // x; the squarefree part is then the product of its distinct factors
    let core = &content_in(f.shift_n().den(), Var::X) * &content_in(f.shift_k().den(), Var::X);
    let core = squarefree_part(&core);
    let mut stacked = MultiPoly::one();
    for i in 0..=s {
        stacked = &stacked * &shift_k_by(&core, i);
    }
    Ansatz::new(squarefree_part(&stacked), d)
}

/// Search for a certificate over the given ansatz. On success the result
/// is canonical and satisfies the pair identity (asserted before
/// returning); free coefficients of an underdetermined system are zeroed
/// in monomial order, so identical inputs give identical output.
pub fn discover(f: &HyperTerm, a: &Ansatz) -> Result<RationalFunction, NoCertificate> {
    let k_shift = [(Var::K, &MultiPoly::var(Var::K) + &MultiPoly::one())];
    let v = &a.denominator;
    let v_up = v.substitute(&k_shift);
    let an = f.shift_n().num();
    let bn = f.shift_n().den();
    let ak = f.shift_k().num();
    let bk = f.shift_k().den();

    // constant part and per-unknown columns of the cleared identity
    let t0 = &(&(an - bn) * bk) * &(v * &v_up);
    let shifted_weight = &(ak * bn) * v;
    let direct_weight = &(bn * bk) * &v_up;
    let columns: Vec<MultiPoly> = a
        .monomials
        .iter()
        .map(|m| {
            let m_poly = MultiPoly::from_monomial(*m, BigRational::one());
            let m_up = m_poly.substitute(&k_shift);
            &(&m_poly * &direct_weight) - &(&m_up * &shifted_weight)
        })
        .collect();

    let mut support: BTreeSet<Monomial> = BTreeSet::new();
    for p in std::iter::once(&t0).chain(columns.iter()) {
        for (mono, _) in p.terms() {
            support.insert(*mono);
        }
    }

    let mut matrix = Vec::with_capacity(support.len());
    let mut rhs = Vec::with_capacity(support.len());
    for mono in &support {
        matrix.push(columns.iter().map(|c| c.coeff(mono)).collect::<Vec<_>>());
        rhs.push(-t0.coeff(mono));
    }
    let solution = linsolve::solve(&matrix, &rhs).ok_or(NoCertificate)?;

    let mut u = MultiPoly::zero();
    for (c, m) in solution.iter().zip(&a.monomials) {
        u = &u + &MultiPoly::from_monomial(*m, c.clone());
    }
    let r = RationalFunction::new(u, v.clone()).expect("ansatz denominator is nonzero");
    let residual = verify_pair(f, &r).expect("shifting k preserves nonzero denominators");
    assert!(residual.is_zero(), "solved system must yield a certificate");
    Ok(r)
}
