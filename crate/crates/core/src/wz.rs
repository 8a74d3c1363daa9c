//! WZ pair verification and the telescoping argument.
//!
//! A pair of terms (F, G) is a WZ pair when
//!
//! ```text
//! F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k)
//! ```
//!
//! with G(n,k) = R(n,k) * F(n,k) for a rational certificate R. Dividing
//! through by F(n,k) turns the equation into an identity of rational
//! functions:
//!
//! ```text
//! rn(n,k) - 1 = R(n,k+1) * rk(n,k) - R(n,k)
//! ```
//!
//! where rn, rk are the shift quotients of F. [`verify_pair`] checks that
//! identity exactly; everything else in this module telescopes a verified
//! pair over lattice rows:
//!
//! ```text
//! sum_{k=0}^{m} F(n,k) = sum_{j=0}^{n-1} [G(j,m+1) - G(j,0)]
//!                      + sum_{k=0}^{m} F(0,k)
//! ```
//!
//! For F(n,k) = binom(n+k,k) x^k (1-x)^(n+1) with certificate -k/(n+1)
//! the boundary column vanishes, the initial row sums to 1 - x^(m+1), and
//! the chain of identities lands on
//!
//! ```text
//! (1-x)^(n+1) sum_{k=0}^{m} binom(n+k,k) x^k
//!   + x^(m+1) sum_{k=0}^{n} binom(m+k,k) (1-x)^k  =  1
//! ```
//!
//! which [`chaundy_bullard`] expands directly and [`build_proof_trace`]
//! assembles step by step into a serializable record.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dsl::{compile_term, parse_cert, parse_term};
use crate::error::ArithError;
use crate::hyperterm::{HyperTerm, LatticePoint, TermError};
use crate::poly::{MultiPoly, RatPoint, Var};
use crate::ratfunc::RationalFunction;
use crate::rational::{binomial, ratio, BigRational};

/// Source text of the built-in term F(n,k).
pub const CB_TERM_SRC: &str = "binom(n+k,k) * x^k * (1-x)^(n+1)";

/// Source text of the built-in certificate R(n,k).
pub const CB_CERT_SRC: &str = "-k/(n+1)";

/// Version tag written into serialized proof traces.
pub const PROOF_TRACE_SCHEMA_VERSION: u32 = 1;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Failures while verifying or telescoping a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WzError {
    /// Rational-function arithmetic failed (substitution hit a pole).
    Arith(ArithError),
    /// Term evaluation failed along a lattice path.
    Term(TermError),
    /// The candidate certificate does not satisfy the divided identity;
    /// carries the nonzero residual.
    NotWzPair { residual: RationalFunction },
}

impl fmt::Display for WzError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WzError::Arith(e) => write!(f, "{e}"),
            WzError::Term(e) => write!(f, "{e}"),
            WzError::NotWzPair { residual } => {
                write!(
                    f,
                    "certificate fails the pair identity; residual {residual}"
                )
            }
        }
    }
}

impl std::error::Error for WzError {}

impl From<ArithError> for WzError {
    fn from(e: ArithError) -> Self {
        WzError::Arith(e)
    }
}

impl From<TermError> for WzError {
    fn from(e: TermError) -> Self {
        WzError::Term(e)
    }
}

// ---------------------------------------------------------------------------
// Pairs
// ---------------------------------------------------------------------------

/// A verified WZ pair: a hypergeometric term together with a certificate
/// that is known to satisfy the divided identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WZPair {
    f: HyperTerm,
    r: RationalFunction,
}

impl WZPair {
    /// Validate the divided identity and build the pair; rejects with the
    /// nonzero residual otherwise.
    pub fn new(f: HyperTerm, r: RationalFunction) -> Result<Self, WzError> {
        let residual = verify_pair(&f, &r)?;
        if !residual.is_zero() {
            return Err(WzError::NotWzPair { residual });
        }
        Ok(WZPair { f, r })
    }

    /// The term F.
    pub fn term(&self) -> &HyperTerm {
        &self.f
    }

    /// The certificate R, with G(n,k) = R(n,k) * F(n,k).
    pub fn certificate(&self) -> &RationalFunction {
        &self.r
    }

    /// G(j,k) = R(j,k) * F(j,k) at one lattice point, as a rational
    /// function of x.
    pub fn companion_at(&self, j: u32, k: u32) -> Result<RationalFunction, WzError> {
        let rv = self.r.at_lattice(i64::from(j), i64::from(k))?;
        let fv = self.f.eval_point(LatticePoint::new(j, k))?;
        Ok(&rv * &fv)
    }
}

/// Residual of the divided identity,
///
/// ```text
/// (rn - 1) - (R(n,k+1) * rk - R(n,k))
/// ```
///
/// in canonical form. The pair (F, R*F) is a WZ pair iff the residual
/// is zero.
pub fn verify_pair(f: &HyperTerm, r: &RationalFunction) -> Result<RationalFunction, ArithError> {
    let k_plus_1 = RationalFunction::from_poly(&MultiPoly::var(Var::K) + &MultiPoly::one());
    let r_up = r.substitute(&[(Var::K, k_plus_1)])?;
    let one = RationalFunction::one();
    let lhs = f.shift_n() - &one;
    let rhs = &(&r_up * f.shift_k()) - r;
    Ok(&lhs - &rhs)
}

/// Outcome of a randomized residual check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NumericVerdict {
    Pass,
    /// A sample where the residual is nonzero.
    Fail {
        witness: RatPoint,
    },
}

/// Evaluate the residual at `samples` random rational triples (n,k,x),
/// redrawing any triple that lands on a denominator zero. Fails with the
/// first witness triple where the residual is nonzero.
pub fn verify_pair_numeric(
    f: &HyperTerm,
    r: &RationalFunction,
    samples: u32,
    seed: u64,
) -> NumericVerdict {
    // the k-shift is a ring automorphism, so it cannot produce a zero
    // denominator from a nonzero one
    let residual = verify_pair(f, r).expect("shifting k preserves nonzero denominators");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| ratio(rng.gen_range(-40..=40), rng.gen_range(1..=12));
    const MAX_REDRAWS: u32 = 1000;
    for _ in 0..samples {
        let mut redraws = 0;
        let value = loop {
            let at = RatPoint::new(draw(&mut rng), draw(&mut rng), draw(&mut rng));
            match residual.eval(&at) {
                Some(v) => break (at, v),
                None => {
                    redraws += 1;
                    assert!(
                        redraws < MAX_REDRAWS,
                        "no pole-free sample after {MAX_REDRAWS} redraws"
                    );
                }
            }
        };
        if !value.1.is_zero() {
            return NumericVerdict::Fail { witness: value.0 };
        }
    }
    NumericVerdict::Pass
}

/// Whether the boundary column vanishes: R(n,0) = 0 as a rational
/// function, which forces G(j,0) = 0 for every j.
pub fn check_boundary(pair: &WZPair) -> Result<bool, ArithError> {
    let at_zero = pair.r.substitute(&[(Var::K, RationalFunction::zero())])?;
    Ok(at_zero.is_zero())
}

/// Exact sum of the initial row, sum_{k=0}^{m} F(0,k), as a rational
/// function of x.
pub fn initial_row_sum(f: &HyperTerm, m: u32) -> Result<RationalFunction, TermError> {
    let mut acc = RationalFunction::zero();
    for k in 0..=m {
        acc = &acc + &f.eval_point(LatticePoint::new(0, k))?;
    }
    Ok(acc)
}

/// Both sides of the telescoped sum, exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TelescopeSides {
    /// sum_{k=0}^{m} F(n,k)
    pub lhs: RationalFunction,
    /// sum_{j=0}^{n-1} [G(j,m+1) - G(j,0)] + sum_{k=0}^{m} F(0,k)
    pub rhs: RationalFunction,
}

/// Evaluate both sides of the telescoping identity at concrete (m, n).
/// For a verified pair they agree; the j-sum is empty when n = 0.
pub fn telescope_check(pair: &WZPair, m: u32, n: u32) -> Result<TelescopeSides, WzError> {
    let mut lhs = RationalFunction::zero();
    for k in 0..=m {
        lhs = &lhs + &pair.f.eval_point(LatticePoint::new(n, k))?;
    }
    let mut rhs = RationalFunction::zero();
    for j in 0..n {
        let top = pair.companion_at(j, m + 1)?;
        let bottom = pair.companion_at(j, 0)?;
        rhs = &(&rhs + &top) - &bottom;
    }
    for k in 0..=m {
        rhs = &rhs + &pair.f.eval_point(LatticePoint::new(0, k))?;
    }
    Ok(TelescopeSides { lhs, rhs })
}

/// A row sum next to its closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSumForm {
    /// sum_{k=0}^{m} F(n,k)
    pub sum: RationalFunction,
    /// 1 - x^(m+1) * sum_{j=0}^{n} binom(m+j,j) (1-x)^j
    pub closed: RationalFunction,
}

/// Compare the row sum of the pair's term against the closed form, with
/// binomials taken from the factorial oracle rather than from term
/// evaluation.
pub fn partial_sum_closed_form(pair: &WZPair, m: u32, n: u32) -> Result<PartialSumForm, WzError> {
    let mut sum = RationalFunction::zero();
    for k in 0..=m {
        sum = &sum + &pair.f.eval_point(LatticePoint::new(n, k))?;
    }
    let x = MultiPoly::var(Var::X);
    let one_minus_x = &MultiPoly::one() - &x;
    let mut tail = MultiPoly::zero();
    for j in 0..=n {
        let c = BigRational::from_integer(binomial(u64::from(m + j), u64::from(j)));
        tail = &tail + &one_minus_x.pow(j).scale(&c);
    }
    let closed = &MultiPoly::one() - &(&x.pow(m + 1) * &tail);
    Ok(PartialSumForm {
        sum,
        closed: RationalFunction::from_poly(closed),
    })
}

/// The two summands of the identity, expanded with factorial-oracle
/// binomials:
///
/// ```text
/// (1-x)^(n+1) sum_{k=0}^{m} binom(n+k,k) x^k    and
/// x^(m+1)     sum_{k=0}^{n} binom(m+k,k) (1-x)^k
/// ```
pub(crate) fn cb_summands(m: u32, n: u32) -> (MultiPoly, MultiPoly) {
    let x = MultiPoly::var(Var::X);
    let one_minus_x = &MultiPoly::one() - &x;
    let mut left = MultiPoly::zero();
    for k in 0..=m {
        let c = BigRational::from_integer(binomial(u64::from(n + k), u64::from(k)));
        left = &left + &x.pow(k).scale(&c);
    }
    let mut right = MultiPoly::zero();
    for k in 0..=n {
        let c = BigRational::from_integer(binomial(u64::from(m + k), u64::from(k)));
        right = &right + &one_minus_x.pow(k).scale(&c);
    }
    (&one_minus_x.pow(n + 1) * &left, &x.pow(m + 1) * &right)
}

/// Expand the full identity polynomial at concrete (m, n). The result is
/// the constant polynomial 1.
pub fn chaundy_bullard(m: u32, n: u32) -> MultiPoly {
    let (left, right) = cb_summands(m, n);
    &left + &right
}

// ---------------------------------------------------------------------------
// Built-in pair
// ---------------------------------------------------------------------------

/// The built-in term F(n,k) = binom(n+k,k) x^k (1-x)^(n+1).
pub fn chaundy_bullard_term() -> HyperTerm {
    compile_term(&parse_term(CB_TERM_SRC).expect("built-in term source parses"))
        .expect("built-in term compiles")
}

/// The built-in certificate R(n,k) = -k/(n+1).
pub fn chaundy_bullard_certificate() -> RationalFunction {
    parse_cert(CB_CERT_SRC).expect("built-in certificate source parses")
}

/// The built-in verified pair.
pub fn chaundy_bullard_pair() -> WZPair {
    WZPair::new(chaundy_bullard_term(), chaundy_bullard_certificate())
        .expect("built-in pair satisfies the divided identity")
}

// ---------------------------------------------------------------------------
// Proof traces
// ---------------------------------------------------------------------------

/// Source text of a pair, as it appears in a trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSources {
    pub term_src: String,
    pub cert_src: String,
}

/// The initial row sum next to its expected closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub got: String,
    pub expected: String,
}

/// Both sides of one telescoping instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceTelescope {
    pub lhs: String,
    pub rhs: String,
}

/// Row sum against the closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracePartialSum {
    pub sum: String,
    pub closed: String,
}

/// A complete machine-checkable record of the proof at one (m, n): every
/// step's exact values in canonical text, plus the overall verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub schema_version: u32,
    pub m: u32,
    pub n: u32,
    pub pair: TraceSources,
    pub wz_residual: String,
    pub boundary: bool,
    pub initial_row: TraceRow,
    pub telescope: TraceTelescope,
    pub partial_sum: TracePartialSum,
    pub final_identity: String,
    pub valid: bool,
}

impl ProofTrace {
    /// Per-step verdicts, in proof order. Canonical rendering is unique
    /// per canonical form, so string equality decides each step.
    pub fn steps(&self) -> [(&'static str, bool); 6] {
        [
            ("wz_residual", self.wz_residual == "0"),
            ("boundary", self.boundary),
            (
                "initial_row",
                self.initial_row.got == self.initial_row.expected,
            ),
            ("telescope", self.telescope.lhs == self.telescope.rhs),
            (
                "partial_sum",
                self.partial_sum.sum == self.partial_sum.closed,
            ),
            ("final_identity", self.final_identity == "1"),
        ]
    }
}

/// Run every step of the proof at (m, n) for the built-in pair and record
/// the outcomes. Steps keep running after a failed check so the trace
/// reports every failing step, and `valid` is the conjunction.
pub fn build_proof_trace(m: u32, n: u32) -> Result<ProofTrace, WzError> {
    let f = chaundy_bullard_term();
    let r = chaundy_bullard_certificate();
    let residual = verify_pair(&f, &r)?;
    // the steps below need a WZPair; the residual check above is the same
    // validation, so reuse the parts
    let pair = WZPair {
        f: f.clone(),
        r: r.clone(),
    };

    let boundary = check_boundary(&pair)?;

    let row = initial_row_sum(&f, m)?;
    let x = MultiPoly::var(Var::X);
    let row_expected = RationalFunction::from_poly(&MultiPoly::one() - &x.pow(m + 1));

    let telescope = telescope_check(&pair, m, n)?;
    let partial = partial_sum_closed_form(&pair, m, n)?;
    let identity = chaundy_bullard(m, n);

    let valid = residual.is_zero()
        && boundary
        && row == row_expected
        && telescope.lhs == telescope.rhs
        && partial.sum == partial.closed
        && identity.is_one();

    Ok(ProofTrace {
        schema_version: PROOF_TRACE_SCHEMA_VERSION,
        m,
        n,
        pair: TraceSources {
            term_src: CB_TERM_SRC.to_string(),
            cert_src: CB_CERT_SRC.to_string(),
        },
        wz_residual: residual.to_string(),
        boundary,
        initial_row: TraceRow {
            got: row.to_string(),
            expected: row_expected.to_string(),
        },
        telescope: TraceTelescope {
            lhs: telescope.lhs.to_string(),
            rhs: telescope.rhs.to_string(),
        },
        partial_sum: TracePartialSum {
            sum: partial.sum.to_string(),
            closed: partial.closed.to_string(),
        },
        final_identity: identity.to_string(),
        valid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn one() -> MultiPoly {
        MultiPoly::one()
    }
    fn rf(num: MultiPoly, den: MultiPoly) -> RationalFunction {
        RationalFunction::new(num, den).unwrap()
    }

    /// Independent expansion of F(n,k) from factorial-oracle binomials.
    fn f_oracle(n: u32, k: u32) -> MultiPoly {
        let c = BigRational::from_integer(binomial(u64::from(n + k), u64::from(k)));
        (&x().pow(k) * &(&one() - &x()).pow(n + 1)).scale(&c)
    }

    #[test]
    fn builtin_pair_residual_is_zero() {
        let f = chaundy_bullard_term();
        let r = chaundy_bullard_certificate();
        assert!(verify_pair(&f, &r).unwrap().is_zero());
    }

    #[test]
    fn zero_certificate_residual() {
        // with r = 0 the residual is rn - 1 = (k - (n+k+1)x)/(n+1)
        let f = chaundy_bullard_term();
        let residual = verify_pair(&f, &RationalFunction::zero()).unwrap();
        let n = MultiPoly::var(Var::N);
        let k = MultiPoly::var(Var::K);
        let num = &k - &(&(&(&n + &k) + &one()) * &x());
        let expected = rf(num, &n + &one());
        assert_eq!(residual, expected);
    }

    #[test]
    fn constant_pair_residual_is_zero() {
        let f = HyperTerm::constant_one();
        assert!(verify_pair(&f, &RationalFunction::zero())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn wzpair_rejects_bad_certificate() {
        let f = chaundy_bullard_term();
        let bad = parse_cert("-k/(n+2)").unwrap();
        match WZPair::new(f, bad) {
            Err(WzError::NotWzPair { residual }) => assert!(!residual.is_zero()),
            other => panic!("expected NotWzPair, got {other:?}"),
        }
    }

    #[test]
    fn numeric_check_passes_for_builtin_pair() {
        let f = chaundy_bullard_term();
        let r = chaundy_bullard_certificate();
        assert_eq!(verify_pair_numeric(&f, &r, 100, 42), NumericVerdict::Pass);
    }

    #[test]
    fn numeric_check_fails_with_witness_for_wrong_certificate() {
        let f = chaundy_bullard_term();
        let bad = parse_cert("-k/(n+2)").unwrap();
        match verify_pair_numeric(&f, &bad, 50, 7) {
            NumericVerdict::Fail { witness } => {
                // the witness really is a nonvanishing point of the residual
                let residual = verify_pair(&f, &bad).unwrap();
                let v = residual.eval(&witness).unwrap();
                assert!(!v.is_zero());
            }
            NumericVerdict::Pass => panic!("wrong certificate must fail numerically"),
        }
    }

    #[test]
    fn numeric_check_passes_for_constant_pair() {
        let f = HyperTerm::constant_one();
        assert_eq!(
            verify_pair_numeric(&f, &RationalFunction::zero(), 20, 3),
            NumericVerdict::Pass
        );
    }

    #[test]
    fn boundary_holds_for_builtin_certificate() {
        assert!(check_boundary(&chaundy_bullard_pair()).unwrap());
    }

    #[test]
    fn boundary_fails_for_shifted_certificate() {
        // -(k+1)/(n+1) is also a valid certificate candidate shape but its
        // k = 0 value is -1/(n+1); build the pair without validation
        let f = chaundy_bullard_term();
        let r = parse_cert("-(k+1)/(n+1)").unwrap();
        let pair = WZPair { f, r };
        assert!(!check_boundary(&pair).unwrap());
    }

    #[test]
    fn boundary_holds_for_zero_certificate() {
        let pair = WZPair {
            f: HyperTerm::constant_one(),
            r: RationalFunction::zero(),
        };
        assert!(check_boundary(&pair).unwrap());
    }

    #[test]
    fn boundary_reports_pole_when_k_divides_denominator() {
        let pair = WZPair {
            f: HyperTerm::constant_one(),
            r: rf(one(), MultiPoly::var(Var::K)),
        };
        assert_eq!(check_boundary(&pair), Err(ArithError::PoleHit));
    }

    #[test]
    fn initial_row_matches_geometric_closed_form() {
        let f = chaundy_bullard_term();
        for (m, e) in [(0u32, 1u32), (3, 4), (5, 6)] {
            let got = initial_row_sum(&f, m).unwrap();
            let expected = RationalFunction::from_poly(&one() - &x().pow(e));
            assert_eq!(got, expected, "m = {m}");
        }
    }

    #[test]
    fn initial_row_matches_bruteforce_geometric_sum() {
        // sum_{k<=5} x^k (1-x), expanded independently
        let f = chaundy_bullard_term();
        let mut oracle = MultiPoly::zero();
        for k in 0..=5u32 {
            oracle = &oracle + &(&x().pow(k) * &(&one() - &x()));
        }
        assert_eq!(
            initial_row_sum(&f, 5).unwrap(),
            RationalFunction::from_poly(oracle)
        );
    }

    #[test]
    fn telescope_small_instance() {
        // m = 0, n = 2: both sides are F(2,0) = (1-x)^3
        let sides = telescope_check(&chaundy_bullard_pair(), 0, 2).unwrap();
        let cube = RationalFunction::from_poly((&one() - &x()).pow(3));
        assert_eq!(sides.lhs, cube);
        assert_eq!(sides.rhs, cube);
    }

    #[test]
    fn telescope_empty_j_sum_is_initial_row() {
        // n = 0 leaves only the initial row on the right
        let pair = chaundy_bullard_pair();
        for m in 0..=4u32 {
            let sides = telescope_check(&pair, m, 0).unwrap();
            let expected = RationalFunction::from_poly(&one() - &x().pow(m + 1));
            assert_eq!(sides.lhs, expected, "m = {m}");
            assert_eq!(sides.rhs, expected, "m = {m}");
        }
    }

    #[test]
    fn telescope_agrees_with_bruteforce_expansion() {
        // m = 2, n = 3: both sides equal the oracle row sum, degree 6
        let sides = telescope_check(&chaundy_bullard_pair(), 2, 3).unwrap();
        let mut oracle = MultiPoly::zero();
        for k in 0..=2u32 {
            oracle = &oracle + &f_oracle(3, k);
        }
        assert_eq!(oracle.degree_in(Var::X), Some(6));
        assert_eq!(sides.lhs, RationalFunction::from_poly(oracle));
        assert_eq!(sides.lhs, sides.rhs);
    }

    #[test]
    fn partial_sum_m0_collapses_to_power() {
        let pair = chaundy_bullard_pair();
        for n in 0..=6u32 {
            let form = partial_sum_closed_form(&pair, 0, n).unwrap();
            let expected = RationalFunction::from_poly((&one() - &x()).pow(n + 1));
            assert_eq!(form.sum, expected, "n = {n}");
            assert_eq!(form.closed, expected, "n = {n}");
        }
    }

    #[test]
    fn partial_sum_origin_case() {
        let form = partial_sum_closed_form(&chaundy_bullard_pair(), 0, 0).unwrap();
        let expected = RationalFunction::from_poly(&one() - &x());
        assert_eq!(form.sum, expected);
        assert_eq!(form.closed, expected);
    }

    #[test]
    fn partial_sum_agrees_with_bruteforce_oracle() {
        let form = partial_sum_closed_form(&chaundy_bullard_pair(), 2, 2).unwrap();
        let mut oracle = MultiPoly::zero();
        for k in 0..=2u32 {
            oracle = &oracle + &f_oracle(2, k);
        }
        assert_eq!(oracle.degree_in(Var::X), Some(5));
        assert_eq!(form.sum, RationalFunction::from_poly(oracle));
        assert_eq!(form.sum, form.closed);
    }

    #[test]
    fn identity_origin_case() {
        assert!(chaundy_bullard(0, 0).is_one());
    }

    #[test]
    fn identity_at_one_half() {
        // m = n = 1: each summand contributes 1/2 at x = 1/2
        let (left, right) = cb_summands(1, 1);
        let at = RatPoint::new(rat(0), rat(0), ratio(1, 2));
        assert_eq!(left.eval(&at), ratio(1, 2));
        assert_eq!(right.eval(&at), ratio(1, 2));
        assert!(chaundy_bullard(1, 1).is_one());
    }

    #[test]
    fn identity_holds_after_full_expansion() {
        assert!(chaundy_bullard(3, 5).is_one());
        assert!(chaundy_bullard(5, 3).is_one());
    }

    #[test]
    fn summands_swap_under_reflection() {
        // first summand at (m,n) equals second summand at (n,m) with
        // x replaced by 1-x
        for (m, n) in [(0u32, 0u32), (1, 2), (3, 5), (4, 4)] {
            let (left, _) = cb_summands(m, n);
            let (_, right_swapped) = cb_summands(n, m);
            let reflected = right_swapped.substitute(&[(Var::X, &one() - &x())]);
            assert_eq!(left, reflected, "m = {m}, n = {n}");
        }
    }

    #[test]
    fn trace_origin_is_valid() {
        let trace = build_proof_trace(0, 0).unwrap();
        assert!(trace.valid);
        assert_eq!(trace.final_identity, "1");
        assert_eq!(trace.wz_residual, "0");
        assert!(trace.steps().iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn trace_small_case_is_valid() {
        let trace = build_proof_trace(2, 1).unwrap();
        assert!(trace.valid);
        assert_eq!(trace.initial_row.got, trace.initial_row.expected);
    }

    #[test]
    fn trace_diagonal_case_is_valid() {
        let trace = build_proof_trace(10, 10).unwrap();
        assert!(trace.valid);
    }

    #[test]
    fn trace_serializes_round_trip() {
        let trace = build_proof_trace(2, 3).unwrap();
        let json = serde_json::to_string_pretty(&trace).unwrap();
        assert!(json.contains("\"schema_version\": 1"));
        let back: ProofTrace = serde_json::from_str(&json).unwrap();
        assert_eq!(trace, back);
    }

    #[test]
    fn raw_shift_identity_numerically_on_small_grid() {
        // F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k) at x = 2/7, the undivided
        // form of the identity the residual check encodes
        let pair = chaundy_bullard_pair();
        let f = pair.term();
        let xv = ratio(2, 7);
        let fv = |n: u32, k: u32| f.eval_numeric(LatticePoint::new(n, k), &xv).unwrap();
        let gv = |n: u32, k: u32| {
            let r = pair
                .certificate()
                .at_lattice(i64::from(n), i64::from(k))
                .unwrap();
            let r_at = r.eval(&RatPoint::new(rat(0), rat(0), xv.clone())).unwrap();
            r_at * fv(n, k)
        };
        for n in 0..=4u32 {
            for k in 0..=4u32 {
                let lhs = fv(n + 1, k) - fv(n, k);
                let rhs = gv(n, k + 1) - gv(n, k);
                assert_eq!(lhs, rhs, "n = {n}, k = {k}");
            }
        }
    }
}
