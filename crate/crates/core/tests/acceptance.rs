//! Acceptance checks for the whole engine, one test per claim. Every check
//! is exact: polynomial and rational-function comparisons are canonical
//! equality, numeric comparisons are arbitrary-precision rationals, and the
//! few runtime ceilings are asserted directly.

use std::time::{Duration, Instant};

use wzkit_core::discovery::{default_ansatz, discover};
use wzkit_core::rational::{binomial, rat, ratio};
use wzkit_core::selftest::{
    gcd_divides, normalization_uniqueness, poly_ring_axioms, ratfunc_field_axioms,
    substitution_homomorphism, DEFAULT_SEED,
};
use wzkit_core::wz::{
    chaundy_bullard, chaundy_bullard_certificate, chaundy_bullard_pair, chaundy_bullard_term,
    check_boundary, initial_row_sum, partial_sum_closed_form, telescope_check, verify_pair,
};
use wzkit_core::{BigRational, LatticePoint, MultiPoly, RatPoint, RationalFunction, Var};

/// F(n,k) written out directly: binom(n+k,k) x^k (1-x)^(n+1) with the
/// binomial taken from the factorial oracle. Independent of the shift
/// quotient machinery under test.
fn expanded_term(n: u32, k: u32) -> MultiPoly {
    let x = MultiPoly::var(Var::X);
    let one_minus_x = &MultiPoly::one() - &x;
    let c = BigRational::from_integer(binomial(u64::from(n + k), u64::from(k)));
    (&x.pow(k) * &one_minus_x.pow(n + 1)).scale(&c)
}

#[test]
fn residual_of_builtin_pair_is_exactly_zero() {
    let start = Instant::now();
    let f = chaundy_bullard_term();
    let r = chaundy_bullard_certificate();
    let residual = verify_pair(&f, &r).expect("k-shift preserves nonzero denominators");
    assert!(residual.is_zero(), "residual: {residual}");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:.2?}");
    println!("pass: divided identity residual is exactly 0 in {elapsed:.2?}");
}

#[test]
fn boundary_column_of_builtin_pair_vanishes() {
    let pair = chaundy_bullard_pair();
    let clean = check_boundary(&pair).expect("k = 0 hits no pole of the certificate");
    assert!(clean, "R(n,0) is not the zero rational function");
    println!("pass: R(n,0) = 0, so every G(j,0) vanishes");
}

#[test]
fn initial_row_sums_to_one_minus_x_power() {
    let f = chaundy_bullard_term();
    for m in 0..=30u32 {
        let got = initial_row_sum(&f, m).expect("row evaluation is pole-free");
        let expected = &MultiPoly::one() - &MultiPoly::var(Var::X).pow(m + 1);
        assert_eq!(got, RationalFunction::from_poly(expected), "m = {m}");
    }
    println!("pass: sum of row zero equals 1 - x^(m+1) for m = 0..=30");
}

#[test]
fn telescoped_sum_matches_over_the_grid() {
    let start = Instant::now();
    let pair = chaundy_bullard_pair();
    for m in 0..=12u32 {
        for n in 0..=12u32 {
            let sides = telescope_check(&pair, m, n).expect("grid evaluation is pole-free");
            assert_eq!(sides.lhs, sides.rhs, "m = {m}, n = {n}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:.2?}");
    println!("pass: telescoping lhs = rhs on the 13x13 grid in {elapsed:.2?}");
}

#[test]
fn partial_sums_match_their_closed_form() {
    let pair = chaundy_bullard_pair();
    for m in 0..=12u32 {
        for n in 0..=12u32 {
            let form = partial_sum_closed_form(&pair, m, n).expect("grid evaluation is pole-free");
            assert_eq!(form.sum, form.closed, "m = {m}, n = {n}");
        }
    }
    println!("pass: row sums equal 1 - x^(m+1) sum binom(m+j,j)(1-x)^j on the 13x13 grid");
}

#[test]
fn identity_expands_to_one_over_the_large_grid() {
    let start = Instant::now();
    let one = MultiPoly::one();
    for m in 0..=40u32 {
        for n in 0..=40u32 {
            assert_eq!(chaundy_bullard(m, n), one, "m = {m}, n = {n}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:.2?}");
    println!("pass: identity polynomial is 1 on the 41x41 grid in {elapsed:.2?}");
}

#[test]
fn discovery_recovers_the_canonical_certificate() {
    let f = chaundy_bullard_term();
    let ansatz = default_ansatz(&f, 2, 0);
    let found = discover(&f, &ansatz).expect("certificate exists at degree bound 2");
    assert_eq!(found, chaundy_bullard_certificate());
    assert_eq!(found.to_string(), "(-k)/(n + 1)");
    let residual = verify_pair(&f, &found).expect("k-shift preserves nonzero denominators");
    assert!(residual.is_zero());
    println!("pass: degree-2 ansatz rediscovers (-k)/(n + 1) and it verifies");
}

#[test]
fn lattice_evaluation_agrees_with_the_expanded_oracle() {
    let f = chaundy_bullard_term();
    for n in 0..=12u32 {
        for k in 0..=12u32 {
            let got = f
                .eval_point(LatticePoint::new(n, k))
                .expect("grid evaluation is pole-free");
            let oracle = RationalFunction::from_poly(expanded_term(n, k));
            assert_eq!(got, oracle, "n = {n}, k = {k}");
        }
    }
    println!("pass: path evaluation matches the factorial expansion on the 13x13 grid");
}

#[test]
fn kernel_property_suites_pass_a_thousand_cases() {
    let suites = [
        poly_ring_axioms(1000, DEFAULT_SEED),
        ratfunc_field_axioms(1000, DEFAULT_SEED),
        gcd_divides(1000, DEFAULT_SEED),
        normalization_uniqueness(1000, DEFAULT_SEED),
        substitution_homomorphism(1000, DEFAULT_SEED),
    ];
    for suite in &suites {
        assert!(
            suite.passed(),
            "{}: {} failures, first: {:?}",
            suite.name,
            suite.failures.len(),
            suite.failures.first()
        );
        assert_eq!(suite.cases, 1000);
    }
    println!(
        "pass: 5 kernel suites x 1000 randomized cases at seed {} with no failures",
        DEFAULT_SEED
    );
}

#[test]
fn raw_difference_identity_holds_numerically() {
    let pair = chaundy_bullard_pair();
    let x = ratio(2, 7);
    let g = |j: u32, k: u32| -> BigRational {
        let at = RatPoint::new(rat(i64::from(j)), rat(i64::from(k)), x.clone());
        let rv = pair
            .certificate()
            .eval(&at)
            .expect("certificate is pole-free on the grid");
        let fv = pair
            .term()
            .eval_numeric(LatticePoint::new(j, k), &x)
            .expect("term is defined on the grid");
        rv * fv
    };
    for n in 0..=10u32 {
        for k in 0..=10u32 {
            let up = pair
                .term()
                .eval_numeric(LatticePoint::new(n + 1, k), &x)
                .expect("term is defined on the grid");
            let here = pair
                .term()
                .eval_numeric(LatticePoint::new(n, k), &x)
                .expect("term is defined on the grid");
            assert_eq!(up - here, g(n, k + 1) - g(n, k), "n = {n}, k = {k}");
        }
    }
    println!("pass: F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k) at x = 2/7 on the 11x11 grid");
}
