//! Randomized kernel property suites and desk-scale identity grids.
//!
//! Every suite draws its cases from a seeded generator, so a report is
//! reproducible from its seed. The algebra suites exercise the exact
//! arithmetic kernel (ring and field axioms, gcd divisibility, canonical
//! normalization, substitution as a homomorphism); the grid suites drive
//! the built-in pair through the telescoping identities at every (m, n)
//! up to a bound:
//!
//! ```text
//! sum_{k=0}^{m} F(n,k) telescopes,
//! (1-x)^(n+1) sum binom(n+k,k) x^k + x^(m+1) sum binom(m+k,k) (1-x)^k = 1
//! ```
//!
//! A suite passes when no case fails; failures carry enough text to
//! replay the case by hand.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsl::{compile_term, parse_cert, parse_term};
use crate::gcd::poly_gcd;
use crate::hyperterm::LatticePoint;
use crate::linsolve;
use crate::poly::{Monomial, MultiPoly, RatPoint, Var};
use crate::ratfunc::RationalFunction;
use crate::rational::{rat, ratio, BigRational};
use crate::wz::{
    chaundy_bullard, chaundy_bullard_pair, initial_row_sum, partial_sum_closed_form,
    telescope_check,
};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 1729;

/// What to run and how hard.
#[derive(Clone, Copy, Debug)]
pub struct SelftestConfig {
    /// Upper bound of the (m, n) grids.
    pub max_grid: u32,
    /// Seed for every randomized suite.
    pub seed: u64,
    /// Randomized cases per suite.
    pub cases: u32,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            max_grid: 12,
            seed: DEFAULT_SEED,
            cases: 1000,
        }
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: u32,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Run every suite with one configuration.
pub fn run_all(config: &SelftestConfig) -> Vec<SuiteReport> {
    vec![
        poly_ring_axioms(config.cases, config.seed),
        ratfunc_field_axioms(config.cases, config.seed),
        normalization_uniqueness(config.cases, config.seed),
        gcd_divides(config.cases, config.seed),
        substitution_homomorphism(config.cases, config.seed),
        evaluation_consistency(config.cases, config.seed),
        linear_solve_substitutes_back(config.cases, config.seed),
        render_parse_round_trip(config.cases, config.seed),
        path_independence(config.cases, config.seed),
        initial_row_grid(config.max_grid),
        telescope_grid(config.max_grid),
        partial_sum_grid(config.max_grid),
        identity_grid(config.max_grid),
        raw_difference_grid(config.max_grid.min(10)),
    ]
}

fn rng_for(seed: u64, tag: u64) -> ChaCha8Rng {
    // distinct streams per suite from one reportable seed
    ChaCha8Rng::seed_from_u64(seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_coeff(rng: &mut ChaCha8Rng) -> BigRational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn random_poly(rng: &mut ChaCha8Rng) -> MultiPoly {
    let terms = rng.gen_range(0..=4);
    let mut acc = MultiPoly::zero();
    for _ in 0..terms {
        let m = Monomial::new(
            rng.gen_range(0..=2),
            rng.gen_range(0..=2),
            rng.gen_range(0..=2),
        );
        acc = &acc + &MultiPoly::from_monomial(m, random_coeff(rng));
    }
    acc
}

fn random_nonzero_poly(rng: &mut ChaCha8Rng) -> MultiPoly {
    loop {
        let p = random_poly(rng);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_ratfunc(rng: &mut ChaCha8Rng) -> RationalFunction {
    RationalFunction::new(random_poly(rng), random_nonzero_poly(rng))
        .expect("denominator drawn nonzero")
}

fn random_point(rng: &mut ChaCha8Rng) -> RatPoint {
    RatPoint::new(random_coeff(rng), random_coeff(rng), random_coeff(rng))
}

fn record(failures: &mut Vec<String>, ok: bool, case: u32, what: &str) {
    if !ok {
        failures.push(format!("case {case}: {what}"));
    }
}

/// Commutativity, associativity, distributivity, and identities of the
/// polynomial ring.
pub fn poly_ring_axioms(cases: u32, seed: u64) -> SuiteReport {
    let mut rng = rng_for(seed, 1);
    let mut failures = Vec::new();
    for i in 0..cases {
        let (a, b, c) = (
            random_poly(&mut rng),
            random_poly(&mut rng),
            random_poly(&mut rng),
        );
        record(&mut failures, &a + &b == &b + &a, i, "addition commutes");
        record(
            &mut failures,
            &(&a + &b) + &c == &a + &(&b + &c),
            i,
            "addition associates",
        );
        record(
            &mut failures,
            &a * &b == &b * &a,
            i,
            "multiplication commutes",
        );
        record(
            &mut failures,
            &(&a * &b) * &c == &a * &(&b * &c),
            i,
            "multiplication associates",
        );
        record(
            &mut failures,
            &a * &(&b + &c) == &(&a * &b) + &(&a * &c),
            i,
            "multiplication distributes",
        );
        record(
            &mut failures,
            &a + &MultiPoly::zero() == a,
            i,
            "zero is neutral",
        );
        record(
            &mut failures,
            &a * &MultiPoly::one() == a,
            i,
            "one is neutral",
        );
        #[allow(clippy::eq_op)]
        let cancels = (&a - &a).is_zero();
        record(&mut failures, cancels, i, "subtraction cancels");
    }
    SuiteReport {
        name: "poly ring axioms",
        cases,
        failures,
    }
}

/// Field axioms of rational functions, including inverses.
pub fn ratfunc_field_axioms(cases: u32, seed: u64) -> SuiteReport {
    let mut rng = rng_for(seed, 2);
    let mut failures = Vec::new();
    for i in 0..cases {
        let (a, b, c) = (
            random_ratfunc(&mut rng),
            random_ratfunc(&mut rng),
            random_ratfunc(&mut rng),
        );
        record(&mut failures, &a + &b == &b + &a, i, "addition commutes");
        record(
            &mut failures,
            &(&a + &b) + &c == &a + &(&b + &c),
            i,
            "addition associates",
        );
        record(
            &mut failures,
            &a * &b == &b * &a,
            i,
            "multiplication commutes",
        );
        record(
            &mut failures,
            &a * &(&b + &c) == &(&a * &b) + &(&a * &c),
            i,
            "multiplication distributes",
        );
        record(
            &mut failures,
            (&a + &(-&a)).is_zero(),
            i,
            "additive inverse cancels",
        );
        if !a.is_zero() {
            let inv = a.inv().expect("nonzero inverts");
            record(
                &mut failures,
                (&a * &inv).is_one(),
                i,
                "multiplicative inverse",
            );
        }
        if !b.is_zero() {
            let q = a.div(&b).expect("nonzero divisor");
            record(&mut failures, &q * &b == a, i, "division round-trips");
        }
    }
    SuiteReport {
        name: "ratfunc field axioms",
        cases,
        failures,
    }
}

/// Common factors never change the canonical form, the denominator stays
/// monic, and numerator and denominator stay coprime.
pub fn normalization_uniqueness(cases: u32, seed: u64) -> SuiteReport {
    let mut rng = rng_for(seed, 3);
    let mut failures = Vec::new();
    for i in 0..cases {
        let a = random_poly(&mut rng);
        let b = random_nonzero_poly(&mut rng);
        let c = random_nonzero_poly(&mut rng);
        let plain = RationalFunction::new(a.clone(), b.clone()).expect("b nonzero");
        let inflated = RationalFunction::new(&a * &c, &b * &c).expect("b*c nonzero");
        record(&mut failures, plain == inflated, i, "common factor cancels");
        record(
            &mut failures,
            plain.den().monic() == *plain.den(),
            i,
            "denominator is monic",
        );
        if !plain.num().is_zero() {
            let g = poly_gcd(plain.num(), plain.den()).expect("not both zero");
            record(&mut failures, g.is_one(), i, "num and den are coprime");
        } else {
            record(
                &mut failures,
                plain.den().is_one(),
                i,
                "zero has denominator 1",
            );
        }
    }
    SuiteReport {
        name: "normalization uniqueness",
        cases,
        failures,
    }
}

/// gcd output divides both inputs and is symmetric.
pub fn gcd_divides(cases: u32, seed: u64) -> SuiteReport {
    let mut rng = rng_for(seed, 4);
    let mut failures = Vec::new();
    for i in 0..cases {
        let p = random_poly(&mut rng);
        let q = random_poly(&mut rng);
        if p.is_zero() && q.is_zero() {
            continue;
        }
        let g = poly_gcd(&p, &q).expect("not both zero");
        record(
            &mut failures,
            p.exact_div(&g).is_some(),
            i,
            "gcd divides first input",
        );
        record(
            &mut failures,
            q.exact_div(&g).is_some(),
            i,
            "gcd divides second input",
        );
        let g_rev = poly_gcd(&q, &p).expect("not both zero");
        record(&mut failures, g == g_rev, i, "gcd is symmetric");
    }
    SuiteReport {
        name: "gcd divides",
        cases,
        failures,
    }
}

/// Substituting polynomials commutes with ring operations.
pub fn substitution_homomorphism(cases: u32, seed: u64) -> SuiteReport {
    let mut rng = rng_for(seed, 5);
    let mut failures = Vec::new();
    for i in 0..cases {
        let p = random_poly(&mut rng);
        let q = random_poly(&mut rng);
        let bindings = [
            (Var::N, random_poly(&mut rng)),
            (Var::K, random_poly(&mut rng)),
        ];
        let sum = (&p + &q).substitute(&bindings);
        record(
            &mut failures,
            sum == &p.substitute(&bindings) + &q.substitute(&bindings),
            i,
            "substitution respects addition",
        );
        let prod = (&p * &q).substitute(&bindings);
        record(
            &mut failures,
            prod == &p.substitute(&bindings) * &q.substitute(&bindings),
            i,
            "substitution respects multiplication",
        );
    }
    SuiteReport {
        name: "substitution homomorphism",
        cases,
        failures,
    }
}

/// Point evaluation agrees with constant substitution.
pub fn evaluation_consistency(cases: u32, seed: u64) -> SuiteReport {
    let mut rng = rng_for(seed, 6);
    let mut failures = Vec::new();
    for i in 0..cases {
        let p = random_poly(&mut rng);
        let at = random_point(&mut rng);
        let direct = p.eval(&at);
        let via_subst = p
            .substitute(&[
                (Var::N, MultiPoly::constant(at.n.clone())),
                (Var::K, MultiPoly::constant(at.k.clone())),
                (Var::X, MultiPoly::constant(at.x.clone())),
            ])
            .as_constant()
            .expect("fully bound polynomial is constant");
        record(
            &mut failures,
            direct == via_subst,
            i,
            "eval matches substitution",
        );
    }
    SuiteReport {
        name: "evaluation consistency",
        cases,
        failures,
    }
}

/// Solutions found by the exact solver satisfy the original system.
pub fn linear_solve_substitutes_back(cases: u32, seed: u64) -> SuiteReport {
    let mut rng = rng_for(seed, 7);
    let mut failures = Vec::new();
    for i in 0..cases {
        let rows = rng.gen_range(0..=4usize);
        let cols = rng.gen_range(0..=4usize);
        let matrix: Vec<Vec<BigRational>> = (0..rows)
            .map(|_| (0..cols).map(|_| random_coeff(&mut rng)).collect())
            .collect();
        let x0: Vec<BigRational> = (0..cols).map(|_| random_coeff(&mut rng)).collect();
        let rhs: Vec<BigRational> = matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&x0)
                    .map(|(a, b)| a * b)
                    .fold(BigRational::zero(), |acc, v| acc + v)
            })
            .collect();
        match linsolve::solve(&matrix, &rhs) {
            None => record(
                &mut failures,
                false,
                i,
                "consistent-by-construction system reported unsolvable",
            ),
            Some(sol) => {
                let back: Vec<BigRational> = matrix
                    .iter()
                    .map(|row| {
                        row.iter()
                            .zip(&sol)
                            .map(|(a, b)| a * b)
                            .fold(BigRational::zero(), |acc, v| acc + v)
                    })
                    .collect();
                record(&mut failures, back == rhs, i, "solution substitutes back");
            }
        }
    }
    SuiteReport {
        name: "linear solve substitutes back",
        cases,
        failures,
    }
}

/// Canonical rendering reparses to the same canonical form.
pub fn render_parse_round_trip(cases: u32, seed: u64) -> SuiteReport {
    let mut rng = rng_for(seed, 8);
    let mut failures = Vec::new();
    for i in 0..cases {
        let r = random_ratfunc(&mut rng);
        let rendered = r.to_string();
        match parse_cert(&rendered) {
            Ok(back) => record(
                &mut failures,
                back == r,
                i,
                &format!("round trip changed value: {rendered}"),
            ),
            Err(e) => record(
                &mut failures,
                false,
                i,
                &format!("rendering failed to reparse: {rendered} ({e})"),
            ),
        }
    }
    SuiteReport {
        name: "render/parse round trip",
        cases,
        failures,
    }
}

/// Term evaluation is independent of the lattice path taken.
pub fn path_independence(cases: u32, seed: u64) -> SuiteReport {
    let mut rng = rng_for(seed, 9);
    let mut failures = Vec::new();
    let pool: Vec<_> = [
        "binom(n+k,k) * x^k * (1-x)^(n+1)",
        "binom(n+k,k)",
        "x^k * (1-x)^n",
        "binom(n+k+1,k) * 2^n",
    ]
    .iter()
    .map(|src| compile_term(&parse_term(src).expect("pool source parses")).expect("pool compiles"))
    .collect();
    for i in 0..cases {
        let t = &pool[rng.gen_range(0..pool.len())];
        let n = rng.gen_range(0..=8u32);
        let k = rng.gen_range(0..=8u32);
        let canonical = t
            .eval_point(LatticePoint::new(n, k))
            .expect("pool terms are pole-free on this range");
        // alternate path: (0,0) -> (0,k) -> (n,k)
        let mut alt = t.base().clone();
        for j in 0..k {
            let step = t
                .shift_k()
                .at_lattice(0, i64::from(j))
                .expect("pole-free quotient");
            alt = &alt * &step;
        }
        for j in 0..n {
            let step = t
                .shift_n()
                .at_lattice(i64::from(j), i64::from(k))
                .expect("pole-free quotient");
            alt = &alt * &step;
        }
        record(
            &mut failures,
            canonical == alt,
            i,
            &format!("paths disagree at ({n},{k})"),
        );
    }
    SuiteReport {
        name: "path independence",
        cases,
        failures,
    }
}

/// Initial row sums equal 1 - x^(m+1) for m up to the bound.
pub fn initial_row_grid(max: u32) -> SuiteReport {
    let f = crate::wz::chaundy_bullard_term();
    let x = MultiPoly::var(Var::X);
    let mut failures = Vec::new();
    for m in 0..=max {
        let got = match initial_row_sum(&f, m) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("m = {m}: {e}"));
                continue;
            }
        };
        let expected = RationalFunction::from_poly(&MultiPoly::one() - &x.pow(m + 1));
        if got != expected {
            failures.push(format!("m = {m}: row sum is {got}"));
        }
    }
    SuiteReport {
        name: "initial row grid",
        cases: max + 1,
        failures,
    }
}

/// Telescoping sides agree on the whole (m, n) grid.
pub fn telescope_grid(max: u32) -> SuiteReport {
    let pair = chaundy_bullard_pair();
    let mut failures = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            match telescope_check(&pair, m, n) {
                Ok(sides) if sides.lhs == sides.rhs => {}
                Ok(sides) => failures.push(format!(
                    "(m,n) = ({m},{n}): lhs {} != rhs {}",
                    sides.lhs, sides.rhs
                )),
                Err(e) => failures.push(format!("(m,n) = ({m},{n}): {e}")),
            }
        }
    }
    SuiteReport {
        name: "telescope grid",
        cases: (max + 1) * (max + 1),
        failures,
    }
}

/// Row sums match the closed form on the whole (m, n) grid.
pub fn partial_sum_grid(max: u32) -> SuiteReport {
    let pair = chaundy_bullard_pair();
    let mut failures = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            match partial_sum_closed_form(&pair, m, n) {
                Ok(form) if form.sum == form.closed => {}
                Ok(form) => failures.push(format!(
                    "(m,n) = ({m},{n}): sum {} != closed {}",
                    form.sum, form.closed
                )),
                Err(e) => failures.push(format!("(m,n) = ({m},{n}): {e}")),
            }
        }
    }
    SuiteReport {
        name: "partial sum grid",
        cases: (max + 1) * (max + 1),
        failures,
    }
}

/// The identity expands to the constant 1 on the whole (m, n) grid.
pub fn identity_grid(max: u32) -> SuiteReport {
    let mut failures = Vec::new();
    for m in 0..=max {
        for n in 0..=max {
            let p = chaundy_bullard(m, n);
            if !p.is_one() {
                failures.push(format!("(m,n) = ({m},{n}): expansion is {p}"));
            }
        }
    }
    SuiteReport {
        name: "identity grid",
        cases: (max + 1) * (max + 1),
        failures,
    }
}

/// The undivided pair identity holds numerically at x = 2/7.
pub fn raw_difference_grid(max: u32) -> SuiteReport {
    let pair = chaundy_bullard_pair();
    let f = pair.term();
    let xv = ratio(2, 7);
    let x_point = RatPoint::new(rat(0), rat(0), xv.clone());
    let mut failures = Vec::new();
    let fv = |n: u32, k: u32| {
        f.eval_numeric(LatticePoint::new(n, k), &xv)
            .expect("pole-free at x = 2/7")
    };
    let gv = |n: u32, k: u32| {
        let r = pair
            .certificate()
            .at_lattice(i64::from(n), i64::from(k))
            .expect("certificate defined on the grid");
        r.eval(&x_point).expect("pole-free at x = 2/7") * fv(n, k)
    };
    for n in 0..=max {
        for k in 0..=max {
            let lhs = fv(n + 1, k) - fv(n, k);
            let rhs = gv(n, k + 1) - gv(n, k);
            if lhs != rhs {
                failures.push(format!("(n,k) = ({n},{k}): {lhs} != {rhs}"));
            }
        }
    }
    SuiteReport {
        name: "raw difference grid",
        cases: (max + 1) * (max + 1),
        failures,
    }
}
