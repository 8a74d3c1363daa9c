//! Multivariate polynomial GCD over Q by evaluation and interpolation.
//!
//! gcd(a, b) is computed by picking the highest-precedence variable present
//! as the main variable, splitting both inputs into content (gcd of the
//! coefficients, a polynomial in the remaining variables) and primitive
//! part, and recombining. The gcd of the primitive parts is found by
//! mapping out one of the remaining variables: substituting integers for
//! it yields images with one variable fewer, their gcds are lifted back by
//! Newton interpolation, and the candidate is confirmed by exact division
//! into both inputs. Univariate pairs bottom out in an integer remainder
//! sequence. Interpolating the quantity
//!
//! ```text
//! H = gamma * g / lc(g),   gamma = gcd(lc(a), lc(b))
//! ```
//!
//! instead of g itself pins the leading coefficient of every image, so the
//! scalar normalization chosen for an image gcd cancels out. Results are
//! normalized to a monic leading coefficient under the canonical monomial
//! order, so scalar content is discarded: gcd(6(n+1)^2, 4(n+1)) = n + 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::ArithError;
use crate::poly::{MultiPoly, Var};
use crate::rational::BigRational;

/// Greatest common divisor, monic under the canonical order.
///
/// Errors with [`ArithError::BothZero`] when both inputs are zero.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, ArithError> {
    if a.is_zero() && b.is_zero() {
        return Err(ArithError::BothZero);
    }
    Ok(gcd_inner(a, b))
}

/// GCD assuming not both inputs are zero; always returns a monic result.
pub(crate) fn gcd_inner(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        // nonzero constants are units in Q[n,k,x]
        return MultiPoly::one();
    }
    // main variable: highest precedence occurring in either input
    let var = Var::ALL
        .into_iter()
        .find(|&v| !a.is_free_of(v) || !b.is_free_of(v))
        .expect("non-constant polynomial has a variable");
    if a.is_free_of(var) {
        // a common divisor is free of var, hence divides b's content
        return gcd_inner(a, &content_in(b, var));
    }
    if b.is_free_of(var) {
        return gcd_inner(&content_in(a, var), b);
    }

    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let gc = gcd_inner(&ca, &cb);
    let big = a.exact_div(&ca).expect("content divides");
    let small = b.exact_div(&cb).expect("content divides");
    let gp = match lowest_other_var(&big, &small, var) {
        None => univariate_gcd(&big, &small, var),
        Some(elim) => interpolated_gcd(&big, &small, var, elim),
    };
    (&gc * &gp).monic()
}

/// Lowest-precedence variable besides `var` occurring in either input.
fn lowest_other_var(a: &MultiPoly, b: &MultiPoly, var: Var) -> Option<Var> {
    Var::ALL
        .into_iter()
        .rev()
        .find(|&v| v != var && (!a.is_free_of(v) || !b.is_free_of(v)))
}

/// Leading coefficient with respect to one variable, a polynomial in the
/// remaining variables. The input must be nonzero.
fn lead_in(p: &MultiPoly, var: Var) -> MultiPoly {
    p.coeffs_in(var).pop().expect("nonzero polynomial")
}

/// GCD of two primitive polynomials with positive degree in `var`, by
/// evaluating `elim` at integers, taking image gcds one variable down,
/// and interpolating back. The result is primitive in `var`.
fn interpolated_gcd(a: &MultiPoly, b: &MultiPoly, var: Var, elim: Var) -> MultiPoly {
    let la = lead_in(a, var);
    let lb = lead_in(b, var);
    let gamma = gcd_inner(&la, &lb);
    // H = gamma * g / lc(g) has degree in elim at most this bound, since
    // deg g <= deg of either input
    let bound = gamma.degree_in(elim).unwrap_or(0)
        + a.degree_in(elim)
            .unwrap_or(0)
            .min(b.degree_in(elim).unwrap_or(0));
    let needed = bound as usize + 1;

    let mut nodes: Vec<BigRational> = Vec::with_capacity(needed);
    let mut values: Vec<MultiPoly> = Vec::with_capacity(needed);
    let mut image_degree = u32::MAX;
    for alpha in candidate_points() {
        let at = MultiPoly::from_int(alpha);
        let bind = [(elim, at)];
        if la.substitute(&bind).is_zero() || lb.substitute(&bind).is_zero() {
            // the image drops degree in var, so it says nothing about g
            continue;
        }
        let u = gcd_inner(&a.substitute(&bind), &b.substitute(&bind));
        let d = u.degree_in(var).unwrap_or(0);
        if d == 0 {
            // the image pair is coprime in var and lifts stay coprime
            return MultiPoly::one();
        }
        if d > image_degree {
            continue;
        }
        if d < image_degree {
            image_degree = d;
            nodes.clear();
            values.clear();
        }
        // pin the leading coefficient: gamma(alpha) / lc(u) * u equals
        // gamma * g / lc(g) at alpha whenever the image was faithful
        let t = match gamma.substitute(&bind).exact_div(&lead_in(&u, var)) {
            Some(t) => t,
            None => continue,
        };
        nodes.push(BigRational::from_integer(alpha.into()));
        values.push(&t * &u);
        if nodes.len() < needed {
            continue;
        }
        let h = newton_interpolate(&nodes, &values, elim);
        if !h.is_zero() {
            let candidate = primitive_in(&h, var);
            if a.exact_div(&candidate).is_some() && b.exact_div(&candidate).is_some() {
                return candidate;
            }
        }
        // a stale image poisoned the batch; start a fresh one
        nodes.clear();
        values.clear();
    }
    unreachable!("interpolation points exhausted");
}

/// Small integers in the order 0, 1, -1, 2, -2, ...
fn candidate_points() -> impl Iterator<Item = i64> {
    (0..10_000i64).flat_map(|i| if i == 0 { vec![0] } else { vec![i, -i] })
}

/// Polynomial through the given nodes by divided differences. Values must
/// be free of `elim` and nodes pairwise distinct.
fn newton_interpolate(nodes: &[BigRational], values: &[MultiPoly], elim: Var) -> MultiPoly {
    let mut table: Vec<MultiPoly> = values.to_vec();
    for width in 1..table.len() {
        for i in (width..table.len()).rev() {
            let span = &nodes[i] - &nodes[i - width];
            let diff = &table[i] - &table[i - 1];
            table[i] = diff.scale(&(BigRational::one() / span));
        }
    }
    let x = MultiPoly::var(elim);
    let mut acc = table.pop().expect("at least one node");
    for (node, coeff) in nodes[..table.len()].iter().zip(table).rev() {
        let shifted = &x - &MultiPoly::constant(node.clone());
        acc = &(&acc * &shifted) + &coeff;
    }
    acc
}

/// GCD of two univariate primitive polynomials in `var`, via a primitive
/// integer remainder sequence. The result is primitive with positive
/// leading coefficient.
fn univariate_gcd(a: &MultiPoly, b: &MultiPoly, var: Var) -> MultiPoly {
    let g = euclid_gcd(int_coeffs(a, var), int_coeffs(b, var));
    let coeffs: Vec<MultiPoly> = g
        .into_iter()
        .map(|c| MultiPoly::constant(BigRational::from_integer(c)))
        .collect();
    MultiPoly::from_coeffs_in(var, &coeffs)
}

/// Coefficient vector of a univariate polynomial in `var`, cleared to
/// integers by the common denominator.
fn int_coeffs(p: &MultiPoly, var: Var) -> Vec<BigInt> {
    let rational: Vec<BigRational> = p
        .coeffs_in(var)
        .into_iter()
        .map(|c| c.as_constant().expect("univariate polynomial"))
        .collect();
    let denom_lcm = rational
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    rational
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect()
}

/// GCD of two integer coefficient vectors by a primitive pseudo-remainder
/// loop; integer content is stripped along the way and from the result.
/// Vectors may carry leading zeros; not both may be zero.
fn euclid_gcd(f: Vec<BigInt>, g: Vec<BigInt>) -> Vec<BigInt> {
    let trim = |v: &mut Vec<BigInt>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    };
    let strip = |v: &mut Vec<BigInt>| {
        let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !content.is_zero() && !content.is_one() {
            for c in v.iter_mut() {
                *c /= &content;
            }
        }
    };
    let (mut f, mut g) = (f, g);
    trim(&mut f);
    trim(&mut g);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        // f <- prem(f, g)
        while f.len() >= g.len() {
            let lf = f[f.len() - 1].clone();
            let lg = g[g.len() - 1].clone();
            let off = f.len() - g.len();
            for c in f.iter_mut() {
                *c *= &lg;
            }
            for (i, gc) in g.iter().enumerate() {
                f[off + i] -= &lf * gc;
            }
            trim(&mut f);
        }
        strip(&mut f);
        std::mem::swap(&mut f, &mut g);
    }
    strip(&mut f);
    if f.last().is_some_and(|c| c.is_negative()) {
        for c in f.iter_mut() {
            *c = -c.clone();
        }
    }
    f
}

/// Content w.r.t. one variable: gcd of the coefficient polynomials.
pub(crate) fn content_in(p: &MultiPoly, var: Var) -> MultiPoly {
    let coeffs = p.coeffs_in(var);
    let mut acc = MultiPoly::zero();
    for c in &coeffs {
        if c.is_zero() {
            continue;
        }
        acc = gcd_inner(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Primitive part w.r.t. one variable, with scalar content stripped.
pub(crate) fn primitive_in(p: &MultiPoly, var: Var) -> MultiPoly {
    if p.is_zero() {
        return MultiPoly::zero();
    }
    let cont = content_in(p, var);
    let pp = p.exact_div(&cont).expect("content divides");
    let sc = pp.scalar_content();
    pp.scale(&(BigRational::one() / sc))
}

/// Product of the distinct irreducible factors of p (squarefree part),
/// monic. p must be nonzero.
pub fn squarefree_part(p: &MultiPoly) -> MultiPoly {
    assert!(!p.is_zero(), "squarefree part of zero");
    if p.is_constant() {
        return MultiPoly::one();
    }
    let mut g = p.clone();
    for v in Var::ALL {
        let d = p.derivative(v);
        g = gcd_inner(&g, &d);
        if g.is_constant() {
            break;
        }
    }
    p.exact_div(&g).expect("gcd divides").monic()
}
