//! Textual input language for hypergeometric terms and certificates.
//!
//! Terms are products of factors:
//!
//! ```text
//! binom(n+k,k) * x^k * (1-x)^(n+1)
//! ```
//!
//! where each factor is `binom(A, B)` with A, B affine integer forms in n
//! and k, a polynomial in x raised to an affine exponent, or a rational
//! constant. Binomial arguments may shift by at most 1 per variable, which
//! is exactly what keeps the shift quotients rational.
//!
//! Certificates are ordinary rational-function expressions in n, k, x:
//!
//! ```text
//! -k/(n+1)
//! ```
//!
//! built from `+ - * / ^` with integer literals and parentheses. The
//! canonical rendering of any polynomial or rational function re-parses
//! under this grammar.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::ArithError;
use crate::hyperterm::{HyperTerm, TermError};
use crate::poly::{MultiPoly, Var};
use crate::ratfunc::RationalFunction;
use crate::rational::{binomial_signed, BigRational};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Parse-time failures, with 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Unexpected token; carries what was expected and what was found.
    Syntax { expected: String, found: String },
    /// A binomial argument shifts by more than 1 in n or k.
    UnsupportedShift { coefficient: BigInt },
    /// An exponent is not an affine form in n and k.
    NonAffineExponent,
    /// A certificate denominator is identically zero.
    ZeroDenominator,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.col)?;
        match &self.kind {
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "expected {}, found {}", expected, found)
            }
            ParseErrorKind::UnsupportedShift { coefficient } => write!(
                f,
                "binomial arguments may shift by 0 or 1 per variable (got coefficient {})",
                coefficient
            ),
            ParseErrorKind::NonAffineExponent => {
                write!(f, "exponent must be an affine form a + b*n + c*k")
            }
            ParseErrorKind::ZeroDenominator => {
                write!(f, "denominator is identically zero")
            }
        }
    }
}

impl std::error::Error for ParseError {}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(v) => write!(f, "'{v}'"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Comma => write!(f, "','"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: u32,
    col: u32,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = match c {
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                Tok::Int(digits.parse().expect("digits parse as BigInt"))
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                Tok::Ident(name)
            }
            '+' => {
                bump(&mut chars);
                Tok::Plus
            }
            '-' => {
                bump(&mut chars);
                Tok::Minus
            }
            '*' => {
                bump(&mut chars);
                Tok::Star
            }
            '/' => {
                bump(&mut chars);
                Tok::Slash
            }
            '^' => {
                bump(&mut chars);
                Tok::Caret
            }
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            ',' => {
                bump(&mut chars);
                Tok::Comma
            }
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    kind: ParseErrorKind::Syntax {
                        expected: "a token".into(),
                        found: format!("'{other}'"),
                    },
                })
            }
        };
        out.push(Spanned {
            tok,
            line: tline,
            col: tcol,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// Token cursor
// ---------------------------------------------------------------------------

struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Cursor {
            toks: lex(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if &self.peek().tok == want {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: &Tok, expected: &str) -> Result<Spanned, ParseError> {
        if &self.peek().tok == want {
            Ok(self.next())
        } else {
            Err(self.syntax(expected))
        }
    }

    fn syntax(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            col: t.col,
            kind: ParseErrorKind::Syntax {
                expected: expected.into(),
                found: t.tok.to_string(),
            },
        }
    }

    fn at(&self, kind: ParseErrorKind) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            col: t.col,
            kind,
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().tok == Tok::End {
            Ok(())
        } else {
            Err(self.syntax("end of input"))
        }
    }
}

// ---------------------------------------------------------------------------
// Abstract syntax
// ---------------------------------------------------------------------------

/// An affine integer form a + b*n + c*k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub constant: BigInt,
    pub n_coeff: BigInt,
    pub k_coeff: BigInt,
}

impl Affine {
    fn zero() -> Self {
        Affine {
            constant: BigInt::zero(),
            n_coeff: BigInt::zero(),
            k_coeff: BigInt::zero(),
        }
    }

    /// As a polynomial in n and k.
    pub fn to_poly(&self) -> MultiPoly {
        let c = MultiPoly::constant(BigRational::from_integer(self.constant.clone()));
        let n = MultiPoly::var(Var::N).scale(&BigRational::from_integer(self.n_coeff.clone()));
        let k = MultiPoly::var(Var::K).scale(&BigRational::from_integer(self.k_coeff.clone()));
        &(&c + &n) + &k
    }
}

/// One factor of a term expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermFactor {
    /// binom(upper, lower) with affine arguments shifting by 0 or 1.
    Binom { upper: Affine, lower: Affine },
    /// base(x) ^ (affine exponent); plain factors get exponent 1.
    Power { base: MultiPoly, exp: Affine },
    /// A rational constant.
    Constant(BigRational),
}

/// Parsed term: a product of factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermExpr {
    pub factors: Vec<TermFactor>,
}

/// Parsed certificate expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertExpr {
    Int(BigInt),
    Var(Var),
    Neg(Box<CertExpr>),
    Add(Box<CertExpr>, Box<CertExpr>),
    Sub(Box<CertExpr>, Box<CertExpr>),
    Mul(Box<CertExpr>, Box<CertExpr>),
    Div(Box<CertExpr>, Box<CertExpr>),
    Pow(Box<CertExpr>, u32),
}

// ---------------------------------------------------------------------------
// Term grammar
// ---------------------------------------------------------------------------

/// Parse a term expression: `["-"] factor { "*" factor }`. A leading minus
/// becomes a separate constant factor -1.
pub fn parse_term(src: &str) -> Result<TermExpr, ParseError> {
    let mut cur = Cursor::new(src)?;
    let mut factors = Vec::new();
    while cur.eat(&Tok::Minus) {
        factors.push(TermFactor::Constant(-BigRational::one()));
    }
    factors.push(term_factor(&mut cur)?);
    while cur.eat(&Tok::Star) {
        factors.push(term_factor(&mut cur)?);
    }
    cur.finish()?;
    Ok(TermExpr { factors })
}

fn term_factor(cur: &mut Cursor) -> Result<TermFactor, ParseError> {
    match cur.peek().tok.clone() {
        Tok::Ident(name) if name == "binom" => {
            cur.next();
            cur.expect(&Tok::LParen, "'(' after binom")?;
            let upper = affine(cur, AffineCtx::BinomArg)?;
            cur.expect(&Tok::Comma, "',' between binomial arguments")?;
            let lower = affine(cur, AffineCtx::BinomArg)?;
            cur.expect(&Tok::RParen, "')' closing binom")?;
            for coeff in [
                &upper.n_coeff,
                &upper.k_coeff,
                &lower.n_coeff,
                &lower.k_coeff,
            ] {
                if !coeff.is_zero() && !coeff.is_one() {
                    return Err(cur.at(ParseErrorKind::UnsupportedShift {
                        coefficient: coeff.clone(),
                    }));
                }
            }
            Ok(TermFactor::Binom { upper, lower })
        }
        Tok::Ident(name) if name == "x" => {
            cur.next();
            let exp = optional_exponent(cur)?;
            Ok(TermFactor::Power {
                base: MultiPoly::var(Var::X),
                exp,
            })
        }
        Tok::LParen => {
            cur.next();
            let base = x_poly_expr(cur)?;
            cur.expect(&Tok::RParen, "')'")?;
            let exp = optional_exponent(cur)?;
            Ok(TermFactor::Power { base, exp })
        }
        Tok::Int(_) => {
            let c = rational_literal(cur)?;
            // allow an exponent on a bare constant, e.g. 2^n
            if cur.peek().tok == Tok::Caret {
                let exp = optional_exponent(cur)?;
                return Ok(TermFactor::Power {
                    base: MultiPoly::constant(c),
                    exp,
                });
            }
            Ok(TermFactor::Constant(c))
        }
        _ => Err(cur.syntax("'binom', 'x', '(', a number, or '-'")),
    }
}

/// Where an affine form appears; decides how nonlinearity is reported.
#[derive(Clone, Copy, PartialEq, Eq)]
enum AffineCtx {
    BinomArg,
    Exponent,
}

fn nonlinear_err(cur: &Cursor, ctx: AffineCtx) -> ParseError {
    match ctx {
        AffineCtx::Exponent => cur.at(ParseErrorKind::NonAffineExponent),
        AffineCtx::BinomArg => cur.syntax("an affine form in n and k"),
    }
}

/// `^` followed by an affine exponent; absent means exponent 1.
fn optional_exponent(cur: &mut Cursor) -> Result<Affine, ParseError> {
    if !cur.eat(&Tok::Caret) {
        return Ok(Affine {
            constant: BigInt::one(),
            n_coeff: BigInt::zero(),
            k_coeff: BigInt::zero(),
        });
    }
    if cur.eat(&Tok::LParen) {
        let a = affine(cur, AffineCtx::Exponent)?;
        cur.expect(&Tok::RParen, "')' closing exponent")?;
        Ok(a)
    } else {
        // a single atom: integer, n, k, or -atom; a following '*' belongs
        // to the factor product, not the exponent
        let mut sign = BigInt::one();
        while cur.eat(&Tok::Minus) {
            sign = -sign;
        }
        let mut a = Affine::zero();
        match cur.peek().tok.clone() {
            Tok::Int(v) => {
                cur.next();
                a.constant = &sign * v;
            }
            Tok::Ident(name) if name == "n" => {
                cur.next();
                a.n_coeff = sign;
            }
            Tok::Ident(name) if name == "k" => {
                cur.next();
                a.k_coeff = sign;
            }
            _ => return Err(cur.syntax("an integer, 'n', or 'k'")),
        }
        // detect immediate nonlinearity such as x^n^2
        if cur.peek().tok == Tok::Caret {
            return Err(cur.at(ParseErrorKind::NonAffineExponent));
        }
        Ok(a)
    }
}

/// affine := ["-"] term { ("+"|"-") term }
fn affine(cur: &mut Cursor, ctx: AffineCtx) -> Result<Affine, ParseError> {
    let mut acc = Affine::zero();
    let mut sign = BigInt::one();
    if cur.eat(&Tok::Minus) {
        sign = -sign;
    }
    affine_term_into(cur, &sign, &mut acc, ctx)?;
    loop {
        let s = if cur.eat(&Tok::Plus) {
            BigInt::one()
        } else if cur.eat(&Tok::Minus) {
            -BigInt::one()
        } else {
            break;
        };
        affine_term_into(cur, &s, &mut acc, ctx)?;
    }
    Ok(acc)
}

/// One signed term of an affine form: `int`, `var`, `int * var`, or
/// `var * int`.
fn affine_term_into(
    cur: &mut Cursor,
    sign: &BigInt,
    acc: &mut Affine,
    ctx: AffineCtx,
) -> Result<(), ParseError> {
    match cur.peek().tok.clone() {
        Tok::Int(v) => {
            cur.next();
            if cur.eat(&Tok::Star) {
                let var_tok = cur.next();
                match var_tok.tok {
                    Tok::Ident(name) if name == "n" => acc.n_coeff += sign * &v,
                    Tok::Ident(name) if name == "k" => acc.k_coeff += sign * &v,
                    other => {
                        return Err(ParseError {
                            line: var_tok.line,
                            col: var_tok.col,
                            kind: ParseErrorKind::Syntax {
                                expected: "'n' or 'k'".into(),
                                found: other.to_string(),
                            },
                        })
                    }
                }
                // products of variables are nonlinear
                if matches!(cur.peek().tok, Tok::Star | Tok::Caret) {
                    return Err(nonlinear_err(cur, ctx));
                }
            } else {
                acc.constant += sign * &v;
            }
            Ok(())
        }
        Tok::Ident(name) if name == "n" || name == "k" => {
            cur.next();
            let coeff = if cur.eat(&Tok::Star) {
                match cur.peek().tok.clone() {
                    Tok::Int(v) => {
                        cur.next();
                        sign * &v
                    }
                    _ => return Err(nonlinear_err(cur, ctx)),
                }
            } else {
                sign.clone()
            };
            if cur.peek().tok == Tok::Caret {
                return Err(nonlinear_err(cur, ctx));
            }
            if name == "n" {
                acc.n_coeff += coeff;
            } else {
                acc.k_coeff += coeff;
            }
            Ok(())
        }
        _ => Err(cur.syntax("an integer, 'n', or 'k'")),
    }
}

/// Polynomial in x: `+ - *` with `^` to nonnegative integer powers.
fn x_poly_expr(cur: &mut Cursor) -> Result<MultiPoly, ParseError> {
    let mut acc = x_poly_term(cur)?;
    loop {
        if cur.eat(&Tok::Plus) {
            acc = &acc + &x_poly_term(cur)?;
        } else if cur.eat(&Tok::Minus) {
            acc = &acc - &x_poly_term(cur)?;
        } else {
            return Ok(acc);
        }
    }
}

fn x_poly_term(cur: &mut Cursor) -> Result<MultiPoly, ParseError> {
    let mut acc = x_poly_unary(cur)?;
    while cur.eat(&Tok::Star) {
        acc = &acc * &x_poly_unary(cur)?;
    }
    Ok(acc)
}

fn x_poly_unary(cur: &mut Cursor) -> Result<MultiPoly, ParseError> {
    if cur.eat(&Tok::Minus) {
        return Ok(-&x_poly_unary(cur)?);
    }
    let atom = match cur.peek().tok.clone() {
        Tok::Int(_) => MultiPoly::constant(rational_literal(cur)?),
        Tok::Ident(name) if name == "x" => {
            cur.next();
            MultiPoly::var(Var::X)
        }
        Tok::LParen => {
            cur.next();
            let inner = x_poly_expr(cur)?;
            cur.expect(&Tok::RParen, "')'")?;
            inner
        }
        _ => return Err(cur.syntax("'x', a number, or '('")),
    };
    if cur.eat(&Tok::Caret) {
        let e = nonneg_int(cur)?;
        return Ok(atom.pow(e));
    }
    Ok(atom)
}

/// integer or integer "/" integer
fn rational_literal(cur: &mut Cursor) -> Result<BigRational, ParseError> {
    let t = cur.next();
    let p = match t.tok {
        Tok::Int(v) => v,
        other => {
            return Err(ParseError {
                line: t.line,
                col: t.col,
                kind: ParseErrorKind::Syntax {
                    expected: "an integer".into(),
                    found: other.to_string(),
                },
            })
        }
    };
    if cur.peek().tok == Tok::Slash {
        // lookahead: only consume when a digit follows, so term-level
        // division (not in this grammar) still errors clearly
        if let Tok::Int(_) = cur.toks[cur.pos + 1].tok {
            cur.next();
            let t2 = cur.next();
            if let Tok::Int(q) = t2.tok {
                if q.is_zero() {
                    return Err(ParseError {
                        line: t2.line,
                        col: t2.col,
                        kind: ParseErrorKind::ZeroDenominator,
                    });
                }
                return Ok(BigRational::new(p, q));
            }
            unreachable!("lookahead checked an integer");
        }
    }
    Ok(BigRational::from_integer(p))
}

fn nonneg_int(cur: &mut Cursor) -> Result<u32, ParseError> {
    let t = cur.next();
    match t.tok {
        Tok::Int(v) => v.to_u32().ok_or(ParseError {
            line: t.line,
            col: t.col,
            kind: ParseErrorKind::Syntax {
                expected: "a small nonnegative exponent".into(),
                found: format!("'{v}'"),
            },
        }),
        other => Err(ParseError {
            line: t.line,
            col: t.col,
            kind: ParseErrorKind::Syntax {
                expected: "a nonnegative integer exponent".into(),
                found: other.to_string(),
            },
        }),
    }
}

// ---------------------------------------------------------------------------
// Term compilation
// ---------------------------------------------------------------------------

/// Errors raised while turning a parsed term into shift quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompileError {
    Term(TermError),
    Arith(ArithError),
}

impl fmt::Display for CompileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompileError::Term(e) => write!(f, "{e}"),
            CompileError::Arith(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CompileError {}

impl From<TermError> for CompileError {
    fn from(e: TermError) -> Self {
        CompileError::Term(e)
    }
}

impl From<ArithError> for CompileError {
    fn from(e: ArithError) -> Self {
        CompileError::Arith(e)
    }
}

/// Compile a parsed term to a validated [`HyperTerm`]: shift quotients are
/// assembled factor by factor and multiplied together.
pub fn compile_term(expr: &TermExpr) -> Result<HyperTerm, CompileError> {
    let mut acc = HyperTerm::constant_one();
    for f in &expr.factors {
        acc = acc.mul(&compile_factor(f)?);
    }
    // revalidate the assembled quotients
    Ok(HyperTerm::new(
        acc.base().clone(),
        acc.shift_n().clone(),
        acc.shift_k().clone(),
    )?)
}

fn compile_factor(f: &TermFactor) -> Result<HyperTerm, CompileError> {
    match f {
        TermFactor::Constant(c) => Ok(HyperTerm::new(
            RationalFunction::constant(c.clone()),
            RationalFunction::one(),
            RationalFunction::one(),
        )?),
        TermFactor::Power { base, exp } => {
            let base_rf = RationalFunction::from_poly(base.clone());
            let a = big_to_i64(&exp.constant)?;
            let b = big_to_i64(&exp.n_coeff)?;
            let c = big_to_i64(&exp.k_coeff)?;
            Ok(HyperTerm::new(
                base_rf.pow_i(a)?,
                base_rf.pow_i(b)?,
                base_rf.pow_i(c)?,
            )?)
        }
        TermFactor::Binom { upper, lower } => {
            let base_val = binomial_signed(&upper.constant, &lower.constant);
            let base = RationalFunction::constant(BigRational::from_integer(base_val));
            let rn = binom_quotient(upper, lower, &upper.n_coeff, &lower.n_coeff)?;
            let rk = binom_quotient(upper, lower, &upper.k_coeff, &lower.k_coeff)?;
            Ok(HyperTerm::new(base, rn, rk)?)
        }
    }
}

/// Shift quotient of binom(A, B) in one variable, by increment pattern:
///
/// ```text
/// (A+1, B)   ->  (A+1)/(A+1-B)
/// (A+1, B+1) ->  (A+1)/(B+1)
/// (A,   B+1) ->  (A-B)/(B+1)
/// (A,   B)   ->  1
/// ```
fn binom_quotient(
    upper: &Affine,
    lower: &Affine,
    up_inc: &BigInt,
    low_inc: &BigInt,
) -> Result<RationalFunction, CompileError> {
    let a = upper.to_poly();
    let b = lower.to_poly();
    let one = MultiPoly::one();
    let rf = |num: MultiPoly, den: MultiPoly| -> Result<RationalFunction, CompileError> {
        Ok(RationalFunction::new(num, den)?)
    };
    match (up_inc.is_one(), low_inc.is_one()) {
        (false, false) => Ok(RationalFunction::one()),
        (true, false) => rf(&a + &one, &(&a + &one) - &b),
        (true, true) => rf(&a + &one, &b + &one),
        (false, true) => rf(&a - &b, &b + &one),
    }
}

fn big_to_i64(v: &BigInt) -> Result<i64, ArithError> {
    // exponents beyond i64 are unrepresentable inputs, not arithmetic; but
    // they can only arise from absurd literals, so treat them as poles
    v.to_i64().ok_or(ArithError::PoleHit)
}

// ---------------------------------------------------------------------------
// Certificate grammar
// ---------------------------------------------------------------------------

/// Parse a certificate: a rational-function expression in n, k, x.
/// The result is canonical.
pub fn parse_cert(src: &str) -> Result<RationalFunction, ParseError> {
    let expr = parse_cert_expr(src)?;
    eval_cert(&expr).map_err(|kind| ParseError {
        line: 1,
        col: 1,
        kind,
    })
}

/// Parse a certificate to its syntax tree without evaluating.
pub fn parse_cert_expr(src: &str) -> Result<CertExpr, ParseError> {
    let mut cur = Cursor::new(src)?;
    let e = cert_sum(&mut cur)?;
    cur.finish()?;
    Ok(e)
}

fn cert_sum(cur: &mut Cursor) -> Result<CertExpr, ParseError> {
    let mut acc = cert_product(cur)?;
    loop {
        if cur.eat(&Tok::Plus) {
            acc = CertExpr::Add(Box::new(acc), Box::new(cert_product(cur)?));
        } else if cur.eat(&Tok::Minus) {
            acc = CertExpr::Sub(Box::new(acc), Box::new(cert_product(cur)?));
        } else {
            return Ok(acc);
        }
    }
}

fn cert_product(cur: &mut Cursor) -> Result<CertExpr, ParseError> {
    let mut acc = cert_unary(cur)?;
    loop {
        if cur.eat(&Tok::Star) {
            acc = CertExpr::Mul(Box::new(acc), Box::new(cert_unary(cur)?));
        } else if cur.eat(&Tok::Slash) {
            acc = CertExpr::Div(Box::new(acc), Box::new(cert_unary(cur)?));
        } else {
            return Ok(acc);
        }
    }
}

fn cert_unary(cur: &mut Cursor) -> Result<CertExpr, ParseError> {
    if cur.eat(&Tok::Minus) {
        return Ok(CertExpr::Neg(Box::new(cert_unary(cur)?)));
    }
    cert_power(cur)
}

fn cert_power(cur: &mut Cursor) -> Result<CertExpr, ParseError> {
    let atom = cert_atom(cur)?;
    if cur.eat(&Tok::Caret) {
        let e = nonneg_int(cur)?;
        return Ok(CertExpr::Pow(Box::new(atom), e));
    }
    Ok(atom)
}

fn cert_atom(cur: &mut Cursor) -> Result<CertExpr, ParseError> {
    match cur.peek().tok.clone() {
        Tok::Int(v) => {
            cur.next();
            Ok(CertExpr::Int(v))
        }
        Tok::Ident(name) => {
            let var = match name.as_str() {
                "n" => Var::N,
                "k" => Var::K,
                "x" => Var::X,
                _ => return Err(cur.syntax("'n', 'k', or 'x'")),
            };
            cur.next();
            Ok(CertExpr::Var(var))
        }
        Tok::LParen => {
            cur.next();
            let inner = cert_sum(cur)?;
            cur.expect(&Tok::RParen, "')'")?;
            Ok(inner)
        }
        _ => Err(cur.syntax("a number, a variable, '-', or '('")),
    }
}

/// Evaluate a certificate tree to a canonical rational function.
pub fn eval_cert(e: &CertExpr) -> Result<RationalFunction, ParseErrorKind> {
    match e {
        CertExpr::Int(v) => Ok(RationalFunction::constant(BigRational::from_integer(
            v.clone(),
        ))),
        CertExpr::Var(v) => Ok(RationalFunction::var(*v)),
        CertExpr::Neg(inner) => Ok(-&eval_cert(inner)?),
        CertExpr::Add(a, b) => Ok(&eval_cert(a)? + &eval_cert(b)?),
        CertExpr::Sub(a, b) => Ok(&eval_cert(a)? - &eval_cert(b)?),
        CertExpr::Mul(a, b) => Ok(&eval_cert(a)? * &eval_cert(b)?),
        CertExpr::Div(a, b) => eval_cert(a)?
            .div(&eval_cert(b)?)
            .map_err(|_| ParseErrorKind::ZeroDenominator),
        CertExpr::Pow(a, e) => {
            let base = eval_cert(a)?;
            let mut acc = RationalFunction::one();
            for _ in 0..*e {
                acc = &acc * &base;
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperterm::LatticePoint;
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

    fn compile(src: &str) -> HyperTerm {
        compile_term(&parse_term(src).unwrap()).unwrap()
    }

    #[test]
    fn parse_and_compile_binomial() {
        // binom(n+k,k): rn = (n+k+1)/(n+1), rk = (n+k+1)/(k+1), base 1
        let t = compile("binom(n+k,k)");
        let nk1 = &(&n() + &k()) + &one();
        assert_eq!(t.shift_n(), &rf(nk1.clone(), &n() + &one()));
        assert_eq!(t.shift_k(), &rf(nk1, &k() + &one()));
        assert!(t.base().is_one());
    }

    #[test]
    fn compile_power_factor() {
        // (1-x)^(n+1): rn = 1-x, rk = 1, base = 1-x
        let t = compile("(1-x)^(n+1)");
        let omx = RationalFunction::from_poly(&one() - &x());
        assert_eq!(t.shift_n(), &omx);
        assert!(t.shift_k().is_one());
        assert_eq!(t.base(), &omx);
    }

    #[test]
    fn compile_x_power() {
        // x^k: rn = 1, rk = x, base = 1
        let t = compile("x^k");
        assert!(t.shift_n().is_one());
        assert_eq!(t.shift_k(), &RationalFunction::from_poly(x()));
        assert!(t.base().is_one());
    }

    #[test]
    fn compile_constant() {
        let t = compile("1");
        assert!(t.base().is_one());
        let t2 = compile("-3/4");
        assert_eq!(t2.base(), &RationalFunction::constant(ratio(-3, 4)));
    }

    #[test]
    fn full_builtin_term_quotients() {
        let t = compile("binom(n+k,k) * x^k * (1-x)^(n+1)");
        let nk1 = &(&n() + &k()) + &one();
        let rn = rf(&nk1 * &(&one() - &x()), &n() + &one());
        let rk = rf(&nk1 * &x(), &k() + &one());
        assert_eq!(t.shift_n(), &rn);
        assert_eq!(t.shift_k(), &rk);
        assert_eq!(t.base(), &RationalFunction::from_poly(&one() - &x()));
    }

    #[test]
    fn compile_matches_factorwise_product() {
        let whole = compile("binom(n+k,k) * x^k * (1-x)^(n+1)");
        let parts = compile("binom(n+k,k)")
            .mul(&compile("x^k"))
            .mul(&compile("(1-x)^(n+1)"));
        assert_eq!(whole, parts);
    }

    #[test]
    fn unsupported_shift_is_rejected() {
        let err = parse_term("binom(2*n+k, k)").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnsupportedShift { .. }));
    }

    #[test]
    fn non_affine_exponent_is_rejected() {
        let err = parse_term("x^(n*k)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NonAffineExponent);
        let err2 = parse_term("x^(n^2)").unwrap_err();
        assert_eq!(err2.kind, ParseErrorKind::NonAffineExponent);
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse_term("binom(n+k").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax { .. }));
        assert_eq!(err.line, 1);
        assert_eq!(err.col, 10);
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = compile("binom(n+k,k)*x^k*(1-x)^(n+1)");
        let b = compile("  binom( n + k , k )\n * x^k * ( 1 - x )^( n + 1 )  ");
        assert_eq!(a, b);
    }

    #[test]
    fn binomial_base_uses_generalized_convention() {
        // binom(n+k+2, k+1) at (0,0) is C(2,1) = 2
        let t = compile("binom(n+k+2, k+1)");
        assert_eq!(t.base(), &RationalFunction::from_int(2));
    }

    #[test]
    fn parse_cert_builtin_certificate() {
        let r = parse_cert("-k/(n+1)").unwrap();
        assert_eq!(r, rf(-&k(), &n() + &one()));
    }

    #[test]
    fn parse_cert_zero() {
        assert!(parse_cert("0").unwrap().is_zero());
    }

    #[test]
    fn parse_cert_zero_denominator() {
        let err = parse_cert("k/(n-n)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ZeroDenominator);
    }

    #[test]
    fn parse_cert_precedence() {
        // 1/2*x is (1/2)*x; x^2 binds tighter than unary minus
        let half_x = parse_cert("1/2*x").unwrap();
        assert_eq!(half_x, RationalFunction::from_poly(x().scale(&ratio(1, 2))));
        let neg_sq = parse_cert("-x^2").unwrap();
        assert_eq!(
            neg_sq,
            RationalFunction::from_poly(-&MultiPoly::from_monomial(
                Monomial::var(Var::X).pow(2),
                rat(1)
            ))
        );
    }

    #[test]
    fn cert_rendering_round_trips() {
        let cases = [
            "-k/(n+1)",
            "(k - (n+k+1)*x)/(n+1)",
            "0",
            "(n^2 - 2*n*k + k^2)/(x + 7)",
            "1/2*x^2 - 1/3",
            "-(n*k*x)/(n + k + 1)",
        ];
        for src in cases {
            let parsed = parse_cert(src).unwrap();
            let rendered = parsed.to_string();
            let reparsed = parse_cert(&rendered).unwrap();
            assert_eq!(
                parsed, reparsed,
                "round trip failed for {src} -> {rendered}"
            );
        }
    }

    #[test]
    fn compiled_term_evaluates_like_the_expanded_form() {
        let t = compile("binom(n+k,k) * x^k * (1-x)^(n+1)");
        // F(1,1) = 2x(1-x)^2
        let got = t.eval_point(LatticePoint::new(1, 1)).unwrap();
        let expected = RationalFunction::from_poly((&x() * &(&one() - &x()).pow(2)).scale(&rat(2)));
        assert_eq!(got, expected);
    }
}
