//! The text syntax shared by the library, certificate files and the CLI.
//!
//! Field elements are integers (prime subfield) or coordinate vectors
//! `[c0,c1,...]` in the basis `1, g, ..., g^{k-1}`; polynomials print as
//! `c_d*t^d + ... + c_0`; rational functions as `num / den`; places as `t`,
//! `t - c`, `irr:<poly>` or `inf`. Parsing accepts arbitrary expressions built
//! from `+ - * / ^`, parentheses, integers, vectors and variables.

use std::fmt;

use crate::base_fields::{Field, FieldSpec, Fq, Place, Poly, RationalFunction};
use crate::error::{Error, Result};

/// Largest absolute exponent accepted by the parser.
pub const MAX_EXPONENT: i64 = 10_000;

/// Parsed expression with source positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub pos: usize,
    pub kind: ExprKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(i64),
    Vector(Vec<i64>),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

fn perr<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos,
        msg: msg.into(),
    })
}

/// Largest nesting depth accepted by the parser.
pub const MAX_DEPTH: usize = 200;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            perr(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return perr(start, "expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse::<i64>()
            .or_else(|_| perr(start, "integer literal out of range"))
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        let v = self.int()?;
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos;
            if self.eat(b'+') {
                let rhs = self.term()?;
                lhs = Expr {
                    pos,
                    kind: ExprKind::Add(Box::new(lhs), Box::new(rhs)),
                };
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                lhs = Expr {
                    pos,
                    kind: ExprKind::Sub(Box::new(lhs), Box::new(rhs)),
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos;
            if self.eat(b'*') {
                let rhs = self.unary()?;
                lhs = Expr {
                    pos,
                    kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                };
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                lhs = Expr {
                    pos,
                    kind: ExprKind::Div(Box::new(lhs), Box::new(rhs)),
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return perr(self.pos, "expression nested too deeply");
        }
        Ok(())
    }

    fn unary(&mut self) -> Result<Expr> {
        self.skip_ws();
        let pos = self.pos;
        if self.eat(b'-') {
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr {
                pos,
                kind: ExprKind::Neg(Box::new(inner)),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        let pos = self.pos;
        if self.eat(b'^') {
            let epos = self.pos;
            let e = if self.eat(b'(') {
                let e = self.signed_int()?;
                self.expect(b')')?;
                e
            } else {
                self.signed_int()?
            };
            if e.abs() > MAX_EXPONENT {
                return perr(epos, format!("exponent {e} exceeds {MAX_EXPONENT}"));
            }
            return Ok(Expr {
                pos,
                kind: ExprKind::Pow(Box::new(base), e),
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        let pos = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.enter()?;
                let e = self.expr()?;
                self.expect(b')')?;
                self.depth -= 1;
                Ok(e)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut v = vec![self.signed_int()?];
                while self.eat(b',') {
                    v.push(self.signed_int()?);
                }
                self.expect(b']')?;
                Ok(Expr {
                    pos,
                    kind: ExprKind::Vector(v),
                })
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr {
                pos,
                kind: ExprKind::Int(self.int()?),
            }),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(Expr {
                    pos,
                    kind: ExprKind::Var(name.to_string()),
                })
            }
            Some(c) => perr(pos, format!("unexpected character '{}'", c as char)),
            None => perr(pos, "unexpected end of input"),
        }
    }
}

/// Parses an expression; the whole input must be consumed.
pub fn parse_expr(s: &str) -> Result<Expr> {
    if !s.is_ascii() {
        let pos = s.char_indices().find(|(_, c)| !c.is_ascii()).map(|(i, _)| i).unwrap_or(0);
        return perr(pos, "non-ASCII character");
    }
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        depth: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return perr(p.pos, "trailing input");
    }
    Ok(e)
}

/// Operations needed to evaluate an expression in some ring.
pub trait EvalContext {
    type Value: Clone;
    fn from_int(&self, n: i64) -> Self::Value;
    fn from_vector(&self, v: &[i64], pos: usize) -> Result<Self::Value>;
    fn var(&self, name: &str, pos: usize) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Option<Self::Value>;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    /// A size measure (for example total degree) used to refuse runaway inputs.
    fn weight(&self, a: &Self::Value) -> usize;
    fn one(&self) -> Self::Value {
        self.from_int(1)
    }
}

/// Largest value weight produced while evaluating parsed input.
pub const MAX_WEIGHT: usize = 1_000_000;

fn guard<C: EvalContext>(ctx: &C, v: C::Value, pos: usize) -> Result<C::Value> {
    if ctx.weight(&v) > MAX_WEIGHT {
        return perr(pos, "expression too large");
    }
    Ok(v)
}

/// Evaluates an expression tree in the given context.
pub fn eval<C: EvalContext>(ctx: &C, e: &Expr) -> Result<C::Value> {
    let v = eval_inner(ctx, e)?;
    guard(ctx, v, e.pos)
}

fn eval_inner<C: EvalContext>(ctx: &C, e: &Expr) -> Result<C::Value> {
    match &e.kind {
        ExprKind::Int(n) => Ok(ctx.from_int(*n)),
        ExprKind::Vector(v) => ctx.from_vector(v, e.pos),
        ExprKind::Var(name) => ctx.var(name, e.pos),
        ExprKind::Neg(a) => Ok(ctx.neg(&eval(ctx, a)?)),
        ExprKind::Add(a, b) => Ok(ctx.add(&eval(ctx, a)?, &eval(ctx, b)?)),
        ExprKind::Sub(a, b) => Ok(ctx.sub(&eval(ctx, a)?, &eval(ctx, b)?)),
        ExprKind::Mul(a, b) => Ok(ctx.mul(&eval(ctx, a)?, &eval(ctx, b)?)),
        ExprKind::Div(a, b) => {
            let (x, y) = (eval(ctx, a)?, eval(ctx, b)?);
            ctx.div(&x, &y)
                .map_or_else(|| perr(e.pos, "division by zero"), Ok)
        }
        ExprKind::Pow(a, n) => {
            let base = eval(ctx, a)?;
            if ctx.weight(&base).max(1).saturating_mul(n.unsigned_abs() as usize) > MAX_WEIGHT {
                return perr(e.pos, "expression too large");
            }
            let mut acc = ctx.one();
            let mut sq = base;
            let mut k = n.unsigned_abs();
            while k > 0 {
                if k & 1 == 1 {
                    acc = ctx.mul(&acc, &sq);
                }
                k >>= 1;
                if k > 0 {
                    sq = ctx.mul(&sq, &sq);
                }
            }
            if *n < 0 {
                ctx.div(&ctx.one(), &acc)
                    .map_or_else(|| perr(e.pos, "division by zero"), Ok)
            } else {
                Ok(acc)
            }
        }
    }
}

/// Evaluation in `F_q(t)` with the variable named `var`; `g` denotes the field
/// generator unless it is the variable itself.
pub struct RationalContext<'a> {
    pub field: &'a Field,
    pub var: &'a str,
}

impl EvalContext for RationalContext<'_> {
    type Value = RationalFunction;

    fn from_int(&self, n: i64) -> RationalFunction {
        RationalFunction::from_int(self.field, n)
    }

    fn from_vector(&self, v: &[i64], pos: usize) -> Result<RationalFunction> {
        let c = fq_from_vector(self.field, v, pos)?;
        Ok(RationalFunction::constant(self.field, c))
    }

    fn var(&self, name: &str, pos: usize) -> Result<RationalFunction> {
        if name == self.var {
            Ok(RationalFunction::t(self.field))
        } else if name == "g" {
            Ok(RationalFunction::constant(self.field, self.field.generator()))
        } else {
            perr(pos, format!("unknown variable '{name}'"))
        }
    }

    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a + b
    }

    fn sub(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a - b
    }

    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a * b
    }

    fn div(&self, a: &RationalFunction, b: &RationalFunction) -> Option<RationalFunction> {
        a.checked_div(b).ok()
    }

    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        -a
    }

    fn weight(&self, a: &RationalFunction) -> usize {
        (a.num().deg().max(0) + a.den().deg()) as usize
    }
}

pub(crate) fn fq_from_vector(field: &Field, v: &[i64], pos: usize) -> Result<Fq> {
    if v.len() > field.k() as usize {
        return perr(
            pos,
            format!("vector of length {} for a field of degree {}", v.len(), field.k()),
        );
    }
    let coords: Vec<u32> = v.iter().map(|&c| c.rem_euclid(field.p() as i64) as u32).collect();
    field.from_coords(&coords)
}

pub fn parse_rational(field: &Field, s: &str) -> Result<RationalFunction> {
    eval(&RationalContext { field, var: "t" }, &parse_expr(s)?)
}

pub fn parse_poly(field: &Field, s: &str) -> Result<Poly> {
    let r = parse_rational(field, s)?;
    if !r.is_polynomial() {
        return perr(0, "expected a polynomial");
    }
    Ok(r.num().clone())
}

pub fn parse_fq(field: &Field, s: &str) -> Result<Fq> {
    let r = parse_rational(field, s)?;
    r.as_constant()
        .map_or_else(|| perr(0, "expected a field element"), Ok)
}

/// Parses a place: `inf`, `irr:<poly>`, or a monic linear polynomial such as `t - 1`.
pub fn parse_place(field: &Field, s: &str) -> Result<Place> {
    let trimmed = s.trim();
    if trimmed == "inf" {
        return Ok(Place::Infinity);
    }
    if let Some(rest) = trimmed.strip_prefix("irr:") {
        let offset = s.find("irr:").unwrap_or(0) + 4;
        let poly = parse_poly(field, rest).map_err(|e| shift_pos(e, offset))?;
        if poly.deg() < 1 {
            return perr(offset, "place polynomial must have positive degree");
        }
        return Place::finite(poly);
    }
    let poly = parse_poly(field, s)?;
    if poly.deg() != 1 {
        return perr(0, "expected 't - c', 'irr:<poly>' or 'inf'");
    }
    Place::finite(poly)
}

fn shift_pos(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + offset,
            msg,
        },
        other => other,
    }
}

/// Parses a modulus polynomial in the variable `g` over `F_p`.
pub fn parse_modulus(p: u32, s: &str) -> Result<Vec<u32>> {
    let fp = FieldSpec::prime(p)?;
    let r = eval(&RationalContext { field: &fp, var: "g" }, &parse_expr(s)?)?;
    if !r.is_polynomial() {
        return perr(0, "modulus must be a polynomial");
    }
    Ok(r.num().coeffs().iter().map(|c| c.index()).collect())
}

/// The modulus printed as a polynomial in `g`.
pub fn format_modulus(field: &FieldSpec) -> String {
    let fp = FieldSpec::prime(field.p()).expect("supported prime");
    let coeffs: Vec<i64> = field.modulus().iter().map(|&c| c as i64).collect();
    format_poly_in(&Poly::from_ints(&fp, &coeffs), "g")
}

/// A field element: an integer for the prime subfield, else a coordinate vector.
pub fn format_fq(field: &FieldSpec, a: Fq) -> String {
    if field.is_prime_subfield(a) {
        return a.index().to_string();
    }
    let mut coords = field.coords(a);
    while coords.last() == Some(&0) {
        coords.pop();
    }
    let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// `c * m`, omitting a unit coefficient and parenthesizing compound ones.
pub fn format_term(coeff: &str, monomial: &str) -> String {
    if monomial.is_empty() {
        return coeff.to_string();
    }
    if coeff == "1" {
        return monomial.to_string();
    }
    if coeff.contains(' ') {
        format!("({coeff})*{monomial}")
    } else {
        format!("{coeff}*{monomial}")
    }
}

/// `x`, `x^i` or the empty string for `i = 0`.
pub fn format_monomial(var: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{i}"),
    }
}

pub fn format_poly_in(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let field = p.field();
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| format_term(&format_fq(field, c), &format_monomial(var, i)))
        .collect();
    terms.join(" + ")
}

fn paren_if_compound(s: String) -> String {
    if s.contains(' ') {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly_in(self, "t"))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den().is_one() {
            return write!(f, "{}", self.num());
        }
        write!(
            f,
            "{} / {}",
            paren_if_compound(self.num().to_string()),
            paren_if_compound(self.den().to_string())
        )
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Finite(pi) if pi.deg() == 1 => {
                let c = pi.field().neg(pi.coeff(0));
                if c.is_zero() {
                    f.write_str("t")
                } else {
                    write!(f, "t - {}", format_fq(pi.field(), c))
                }
            }
            Place::Finite(pi) => write!(f, "irr:{pi}"),
        }
    }
}
