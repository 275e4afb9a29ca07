//! Dense univariate polynomials over `F_q`.

use std::cell::RefCell;
use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::fq::{same_field, Field, Fq};
use crate::error::{Error, Result};

/// A polynomial in `t` with coefficients in `F_q`, constant term first.
///
/// Coefficient vectors are always trimmed, so the zero polynomial has no
/// coefficients and the leading coefficient of a nonzero polynomial is nonzero.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Fq>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_field(&self.field, &other.field)
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs.iter().map(|c| c.index()).collect::<Vec<_>>())
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Polynomial with prime-field coefficients given as integers, constant term first.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Fq) -> Self {
        Self::new(field, vec![c])
    }

    /// The variable `t`.
    pub fn t(field: &Field) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    /// `c t^d`.
    pub fn monomial(field: &Field, c: Fq, d: usize) -> Self {
        let mut v = vec![Fq::ZERO; d + 1];
        v[d] = c;
        Self::new(field, v)
    }

    /// `t - c`.
    pub fn linear(field: &Field, c: Fq) -> Self {
        Self::new(field, vec![field.neg(c), field.one()])
    }

    /// The `index`-th monic polynomial of degree `d` in the fixed ordering
    /// (lower coefficients read as base-`q` digits, constant term first).
    pub fn monic_of_degree(field: &Field, d: usize, mut index: u64) -> Self {
        let q = field.q() as u64;
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push(field.element((index % q) as u32));
            index /= q;
        }
        v.push(field.one());
        Self::new(field, v)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer, `-1` for zero.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == self.field.one()
    }

    /// Lowest index with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Poly::new(f, v))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Poly::new(f, v))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let f = &self.field;
        let mut v = vec![Fq::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(f, v))
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Fq) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `t^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Fq::ZERO; n];
        v.extend_from_slice(&self.coeffs);
        Poly::new(&self.field, v)
    }

    /// The polynomial modulo `t^n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().take(n).copied().collect())
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv = f.inv(d.lc())?;
        let mut r = self.coeffs.clone();
        let mut q = vec![Fq::ZERO; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + dd], inv);
            if c.is_zero() {
                continue;
            }
            q[i] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[i + j] = f.sub(r[i + j], f.mul(c, dj));
            }
        }
        r.truncate(dd);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Division that must be exact.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// `(lc, self / lc)`; the zero polynomial is returned unchanged with `lc = 0`.
    pub fn monic(&self) -> (Fq, Poly) {
        if self.is_zero() {
            return (Fq::ZERO, self.clone());
        }
        let lc = self.lc();
        let inv = self.field.inv(lc).expect("nonzero leading coefficient");
        (lc, self.scale(inv))
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic().1)
    }

    /// `self / (t^m + sum_i d_i t^{e_i})` (with `e_i < m`) when the division is exact.
    fn exact_div_sparse(&self, m: usize, low: &[(usize, Fq)]) -> Option<Poly> {
        let f = &self.field;
        let mut r = self.coeffs.clone();
        if r.len() <= m {
            return None;
        }
        let mut q = vec![Fq::ZERO; r.len() - m];
        for i in (m..r.len()).rev() {
            let c = r[i];
            if !c.is_zero() {
                q[i - m] = c;
                for &(e, d) in low {
                    r[i - m + e] = f.sub(r[i - m + e], f.mul(c, d));
                }
            }
        }
        r[..m].iter().all(|c| c.is_zero()).then(|| Poly::new(f, q))
    }

    /// Splits off the largest power of the monic `rho` dividing `self`, up to
    /// `limit`. Uses `rho^{p^j}(t) = rho^{(p^j)}(t^{p^j})` (coefficients raised
    /// to the `p^j`), so each trial is one sparse division.
    pub fn strip_power(&self, rho: &Poly, limit: u64) -> (u64, Poly) {
        let f = &self.field;
        let d = rho.deg();
        if self.is_zero() || d < 1 {
            return (0, self.clone());
        }
        if d == 1 && rho.coeff(0).is_zero() {
            let n = (self.low_degree().expect("nonzero") as u64).min(limit);
            return (n, Poly::new(f, self.coeffs[n as usize..].to_vec()));
        }
        let p = f.p() as u64;
        let deg = self.deg() as u64;
        let mut block = 1u64;
        while block * p * d as u64 <= deg && block * p <= limit {
            block *= p;
        }
        let mut cur = self.clone();
        let mut n = 0u64;
        loop {
            let m = d as usize * block as usize;
            let low: Vec<(usize, Fq)> = rho.coeffs[..d as usize]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, &c)| (i * block as usize, f.pow(c, block)))
                .collect();
            while n + block <= limit && m as i64 <= cur.deg() {
                match cur.exact_div_sparse(m, &low) {
                    Some(q) => {
                        cur = q;
                        n += block;
                    }
                    None => break,
                }
            }
            if block == 1 {
                break;
            }
            block /= p;
        }
        (n, cur)
    }

    /// `self = prod r_i^{e_i} * rest` with `rho = r_1`, `r_{i+1} = gcd(., r_i)`
    /// and `rest` coprime to the squarefree `rho`.
    fn power_chain(&self, rho: &Poly) -> Result<(Vec<(Poly, u64)>, Poly)> {
        let mut out = Vec::new();
        let mut r = rho.clone();
        let mut x = self.clone();
        loop {
            let (e, y) = x.strip_power(&r, u64::MAX);
            if e > 0 {
                out.push((r.clone(), e));
                x = y;
            }
            let g = x.gcd(&r)?;
            if g.deg() < 1 {
                return Ok((out, x));
            }
            r = g;
        }
    }

    /// Same as [`Poly::gcd`]. Linear factors (over small fields) and the
    /// registered factor hints are split off first, so only the cofactors go
    /// through Euclid; fast when the inputs are mostly products of those.
    pub fn gcd_hinted(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() || other.deg() < 24 {
            return self.gcd(other);
        }
        let f = &self.field;
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut common = Poly::one(f);
        let mut hints: Vec<Poly> = Vec::new();
        if f.q() <= 16 {
            hints.extend(f.elements().map(|c| Poly::linear(f, c)));
        }
        HINTS.with(|h| {
            hints.extend(h.borrow().iter().filter(|r| same_field(&r.field, f)).cloned());
        });
        for rho in &hints {
            if b.is_constant() {
                break;
            }
            let (cb, rb) = b.power_chain(rho)?;
            if cb.is_empty() {
                continue;
            }
            let (ca, ra) = a.power_chain(rho)?;
            common = common.checked_mul(&min_power(rho, &ca, &cb)?)?;
            a = ra;
            b = rb;
        }
        let rest = if a.is_constant() || b.is_constant() { Poly::one(f) } else { a.gcd(&b)? };
        Ok(common.checked_mul(&rest)?.monic().1)
    }

    /// `(g, s, u)` with `g = s*self + u*other` and `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check(other)?;
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut u0, mut u1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let u = &u0 - &(&q * &u1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            u0 = std::mem::replace(&mut u1, u);
        }
        if r0.is_zero() {
            return Ok((r0, s0, u0));
        }
        let inv = f.inv(r0.lc())?;
        Ok((r0.scale(inv), s0.scale(inv), u0.scale(inv)))
    }

    /// Inverse of `self` modulo `m`.
    pub fn inv_mod(&self, m: &Poly) -> Result<Poly> {
        let (g, s, _) = self.rem(m)?.ext_gcd(m)?;
        if !g.is_one() {
            return Err(Error::DivisionByZero);
        }
        s.rem(m)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, x: Fq) -> Fq {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Fq::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.scale(c, i as i64))
            .collect();
        Poly::new(f, v)
    }

    /// `self(t + c)`.
    pub fn taylor_shift(&self, c: Fq) -> Poly {
        let f = &self.field;
        let mut v = self.coeffs.clone();
        let n = v.len();
        // Repeated synthetic division by (t - (-c)) in place.
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                v[j] = f.add(v[j], f.mul(c, v[j + 1]));
            }
        }
        Poly::new(f, v)
    }

    /// `t^d self(1/t)` for `d >= deg self`.
    pub fn reverse(&self, d: usize) -> Poly {
        assert!(self.coeffs.len() <= d + 1, "reverse length below degree");
        let mut v = vec![Fq::ZERO; d + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[d - i] = c;
        }
        Poly::new(&self.field, v)
    }

    /// `self^p`, computed as `sum c_i^p t^{ip}`.
    pub fn frobenius(&self) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Fq::ZERO; (self.coeffs.len() - 1) * p + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * p] = f.frobenius(c);
        }
        Poly::new(f, v)
    }

    /// The `r` with `r^p = self`, when every exponent is divisible by `p`.
    pub fn pth_root(&self) -> Option<Poly> {
        let f = &self.field;
        let p = f.p() as usize;
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| i % p != 0 && !c.is_zero())
        {
            return None;
        }
        let v = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| f.pth_root(c))
            .collect();
        Some(Poly::new(f, v))
    }

    /// Multiplicity of `pi` as a factor of `self` (`None` for zero).
    pub fn multiplicity(&self, pi: &Poly) -> Option<(u32, Poly)> {
        if self.is_zero() {
            return None;
        }
        let mut n = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(pi).expect("nonzero divisor");
            if !r.is_zero() {
                return Some((n, cur));
            }
            cur = q;
            n += 1;
        }
    }

    /// Irreducibility over `F_q` via `gcd(t^{q^i} - t, self) = 1` for `i <= deg/2`.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let q = self.field.q() as u128;
        let t = Poly::t(&self.field);
        let mut power = t.clone();
        for _ in 1..=d / 2 {
            power = power.pow_mod(q, self).expect("nonzero modulus");
            let g = self.gcd(&(&power - &t)).expect("same field");
            if !g.is_one() {
                return false;
            }
        }
        true
    }

    /// Factorization into monic irreducibles with multiplicities, by trial
    /// division in the fixed ordering. Intended for small degrees.
    pub fn factor(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        let mut cur = self.monic().1;
        let mut d = 1;
        while cur.deg() >= 2 * d as i64 {
            let count = (self.field.q() as u64).pow(d as u32);
            for idx in 0..count {
                let cand = Poly::monic_of_degree(&self.field, d, idx);
                if !cand.is_irreducible() {
                    continue;
                }
                let (m, rest) = cur.multiplicity(&cand).expect("nonzero");
                if m > 0 {
                    out.push((cand, m));
                    cur = rest;
                }
            }
            d += 1;
        }
        if cur.deg() > 0 {
            out.push((cur, 1));
        }
        out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then(a.0.coeffs.cmp(&b.0.coeffs)));
        out
    }

    /// Inverse of `self` as a power series modulo `t^n`.
    pub fn series_inverse(&self, n: usize) -> Result<Poly> {
        let f = &self.field;
        let c0 = f.inv(self.coeff(0))?;
        let mut out = vec![Fq::ZERO; n];
        for i in 0..n {
            // Coefficient i of self * out must be [i == 0].
            let mut acc = if i == 0 { f.one() } else { Fq::ZERO };
            for j in 1..=i.min(self.coeffs.len().saturating_sub(1)) {
                acc = f.sub(acc, f.mul(self.coeffs[j], out[i - j]));
            }
            out[i] = f.mul(acc, c0);
        }
        Ok(Poly::new(f, out))
    }

    /// Product modulo `t^n`.
    pub fn mul_trunc(&self, other: &Poly, n: usize) -> Poly {
        let f = &self.field;
        let mut v = vec![Fq::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n - i) {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, v)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

thread_local! {
    static HINTS: RefCell<VecDeque<Poly>> = const { RefCell::new(VecDeque::new()) };
}

/// Most recent factor hints kept per thread.
const MAX_HINTS: usize = 16;

/// Registers the squarefree part of `poly` (ignoring factors whose
/// multiplicity is divisible by `p`) as a likely factor of future
/// denominators. Hints only speed up [`Poly::gcd_hinted`].
pub fn register_factor_hint(poly: &Poly) {
    if poly.deg() < 2 {
        return;
    }
    let d = poly.derivative();
    if d.is_zero() {
        return;
    }
    let Ok(g) = poly.gcd(&d) else { return };
    let Ok(rho) = poly.exact_div(&g) else { return };
    let rho = rho.monic().1;
    if rho.deg() < 2 {
        return;
    }
    HINTS.with(|h| {
        let mut h = h.borrow_mut();
        if h.contains(&rho) {
            return;
        }
        if h.len() == MAX_HINTS {
            h.pop_front();
        }
        h.push_back(rho);
    });
}

/// `prod alpha^{min(v_alpha(a), v_alpha(b))}` over the atoms `alpha` of the
/// squarefree `rho`, given both power chains.
fn min_power(rho: &Poly, ca: &[(Poly, u64)], cb: &[(Poly, u64)]) -> Result<Poly> {
    let mut atoms = vec![rho.clone()];
    for (m, _) in ca.iter().chain(cb) {
        let mut next = Vec::new();
        for alpha in atoms {
            let g = alpha.gcd(m)?;
            let rest = alpha.exact_div(&g)?;
            for piece in [g, rest] {
                if piece.deg() >= 1 {
                    next.push(piece.monic().1);
                }
            }
        }
        atoms = next;
    }
    let mut out = Poly::one(&rho.field);
    for alpha in atoms {
        let v = |chain: &[(Poly, u64)]| -> Result<u64> {
            let mut v = 0;
            for (m, e) in chain {
                if m.rem(&alpha)?.is_zero() {
                    v += e;
                }
            }
            Ok(v)
        };
        let k = v(ca)?.min(v(cb)?);
        if k > 0 {
            out = out.checked_mul(&alpha.pow(k))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_fields::fq::FieldSpec;

    #[test]
    fn strip_power_matches_multiplicity() {
        for p in [2, 3, 5] {
            let field = FieldSpec::prime(p).unwrap();
            let base = Poly::from_ints(&field, &[1, 0, 1, 1]);
            for c in field.elements() {
                let l = Poly::linear(&field, c);
                for k in [0u64, 1, 2, 7, 26, 40] {
                    let a = &base * &l.pow(k);
                    let (m, rest) = base.multiplicity(&l).unwrap();
                    assert_eq!(a.strip_power(&l, u64::MAX), (m as u64 + k, rest));
                    assert_eq!(a.strip_power(&l, 3).0, (m as u64 + k).min(3));
                }
            }
        }
    }

    #[test]
    fn gcd_hinted_matches_euclid() {
        for (p, k) in [(2, 1), (3, 1), (2, 2)] {
            let field = FieldSpec::new(p, k).unwrap();
            let lin: Vec<Poly> = field.elements().map(|c| Poly::linear(&field, c)).collect();
            let extra = Poly::from_ints(&field, &[1, 1, 1, 0, 1]);
            for i in 0..40u64 {
                let mut a = Poly::monic_of_degree(&field, 3, i % 7);
                let mut b = Poly::monic_of_degree(&field, 2, i % 5);
                for (j, l) in lin.iter().enumerate() {
                    a = &a * &l.pow((i + j as u64) % 4);
                    b = &b * &l.pow((2 * i + j as u64) % 5 * 3);
                }
                if i % 3 == 0 {
                    a = &a * &extra.pow(i % 4);
                    b = &b * &extra.pow(3);
                }
                register_factor_hint(&(&extra * &Poly::from_ints(&field, &[1, 0, 1, 1])));
                assert_eq!(a.gcd_hinted(&b).unwrap(), a.gcd(&b).unwrap());
                assert_eq!(b.gcd_hinted(&a).unwrap(), a.gcd(&b).unwrap());
            }
        }
    }

    #[test]
    fn gcd_example_f2() {
        let f2 = FieldSpec::prime(2).unwrap();
        let a = Poly::from_ints(&f2, &[0, 1, 0, 1]);
        let b = Poly::from_ints(&f2, &[1, 0, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);
    }

    #[test]
    fn ext_gcd_bezout() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = Poly::from_ints(&f3, &[1, 2, 0, 1, 1]);
        let b = Poly::from_ints(&f3, &[2, 0, 1, 1]);
        let (g, s, u) = a.ext_gcd(&b).unwrap();
        assert_eq!(&(&s * &a) + &(&u * &b), g);
        assert_eq!(g, a.gcd(&b).unwrap());
    }

    #[test]
    fn div_rem_reconstructs() {
        let f5 = FieldSpec::prime(5).unwrap();
        let a = Poly::from_ints(&f5, &[3, 1, 4, 1, 5, 2]);
        let b = Poly::from_ints(&f5, &[2, 0, 3]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg() < b.deg());
        assert_eq!(a.div_rem(&Poly::zero(&f5)), Err(Error::DivisionByZero));
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let f7 = FieldSpec::prime(7).unwrap();
        let a = Poly::from_ints(&f7, &[1, 2, 3, 4]);
        let c = f7.from_int(3);
        let s = a.taylor_shift(c);
        for x in f7.elements() {
            assert_eq!(s.eval(x), a.eval(f7.add(x, c)));
        }
    }

    #[test]
    fn irreducibility() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(Poly::from_ints(&f2, &[1, 1, 1]).is_irreducible());
        assert!(!Poly::from_ints(&f2, &[1, 0, 1]).is_irreducible());
        assert!(Poly::from_ints(&f2, &[1, 1, 0, 0, 1]).is_irreducible());
        assert!(!Poly::from_ints(&f2, &[1, 0, 1, 0, 1]).is_irreducible());
        let f4 = FieldSpec::new(2, 2).unwrap();
        assert!(!Poly::from_ints(&f4, &[1, 1, 1]).is_irreducible());
    }

    #[test]
    fn factor_roundtrip() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = Poly::from_ints(&f3, &[2, 1, 0, 1, 2, 1, 1]);
        let fac = a.factor();
        let prod = fac
            .iter()
            .fold(Poly::one(&f3), |acc, (p, m)| &acc * &p.pow(*m as u64));
        assert_eq!(prod, a.monic().1);
        assert!(fac.iter().all(|(p, _)| p.is_irreducible()));
    }

    #[test]
    fn frobenius_and_root() {
        let f4 = FieldSpec::new(2, 2).unwrap();
        let g = f4.generator();
        let a = Poly::new(&f4, vec![g, f4.one(), g]);
        let fa = a.frobenius();
        assert_eq!(fa, a.pow(2));
        assert_eq!(fa.pth_root().unwrap(), a);
        assert!(a.pth_root().is_none());
    }

    #[test]
    fn series_inverse_geometric() {
        let f2 = FieldSpec::prime(2).unwrap();
        let a = Poly::from_ints(&f2, &[1, 1]);
        assert_eq!(a.series_inverse(3).unwrap(), Poly::from_ints(&f2, &[1, 1, 1]));
    }

    #[test]
    fn mismatch_is_reported() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(
            Poly::one(&f2).checked_add(&Poly::one(&f3)),
            Err(Error::FieldMismatch)
        );
    }
}
