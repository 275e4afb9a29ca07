//! Arithmetic in iterated Artin-Schreier algebras `R[x_1, ..., x_n]` with
//! relations `x_k^p = x_k + f_k`, elements stored as nested coefficient trees.

use std::fmt::Debug;

use crate::base_fields::{Fq, Poly, RationalFunction, ResidueField};
use std::sync::Arc;

/// Coefficient rings for nested Artin-Schreier arithmetic.
pub trait Scalar: Clone + PartialEq + Debug {
    fn char_p(&self) -> u32;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn frobenius(&self) -> Self;
}

impl Scalar for RationalFunction {
    fn char_p(&self) -> u32 {
        self.field().p()
    }
    fn zero_like(&self) -> Self {
        RationalFunction::zero(self.field())
    }
    fn one_like(&self) -> Self {
        RationalFunction::one(self.field())
    }
    fn int_like(&self, n: i64) -> Self {
        RationalFunction::from_int(self.field(), n)
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Option<Self> {
        RationalFunction::inv(self).ok()
    }
    fn frobenius(&self) -> Self {
        RationalFunction::frobenius(self)
    }
}

/// An element of a residue field `F_q[t]/(pi)` carrying its context.
#[derive(Clone, Debug)]
pub struct ResidueElem {
    pub ctx: Arc<ResidueField>,
    pub value: Poly,
}

impl PartialEq for ResidueElem {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl ResidueElem {
    pub fn new(ctx: &Arc<ResidueField>, value: Poly) -> Self {
        let value = ctx.normalize(&value);
        ResidueElem {
            ctx: ctx.clone(),
            value,
        }
    }

    fn with(&self, value: Poly) -> Self {
        ResidueElem::new(&self.ctx, value)
    }

    /// The element as a prime-field constant, when it is one.
    pub fn as_prime(&self) -> Option<Fq> {
        let field = self.ctx.base();
        if self.value.is_constant() && field.is_prime_subfield(self.value.coeff(0)) {
            Some(self.value.coeff(0))
        } else {
            None
        }
    }
}

impl Scalar for ResidueElem {
    fn char_p(&self) -> u32 {
        self.ctx.base().p()
    }
    fn zero_like(&self) -> Self {
        self.with(self.ctx.zero())
    }
    fn one_like(&self) -> Self {
        self.with(self.ctx.one())
    }
    fn int_like(&self, n: i64) -> Self {
        self.with(Poly::constant(self.ctx.base(), self.ctx.base().from_int(n)))
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self.with(self.ctx.add(&self.value, &o.value))
    }
    fn sub(&self, o: &Self) -> Self {
        self.with(self.ctx.sub(&self.value, &o.value))
    }
    fn neg(&self) -> Self {
        self.with(self.value.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        self.with(self.ctx.mul(&self.value, &o.value))
    }
    fn inv(&self) -> Option<Self> {
        self.ctx.inv(&self.value).ok().map(|v| self.with(v))
    }
    fn frobenius(&self) -> Self {
        self.with(self.ctx.frobenius(&self.value))
    }
}

/// `sum_{i<p} c_i x_k^i` with coefficients one level down, or a base scalar.
#[derive(Clone, Debug, PartialEq)]
pub enum Nested<T> {
    Base(T),
    Layer(Vec<Nested<T>>),
}

impl<T: Scalar> Nested<T> {
    pub fn level(&self) -> usize {
        match self {
            Nested::Base(_) => 0,
            Nested::Layer(c) => 1 + c[0].level(),
        }
    }

    /// Some base scalar inside the tree (used to build zeros and ones).
    pub fn any_base(&self) -> &T {
        match self {
            Nested::Base(b) => b,
            Nested::Layer(c) => c[0].any_base(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Nested::Base(b) => b.is_zero(),
            Nested::Layer(c) => c.iter().all(|x| x.is_zero()),
        }
    }

    /// The coefficients `c_0, ..., c_{p-1}` of a level-`k >= 1` element.
    pub fn coeffs(&self) -> &[Nested<T>] {
        match self {
            Nested::Base(_) => panic!("base element has no layer coefficients"),
            Nested::Layer(c) => c,
        }
    }

    /// The base scalar of a level-0 element.
    pub fn base(&self) -> &T {
        match self {
            Nested::Base(b) => b,
            Nested::Layer(_) => panic!("not a base element"),
        }
    }

    /// Every base scalar in the tree, depth first.
    pub fn base_coeffs(&self) -> Vec<&T> {
        match self {
            Nested::Base(b) => vec![b],
            Nested::Layer(c) => c.iter().flat_map(|x| x.base_coeffs()).collect(),
        }
    }

    /// Applies `g` to every base scalar.
    pub fn map_base<U: Scalar>(&self, g: &impl Fn(&T) -> U) -> Nested<U> {
        match self {
            Nested::Base(b) => Nested::Base(g(b)),
            Nested::Layer(c) => Nested::Layer(c.iter().map(|x| x.map_base(g)).collect()),
        }
    }

    /// If this element equals its constant coefficient all the way down,
    /// returns that base scalar.
    pub fn as_base(&self) -> Option<&T> {
        match self {
            Nested::Base(b) => Some(b),
            Nested::Layer(c) => {
                if c[1..].iter().all(|x| x.is_zero()) {
                    c[0].as_base()
                } else {
                    None
                }
            }
        }
    }
}

/// The relations `x_k^p = x_k + f_k`, with `f_k` an element of level `k - 1`.
#[derive(Clone, Debug)]
pub struct Relations<T> {
    p: usize,
    rels: Vec<Nested<T>>,
    /// `(x_k + f_k)^i` at level `k`, for `i < p`, used by the Frobenius.
    frob_powers: Vec<Vec<Nested<T>>>,
}

impl<T: Scalar> Relations<T> {
    pub fn new(p: u32) -> Self {
        Relations {
            p: p as usize,
            rels: Vec::new(),
            frob_powers: Vec::new(),
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.rels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rels.is_empty()
    }

    /// `f_k` (1-based).
    pub fn relation(&self, k: usize) -> &Nested<T> {
        &self.rels[k - 1]
    }

    pub fn relations(&self) -> &[Nested<T>] {
        &self.rels
    }

    /// Appends the relation `x^p = x + f` where `f` lives at most at the current top level.
    pub fn push(&mut self, f: Nested<T>) {
        let level = self.rels.len();
        assert!(f.level() <= level, "relation above the current top level");
        let f = self.lift(&f, level);
        self.rels.push(f.clone());
        let k = level + 1;
        let x = self.generator(k, f.any_base());
        let base = self.add(&x, &self.lift(&f, k));
        let mut powers = vec![self.one(k, f.any_base())];
        for i in 1..self.p {
            let next = self.mul(&powers[i - 1], &base);
            powers.push(next);
        }
        self.frob_powers.push(powers);
    }

    pub fn zero(&self, level: usize, like: &T) -> Nested<T> {
        self.lift(&Nested::Base(like.zero_like()), level)
    }

    pub fn one(&self, level: usize, like: &T) -> Nested<T> {
        self.lift(&Nested::Base(like.one_like()), level)
    }

    pub fn constant(&self, c: &T, level: usize) -> Nested<T> {
        self.lift(&Nested::Base(c.clone()), level)
    }

    /// The generator `x_k` as an element of level `k`.
    pub fn generator(&self, k: usize, like: &T) -> Nested<T> {
        let mut c = vec![self.zero(k - 1, like); self.p];
        c[1] = self.one(k - 1, like);
        Nested::Layer(c)
    }

    /// Embeds `a` into level `level >= a.level()`.
    pub fn lift(&self, a: &Nested<T>, level: usize) -> Nested<T> {
        let mut cur = a.clone();
        let mut l = a.level();
        assert!(l <= level, "cannot lift to a lower level");
        while l < level {
            let zero = self.zero_at(l, cur.any_base());
            let mut c = vec![zero; self.p];
            c[0] = cur;
            cur = Nested::Layer(c);
            l += 1;
        }
        cur
    }

    fn zero_at(&self, level: usize, like: &T) -> Nested<T> {
        let mut cur = Nested::Base(like.zero_like());
        for _ in 0..level {
            cur = Nested::Layer(vec![cur; self.p]);
        }
        cur
    }

    fn common(&self, a: &Nested<T>, b: &Nested<T>) -> (Nested<T>, Nested<T>) {
        let l = a.level().max(b.level());
        (self.lift(a, l), self.lift(b, l))
    }

    pub fn add(&self, a: &Nested<T>, b: &Nested<T>) -> Nested<T> {
        let (a, b) = self.common(a, b);
        zip_with(&a, &b, &|x: &T, y: &T| x.add(y))
    }

    pub fn sub(&self, a: &Nested<T>, b: &Nested<T>) -> Nested<T> {
        let (a, b) = self.common(a, b);
        zip_with(&a, &b, &|x: &T, y: &T| x.sub(y))
    }

    pub fn neg(&self, a: &Nested<T>) -> Nested<T> {
        a.map_base(&|x: &T| x.neg())
    }

    pub fn scale(&self, a: &Nested<T>, c: &T) -> Nested<T> {
        a.map_base(&|x: &T| x.mul(c))
    }

    pub fn equal(&self, a: &Nested<T>, b: &Nested<T>) -> bool {
        self.sub(a, b).is_zero()
    }

    pub fn mul(&self, a: &Nested<T>, b: &Nested<T>) -> Nested<T> {
        let (a, b) = self.common(a, b);
        self.mul_same(&a, &b)
    }

    fn mul_same(&self, a: &Nested<T>, b: &Nested<T>) -> Nested<T> {
        match (a, b) {
            (Nested::Base(x), Nested::Base(y)) => Nested::Base(x.mul(y)),
            (Nested::Layer(ac), Nested::Layer(bc)) => {
                let level = a.level();
                let like = a.any_base();
                let p = self.p;
                let zero = self.zero(level - 1, like);
                let mut c = vec![zero; 2 * p - 1];
                for (i, ai) in ac.iter().enumerate() {
                    if ai.is_zero() {
                        continue;
                    }
                    for (j, bj) in bc.iter().enumerate() {
                        if bj.is_zero() {
                            continue;
                        }
                        let prod = self.mul_same(ai, bj);
                        c[i + j] = self.add(&c[i + j], &prod);
                    }
                }
                // x^m = x^{m-p+1} + f x^{m-p} for m >= p
                let f = &self.rels[level - 1];
                for m in (p..2 * p - 1).rev() {
                    let cm = std::mem::replace(&mut c[m], self.zero(level - 1, like));
                    if cm.is_zero() {
                        continue;
                    }
                    c[m - p + 1] = self.add(&c[m - p + 1], &cm);
                    let fc = self.mul_same(f, &cm);
                    c[m - p] = self.add(&c[m - p], &fc);
                }
                c.truncate(p);
                Nested::Layer(c)
            }
            _ => unreachable!("operands lifted to a common level"),
        }
    }

    pub fn pow(&self, a: &Nested<T>, mut e: u64) -> Nested<T> {
        let mut acc = self.one(a.level(), a.any_base());
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `a^p`, computed as `sum frob(c_i) (x + f)^i`.
    pub fn frobenius(&self, a: &Nested<T>) -> Nested<T> {
        match a {
            Nested::Base(b) => Nested::Base(b.frobenius()),
            Nested::Layer(c) => {
                let level = a.level();
                let powers = &self.frob_powers[level - 1];
                let mut acc = self.zero(level, a.any_base());
                for (i, ci) in c.iter().enumerate() {
                    if ci.is_zero() {
                        continue;
                    }
                    let term = self.mul(&self.frobenius(ci), &powers[i]);
                    acc = self.add(&acc, &term);
                }
                acc
            }
        }
    }

    /// `a^(p^n)`.
    pub fn frobenius_iter(&self, a: &Nested<T>, n: u32) -> Nested<T> {
        (0..n).fold(a.clone(), |acc, _| self.frobenius(&acc))
    }

    /// `sigma_j(a)`: the automorphism `x_k -> x_k + j` of the top layer.
    fn shift_top(&self, a: &Nested<T>, j: i64) -> Nested<T> {
        let c = a.coeffs();
        let level = a.level();
        let like = a.any_base();
        let xj = self.add(
            &self.generator(level, like),
            &self.constant(&like.int_like(j), level),
        );
        let mut acc = self.zero(level, like);
        let mut power = self.one(level, like);
        for ci in c {
            acc = self.add(&acc, &self.mul(&self.lift(ci, level), &power));
            power = self.mul(&power, &xj);
        }
        acc
    }

    /// Inverse via the norm to the layer below: `a^{-1} = (prod_{j != 0}
    /// sigma_j(a)) / N(a)`. Returns `None` for non-units.
    pub fn inv(&self, a: &Nested<T>) -> Option<Nested<T>> {
        match a {
            Nested::Base(b) => b.inv().map(Nested::Base),
            Nested::Layer(_) => {
                let level = a.level();
                let mut conj = self.one(level, a.any_base());
                for j in 1..self.p as i64 {
                    conj = self.mul(&conj, &self.shift_top(a, j));
                }
                let norm = self.mul(&conj, a);
                let c = norm.coeffs();
                debug_assert!(c[1..].iter().all(|x| x.is_zero()));
                let ninv = self.inv(&c[0])?;
                Some(self.mul(&conj, &self.lift(&ninv, level)))
            }
        }
    }

    pub fn div(&self, a: &Nested<T>, b: &Nested<T>) -> Option<Nested<T>> {
        Some(self.mul(a, &self.inv(b)?))
    }

    /// `a^n` for a signed exponent.
    pub fn pow_signed(&self, a: &Nested<T>, n: i64) -> Option<Nested<T>> {
        let base = if n < 0 { self.inv(a)? } else { a.clone() };
        Some(self.pow(&base, n.unsigned_abs()))
    }
}

fn zip_with<T: Scalar>(a: &Nested<T>, b: &Nested<T>, op: &impl Fn(&T, &T) -> T) -> Nested<T> {
    match (a, b) {
        (Nested::Base(x), Nested::Base(y)) => Nested::Base(op(x, y)),
        (Nested::Layer(ac), Nested::Layer(bc)) => Nested::Layer(
            ac.iter().zip(bc).map(|(x, y)| zip_with(x, y, op)).collect(),
        ),
        _ => unreachable!("operands lifted to a common level"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_fields::FieldSpec;

    #[test]
    fn inverse_example_f2() {
        let f2 = FieldSpec::prime(2).unwrap();
        let mut rel = Relations::new(2);
        rel.push(Nested::Base(RationalFunction::t_pow(&f2, -3)));
        let like = RationalFunction::one(&f2);
        let x = rel.generator(1, &like);
        let xinv = rel.inv(&x).unwrap();
        // x^{-1} = t^3 (x + 1)
        let t3 = rel.constant(&RationalFunction::t_pow(&f2, 3), 1);
        let expected = rel.mul(&t3, &rel.add(&x, &rel.one(1, &like)));
        assert!(rel.equal(&xinv, &expected));
        assert!(rel.equal(&rel.mul(&x, &xinv), &rel.one(1, &like)));
        // frobenius(x) = x + t^-3
        let fx = rel.frobenius(&x);
        let expected = rel.add(&x, &rel.constant(&RationalFunction::t_pow(&f2, -3), 1));
        assert!(rel.equal(&fx, &expected));
        assert!(rel.add(&x, &x).is_zero());
    }

    #[test]
    fn two_layers_p3() {
        let f3 = FieldSpec::prime(3).unwrap();
        let like = RationalFunction::one(&f3);
        let mut rel = Relations::new(3);
        rel.push(Nested::Base(RationalFunction::t_pow(&f3, -2)));
        let x1 = rel.generator(1, &like);
        rel.push(rel.pow(&x1, 5));
        let x2 = rel.generator(2, &like);
        let a = rel.add(&rel.mul(&x2, &x1), &rel.constant(&RationalFunction::t(&f3), 2));
        let b = rel.add(&rel.pow(&x2, 2), &x1);
        // Frobenius is multiplicative and agrees with the cube.
        let fa = rel.frobenius(&a);
        assert!(rel.equal(&fa, &rel.pow(&a, 3)));
        assert!(rel.equal(&rel.frobenius(&rel.mul(&a, &b)), &rel.mul(&fa, &rel.frobenius(&b))));
        let ainv = rel.inv(&a).unwrap();
        assert!(rel.equal(&rel.mul(&a, &ainv), &rel.one(2, &like)));
        // the defining relation holds
        let lhs = rel.sub(&rel.pow(&x2, 3), &x2);
        assert!(rel.equal(&lhs, &rel.pow(&x1, 5)));
    }
}
