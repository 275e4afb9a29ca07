//! Elements of `F_q(t)` in canonical reduced form.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::fq::{Field, Fq};
use super::poly::Poly;
use crate::error::{Error, Result};

/// `num / den` with `den` monic and `gcd(num, den) = 1`; zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl Hash for RationalFunction {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} / {:?})", self.num, self.den)
    }
}

fn gcd(num: &Poly, den: &Poly) -> Result<Poly> {
    num.gcd_hinted(den)
}

impl RationalFunction {
    /// Canonical form of `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = num.field().clone();
        if num.is_zero() {
            num.checked_add(&den)?;
            return Ok(Self::zero(&field));
        }
        let g = gcd(&num, &den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let (lc, den) = den.monic();
        let inv = field.inv(lc)?;
        Ok(RationalFunction {
            num: num.scale(inv),
            den,
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.field());
        RationalFunction { num: p, den }
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Field) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn constant(field: &Field, c: Fq) -> Self {
        Self::from_poly(Poly::constant(field, c))
    }

    pub fn from_int(field: &Field, n: i64) -> Self {
        Self::constant(field, field.from_int(n))
    }

    pub fn t(field: &Field) -> Self {
        Self::from_poly(Poly::t(field))
    }

    /// `t^n` for any integer `n`.
    pub fn t_pow(field: &Field, n: i64) -> Self {
        let m = Poly::monomial(field, field.one(), n.unsigned_abs() as usize);
        if n >= 0 {
            Self::from_poly(m)
        } else {
            RationalFunction {
                num: Poly::one(field),
                den: m,
            }
        }
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<Fq> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        if self.den == o.den {
            return Self::new(self.num.checked_add(&o.num)?, self.den.clone());
        }
        let num = self
            .num
            .checked_mul(&o.den)?
            .checked_add(&o.num.checked_mul(&self.den)?)?;
        Self::new(num, self.den.checked_mul(&o.den)?)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if self.is_zero() || o.is_zero() {
            self.num.checked_add(&o.num)?;
            return Ok(Self::zero(self.field()));
        }
        // Cross-cancel first so intermediate degrees stay small.
        let g1 = gcd(&self.num, &o.den)?;
        let g2 = gcd(&o.num, &self.den)?;
        let num = self
            .num
            .exact_div(&g1)?
            .checked_mul(&o.num.exact_div(&g2)?)?;
        let den = self
            .den
            .exact_div(&g2)?
            .checked_mul(&o.den.exact_div(&g1)?)?;
        Self::new(num, den)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.checked_mul(&o.inv()?)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: Fq) -> Self {
        if c.is_zero() {
            return Self::zero(self.field());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(RationalFunction {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// `self^p`.
    pub fn frobenius(&self) -> Self {
        RationalFunction {
            num: self.num.frobenius(),
            den: self.den.frobenius(),
        }
    }

    /// `self^(p^n)`.
    pub fn frobenius_iter(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.frobenius())
    }

    /// The unique `r` with `r^p = self`, if it lies in `F_q(t)`.
    pub fn pth_root(&self) -> Option<Self> {
        Some(RationalFunction {
            num: self.num.pth_root()?,
            den: self.den.pth_root()?,
        })
    }

    /// `self^p - self`.
    pub fn wp(&self) -> Self {
        &self.frobenius() - self
    }

    /// Substitution `t -> 1/t`.
    pub fn invert_variable(&self) -> Self {
        let dn = self.num.deg().max(0) as usize;
        let dd = self.den.deg() as usize;
        let d = dn.max(dd);
        // num(1/t)/den(1/t) = t^{d-dn} rev(num) / (t^{d-dd} rev(den))
        let num = self.num.reverse(dn).shift(d - dn);
        let den = self.den.reverse(dd).shift(d - dd);
        Self::new(num, den).expect("nonzero denominator")
    }

    /// Substitution `t -> t + c`.
    pub fn translate(&self, c: Fq) -> Self {
        Self::new(self.num.taylor_shift(c), self.den.taylor_shift(c)).expect("nonzero denominator")
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::neg(self)
    }
}
