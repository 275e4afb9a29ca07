//! Residue fields of places of `F_q(t)`.

use std::sync::Arc;

use super::fq::{Field, Fq};
use super::place::{Place, Valuation};
use super::poly::Poly;
use super::rational::RationalFunction;
use crate::error::{Error, Result};

/// `F_q[t]/(pi_P)`, or `F_q` at infinity. Elements are polynomials reduced
/// modulo `pi_P` (constants at infinity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    place: Place,
    field: Field,
}

impl ResidueField {
    pub fn new(field: &Field, place: &Place) -> Arc<Self> {
        Arc::new(ResidueField {
            place: place.clone(),
            field: field.clone(),
        })
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn base(&self) -> &Field {
        &self.field
    }

    /// Degree over `F_q`.
    pub fn degree(&self) -> usize {
        self.place.degree()
    }

    /// Degree over `F_p`.
    pub fn absolute_degree(&self) -> usize {
        self.degree() * self.field.k() as usize
    }

    /// Number of elements.
    pub fn size(&self) -> u128 {
        (self.field.q() as u128).pow(self.degree() as u32)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(&self.field)
    }

    pub fn one(&self) -> Poly {
        Poly::one(&self.field)
    }

    fn modulus(&self) -> Option<&Poly> {
        match &self.place {
            Place::Finite(pi) => Some(pi),
            Place::Infinity => None,
        }
    }

    pub fn normalize(&self, a: &Poly) -> Poly {
        match self.modulus() {
            Some(pi) => a.rem(pi).expect("nonzero modulus"),
            None => a.truncate(1),
        }
    }

    /// Image of an element with `v_P(f) >= 0`.
    pub fn reduce(&self, f: &RationalFunction) -> Result<Poly> {
        match self.place.valuation(f) {
            Valuation::Infinity => return Ok(self.zero()),
            Valuation::Finite(v) if v < 0 => {
                return Err(Error::InvalidInput(format!(
                    "element has a pole of order {} at {}",
                    -v, self.place
                )))
            }
            _ => {}
        }
        match self.modulus() {
            Some(pi) => {
                let inv = f.den().inv_mod(pi)?;
                f.num().checked_mul(&inv)?.rem(pi)
            }
            None => {
                if f.num().deg() < f.den().deg() {
                    Ok(self.zero())
                } else {
                    Ok(Poly::constant(&self.field, self.field.div(f.num().lc(), f.den().lc())?))
                }
            }
        }
    }

    /// `(v, c)` with `f = c u^v + (higher order terms)`, `u` the canonical uniformizer.
    pub fn leading(&self, f: &RationalFunction) -> Result<(i64, Poly)> {
        let v = self.place.valuation(f).finite().ok_or(Error::ZeroInput)?;
        let scaled = f.checked_mul(&self.place.uniformizer_pow(&self.field, -v))?;
        Ok((v, self.reduce(&scaled)?))
    }

    /// A representative in `F_q(t)`.
    pub fn lift(&self, a: &Poly) -> RationalFunction {
        RationalFunction::from_poly(self.normalize(a))
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a - b
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.normalize(&(a * b))
    }

    pub fn inv(&self, a: &Poly) -> Result<Poly> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self.modulus() {
            Some(pi) => a.inv_mod(pi),
            None => Ok(Poly::constant(&self.field, self.field.inv(a.coeff(0))?)),
        }
    }

    pub fn pow(&self, a: &Poly, e: u128) -> Poly {
        match self.modulus() {
            Some(pi) => a.pow_mod(e, pi).expect("nonzero modulus"),
            None => {
                let order = self.field.q() as u128 - 1;
                let e = if e == 0 { 0 } else { (e - 1) % order + 1 };
                Poly::constant(&self.field, self.field.pow(a.coeff(0), e as u64))
            }
        }
    }

    pub fn frobenius(&self, a: &Poly) -> Poly {
        self.normalize(&a.frobenius())
    }

    /// The unique `p`-th root.
    pub fn pth_root(&self, a: &Poly) -> Poly {
        let n = self.absolute_degree();
        (1..n).fold(a.clone(), |acc, _| self.frobenius(&acc))
    }

    /// Trace down to `F_p`, as an element of the prime subfield of `F_q`.
    pub fn absolute_trace(&self, a: &Poly) -> Fq {
        let mut acc = self.zero();
        let mut cur = self.normalize(a);
        for _ in 0..self.absolute_degree() {
            acc = &acc + &cur;
            cur = self.frobenius(&cur);
        }
        debug_assert!(acc.is_constant());
        acc.coeff(0)
    }

    /// All elements, in the fixed ordering (only for small residue fields).
    pub fn elements(&self) -> impl Iterator<Item = Poly> + '_ {
        let q = self.field.q() as u64;
        let d = self.degree();
        (0..q.pow(d as u32)).map(move |mut idx| {
            let mut v = Vec::with_capacity(d);
            for _ in 0..d {
                v.push(self.field.element((idx % q) as u32));
                idx /= q;
            }
            Poly::new(&self.field, v)
        })
    }
}
