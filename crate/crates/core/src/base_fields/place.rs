//! Places of `F_q(t)` and their normalized valuations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use super::fq::{Field, Fq};
use super::poly::Poly;
use super::rational::RationalFunction;
use crate::error::{Error, Result};

/// A valuation value: an integer, or `+infinity` for the zero element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinity
    }

    /// `self >= n`, with infinity above every integer.
    pub fn at_least(self, n: i64) -> bool {
        self >= Valuation::Finite(n)
    }

    pub fn scale(self, k: i64) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v * k),
            Valuation::Infinity => Valuation::Infinity,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl PartialEq<i64> for Valuation {
    fn eq(&self, other: &i64) -> bool {
        *self == Valuation::Finite(*other)
    }
}

impl PartialOrd<i64> for Valuation {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Valuation::Finite(*other)))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// A closed point of the projective line over `F_q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    /// The zeros of a monic irreducible polynomial.
    Finite(Poly),
    Infinity,
}

impl Place {
    /// Place of a monic irreducible polynomial (non-monic input is normalized).
    pub fn finite(pi: Poly) -> Result<Place> {
        let (_, pi) = pi.monic();
        if !pi.is_irreducible() {
            return Err(Error::NotIrreducible(format!("{pi}")));
        }
        Ok(Place::Finite(pi))
    }

    /// The rational place `t = c`.
    pub fn rational(field: &Field, c: Fq) -> Place {
        Place::Finite(Poly::linear(field, c))
    }

    /// The place `t = 0`.
    pub fn zero(field: &Field) -> Place {
        Place::rational(field, field.zero())
    }

    pub fn infinity() -> Place {
        Place::Infinity
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(pi) => pi.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// `Some(c)` for the place `t = c`.
    pub fn rational_point(&self) -> Option<Fq> {
        match self {
            Place::Finite(pi) if pi.deg() == 1 => Some(pi.field().neg(pi.coeff(0))),
            _ => None,
        }
    }

    pub fn require_rational(&self) -> Result<()> {
        if self.is_rational() {
            Ok(())
        } else {
            Err(Error::UnsupportedPlaceDegree(format!("{self}")))
        }
    }

    /// Canonical uniformizer: `pi_P` at a finite place, `1/t` at infinity.
    pub fn uniformizer(&self, field: &Field) -> RationalFunction {
        match self {
            Place::Finite(pi) => RationalFunction::from_poly(pi.clone()),
            Place::Infinity => RationalFunction::t_pow(field, -1),
        }
    }

    /// `u^n` for the canonical uniformizer `u`.
    pub fn uniformizer_pow(&self, field: &Field, n: i64) -> RationalFunction {
        match self {
            Place::Infinity => RationalFunction::t_pow(field, -n),
            Place::Finite(_) => self.uniformizer(field).pow(n).expect("nonzero uniformizer"),
        }
    }

    /// Order of vanishing of a polynomial at this finite place.
    fn poly_order(pi: &Poly, a: &Poly) -> i64 {
        a.multiplicity(pi).map(|(m, _)| m as i64).unwrap_or(0)
    }

    /// Normalized valuation of `f`.
    pub fn valuation(&self, f: &RationalFunction) -> Valuation {
        if f.is_zero() {
            return Valuation::Infinity;
        }
        match self {
            Place::Finite(pi) => Valuation::Finite(
                Self::poly_order(pi, f.num()) - Self::poly_order(pi, f.den()),
            ),
            Place::Infinity => Valuation::Finite(f.den().deg() - f.num().deg()),
        }
    }

    /// Finite valuation of a nonzero element.
    pub fn val(&self, f: &RationalFunction) -> i64 {
        self.valuation(f).finite().expect("valuation of zero")
    }

    /// Ordering used for deterministic output: finite places by degree then
    /// coefficients, infinity last.
    pub fn sort_key(&self) -> (usize, Vec<u32>) {
        match self {
            Place::Finite(pi) => (
                pi.degree().unwrap_or(0),
                pi.coeffs().iter().map(|c| c.index()).collect(),
            ),
            Place::Infinity => (usize::MAX, Vec::new()),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// `sum_P deg(P) v_P(f)`, computed over the places dividing the numerator and
/// denominator plus infinity. Zero for every nonzero `f`.
pub fn degree_sum(f: &RationalFunction) -> i64 {
    let mut total = Place::Infinity.val(f);
    for (pi, m) in f.num().factor() {
        total += pi.deg() * m as i64;
    }
    for (pi, m) in f.den().factor() {
        total -= pi.deg() * m as i64;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_fields::fq::FieldSpec;

    #[test]
    fn valuation_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let t = |n| RationalFunction::t_pow(&f2, n);
        let zero = Place::zero(&f2);
        assert_eq!(zero.valuation(&(&t(-3) + &t(2))), Valuation::Finite(-3));
        assert_eq!(Place::Infinity.valuation(&(&t(3) + &t(-1))), Valuation::Finite(-3));
        let one = RationalFunction::one(&f2);
        assert_eq!(zero.valuation(&one), 0);
        assert_eq!(Place::Infinity.valuation(&one), 0);
        assert!(zero.valuation(&RationalFunction::zero(&f2)).is_infinite());
    }

    #[test]
    fn rational_points() {
        let f5 = FieldSpec::prime(5).unwrap();
        let p = Place::rational(&f5, f5.from_int(3));
        assert_eq!(p.rational_point(), Some(f5.from_int(3)));
        assert_eq!(Place::Infinity.rational_point(), None);
        let irr = Place::finite(Poly::from_ints(&f5, &[2, 0, 1])).unwrap();
        assert_eq!(irr.degree(), 2);
        assert!(Place::finite(Poly::from_ints(&f5, &[1, 0, 1])).is_err());
    }

    #[test]
    fn product_formula_example() {
        let f3 = FieldSpec::prime(3).unwrap();
        let f = RationalFunction::new(
            Poly::from_ints(&f3, &[1, 0, 1, 2]),
            Poly::from_ints(&f3, &[0, 0, 1, 1]),
        )
        .unwrap();
        assert_eq!(degree_sum(&f), 0);
    }
}
