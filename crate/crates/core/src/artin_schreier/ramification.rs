//! Splitting behaviour of a place in a single Artin-Schreier extension.

use serde::{Deserialize, Serialize};

use crate::base_fields::{wp_preimage, Place, RationalFunction, ResidueField, Valuation};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RamificationCase {
    Split,
    Inert,
    TotallyRamified,
    Trivial,
}

/// `e`, `f`, `g` of a place in a degree-`p` (or trivial) extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationReport {
    pub e: u32,
    pub f: u32,
    pub g: u32,
    pub case: RamificationCase,
}

impl RamificationReport {
    pub fn split(p: u32) -> Self {
        RamificationReport {
            e: 1,
            f: 1,
            g: p,
            case: RamificationCase::Split,
        }
    }

    pub fn inert(p: u32) -> Self {
        RamificationReport {
            e: 1,
            f: p,
            g: 1,
            case: RamificationCase::Inert,
        }
    }

    pub fn totally_ramified(p: u32) -> Self {
        RamificationReport {
            e: p,
            f: 1,
            g: 1,
            case: RamificationCase::TotallyRamified,
        }
    }

    pub fn trivial() -> Self {
        RamificationReport {
            e: 1,
            f: 1,
            g: 1,
            case: RamificationCase::Trivial,
        }
    }

    pub fn is_unramified(&self) -> bool {
        self.e == 1
    }
}

/// Result of [`as_reduce`]: `reduced = f + g^p - g`.
#[derive(Clone, Debug, PartialEq)]
pub struct AsReduction {
    pub reduced: RationalFunction,
    pub g: RationalFunction,
}

/// Removes leading terms of pole order divisible by `p` by adding `g^p - g`,
/// until the valuation at `place` is nonnegative or negative and prime to `p`.
pub fn as_reduce(f: &RationalFunction, place: &Place) -> Result<AsReduction> {
    let field = f.field();
    let p = field.p() as i64;
    let res = ResidueField::new(field, place);
    let mut cur = f.clone();
    let mut g = RationalFunction::zero(field);
    loop {
        let v = match place.valuation(&cur) {
            Valuation::Finite(v) if v < 0 && v % p == 0 => v,
            _ => break,
        };
        let (_, c) = res.leading(&cur)?;
        let r = res.pth_root(&c);
        let step = res.lift(&r).checked_mul(&place.uniformizer_pow(field, v / p))?.neg();
        cur = cur.checked_add(&step.wp())?;
        g = g.checked_add(&step)?;
        if place.valuation(&cur) <= Valuation::Finite(v) {
            return Err(Error::InvalidInput("reduction step did not raise the valuation".into()));
        }
    }
    Ok(AsReduction { reduced: cur, g })
}

/// Classifies `place` in `F_q(t)[x]/(x^p - x - f)`. The input must already be
/// reduced at `place` (see [`as_reduce`]).
pub fn classify_ramification(f: &RationalFunction, place: &Place) -> Result<RamificationReport> {
    let field = f.field();
    let p = field.p();
    if wp_preimage(f).is_some() {
        return Ok(RamificationReport::trivial());
    }
    let v = place.val(f);
    if v < 0 {
        if v % p as i64 == 0 {
            return Err(Error::UnreducedInput {
                place: place.to_string(),
                valuation: v,
            });
        }
        return Ok(RamificationReport::totally_ramified(p));
    }
    if v > 0 {
        return Ok(RamificationReport::split(p));
    }
    let res = ResidueField::new(field, place);
    let residue = res.reduce(f)?;
    if res.absolute_trace(&residue).is_zero() {
        Ok(RamificationReport::split(p))
    } else {
        Ok(RamificationReport::inert(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_fields::{FieldSpec, Poly};

    #[test]
    fn classify_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let t0 = Place::zero(&f2);
        let t = RationalFunction::t(&f2);
        assert_eq!(classify_ramification(&t, &t0).unwrap(), RamificationReport::split(2));
        let f = &RationalFunction::one(&f2) + &t;
        let r = classify_ramification(&f, &t0).unwrap();
        assert_eq!((r.case, r.f), (RamificationCase::Inert, 2));
        let r = classify_ramification(&RationalFunction::t_pow(&f2, -1), &t0).unwrap();
        assert_eq!((r.case, r.e), (RamificationCase::TotallyRamified, 2));
        assert!(matches!(
            classify_ramification(&RationalFunction::t_pow(&f2, -2), &t0),
            Err(Error::UnreducedInput { valuation: -2, .. })
        ));
    }

    #[test]
    fn reduce_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let t0 = Place::zero(&f2);
        let r = as_reduce(&RationalFunction::t_pow(&f2, -2), &t0).unwrap();
        assert_eq!(r.reduced, RationalFunction::t_pow(&f2, -1));
        assert_eq!(r.g, RationalFunction::t_pow(&f2, -1));
        let r = as_reduce(&RationalFunction::t_pow(&f2, -4), &t0).unwrap();
        let v = t0.valuation(&r.reduced);
        assert!(v.at_least(0) || v.finite().unwrap() % 2 != 0);
        assert_eq!(&RationalFunction::t_pow(&f2, -4) + &r.g.wp(), r.reduced);
        let f = &RationalFunction::t_pow(&f2, -3) + &RationalFunction::t_pow(&f2, -2);
        assert_eq!(as_reduce(&RationalFunction::t_pow(&f2, -3), &t0).unwrap().reduced, RationalFunction::t_pow(&f2, -3));
        assert_eq!(t0.valuation(&as_reduce(&f, &t0).unwrap().reduced), -3);
    }

    #[test]
    fn unreduced_is_refused() {
        let f3 = FieldSpec::prime(3).unwrap();
        let t0 = Place::zero(&f3);
        // t^-3 + t^-1 is not in the image of wp but has valuation -3.
        let f = &RationalFunction::t_pow(&f3, -3) + &RationalFunction::t_pow(&f3, -1);
        assert!(matches!(
            classify_ramification(&f, &t0),
            Err(Error::UnreducedInput { valuation: -3, .. })
        ));
        let r = as_reduce(&f, &t0).unwrap();
        assert_eq!(
            classify_ramification(&r.reduced, &t0).unwrap().case,
            RamificationCase::TotallyRamified
        );
    }

    #[test]
    fn higher_degree_place() {
        let f2 = FieldSpec::prime(2).unwrap();
        let irr = Place::finite(Poly::from_ints(&f2, &[1, 1, 1])).unwrap();
        // residue of t at t^2+t+1 is a primitive cube root of unity, trace 1
        let r = classify_ramification(&RationalFunction::t(&f2), &irr).unwrap();
        assert_eq!(r.case, RamificationCase::Inert);
        let r = classify_ramification(&RationalFunction::one(&f2), &irr).unwrap();
        assert_eq!(r.case, RamificationCase::Split);
    }
}
