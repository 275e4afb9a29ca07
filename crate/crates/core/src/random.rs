//! Random inputs for self-tests and property tests.

use rand::Rng;

use crate::base_fields::{Field, Fq, Place, Poly, RationalFunction};

pub fn fq<R: Rng>(field: &Field, rng: &mut R) -> Fq {
    field.element(rng.gen_range(0..field.q()))
}

pub fn nonzero_fq<R: Rng>(field: &Field, rng: &mut R) -> Fq {
    field.element(rng.gen_range(1..field.q()))
}

/// A polynomial of degree at most `max_deg`.
pub fn poly<R: Rng>(field: &Field, max_deg: usize, rng: &mut R) -> Poly {
    let d = rng.gen_range(0..=max_deg);
    Poly::new(field, (0..=d).map(|_| fq(field, rng)).collect())
}

/// A rational function with numerator and denominator of degree at most `max_deg`.
pub fn rational<R: Rng>(field: &Field, max_deg: usize, rng: &mut R) -> RationalFunction {
    loop {
        let den = poly(field, max_deg, rng);
        if !den.is_zero() {
            return RationalFunction::new(poly(field, max_deg, rng), den).expect("nonzero denominator");
        }
    }
}

pub fn nonzero_rational<R: Rng>(field: &Field, max_deg: usize, rng: &mut R) -> RationalFunction {
    loop {
        let f = rational(field, max_deg, rng);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random rational place: `inf` or `t - c`.
pub fn rational_place<R: Rng>(field: &Field, rng: &mut R) -> Place {
    let i = rng.gen_range(0..=field.q());
    if i == field.q() {
        Place::Infinity
    } else {
        Place::rational(field, field.element(i))
    }
}

/// `sum_{1 <= n <= max_pole} c_n u^{-n}` at `place` with random coefficients,
/// plus a random polynomial in `u` of degree below `extra`.
pub fn polar<R: Rng>(field: &Field, place: &Place, max_pole: i64, extra: usize, rng: &mut R) -> RationalFunction {
    let mut f = RationalFunction::zero(field);
    for n in -max_pole..extra as i64 {
        if rng.gen_bool(0.5) {
            f = &f + &place.uniformizer_pow(field, n).scale(fq(field, rng));
        }
    }
    f
}

/// Like [`polar`] with the top pole order exactly `max_pole`.
pub fn polar_exact<R: Rng>(field: &Field, place: &Place, max_pole: i64, extra: usize, rng: &mut R) -> RationalFunction {
    let lead = place.uniformizer_pow(field, -max_pole).scale(nonzero_fq(field, rng));
    let rest = polar(field, place, max_pole - 1, extra, rng);
    &lead + &rest
}
