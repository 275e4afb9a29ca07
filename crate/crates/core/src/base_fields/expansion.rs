//! Laurent expansions at rational places, exact polar parts and Hensel roots.

use super::fq::{Field, Fq};
use super::place::{Place, Valuation};
use super::poly::Poly;
use super::rational::RationalFunction;
use crate::error::{Error, Result};

/// `sum_{i} coeffs[i] u^{start + i}`, exact modulo terms of valuation `>= precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExpansion {
    pub place: Place,
    pub start: i64,
    pub coeffs: Vec<Fq>,
    pub precision: i64,
}

impl LocalExpansion {
    /// Whether the expansion is zero to its precision.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Valuation of the leading term, or infinity when zero to precision.
    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => Valuation::Finite(self.start + i as i64),
            None => Valuation::Infinity,
        }
    }

    /// The coefficient of `u^n` (zero outside the stored window).
    pub fn coeff(&self, n: i64) -> Fq {
        if n < self.start {
            return Fq::ZERO;
        }
        self.coeffs
            .get((n - self.start) as usize)
            .copied()
            .unwrap_or(Fq::ZERO)
    }

    /// The truncated sum as an element of `F_q(t)`.
    pub fn resum(&self, field: &Field) -> RationalFunction {
        let mut acc = RationalFunction::zero(field);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = self.place.uniformizer_pow(field, self.start + i as i64).scale(c);
            acc = &acc + &term;
        }
        acc
    }
}

/// Moves the rational place `P` to `t = 0`: returns `f` in the chart where the
/// canonical uniformizer of `P` becomes `t`.
pub(crate) fn to_origin(f: &RationalFunction, place: &Place) -> Result<RationalFunction> {
    match place {
        Place::Infinity => Ok(f.invert_variable()),
        Place::Finite(_) => {
            let c = place
                .rational_point()
                .ok_or_else(|| Error::UnsupportedPlaceDegree(format!("{place}")))?;
            Ok(f.translate(c))
        }
    }
}

/// Expansion of `f` at a rational place, exact below `precision`.
pub fn local_expand(f: &RationalFunction, place: &Place, precision: i64) -> Result<LocalExpansion> {
    place.require_rational()?;
    let v = match place.valuation(f) {
        Valuation::Infinity => {
            return Ok(LocalExpansion {
                place: place.clone(),
                start: precision,
                coeffs: Vec::new(),
                precision,
            })
        }
        Valuation::Finite(v) => v,
    };
    if precision <= v {
        return Err(Error::PrecisionNotPositiveOverValuation {
            precision,
            valuation: v,
        });
    }
    let g = to_origin(f, place)?;
    let zn = g.num().low_degree().unwrap_or(0);
    let zd = g.den().low_degree().unwrap_or(0);
    let num = Poly::new(g.field(), g.num().coeffs()[zn..].to_vec());
    let den = Poly::new(g.field(), g.den().coeffs()[zd..].to_vec());
    let n = (precision - v) as usize;
    let series = num.mul_trunc(&den.series_inverse(n)?, n);
    let mut coeffs = series.coeffs().to_vec();
    coeffs.resize(n, Fq::ZERO);
    Ok(LocalExpansion {
        place: place.clone(),
        start: v,
        coeffs,
        precision,
    })
}

/// Exact polar part of `f` at a rational place: the terms `(n, c_n)` with
/// `n < 0`, in increasing order of `n`, such that `f - sum c_n u^n` is integral.
pub fn polar_part(f: &RationalFunction, place: &Place) -> Result<Vec<(i64, Fq)>> {
    place.require_rational()?;
    match place {
        Place::Infinity => {
            let (q, _) = f.num().div_rem(f.den())?;
            let mut out: Vec<(i64, Fq)> = q
                .coeffs()
                .iter()
                .enumerate()
                .skip(1)
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, &c)| (-(i as i64), c))
                .collect();
            out.reverse();
            Ok(out)
        }
        Place::Finite(pi) => {
            let (e, rest) = f.den().multiplicity(pi).expect("nonzero denominator");
            if e == 0 {
                return Ok(Vec::new());
            }
            // f = N / (pi^e D) with gcd(pi, D) = 1; the polar part is A / pi^e
            // where A = N D^{-1} mod pi^e.
            let pe = pi.pow(e as u64);
            let a = f.num().checked_mul(&rest.inv_mod(&pe)?)?.rem(&pe)?;
            let c = place.rational_point().expect("rational place");
            let shifted = a.taylor_shift(c);
            let out = (0..e as usize)
                .filter(|&j| !shifted.coeff(j).is_zero())
                .map(|j| (j as i64 - e as i64, shifted.coeff(j)))
                .collect();
            Ok(out)
        }
    }
}

/// `sum c_n u^n` for a list of terms at a place.
pub fn terms_to_function(field: &Field, place: &Place, terms: &[(i64, Fq)]) -> RationalFunction {
    terms.iter().fold(RationalFunction::zero(field), |acc, &(n, c)| {
        &acc + &place.uniformizer_pow(field, n).scale(c)
    })
}

/// `w` with `w^s = u` to the precision of `u`, for a unit expansion `u` and
/// `p` not dividing `s`. The residue root is the least one in element order.
pub fn hensel_sth_root(u: &LocalExpansion, field: &Field, s: i64) -> Result<LocalExpansion> {
    let p = field.p() as i64;
    if s <= 0 || s % p == 0 {
        return Err(Error::PNotCoprime {
            p: field.p(),
            s,
        });
    }
    match u.valuation() {
        Valuation::Finite(0) => {}
        Valuation::Finite(v) => return Err(Error::NotAUnit(v)),
        Valuation::Infinity => return Err(Error::NotAUnit(u.precision)),
    }
    let n = u.precision as usize;
    let target = Poly::new(field, (0..n as i64).map(|i| u.coeff(i)).collect());
    let c0 = u.coeff(0);
    let w0 = field
        .sth_root(c0, s as u64)?
        .ok_or_else(|| Error::NoResidueRoot(format!("{}", c0.index())))?;
    let mut w = vec![w0];
    // Newton step in coefficient form: the derivative of w -> w^s at w0 is
    // s w0^{s-1}, a unit because p does not divide s.
    let deriv_inv = field.inv(field.scale(field.pow(w0, (s - 1) as u64), s))?;
    for i in 1..n {
        w.push(Fq::ZERO);
        let cur = Poly::new(field, w.clone());
        let power = pow_trunc(&cur, s as u64, i + 1);
        let diff = field.sub(target.coeff(i), power.coeff(i));
        w[i] = field.mul(diff, deriv_inv);
        let check = pow_trunc(&Poly::new(field, w.clone()), s as u64, i + 1);
        if check.coeff(i) != target.coeff(i) {
            return Err(Error::InvalidInput("Hensel step failed to validate".into()));
        }
    }
    w.resize(n, Fq::ZERO);
    Ok(LocalExpansion {
        place: u.place.clone(),
        start: 0,
        coeffs: w,
        precision: u.precision,
    })
}

fn pow_trunc(a: &Poly, mut e: u64, n: usize) -> Poly {
    let mut base = a.truncate(n);
    let mut acc = Poly::one(a.field());
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_trunc(&base, n);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul_trunc(&base, n);
        }
    }
    acc
}
