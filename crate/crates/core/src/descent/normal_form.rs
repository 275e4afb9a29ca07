//! Normal forms of classes in `K / (O_P + K^{p^N})` at a rational place.

use serde::{Deserialize, Serialize};

use crate::base_fields::{polar_part, terms_to_function, Fq, Place, RationalFunction};
use crate::error::{Error, Result};

/// A class represented by polar terms `c u^n` with `n < 0` and `p^N` not
/// dividing `n`, sorted by decreasing exponent. Empty means the zero class.
#[derive(Clone, Debug, PartialEq)]
pub struct QClass {
    pub place: Place,
    pub exponent: u32,
    pub terms: Vec<(i64, Fq)>,
}

impl QClass {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest pole order among the terms (0 for the zero class).
    pub fn pole_order(&self) -> i64 {
        self.terms.iter().map(|&(n, _)| -n).max().unwrap_or(0)
    }

    /// `sum c u^n` as a rational function.
    pub fn to_function(&self, field: &crate::base_fields::Field) -> RationalFunction {
        terms_to_function(field, &self.place, &self.terms)
    }
}

/// `a = u + w^{p^N} + (class terms)` with `u` integral at the place.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm {
    pub class: QClass,
    pub u: RationalFunction,
    pub w: RationalFunction,
}

/// Serializable view of a class term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub n: i64,
    pub c: String,
}

/// Splits the polar part of `a` at `place` into `p^N`-th powers and the rest.
pub fn normal_form(a: &RationalFunction, place: &Place, n: u32) -> Result<NormalForm> {
    if n == 0 {
        return Err(Error::InvalidInput("exponent N must be at least 1".into()));
    }
    let field = a.field();
    let p = field.p() as i64;
    let pn = p
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidInput(format!("exponent N = {n} is too large")))?;
    let polar = polar_part(a, place)?;
    let mut w_terms = Vec::new();
    let mut terms = Vec::new();
    for &(e, c) in &polar {
        if e % pn == 0 {
            w_terms.push((e / pn, field.pth_root_iter(c, n)));
        } else {
            terms.push((e, c));
        }
    }
    terms.reverse();
    let class = QClass {
        place: place.clone(),
        exponent: n,
        terms,
    };
    let w = terms_to_function(field, place, &w_terms);
    let polar_fn = terms_to_function(field, place, &polar);
    let u = a.checked_sub(&polar_fn)?;
    let rebuilt = u
        .checked_add(&w.frobenius_iter(n))?
        .checked_add(&class.to_function(field))?;
    if &rebuilt != a || place.valuation(&u) < 0 {
        return Err(Error::InvalidInput("normal form witness failed its check".into()));
    }
    Ok(NormalForm { class, u, w })
}

/// Whether `a` lies in `O_P + K^{p^N}`.
pub fn is_extendable(a: &RationalFunction, place: &Place, n: u32) -> Result<bool> {
    Ok(normal_form(a, place, n)?.class.is_zero())
}

/// Least `s` prime to `p` with `(p - 1) s > m p`.
pub fn choose_s(p: u32, m: i64) -> i64 {
    let p = p as i64;
    let mut s = m.max(0) * p / (p - 1) + 1;
    while s % p == 0 {
        s += 1;
    }
    s
}
