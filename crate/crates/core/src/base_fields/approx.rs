//! Weak approximation on the projective line, made constructive by CRT.

use super::fq::Field;
use super::place::{Place, Valuation};
use super::poly::Poly;
use super::rational::RationalFunction;
use crate::error::{Error, Result};

fn check_distinct(places: &[&Place]) -> Result<()> {
    for (i, a) in places.iter().enumerate() {
        if places[..i].contains(a) {
            return Err(Error::InvalidInput(format!("place {a} listed twice")));
        }
    }
    Ok(())
}

/// `a mod pi^k` for `a` integral at the place of `pi`.
fn reduce_integral(a: &RationalFunction, pik: &Poly) -> Result<Poly> {
    let inv = a.den().inv_mod(pik)?;
    a.num().checked_mul(&inv)?.rem(pik)
}

/// Least monic irreducible polynomial (by degree, then coefficient order)
/// that is not the polynomial of any listed finite place.
fn fresh_irreducible(field: &Field, places: &[&Place]) -> Poly {
    let mut d = 1;
    loop {
        let count = (field.q() as u64).pow(d as u32);
        for idx in 0..count {
            let cand = Poly::monic_of_degree(field, d, idx);
            if cand.is_irreducible() && !places.contains(&&Place::Finite(cand.clone())) {
                return cand;
            }
        }
        d += 1;
    }
}

/// Some `f` with `v_{P_i}(f - a_i) > c` for every target.
///
/// Writes `f = F / H` where `H` clears the poles of the targets at the finite
/// places, `F` is fixed modulo `pi_i^{c + 1 + e_i}` by CRT, and, when infinity is
/// a target, the top coefficients of `F` are copied from `a_inf H`. A spare
/// factor `rho^d` in `H` makes room for both constraints at once.
pub fn approximate(field: &Field, targets: &[(Place, RationalFunction)], c: i64) -> Result<RationalFunction> {
    let places: Vec<&Place> = targets.iter().map(|(p, _)| p).collect();
    check_distinct(&places)?;
    let m = c + 1;
    let finite: Vec<(&Poly, &RationalFunction)> = targets
        .iter()
        .filter_map(|(p, a)| match p {
            Place::Finite(pi) => Some((pi, a)),
            Place::Infinity => None,
        })
        .collect();
    let at_inf = targets.iter().find(|(p, _)| p.is_infinity()).map(|(_, a)| a);

    let mut h = Poly::one(field);
    let mut pole_orders = Vec::new();
    for &(pi, a) in &finite {
        let e = match Place::Finite(pi.clone()).valuation(a) {
            Valuation::Finite(v) if v < 0 => (-v) as u64,
            _ => 0,
        };
        pole_orders.push(e);
        h = &h * &pi.pow(e);
    }
    let moduli: Vec<u64> = pole_orders.iter().map(|&e| (m + e as i64).max(0) as u64).collect();
    let deg_r: i64 = finite
        .iter()
        .zip(&moduli)
        .map(|((pi, _), &k)| pi.deg() * k as i64)
        .sum();
    if at_inf.is_some() {
        let need = deg_r - h.deg() + m - 1;
        if need > 0 {
            let rho = fresh_irreducible(field, &places);
            let d = (need + rho.deg() - 1) / rho.deg();
            h = &h * &rho.pow(d as u64);
        }
    }

    // CRT for the finite conditions.
    let mut f0 = Poly::zero(field);
    let mut r = Poly::one(field);
    for (&(pi, a), &k) in finite.iter().zip(&moduli) {
        if k == 0 {
            continue;
        }
        let pik = pi.pow(k);
        let ah = a.checked_mul(&RationalFunction::from_poly(h.clone()))?;
        let target = reduce_integral(&ah, &pik)?;
        // f0 + r * ((target - f0) * r^{-1} mod pik)
        let corr = (&(&target - &f0) * &r.inv_mod(&pik)?).rem(&pik)?;
        f0 = &f0 + &(&r * &corr);
        r = &r * &pik;
    }

    let big_f = match at_inf {
        None => f0,
        Some(a) => {
            let ah = a.checked_mul(&RationalFunction::from_poly(h.clone()))?;
            let (poly_part, _) = ah.num().div_rem(ah.den())?;
            let j = (h.deg() - m + 1).max(0) as usize;
            let top: Vec<_> = (0..poly_part.coeffs().len())
                .map(|i| if i >= j { poly_part.coeff(i) } else { field.zero() })
                .collect();
            let top = Poly::new(field, top);
            &top + &(&f0 - &top).rem(&r)?
        }
    };
    let f = RationalFunction::new(big_f, h)?;
    for (place, a) in targets {
        let v = place.valuation(&f.checked_sub(a)?);
        if v <= Valuation::Finite(c) {
            return Err(Error::InvalidInput(format!(
                "approximation failed to verify at {place}"
            )));
        }
    }
    Ok(f)
}

/// Some `f` with `v_{P_i}(f) = s_i` exactly.
pub fn prescribe_valuations(field: &Field, places: &[Place], s: &[i64]) -> Result<RationalFunction> {
    if places.len() != s.len() {
        return Err(Error::InvalidInput("places and valuations differ in length".into()));
    }
    if places.is_empty() {
        return Ok(RationalFunction::one(field));
    }
    let targets: Vec<(Place, RationalFunction)> = places
        .iter()
        .zip(s)
        .map(|(p, &si)| (p.clone(), p.uniformizer_pow(field, si)))
        .collect();
    let c = *s.iter().max().expect("nonempty");
    let f = approximate(field, &targets, c)?;
    for (p, &si) in places.iter().zip(s) {
        if p.valuation(&f) != si {
            return Err(Error::InvalidInput(format!("prescribed valuation failed at {p}")));
        }
    }
    Ok(f)
}

/// `f = sum u_i^{-n_i}` whose polar divisor is exactly `sum n_i [P_i]`.
pub fn polar_divisor(field: &Field, points: &[Place], n: &[i64]) -> Result<RationalFunction> {
    if points.len() != n.len() {
        return Err(Error::InvalidInput("points and multiplicities differ in length".into()));
    }
    let refs: Vec<&Place> = points.iter().collect();
    check_distinct(&refs)?;
    let mut f = RationalFunction::zero(field);
    for (p, &ni) in points.iter().zip(n) {
        p.require_rational()?;
        if ni <= 0 {
            return Err(Error::InvalidInput(format!("pole order {ni} must be positive")));
        }
        f = &f + &p.uniformizer_pow(field, -ni);
    }
    if !has_polar_divisor(&f, points, n) {
        return Err(Error::InvalidInput("polar divisor check failed".into()));
    }
    Ok(f)
}

/// Whether the poles of `f` are exactly `sum n_i [P_i]`, checked by stripping
/// the denominator place by place and comparing the degree at infinity.
pub fn has_polar_divisor(f: &RationalFunction, points: &[Place], n: &[i64]) -> bool {
    let mut rest = f.den().clone();
    let mut inf_order = 0;
    for (p, &ni) in points.iter().zip(n) {
        match p {
            Place::Infinity => inf_order = ni,
            Place::Finite(pi) => {
                let (m, r) = rest.multiplicity(pi).expect("nonzero denominator");
                if m as i64 != ni {
                    return false;
                }
                rest = r;
            }
        }
    }
    if !rest.is_constant() {
        return false;
    }
    let v_inf = Place::Infinity.valuation(f);
    if inf_order > 0 {
        v_inf == -inf_order
    } else {
        v_inf.at_least(0)
    }
}
