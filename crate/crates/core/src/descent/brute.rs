//! Exhaustive membership oracle for small search spaces.

use crate::artin_schreier::{ASTower, TowerElement};
use crate::base_fields::RationalFunction;
use crate::error::{Error, Result};

/// Largest number of candidates [`brute_force_membership`] will try.
pub const MAX_CANDIDATES: u128 = 1_000_000;

/// Whether some `h = sum_i sum_{1 <= j <= B} c_ij pi_i^{-j}` (top-level
/// uniformizers, `c_ij` in `F_q`) makes `a - h^{p^N}` integral at every
/// tracked place.
pub fn brute_force_membership(a: &RationalFunction, tower: &ASTower, pole_bound: usize, n: u32) -> Result<bool> {
    let field = tower.field();
    let q = field.q() as u128;
    let slots = pole_bound * tower.tracked().len();
    let count = q
        .checked_pow(slots as u32)
        .filter(|&c| c <= MAX_CANDIDATES)
        .ok_or(Error::SearchSpaceTooLarge(q.saturating_pow(slots as u32)))?;
    let top = tower.height();
    // (pi^{-j})^{p^N} for every slot; h^{p^N} is additive in h.
    let mut basis: Vec<TowerElement> = Vec::with_capacity(slots);
    for tp in tower.tracked() {
        let pi = tower.lift(&tower.uniformizer(top, tp), top);
        let inv = tower.inv(&pi)?;
        let mut cur = tower.one();
        for _ in 0..pole_bound {
            cur = tower.mul(&cur, &inv);
            basis.push(tower.frobenius_iter(&cur, n));
        }
    }
    let a = tower.lift(&tower.base(a), top);
    let elems: Vec<_> = field.elements().collect();
    for idx in 0..count {
        let mut rest = idx;
        let mut cand = a.clone();
        for b in &basis {
            let c = elems[(rest % q) as usize];
            rest /= q;
            if !c.is_zero() {
                let cp = field.pow(c, (field.p() as u64).pow(n));
                cand = tower.sub(&cand, &tower.scale(b, &RationalFunction::constant(field, cp)));
            }
        }
        if tower.tracked().iter().all(|tp| tower.valuation_at(&cand, tp, top).at_least(0)) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_fields::{FieldSpec, Place};

    #[test]
    fn oracle_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let t0 = Place::zero(&f2);
        let trivial = ASTower::new(&f2, std::slice::from_ref(&t0)).unwrap();
        assert!(!brute_force_membership(&RationalFunction::t_pow(&f2, -1), &trivial, 2, 1).unwrap());
        assert!(brute_force_membership(&RationalFunction::t_pow(&f2, -2), &trivial, 2, 1).unwrap());
        let tower = trivial.extend(&trivial.base(&RationalFunction::t_pow(&f2, -3))).unwrap();
        assert!(brute_force_membership(&RationalFunction::t_pow(&f2, -1), &tower, 2, 1).unwrap());
    }

    #[test]
    fn search_space_limit() {
        let f7 = FieldSpec::prime(7).unwrap();
        let tower = ASTower::new(&f7, &[Place::zero(&f7)]).unwrap();
        assert!(matches!(
            brute_force_membership(&RationalFunction::t(&f7), &tower, 8, 1),
            Err(Error::SearchSpaceTooLarge(_))
        ));
    }
}
