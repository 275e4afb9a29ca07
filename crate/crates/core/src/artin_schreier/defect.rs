//! The expansion defect `u^{-m} - pi^{-mp}` in a layer `x^p - x = u^{-s}`.

use super::tower::{ASTower, TowerElement, TrackedPlace};
use crate::base_fields::{FieldSpec, Place, RationalFunction};
use crate::error::{Error, Result};

/// `u^{-m} - pi_k^{-mp}` at level `k`, where `u = pi_{k-1}`.
pub fn defect_witness(tower: &ASTower, k: usize, tp: &TrackedPlace, m: i64) -> Result<TowerElement> {
    let p = tower.p() as i64;
    if m <= 0 || m % p == 0 {
        return Err(Error::InvalidInput(format!("m = {m} must be positive and prime to p")));
    }
    if k == 0 || k > tower.height() {
        return Err(Error::InvalidInput(format!("layer {k} does not exist")));
    }
    let ld = &tp.layers[k - 1];
    let u = tower.lift(&tower.uniformizer(k - 1, tp), k);
    let expected = tower.pow_signed(&u, -ld.s)?;
    if !tower.equal(&tower.lift(tower.defining(k), k), &expected) {
        return Err(Error::InvalidInput(format!(
            "layer {k} is not defined by a power of the previous uniformizer"
        )));
    }
    let pi = tower.uniformizer(k, tp);
    Ok(tower.sub(&tower.pow_signed(&u, -m)?, &tower.pow_signed(&pi, -m * p)?))
}

/// Valuation of [`defect_witness`] at level `k`; equals `(p - 1) s - m p`.
pub fn expansion_defect(tower: &ASTower, k: usize, tp: &TrackedPlace, m: i64) -> Result<i64> {
    let g = defect_witness(tower, k, tp, m)?;
    tower
        .valuation_at(&g, tp, k)
        .finite()
        .ok_or_else(|| Error::InvalidInput("defect witness vanished".into()))
}

/// The defect in the one-layer tower `x^p - x = t^{-s}` over `F_p(t)` at `t = 0`.
pub fn expansion_defect_for(p: u32, s: i64, m: i64) -> Result<i64> {
    let field = FieldSpec::prime(p)?;
    let place = Place::zero(&field);
    let base = ASTower::new(&field, &[place])?;
    let tower = base.extend(&base.base(&RationalFunction::t_pow(&field, -s)))?;
    let tp = tower.tracked()[0].clone();
    expansion_defect(&tower, 1, &tp, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defect_examples() {
        assert_eq!(expansion_defect_for(2, 3, 1).unwrap(), 1);
        assert_eq!(expansion_defect_for(3, 5, 2).unwrap(), 4);
    }

    #[test]
    fn explicit_witness_f2() {
        let field = FieldSpec::prime(2).unwrap();
        let base = ASTower::new(&field, &[Place::zero(&field)]).unwrap();
        let tower = base.extend(&base.base(&RationalFunction::t_pow(&field, -3))).unwrap();
        let tp = tower.tracked()[0].clone();
        let g = defect_witness(&tower, 1, &tp, 1).unwrap();
        let expected = tower.parse("x1*t^2 / (x1*t^3 + 1)").unwrap();
        assert!(tower.equal(&g, &expected));
        assert_eq!(expansion_defect(&tower, 1, &tp, 1).unwrap(), 1);
    }
}
