//! A two-layer Artin-Schreier tower with valuations at a tracked place.

use asdescent::artin_schreier::ASTower;
use asdescent::base_fields::{FieldSpec, Place, RationalFunction};

fn main() -> asdescent::Result<()> {
    let field = FieldSpec::prime(3)?;
    let place = Place::zero(&field);
    let base = ASTower::new(&field, std::slice::from_ref(&place))?;
    let l1 = base.extend(&base.base(&RationalFunction::t_pow(&field, -2)))?;
    let tp = l1.tracked()[0].clone();
    // x_2^3 - x_2 = x_1^4, of valuation -8 at level 1
    let l2 = l1.extend(&l1.pow(&l1.generator(1), 4))?;
    println!("{l2}");
    println!("degree {}", l2.degree());

    let tp = l2.tracked_place(&place).unwrap_or(&tp).clone();
    for (k, ld) in tp.layers.iter().enumerate() {
        println!("layer {}: s = {}, pi = {}", k + 1, ld.s, l2.format(&ld.uniformizer));
    }
    let x1 = l2.generator(1);
    let x2 = l2.generator(2);
    for (name, e) in [("t", l2.embed(&RationalFunction::t(&field))), ("x1", x1.clone()), ("x2", x2.clone())] {
        println!("v({name}) = {}", l2.valuation(&e, &tp));
    }
    let y = l2.add(&x2, &l2.mul(&x1, &x1));
    let inv = l2.inv(&y)?;
    println!("1 / (x2 + x1^2) = {}", l2.format(&inv));
    println!("check: {}", l2.equal(&l2.mul(&y, &inv), &l2.one()));
    Ok(())
}
