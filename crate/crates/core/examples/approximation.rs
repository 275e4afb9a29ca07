//! Weak approximation: prescribed local behaviour at finitely many places.

use asdescent::base_fields::{approximate, polar_divisor, prescribe_valuations, FieldSpec, RationalFunction};
use asdescent::text::parse_place;

fn main() -> asdescent::Result<()> {
    let field = FieldSpec::prime(5)?;
    let places = ["t", "t - 2", "inf"].map(|s| parse_place(&field, s).expect("place"));

    let f = prescribe_valuations(&field, &places, &[2, -1, 3])?;
    println!("prescribed valuations: f = {f}");
    for pl in &places {
        println!("  v_{pl}(f) = {}", pl.valuation(&f));
    }

    let targets = vec![
        (places[0].clone(), RationalFunction::from_int(&field, 1)),
        (places[1].clone(), RationalFunction::t(&field)),
    ];
    let g = approximate(&field, &targets, 3)?;
    println!("approximation: g = {g}");
    for (pl, a) in &targets {
        println!("  v_{pl}(g - ({a})) = {}", pl.valuation(&(&g - a)));
    }

    let h = polar_divisor(&field, &places[..2], &[3, 1])?;
    println!("polar divisor 3[t] + [t - 2]: h = {h}");
    Ok(())
}
