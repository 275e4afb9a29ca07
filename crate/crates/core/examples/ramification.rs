//! Splitting behaviour of places in x^p - x = f.

use asdescent::artin_schreier::{as_reduce, classify_ramification};
use asdescent::base_fields::FieldSpec;
use asdescent::text::{parse_place, parse_rational};

fn main() -> asdescent::Result<()> {
    let f2 = FieldSpec::prime(2)?;
    let f3 = FieldSpec::prime(3)?;
    let cases = [
        (&f2, "t", "t"),
        (&f2, "1 / t^2", "t"),
        (&f2, "1 / t^3", "t"),
        (&f2, "t^2 + t + 1", "irr:t^2 + t + 1"),
        (&f2, "1 / (t^2 + t + 1)", "t"),
        (&f3, "t^5 + t", "inf"),
        (&f3, "1 / t^3 + 1", "t"),
        (&f3, "t", "t - 1"),
    ];
    for (field, f, place) in cases {
        let f = parse_rational(field, f)?;
        let place = parse_place(field, place)?;
        let red = as_reduce(&f, &place)?;
        let report = classify_ramification(&red.reduced, &place)?;
        println!(
            "p={} f={f} at {place}: reduced {} -> {:?} (e={}, f={}, g={})",
            field.p(),
            red.reduced,
            report.case,
            report.e,
            report.f,
            report.g
        );
    }
    Ok(())
}
