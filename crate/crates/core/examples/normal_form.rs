//! The class of a function modulo K^{p^N} at a place: a = u + w^{p^N} + class.

use asdescent::base_fields::FieldSpec;
use asdescent::descent::{choose_s, normal_form};
use asdescent::text::{format_fq, parse_place, parse_rational};

fn main() -> asdescent::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p = args.first().map_or(2, |s| s.parse().expect("p"));
    let field = FieldSpec::prime(p)?;
    let a = parse_rational(&field, args.get(1).map_or("t^-6 + t^-5 + t^-4 + 1/(t + 1)", String::as_str))?;
    let place = parse_place(&field, args.get(2).map_or("t", String::as_str))?;
    for n in 1..=2 {
        let nf = normal_form(&a, &place, n)?;
        let terms: Vec<String> = nf
            .class
            .terms
            .iter()
            .map(|&(e, c)| format!("{}*u^{e}", format_fq(&field, c)))
            .collect();
        println!("N = {n}: class [{}]", terms.join(", "));
        println!("  u = {}", nf.u);
        println!("  w = {}", nf.w);
        if !nf.class.is_zero() {
            println!("  pole order {}, layer exponent s = {}", nf.class.pole_order(), choose_s(p, nf.class.pole_order()));
        }
    }
    Ok(())
}
