//! Kills a class modulo `K^{p^2}` at two places with a two-layer tower.

use asdescent::base_fields::FieldSpec;
use asdescent::descent::{kill_higher, verify_certificate};
use asdescent::text::{parse_place, parse_rational};

fn main() -> asdescent::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p = args.first().map_or(2, |s| s.parse().expect("p"));
    let a = args.get(1).map_or("1/t + t^3", String::as_str);
    let places = args.get(2).map_or("t; inf", String::as_str);
    let field = FieldSpec::prime(p)?;
    let a = parse_rational(&field, a)?;
    let places = places
        .split(';')
        .map(|s| parse_place(&field, s.trim()))
        .collect::<asdescent::Result<Vec<_>>>()?;
    let cert = kill_higher(&a, 2, &places)?;
    println!("{}", cert.to_json());
    let report = verify_certificate(&cert.to_file());
    println!("verified: {}", report.passed);
    Ok(())
}
