//! Kills the class of `a` at one place with a single layer and checks the certificate.

use asdescent::base_fields::FieldSpec;
use asdescent::descent::{kill_class, verify_certificate};
use asdescent::text::{parse_place, parse_rational};

fn main() -> asdescent::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p = args.first().map_or(3, |s| s.parse().expect("p"));
    let field = FieldSpec::prime(p)?;
    let a = parse_rational(&field, args.get(1).map_or("t^-4 + 2*t^-1", String::as_str))?;
    let place = parse_place(&field, args.get(2).map_or("t", String::as_str))?;
    let cert = kill_class(&a, &place)?;
    println!("tower: {}", cert.tower);
    for e in &cert.entries {
        println!("a = {}", e.a);
        println!("  h = {}", cert.tower.format(&e.h));
        println!("  g = {}", cert.tower.format(&e.g));
    }
    let report = verify_certificate(&cert.to_file());
    for c in &report.checks {
        println!("  [{}] {} {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    println!("verified: {}", report.passed);
    Ok(())
}
