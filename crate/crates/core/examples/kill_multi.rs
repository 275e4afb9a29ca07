//! One layer that kills a class at several places simultaneously.

use asdescent::base_fields::FieldSpec;
use asdescent::descent::{is_extendable, kill_class_multi, verify_certificate};
use asdescent::text::{parse_place, parse_rational};

fn main() -> asdescent::Result<()> {
    let field = FieldSpec::prime(2)?;
    let a = parse_rational(&field, "1/t^3 + 1/(t + 1) + t^5")?;
    let places = ["t", "t - 1", "inf"].map(|s| parse_place(&field, s).expect("place"));
    for pl in &places {
        println!("extendable at {pl}: {}", is_extendable(&a, pl, 1)?);
    }
    let cert = kill_class_multi(&a, &places)?;
    println!("tower: {} (degree {})", cert.tower, cert.tower.degree());
    for tp in cert.tower.tracked() {
        let s: Vec<i64> = tp.layers.iter().map(|l| l.s).collect();
        println!("  {}: s = {s:?}", tp.place);
    }
    println!("verified: {}", verify_certificate(&cert.to_file()).passed);
    Ok(())
}
