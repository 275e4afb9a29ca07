//! Finite fields: arithmetic, Frobenius, traces and constant extensions.

use asdescent::base_fields::FieldSpec;
use asdescent::text::{format_fq, format_modulus, parse_poly};

fn main() -> asdescent::Result<()> {
    let f9 = FieldSpec::new(3, 2)?;
    println!("F_{} with modulus {}", f9.q(), format_modulus(&f9));
    let g = f9.generator();
    let mut order = 1;
    let mut x = g;
    while x != f9.one() {
        x = f9.mul(x, g);
        order += 1;
    }
    println!("generator {} has order {order}", format_fq(&f9, g));
    for a in f9.elements() {
        println!(
            "  {:>8}  frob {:>8}  trace {}",
            format_fq(&f9, a),
            format_fq(&f9, f9.frobenius(a)),
            f9.absolute_trace(a)
        );
    }

    let f3 = FieldSpec::prime(3)?;
    let (f27, emb) = f3.extend_constants(3)?;
    println!("F_3 -> F_{}: 2 maps to {}", f27.q(), format_fq(&f27, emb.map(f3.from_int(2))));

    let poly = parse_poly(&f3, "t^5 + 2*t")?;
    let factors: Vec<String> = poly.factor().iter().map(|(p, m)| format!("({p})^{m}")).collect();
    println!("{poly} = {}", factors.join(" * "));
    Ok(())
}
