//! Valuations, local expansions and the degree formula on F_q(t).

use asdescent::base_fields::place::degree_sum;
use asdescent::base_fields::{local_expand, polar_part, FieldSpec};
use asdescent::text::{format_fq, parse_place, parse_rational};

fn main() -> asdescent::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p = args.first().map_or(3, |s| s.parse().expect("p"));
    let field = FieldSpec::prime(p)?;
    let f = parse_rational(&field, args.get(1).map_or("(t^2 + 1) / (t^3 * (t - 1)^2)", String::as_str))?;
    println!("f = {f}");
    for s in ["t", "t - 1", "inf", "irr:t^2 + 1"] {
        let Ok(place) = parse_place(&field, s) else { continue };
        let v = place.val(&f);
        println!("  v[{place}](f) = {v}");
        if place.is_rational() {
            let exp = local_expand(&f, &place, v.max(0) + 3)?;
            let terms: Vec<String> = (exp.start..exp.precision)
                .filter(|&n| !exp.coeff(n).is_zero())
                .map(|n| format!("{}*u^{n}", format_fq(&field, exp.coeff(n))))
                .collect();
            println!("    expansion {} + O(u^{})", terms.join(" + "), exp.precision);
            println!("    polar part has {} terms", polar_part(&f, &place)?.len());
        }
    }
    println!("sum of deg(P) v_P(f) = {}", degree_sum(&f));
    Ok(())
}
