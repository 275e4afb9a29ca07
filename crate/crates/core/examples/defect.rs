//! The expansion defect v(u^{-m} - pi^{-mp}) against (p - 1) s - m p.

use asdescent::artin_schreier::expansion_defect_for;

fn main() -> asdescent::Result<()> {
    for p in [2u32, 3, 5] {
        let pi = p as i64;
        for s in (1..=7).filter(|s| s % pi != 0) {
            for m in (1..=4).filter(|m| m % pi != 0) {
                let got = expansion_defect_for(p, s, m)?;
                println!("p={p} s={s} m={m}: {got} (formula {})", (pi - 1) * s - m * pi);
            }
        }
    }
    Ok(())
}
