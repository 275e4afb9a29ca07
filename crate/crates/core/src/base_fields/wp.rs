//! Preimages under the Artin-Schreier map `g -> g^p - g` in `F_q(t)`.

use super::linalg::solve_mod_p;
use super::poly::Poly;
use super::rational::RationalFunction;

/// Some `g` with `g^p - g = f`, or `None` when `f` is not in the image.
///
/// If `g = A/B` in lowest terms then `f = (A^p - A B^{p-1}) / B^p` is again in
/// lowest terms, so `B` is forced to be the `p`-th root of the denominator of
/// `f` and `A` solves an `F_p`-linear system in its coefficients.
pub fn wp_preimage(f: &RationalFunction) -> Option<RationalFunction> {
    let field = f.field();
    let p = field.p() as usize;
    let k = field.k() as usize;
    let b = f.den().pth_root()?;
    let bp1 = b.pow(p as u64 - 1);
    let n = f.num();
    let deg_a = {
        let dn = n.deg().max(0) as usize;
        dn.div_ceil(p)
    }
    .max(b.deg() as usize);
    let rows_len = (deg_a * p + 1).max(deg_a + bp1.deg() as usize + 1).max(n.coeffs().len());

    let flatten = |poly: &Poly| -> Vec<u32> {
        let mut out = Vec::with_capacity(rows_len * k);
        for i in 0..rows_len {
            out.extend(field.coords(poly.coeff(i)));
        }
        out
    };

    let mut columns = Vec::with_capacity((deg_a + 1) * k);
    for i in 0..=deg_a {
        for j in 0..k {
            let mut e = vec![0u32; k];
            e[j] = 1;
            let c = field.from_coords(&e).expect("basis vector");
            let basis = Poly::monomial(field, c, i);
            let image = &basis.frobenius() - &(&basis * &bp1);
            columns.push(flatten(&image));
        }
    }
    let rhs = flatten(n);
    let sol = solve_mod_p(&columns, &rhs, p as u32)?;
    let coeffs = sol
        .chunks(k)
        .map(|chunk| field.from_coords(chunk).expect("coordinate chunk"))
        .collect();
    let a = Poly::new(field, coeffs);
    let g = RationalFunction::new(a, b).ok()?;
    if g.wp() == *f {
        Some(g)
    } else {
        None
    }
}
