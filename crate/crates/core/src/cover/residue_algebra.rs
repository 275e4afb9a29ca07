//! The residue algebra of a tower above an unramified place, and the number of
//! places above it that split or stay inert in the next layer.

use std::sync::Arc;

use crate::artin_schreier::{ASTower, Nested, Relations, ResidueElem, TowerElement};
use crate::base_fields::linalg::rank_mod_p;
use crate::base_fields::{Place, Poly, ResidueField};
use crate::error::{Error, Result};

/// `kappa(Q)[x_1..x_k] / (x_i^p - x_i - f_i mod Q)` for layers that are
/// integral above `Q`.
pub struct ResidueAlgebra {
    ctx: Arc<ResidueField>,
    rel: Relations<ResidueElem>,
}

impl ResidueAlgebra {
    /// Reduces the first `layers` defining elements of `tower` modulo `place`.
    pub fn new(tower: &ASTower, place: &Place, layers: usize) -> Result<Self> {
        let ctx = ResidueField::new(tower.field(), place);
        let mut rel = Relations::new(tower.p());
        for k in 1..=layers {
            let f = reduce(&ctx, tower.defining(k), place, k)?;
            rel.push(f);
        }
        Ok(ResidueAlgebra { ctx, rel })
    }

    /// Dimension over `F_p` of the algebra at `level`.
    fn dim(&self, level: usize) -> usize {
        self.ctx.absolute_degree() * self.rel.p().pow(level as u32)
    }

    fn flatten(&self, a: &Nested<ResidueElem>, out: &mut Vec<u32>) {
        match a {
            Nested::Base(r) => {
                let field = self.ctx.base();
                for j in 0..self.ctx.degree() {
                    out.extend(field.coords(r.value.coeff(j)));
                }
            }
            Nested::Layer(c) => c.iter().for_each(|ci| self.flatten(ci, out)),
        }
    }

    fn unflatten(&self, coords: &[u32], level: usize) -> Nested<ResidueElem> {
        if level == 0 {
            let field = self.ctx.base();
            let k = field.k() as usize;
            let coeffs = coords
                .chunks(k)
                .map(|c| field.from_coords(c).expect("valid coordinates"))
                .collect();
            return Nested::Base(ResidueElem::new(&self.ctx, Poly::new(field, coeffs)));
        }
        let chunk = coords.len() / self.rel.p();
        Nested::Layer(coords.chunks(chunk).map(|c| self.unflatten(c, level - 1)).collect())
    }

    /// `dim_{F_p} ker(x -> x^p - x)` at `level`, i.e. the number of field
    /// factors of the (etale) algebra.
    pub fn components(&self, level: usize) -> usize {
        let d = self.dim(level);
        let p = self.ctx.base().p();
        let columns: Vec<Vec<u32>> = (0..d)
            .map(|j| {
                let mut e = vec![0u32; d];
                e[j] = 1;
                let x = self.unflatten(&e, level);
                let img = self.rel.sub(&self.rel.frobenius(&x), &x);
                let mut col = Vec::with_capacity(d);
                self.flatten(&self.rel.lift(&img, level), &mut col);
                col
            })
            .collect();
        d - rank_mod_p(&columns, p)
    }
}

/// Reduction of a tower element whose base coefficients are integral at `place`.
fn reduce(ctx: &Arc<ResidueField>, a: &TowerElement, place: &Place, layer: usize) -> Result<Nested<ResidueElem>> {
    for c in a.base_coeffs() {
        if !place.valuation(c).at_least(0) {
            return Err(Error::InvalidInput(format!(
                "layer {layer} has a coefficient with a pole at {place}"
            )));
        }
    }
    Ok(a.map_base(&|r| ResidueElem::new(ctx, ctx.reduce(r).expect("integral coefficient"))))
}

/// `(split, inert)`: how many places of `L_{k-1}` above `place` split or stay
/// inert in layer `k`. Requires layers `1..=k` integral above `place`.
pub fn split_inert_counts(tower: &ASTower, place: &Place, k: usize) -> Result<(usize, usize)> {
    let alg = ResidueAlgebra::new(tower, place, k)?;
    let below = alg.components(k - 1);
    let above = alg.components(k);
    let p = tower.p() as usize;
    if above < below || (above - below) % (p - 1) != 0 || (above - below) / (p - 1) > below {
        return Err(Error::InvalidInput(format!(
            "inconsistent component counts {below} -> {above} at {place}"
        )));
    }
    let split = (above - below) / (p - 1);
    Ok((split, below - split))
}
