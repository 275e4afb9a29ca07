//! Artin-Schreier towers over `F_q(t)` with totally ramified tracked places.

use std::fmt;

use super::nested::{Nested, Relations};
use crate::base_fields::{register_factor_hint, wp_preimage, Field, Fq, Place, RationalFunction, ResidueField, Valuation};
use crate::error::{Error, Result};
use crate::text::{self, EvalContext, Expr};

/// Largest supported tower degree `p^N`.
pub const MAX_TOWER_DEGREE: u64 = 125;

/// Largest degree of a defining-element numerator registered as a gcd hint.
const MAX_HINT_DEGREE: i64 = 512;

/// An element of some level of a tower.
pub type TowerElement = Nested<RationalFunction>;

/// Ramification data of one layer above a tracked place.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerData {
    /// `s_k = -v_{k-1}(f_k)`, prime to `p`.
    pub s: i64,
    /// Bezout pair with `-s a + p b = 1`, `1 <= a < p`.
    pub a: i64,
    pub b: i64,
    /// Angular component of `f_k` at level `k - 1`.
    pub lead: Fq,
    /// Angular components at level `k` of `pi_{k-1}` and of `x_k`.
    pub lambda: Fq,
    pub alpha: Fq,
    /// `pi_k = x_k^a pi_{k-1}^b`.
    pub uniformizer: TowerElement,
}

/// A rational base place, totally ramified in every layer of the tower.
#[derive(Clone, Debug, PartialEq)]
pub struct TrackedPlace {
    pub place: Place,
    pub layers: Vec<LayerData>,
}

/// `K = L_0 ⊂ L_1 ⊂ ... ⊂ L_N` with `L_k = L_{k-1}[x_k]/(x_k^p - x_k - f_k)`.
#[derive(Clone, Debug)]
pub struct ASTower {
    field: Field,
    rel: Relations<RationalFunction>,
    tracked: Vec<TrackedPlace>,
}

/// `(a, b)` with `-s a + p b = 1` and `1 <= a < p`.
pub fn bezout(s: i64, p: i64) -> (i64, i64) {
    let a = (1..p)
        .find(|&a| (s * a + 1).rem_euclid(p) == 0)
        .expect("s prime to p");
    (a, (1 + s * a) / p)
}

impl ASTower {
    /// The trivial tower over `F_q(t)` tracking the given rational places.
    pub fn new(field: &Field, places: &[Place]) -> Result<Self> {
        let mut tracked: Vec<TrackedPlace> = Vec::new();
        for pl in places {
            pl.require_rational()?;
            if tracked.iter().any(|t| &t.place == pl) {
                return Err(Error::InvalidInput(format!("place {pl} tracked twice")));
            }
            tracked.push(TrackedPlace {
                place: pl.clone(),
                layers: Vec::new(),
            });
        }
        Ok(ASTower {
            field: field.clone(),
            rel: Relations::new(field.p()),
            tracked,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// Number of layers `N`.
    pub fn height(&self) -> usize {
        self.rel.len()
    }

    /// `[L_N : K] = p^N`.
    pub fn degree(&self) -> u64 {
        (self.p() as u64).pow(self.height() as u32)
    }

    pub fn tracked(&self) -> &[TrackedPlace] {
        &self.tracked
    }

    pub fn tracked_place(&self, place: &Place) -> Option<&TrackedPlace> {
        self.tracked.iter().find(|t| &t.place == place)
    }

    pub fn relations(&self) -> &Relations<RationalFunction> {
        &self.rel
    }

    /// `f_k` (1-based).
    pub fn defining(&self, k: usize) -> &TowerElement {
        self.rel.relation(k)
    }

    fn like(&self) -> RationalFunction {
        RationalFunction::one(&self.field)
    }

    /// A base-field element at level 0.
    pub fn base(&self, a: &RationalFunction) -> TowerElement {
        Nested::Base(a.clone())
    }

    /// `a` embedded at the top level.
    pub fn embed(&self, a: &RationalFunction) -> TowerElement {
        self.rel.constant(a, self.height())
    }

    /// `x_k` at level `k`.
    pub fn generator(&self, k: usize) -> TowerElement {
        self.rel.generator(k, &self.like())
    }

    pub fn zero(&self) -> TowerElement {
        self.rel.zero(self.height(), &self.like())
    }

    pub fn one(&self) -> TowerElement {
        self.rel.one(self.height(), &self.like())
    }

    pub fn lift(&self, a: &TowerElement, level: usize) -> TowerElement {
        self.rel.lift(a, level)
    }

    pub fn top(&self, a: &TowerElement) -> TowerElement {
        self.rel.lift(a, self.height())
    }

    pub fn add(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        self.rel.add(a, b)
    }

    pub fn sub(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        self.rel.sub(a, b)
    }

    pub fn neg(&self, a: &TowerElement) -> TowerElement {
        self.rel.neg(a)
    }

    pub fn mul(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        self.rel.mul(a, b)
    }

    pub fn scale(&self, a: &TowerElement, c: &RationalFunction) -> TowerElement {
        self.rel.scale(a, c)
    }

    pub fn pow(&self, a: &TowerElement, e: u64) -> TowerElement {
        self.rel.pow(a, e)
    }

    pub fn pow_signed(&self, a: &TowerElement, e: i64) -> Result<TowerElement> {
        self.rel.pow_signed(a, e).ok_or(Error::DivisionByZero)
    }

    pub fn inv(&self, a: &TowerElement) -> Result<TowerElement> {
        self.rel.inv(a).ok_or(Error::DivisionByZero)
    }

    pub fn div(&self, a: &TowerElement, b: &TowerElement) -> Result<TowerElement> {
        self.rel.div(a, b).ok_or(Error::DivisionByZero)
    }

    pub fn frobenius(&self, a: &TowerElement) -> TowerElement {
        self.rel.frobenius(a)
    }

    pub fn frobenius_iter(&self, a: &TowerElement, n: u32) -> TowerElement {
        self.rel.frobenius_iter(a, n)
    }

    pub fn equal(&self, a: &TowerElement, b: &TowerElement) -> bool {
        self.rel.equal(a, b)
    }

    /// `(v, ac)` of `a` at level `level` for a tracked place: the normalized
    /// valuation and the angular component with respect to `pi_level`.
    pub fn valuation_ac(&self, a: &TowerElement, tp: &TrackedPlace, level: usize) -> Option<(i64, Fq)> {
        if a.is_zero() {
            return None;
        }
        let a = self.lift(a, level);
        self.val_ac_rec(&a, tp, level)
    }

    fn val_ac_rec(&self, a: &TowerElement, tp: &TrackedPlace, level: usize) -> Option<(i64, Fq)> {
        match a {
            Nested::Base(r) => {
                if r.is_zero() {
                    return None;
                }
                let res = ResidueField::new(&self.field, &tp.place);
                let (v, c) = res.leading(r).expect("nonzero element");
                Some((v, c.coeff(0)))
            }
            Nested::Layer(c) => {
                let ld = &tp.layers[level - 1];
                let p = self.p() as i64;
                let f = &self.field;
                let mut best: Option<(i64, Fq)> = None;
                for (i, ci) in c.iter().enumerate() {
                    let Some((v, ac)) = self.val_ac_rec(ci, tp, level - 1) else {
                        continue;
                    };
                    let w = p * v - ld.s * i as i64;
                    if best.is_none_or(|(bw, _)| w < bw) {
                        let acw = f.mul(
                            f.mul(ac, f.pow_signed(ld.lambda, v).expect("nonzero")),
                            f.pow(ld.alpha, i as u64),
                        );
                        best = Some((w, acw));
                    }
                }
                best
            }
        }
    }

    /// Normalized valuation at a tracked place, with `v(u_0) = p^level`.
    pub fn valuation(&self, a: &TowerElement, tp: &TrackedPlace) -> Valuation {
        let level = a.level().max(self.height());
        match self.valuation_ac(a, tp, level) {
            Some((v, _)) => Valuation::Finite(v),
            None => Valuation::Infinity,
        }
    }

    /// Valuation at a given level (the element must live at or below it).
    pub fn valuation_at(&self, a: &TowerElement, tp: &TrackedPlace, level: usize) -> Valuation {
        match self.valuation_ac(a, tp, level) {
            Some((v, _)) => Valuation::Finite(v),
            None => Valuation::Infinity,
        }
    }

    /// The uniformizer `pi_k` at level `k` (`u_0` at `k = 0`).
    pub fn uniformizer(&self, k: usize, tp: &TrackedPlace) -> TowerElement {
        if k == 0 {
            Nested::Base(tp.place.uniformizer(&self.field))
        } else {
            tp.layers[k - 1].uniformizer.clone()
        }
    }

    /// Appends the layer `x^p - x = f`. At every tracked place `f` must have
    /// negative valuation prime to `p`, which makes the place totally ramified
    /// and the layer nontrivial.
    pub fn extend(&self, f: &TowerElement) -> Result<ASTower> {
        let p = self.p() as i64;
        if self.degree() * p as u64 > MAX_TOWER_DEGREE {
            return Err(Error::TowerTooLarge(self.degree() * p as u64));
        }
        let level = self.height();
        if f.level() > level {
            return Err(Error::InvalidInput("defining element above the top level".into()));
        }
        let f = self.lift(f, level);
        if level == 0 {
            if wp_preimage(f.base()).is_some() {
                return Err(Error::InvalidInput(format!(
                    "{} is of the form g^p - g; the layer would be trivial",
                    f.base()
                )));
            }
        } else if self.tracked.is_empty() {
            return Err(Error::InvalidInput(
                "layers above the first need a tracked place to certify nontriviality".into(),
            ));
        }
        let mut plan = Vec::with_capacity(self.tracked.len());
        for tp in &self.tracked {
            match self.valuation_ac(&f, tp, level) {
                Some((v, lead)) if v < 0 && v % p != 0 => plan.push((-v, lead)),
                other => {
                    return Err(Error::NotNegativePrimeToP {
                        place: tp.place.to_string(),
                        valuation: other.map_or("inf".to_string(), |(v, _)| v.to_string()),
                    })
                }
            }
        }
        // Inverses in the new layer go through norms, whose denominators are
        // built from the factors of f.
        for c in f.base_coeffs() {
            for poly in [c.num(), c.den()] {
                if poly.deg() <= MAX_HINT_DEGREE {
                    register_factor_hint(poly);
                }
            }
        }
        let mut rel = self.rel.clone();
        rel.push(f);
        let mut tower = ASTower {
            field: self.field.clone(),
            rel,
            tracked: self.tracked.clone(),
        };
        let k = level + 1;
        let fld = self.field.clone();
        for (idx, (s, lead)) in plan.into_iter().enumerate() {
            let (a, b) = bezout(s, p);
            let lambda = fld.pow_signed(lead, -a)?;
            let alpha = fld.pow_signed(lead, b)?;
            let prev = tower.lift(&tower.uniformizer(level, &tower.tracked[idx]), k);
            let x = tower.generator(k);
            let uniformizer = tower.mul(&tower.pow(&x, a as u64), &tower.pow(&prev, b as u64));
            tower.tracked[idx].layers.push(LayerData {
                s,
                a,
                b,
                lead,
                lambda,
                alpha,
                uniformizer: uniformizer.clone(),
            });
            let tp = tower.tracked[idx].clone();
            match tower.valuation_ac(&uniformizer, &tp, k) {
                Some((1, ac)) if ac == fld.one() => {}
                other => {
                    return Err(Error::InvalidInput(format!(
                        "uniformizer check failed at {}: {other:?}",
                        tp.place
                    )))
                }
            }
        }
        Ok(tower)
    }

    /// Adds a rational place to the tracked set; it must be totally ramified in
    /// every existing layer.
    pub fn track(&self, place: &Place) -> Result<ASTower> {
        let mut places: Vec<Place> = self.tracked.iter().map(|t| t.place.clone()).collect();
        places.push(place.clone());
        let mut tower = ASTower::new(&self.field, &places)?;
        for k in 1..=self.height() {
            tower = tower.extend(self.defining(k))?;
        }
        Ok(tower)
    }

    /// Prints an element at its level with generator names `x1..xN`.
    pub fn format(&self, a: &TowerElement) -> String {
        format_nested(a)
    }

    /// Parses an element; variables `t`, `g` and `x1..xN` are allowed.
    pub fn parse(&self, s: &str) -> Result<TowerElement> {
        let e = text::parse_expr(s)?;
        self.eval(&e)
    }

    pub fn eval(&self, e: &Expr) -> Result<TowerElement> {
        text::eval(&TowerContext { tower: self }, e)
    }
}

/// Prints `sum c_i x_k^i` from the top power down, recursively.
pub fn format_nested(a: &TowerElement) -> String {
    match a {
        Nested::Base(r) => r.to_string(),
        Nested::Layer(c) => {
            let k = a.level();
            let var = format!("x{k}");
            let terms: Vec<String> = c
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, ci)| !ci.is_zero())
                .map(|(i, ci)| text::format_term(&format_nested(ci), &text::format_monomial(&var, i)))
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join(" + ")
            }
        }
    }
}

struct TowerContext<'a> {
    tower: &'a ASTower,
}

impl EvalContext for TowerContext<'_> {
    type Value = TowerElement;

    fn from_int(&self, n: i64) -> TowerElement {
        self.tower.base(&RationalFunction::from_int(&self.tower.field, n))
    }

    fn from_vector(&self, v: &[i64], pos: usize) -> Result<TowerElement> {
        let c = text::fq_from_vector(&self.tower.field, v, pos)?;
        Ok(self.tower.base(&RationalFunction::constant(&self.tower.field, c)))
    }

    fn var(&self, name: &str, pos: usize) -> Result<TowerElement> {
        let field = &self.tower.field;
        match name {
            "t" => Ok(self.tower.base(&RationalFunction::t(field))),
            "g" => Ok(self.tower.base(&RationalFunction::constant(field, field.generator()))),
            _ => {
                let k = name
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&k| k >= 1 && k <= self.tower.height());
                match k {
                    Some(k) => Ok(self.tower.generator(k)),
                    None => Err(Error::Parse {
                        pos,
                        msg: format!("unknown variable '{name}'"),
                    }),
                }
            }
        }
    }

    fn add(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        self.tower.add(a, b)
    }

    fn sub(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        self.tower.sub(a, b)
    }

    fn mul(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        self.tower.mul(a, b)
    }

    fn div(&self, a: &TowerElement, b: &TowerElement) -> Option<TowerElement> {
        self.tower.div(a, b).ok()
    }

    fn neg(&self, a: &TowerElement) -> TowerElement {
        self.tower.neg(a)
    }

    fn weight(&self, a: &TowerElement) -> usize {
        a.base_coeffs()
            .iter()
            .map(|r| (r.num().deg().max(0) + r.den().deg()) as usize)
            .sum()
    }
}

impl fmt::Display for ASTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (1..=self.height())
            .map(|k| format!("x{k}^{} - x{k} = {}", self.p(), format_nested(self.defining(k))))
            .collect();
        write!(f, "[{}]", parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_fields::FieldSpec;

    #[test]
    fn extend_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let t0 = Place::zero(&f2);
        let tower = ASTower::new(&f2, std::slice::from_ref(&t0)).unwrap();
        let l1 = tower.extend(&tower.base(&RationalFunction::t_pow(&f2, -3))).unwrap();
        assert_eq!(l1.degree(), 2);
        let ld = &l1.tracked()[0].layers[0];
        assert_eq!((ld.s, ld.a, ld.b), (3, 1, 2));
        let x = l1.generator(1);
        let t2 = l1.embed(&RationalFunction::t_pow(&f2, 2));
        assert!(l1.equal(&ld.uniformizer, &l1.mul(&x, &t2)));
        assert_eq!(l1.format(&ld.uniformizer), "t^2*x1");
        let tp = &l1.tracked()[0];
        assert_eq!(l1.valuation(&l1.embed(&RationalFunction::t(&f2)), tp), 2);
        assert_eq!(l1.valuation(&l1.one(), tp), 0);
        assert!(matches!(
            tower.extend(&tower.base(&RationalFunction::t_pow(&f2, -2))),
            Err(Error::NotNegativePrimeToP { .. })
        ));

        let f3 = FieldSpec::prime(3).unwrap();
        let tower = ASTower::new(&f3, &[Place::zero(&f3)]).unwrap();
        let l1 = tower.extend(&tower.base(&RationalFunction::t_pow(&f3, -2))).unwrap();
        let ld = &l1.tracked()[0].layers[0];
        assert_eq!((ld.s, ld.a, ld.b), (2, 1, 1));

        let f5 = FieldSpec::prime(5).unwrap();
        let tower = ASTower::new(&f5, &[Place::zero(&f5)]).unwrap();
        let l1 = tower.extend(&tower.base(&RationalFunction::t_pow(&f5, -2))).unwrap();
        let ld = &l1.tracked()[0].layers[0];
        assert_eq!((ld.a, ld.b), (2, 1));
    }

    #[test]
    fn parse_print_roundtrip() {
        let f3 = FieldSpec::prime(3).unwrap();
        let tower = ASTower::new(&f3, &[Place::Infinity]).unwrap();
        let l1 = tower.extend(&tower.base(&RationalFunction::t(&f3))).unwrap();
        let l2 = l1.extend(&l1.pow(&l1.generator(1), 2)).unwrap();
        let e = l2.parse("x2^2*(t + 1/t) + 2*x1*x2 - x1^2/t + 1").unwrap();
        let s = l2.format(&e);
        assert!(l2.equal(&l2.parse(&s).unwrap(), &e));
        assert!(l2.parse("x3").is_err());
    }

    #[test]
    fn degree_cap() {
        let f7 = FieldSpec::prime(7).unwrap();
        let tower = ASTower::new(&f7, &[Place::zero(&f7)]).unwrap();
        let l1 = tower.extend(&tower.base(&RationalFunction::t_pow(&f7, -1))).unwrap();
        let l2 = l1.extend(&l1.generator(1)).unwrap();
        assert!(matches!(l2.extend(&l2.generator(2)), Err(Error::TowerTooLarge(343))));
    }
}
