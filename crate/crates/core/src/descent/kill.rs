//! Killing classes by Artin-Schreier towers: the greedy local decomposition and
//! the layer-by-layer devissage.

use std::collections::HashMap;

use super::certificate::{CertifiedEntry, ExtensionCertificate};
use super::normal_form::choose_s;
use super::torsor::TorsorData;
use crate::artin_schreier::{ASTower, TowerElement};
use crate::base_fields::{polar_divisor, Field, Place, RationalFunction};
use crate::error::{Error, Result};

/// Attempts per layer before giving up (the first uses the minimal bound).
pub const MAX_ATTEMPTS: u32 = 6;

/// Caches negative powers of the top uniformizers of a fixed tower.
struct PiPowers<'a> {
    tower: &'a ASTower,
    inv: HashMap<usize, Vec<TowerElement>>,
}

impl<'a> PiPowers<'a> {
    fn new(tower: &'a ASTower) -> Self {
        PiPowers {
            tower,
            inv: HashMap::new(),
        }
    }

    /// `pi_i^{-n}` at the top level, `n >= 1`.
    fn neg_pow(&mut self, i: usize, n: usize) -> Result<TowerElement> {
        let tower = self.tower;
        let top = tower.height();
        if let std::collections::hash_map::Entry::Vacant(e) = self.inv.entry(i) {
            let pi = tower.lift(&tower.uniformizer(top, &tower.tracked()[i]), top);
            e.insert(vec![tower.one(), tower.inv(&pi)?]);
        }
        let pows = self.inv.get_mut(&i).expect("inserted");
        while pows.len() <= n {
            let next = tower.mul(&pows[pows.len() - 1], &pows[1]);
            pows.push(next);
        }
        Ok(pows[n].clone())
    }
}

/// Result of [`strip_pth_powers`]: `r = h^p + residual`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub h: TowerElement,
    pub residual: TowerElement,
    /// `(tracked index, pole order)` where the residual keeps a pole of order
    /// prime to `p`.
    pub stuck: Vec<(usize, i64)>,
}

impl Decomposition {
    pub fn is_complete(&self) -> bool {
        self.stuck.is_empty()
    }
}

/// Greedy decomposition at the top level of `tower`: at each tracked place the
/// leading term of valuation `v = p j < 0` and angular component `c` is removed
/// by subtracting `(c^{1/p} pi^j)^p`, which raises the valuation. It stops when
/// the residual is integral or has a pole of order prime to `p`.
pub fn strip_pth_powers(tower: &ASTower, r: &TowerElement) -> Result<Decomposition> {
    let top = tower.height();
    let p = tower.p() as i64;
    let field = tower.field();
    let mut pows = PiPowers::new(tower);
    let mut h = tower.zero();
    let mut res = tower.lift(r, top.max(r.level()));
    let mut stuck = Vec::new();
    for (i, tp) in tower.tracked().iter().enumerate() {
        while let Some((v, ac)) = tower.valuation_ac(&res, tp, top) {
            if v >= 0 {
                break;
            }
            if v % p != 0 {
                stuck.push((i, -v));
                break;
            }
            let beta = RationalFunction::constant(field, field.pth_root(ac));
            let term = tower.scale(&pows.neg_pow(i, (-v / p) as usize)?, &beta);
            res = tower.sub(&res, &tower.frobenius(&term));
            h = tower.add(&h, &term);
        }
    }
    // Corrections at one place are integral at the others, so a single pass
    // suffices; the re-check guards that argument.
    if stuck.is_empty() {
        for tp in tower.tracked() {
            if !tower.valuation_at(&res, tp, top).at_least(0) {
                return Err(Error::InvalidInput(format!(
                    "greedy decomposition lost integrality at {}",
                    tp.place
                )));
            }
        }
    }
    Ok(Decomposition { h, residual: res, stuck })
}

/// Parameters of a new layer on top of a tower.
#[derive(Clone, Debug, PartialEq)]
enum LayerPlan {
    /// Level 0: `f` with polar divisor `sum s_i [P_i]`.
    Base(Vec<i64>),
    /// Higher levels: `f = x_k^e`.
    Power(i64),
}

fn first_plan(tower: &ASTower, stuck: &[(usize, i64)]) -> LayerPlan {
    let p = tower.p();
    let n = tower.tracked().len();
    let mut m = vec![0i64; n];
    for &(i, pole) in stuck {
        m[i] = m[i].max(pole);
    }
    let k = tower.height();
    if k == 0 {
        LayerPlan::Base(m.iter().map(|&mi| if mi > 0 { choose_s(p, mi) } else { 1 }).collect())
    } else {
        let pi = p as i64;
        let ok = |e: i64| {
            e % pi != 0
                && tower
                    .tracked()
                    .iter()
                    .zip(&m)
                    .all(|(tp, &mi)| (pi - 1) * e * tp.layers[k - 1].s > mi * pi)
        };
        LayerPlan::Power((1..).find(|&e| ok(e)).expect("unbounded search"))
    }
}

fn enlarge(plan: &LayerPlan, p: i64) -> LayerPlan {
    match plan {
        LayerPlan::Base(s) => LayerPlan::Base(s.iter().map(|&si| si + p).collect()),
        LayerPlan::Power(e) => {
            let mut e = e + 1;
            if e % p == 0 {
                e += 1;
            }
            LayerPlan::Power(e)
        }
    }
}

fn build_layer(tower: &ASTower, plan: &LayerPlan) -> Result<ASTower> {
    let f = match plan {
        LayerPlan::Base(s) => {
            let places: Vec<Place> = tower.tracked().iter().map(|t| t.place.clone()).collect();
            tower.base(&polar_divisor(tower.field(), &places, s)?)
        }
        LayerPlan::Power(e) => tower.pow(&tower.generator(tower.height()), *e as u64),
    };
    tower.extend(&f)
}

fn describe(plan: &LayerPlan) -> String {
    match plan {
        LayerPlan::Base(s) => format!("pole orders {s:?}"),
        LayerPlan::Power(e) => format!("exponent {e}"),
    }
}

struct Pending {
    a: RationalFunction,
    n: u32,
    h: TowerElement,
    g: TowerElement,
}

/// Kills every `(a, N)` at every place with one shared tower of height at most
/// `max N`. Round `j` writes the current witness as `h_j^p + g_j`, adding one
/// layer when some residual keeps a pole of order prime to `p`; then
/// `a = h_N^{p^N} + sum_j g_j^{p^{j-1}}`.
pub fn kill_entries(field: &Field, places: &[Place], entries: &[(RationalFunction, u32)]) -> Result<ExtensionCertificate> {
    if entries.iter().any(|(_, n)| *n == 0) {
        return Err(Error::InvalidInput("exponent N must be at least 1".into()));
    }
    for pl in places {
        pl.require_rational()?;
    }
    for (a, _) in entries {
        if !crate::base_fields::same_field(a.field(), field) {
            return Err(Error::FieldMismatch);
        }
    }
    let mut tower = ASTower::new(field, places)?;
    let mut notes = Vec::new();
    let mut pending: Vec<Pending> = entries
        .iter()
        .map(|(a, n)| Pending {
            a: a.clone(),
            n: *n,
            h: tower.base(a),
            g: tower.zero(),
        })
        .collect();
    let rounds = entries.iter().map(|(_, n)| *n).max().unwrap_or(0);
    let p = field.p() as i64;
    for round in 1..=rounds {
        let active: Vec<usize> = (0..pending.len()).filter(|&i| pending[i].n >= round).collect();
        let round_base = tower.clone();
        let mut plan: Option<LayerPlan> = None;
        let mut attempts = 0;
        let decomps = loop {
            let decomps: Vec<Decomposition> = active
                .iter()
                .map(|&i| strip_pth_powers(&tower, &pending[i].h))
                .collect::<Result<_>>()?;
            let stuck: Vec<(usize, i64)> = decomps.iter().flat_map(|d| d.stuck.iter().copied()).collect();
            if stuck.is_empty() {
                break decomps;
            }
            if attempts == MAX_ATTEMPTS {
                let place = tower.tracked()[stuck[0].0].place.to_string();
                return Err(Error::KillFailed { place, attempts });
            }
            let next = match &plan {
                None => first_plan(&round_base, &stuck),
                Some(prev) => {
                    let next = enlarge(prev, p);
                    notes.push(format!(
                        "round {round}: layer with {} left poles {stuck:?}; retrying with {}",
                        describe(prev),
                        describe(&next)
                    ));
                    next
                }
            };
            tower = build_layer(&round_base, &next)?;
            plan = Some(next);
            attempts += 1;
        };
        for (&i, d) in active.iter().zip(decomps) {
            let entry = &mut pending[i];
            let gj = tower.frobenius_iter(&d.residual, round - 1);
            entry.g = tower.add(&entry.g, &gj);
            entry.h = d.h;
        }
    }
    let top = tower.height();
    let entries = pending
        .into_iter()
        .map(|e| CertifiedEntry {
            a: e.a,
            n: e.n,
            h: tower.lift(&e.h, top.max(e.h.level())),
            g: tower.lift(&e.g, top.max(e.g.level())),
        })
        .collect();
    let cert = ExtensionCertificate { tower, entries, notes };
    self_check(&cert)?;
    Ok(cert)
}

/// Producer-side check of the exact identities before a certificate leaves.
fn self_check(cert: &ExtensionCertificate) -> Result<()> {
    let tower = &cert.tower;
    for e in &cert.entries {
        let rhs = tower.add(&tower.frobenius_iter(&e.h, e.n), &e.g);
        if !tower.equal(&tower.base(&e.a), &rhs) {
            return Err(Error::InvalidInput(format!("witness identity failed for {}", e.a)));
        }
        for tp in tower.tracked() {
            if !tower.valuation(&e.g, tp).at_least(0) {
                return Err(Error::KillFailed {
                    place: tp.place.to_string(),
                    attempts: 0,
                });
            }
        }
    }
    Ok(())
}

/// One Artin-Schreier layer killing the class of `a` at a rational place.
pub fn kill_class(a: &RationalFunction, place: &Place) -> Result<ExtensionCertificate> {
    kill_higher(a, 1, std::slice::from_ref(place))
}

/// One layer killing the class of `a` at several places at once.
pub fn kill_class_multi(a: &RationalFunction, places: &[Place]) -> Result<ExtensionCertificate> {
    kill_higher(a, 1, places)
}

/// A tower of height at most `N` with `a = h^{p^N} + g`, `g` integral at every place.
pub fn kill_higher(a: &RationalFunction, n: u32, places: &[Place]) -> Result<ExtensionCertificate> {
    kill_entries(a.field(), places, &[(a.clone(), n)])
}

/// One shared tower for every cocycle of a torsor datum.
pub fn kill_presentation(data: &TorsorData) -> Result<ExtensionCertificate> {
    kill_entries(&data.field, &data.places, &data.entries())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_fields::FieldSpec;
    use crate::descent::certificate::verify_certificate;
    use crate::text::{parse_place, parse_rational};

    fn f2() -> Field {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn worked_example() {
        let field = f2();
        let t0 = Place::zero(&field);
        let cert = kill_class(&RationalFunction::t_pow(&field, -1), &t0).unwrap();
        let tower = &cert.tower;
        assert_eq!(tower.height(), 1);
        assert!(tower.equal(tower.defining(1), &tower.parse("t^-3").unwrap()));
        let tp = &tower.tracked()[0];
        assert!(tower.equal(&tower.uniformizer(1, tp), &tower.parse("x1*t^2").unwrap()));
        let e = &cert.entries[0];
        assert!(tower.equal(&e.h, &tower.parse("t*(x1 + 1)").unwrap()));
        assert!(tower.equal(&e.g, &tower.parse("x1*t^2/(x1*t^3 + 1)").unwrap()));
        assert_eq!(tower.valuation(&e.g, tp), 1);
        assert!(verify_certificate(&cert.to_file()).passed);
    }

    #[test]
    fn extendable_input_gives_empty_tower() {
        let field = f2();
        let t0 = Place::zero(&field);
        let cert = kill_class(&RationalFunction::t_pow(&field, -2), &t0).unwrap();
        assert_eq!(cert.tower.height(), 0);
        let e = &cert.entries[0];
        assert_eq!(e.h.base(), &RationalFunction::t_pow(&field, -1));
        assert!(e.g.is_zero());
    }

    #[test]
    fn two_terms_one_layer() {
        let field = f2();
        let t0 = Place::zero(&field);
        let a = parse_rational(&field, "t^-1 + t^-5").unwrap();
        let cert = kill_class(&a, &t0).unwrap();
        assert_eq!(cert.tower.height(), 1);
        assert_eq!(cert.tower.tracked()[0].layers[0].s, 11);
        assert!(verify_certificate(&cert.to_file()).passed);
    }

    #[test]
    fn multi_place() {
        let field = f2();
        let places = vec![Place::zero(&field), parse_place(&field, "t + 1").unwrap()];
        let a = parse_rational(&field, "1/t + 1/(t+1)").unwrap();
        let cert = kill_class_multi(&a, &places).unwrap();
        assert_eq!(cert.tower.height(), 1);
        for tp in cert.tower.tracked() {
            assert_eq!(tp.layers[0].s, 3);
        }
        assert!(verify_certificate(&cert.to_file()).passed);
        let integral = parse_rational(&field, "t^2 + 1").unwrap();
        let cert = kill_class_multi(&integral, &places).unwrap();
        assert_eq!(cert.tower.height(), 0);
        assert_eq!(cert.entries[0].g.base(), &integral);
    }

    #[test]
    fn higher_exponent() {
        let field = f2();
        let t0 = Place::zero(&field);
        let cert = kill_higher(&RationalFunction::t_pow(&field, -4), 2, std::slice::from_ref(&t0)).unwrap();
        assert_eq!(cert.tower.height(), 0);
        let cert = kill_higher(&RationalFunction::t_pow(&field, -1), 2, std::slice::from_ref(&t0)).unwrap();
        assert_eq!(cert.tower.height(), 2);
        assert_eq!(cert.tower.tracked()[0].layers[1].s, 3);
        assert!(verify_certificate(&cert.to_file()).passed);
        let one = kill_higher(&RationalFunction::t_pow(&field, -1), 1, std::slice::from_ref(&t0)).unwrap();
        assert_eq!(one.to_json(), kill_class(&RationalFunction::t_pow(&field, -1), &t0).unwrap().to_json());
    }

    #[test]
    fn infinity_and_p3() {
        let field = f2();
        let cert = kill_class(&RationalFunction::t(&field), &Place::Infinity).unwrap();
        assert_eq!(cert.tower.tracked()[0].layers[0].s, 3);
        assert!(verify_certificate(&cert.to_file()).passed);
        let f3 = FieldSpec::prime(3).unwrap();
        let a = parse_rational(&f3, "2*t^-5 + t^-3 + t^-1").unwrap();
        let cert = kill_class(&a, &Place::zero(&f3)).unwrap();
        assert!(verify_certificate(&cert.to_file()).passed);
        let cert = kill_higher(&a, 2, &[Place::zero(&f3), Place::Infinity]).unwrap();
        assert!(cert.tower.height() <= 2);
        let r = verify_certificate(&cert.to_file());
        assert!(r.passed, "{:?} {}", r.failures().collect::<Vec<_>>(), cert.to_json());
    }

    #[test]
    fn tampered_certificate_fails() {
        let field = f2();
        let cert = kill_class(&RationalFunction::t_pow(&field, -1), &Place::zero(&field)).unwrap();
        let mut file = cert.to_file();
        file.entries[0].h = format!("{} + 1", file.entries[0].h);
        let report = verify_certificate(&file);
        assert!(!report.passed);
        assert!(report.failures().any(|c| c.name.contains("identity")));
    }
}
