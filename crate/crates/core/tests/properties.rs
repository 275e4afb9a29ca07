use std::collections::BTreeMap;

use asdescent::artin_schreier::{as_reduce, classify_ramification, ASTower, RamificationCase, TowerElement};
use asdescent::base_fields::place::degree_sum;
use asdescent::base_fields::{local_expand, wp_preimage, Field, FieldSpec, Place, RationalFunction, Valuation};
use asdescent::descent::{kill_class, normal_form, verify_certificate};
use asdescent::random;
use asdescent::text::{parse_place, parse_rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIELDS: [(u32, u32); 6] = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)];

fn setup(field_ix: usize, seed: u64) -> (Field, ChaCha8Rng) {
    let (p, k) = FIELDS[field_ix % FIELDS.len()];
    (FieldSpec::new(p, k).unwrap(), ChaCha8Rng::seed_from_u64(seed))
}

fn add(a: Valuation, b: Valuation) -> Valuation {
    a + b
}

/// A tower with one layer that is totally ramified at `t`.
fn ramified_tower(field: &Field, rng: &mut ChaCha8Rng) -> ASTower {
    let place = Place::zero(field);
    let p = field.p() as i64;
    let s = loop {
        let s = rng.gen_range(1..=7);
        if s % p != 0 {
            break s;
        }
    };
    let f = &RationalFunction::t_pow(field, -s).scale(random::nonzero_fq(field, rng)) + &random::rational(field, 1, rng);
    let tower = ASTower::new(field, &[place]).unwrap();
    let f = if Place::zero(field).valuation(&f) == Valuation::Finite(-s) { f } else { RationalFunction::t_pow(field, -s) };
    tower.extend(&tower.base(&f)).unwrap()
}

fn tower_element(tower: &ASTower, rng: &mut ChaCha8Rng) -> TowerElement {
    let field = tower.field().clone();
    let mut acc = tower.zero();
    let mut xpow = tower.one();
    for _ in 0..field.p() {
        let c = tower.embed(&random::rational(&field, 2, rng));
        acc = tower.add(&acc, &tower.mul(&c, &xpow));
        xpow = tower.mul(&xpow, &tower.generator(1));
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn valuation_is_ultrametric(fi in 0usize..6, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let place = random::rational_place(&field, &mut rng);
        let a = random::rational(&field, 4, &mut rng);
        let b = random::rational(&field, 4, &mut rng);
        let (va, vb) = (place.valuation(&a), place.valuation(&b));
        prop_assert!(place.valuation(&(&a + &b)) >= va.min(vb));
        prop_assert_eq!(place.valuation(&(&a * &b)), add(va, vb));
        if va != vb {
            prop_assert_eq!(place.valuation(&(&a + &b)), va.min(vb));
        }
    }

    #[test]
    fn valuations_match_construction(fi in 0usize..6, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let mut f = RationalFunction::constant(&field, random::nonzero_fq(&field, &mut rng));
        let mut expected: BTreeMap<u32, i64> = BTreeMap::new();
        for _ in 0..rng.gen_range(1..5) {
            let c = random::fq(&field, &mut rng);
            let e = rng.gen_range(-3i64..=3);
            f = &f * &Place::rational(&field, c).uniformizer_pow(&field, e);
            *expected.entry(c.index()).or_default() += e;
        }
        let mut total = 0;
        for (&i, &e) in &expected {
            prop_assert_eq!(Place::rational(&field, field.element(i)).val(&f), e);
            total += e;
        }
        prop_assert_eq!(Place::Infinity.val(&f), -total);
        prop_assert_eq!(degree_sum(&f), 0);
        let g = random::nonzero_rational(&field, 4, &mut rng);
        prop_assert_eq!(degree_sum(&g), 0);
    }

    #[test]
    fn pth_root_inverts_frobenius(fi in 0usize..6, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let a = random::rational(&field, 3, &mut rng);
        let root = a.frobenius().pth_root().unwrap();
        prop_assert_eq!(root.frobenius(), a.frobenius());
        prop_assert_eq!(root, a.clone());
        let t = RationalFunction::t(&field);
        prop_assert!((&a.frobenius() + &t).pth_root().is_none());
    }

    #[test]
    fn local_expansion_resums(fi in 0usize..6, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let place = random::rational_place(&field, &mut rng);
        let a = random::polar_exact(&field, &place, 6, 4, &mut rng);
        let exp = local_expand(&a, &place, 4).unwrap();
        prop_assert_eq!(exp.valuation(), place.valuation(&a));
        prop_assert_eq!(exp.resum(&field), a);
    }

    #[test]
    fn wp_preimage_is_a_preimage(fi in 0usize..6, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let g = random::rational(&field, 3, &mut rng);
        let f = g.wp();
        let h = wp_preimage(&f).unwrap();
        prop_assert_eq!(h.wp(), f);
        let diff = &h - &g;
        prop_assert!(diff.as_constant().map(|c| field.is_prime_subfield(c)).unwrap_or(false));
    }

    #[test]
    fn classification_matches_reduction(fi in 0usize..6, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let place = random::rational_place(&field, &mut rng);
        let f = &random::polar(&field, &place, 6, 3, &mut rng) + &random::rational(&field, 1, &mut rng);
        let red = as_reduce(&f, &place).unwrap();
        prop_assert_eq!(&f + &red.g.wp(), red.reduced.clone());
        let report = classify_ramification(&red.reduced, &place).unwrap();
        let shifted = &f + &random::rational(&field, 2, &mut rng).wp();
        let again = classify_ramification(&as_reduce(&shifted, &place).unwrap().reduced, &place).unwrap();
        prop_assert_eq!(again.case, report.case);
        let degree = if report.case == RamificationCase::Trivial { 1 } else { field.p() };
        prop_assert_eq!(report.e * report.f * report.g, degree);
    }

    #[test]
    fn tower_valuation_is_additive(fi in 0usize..6, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let tower = ramified_tower(&field, &mut rng);
        let tp = tower.tracked()[0].clone();
        let a = tower_element(&tower, &mut rng);
        let b = tower_element(&tower, &mut rng);
        let (va, vb) = (tower.valuation(&a, &tp), tower.valuation(&b, &tp));
        prop_assert_eq!(tower.valuation(&tower.mul(&a, &b), &tp), add(va, vb));
        prop_assert!(tower.valuation(&tower.add(&a, &b), &tp) >= va.min(vb));
        let c = random::nonzero_rational(&field, 2, &mut rng);
        let vc = Place::zero(&field).valuation(&c).scale(field.p() as i64);
        prop_assert_eq!(tower.valuation(&tower.embed(&c), &tp), vc);
    }

    #[test]
    fn tower_frobenius_and_inverse(fi in 0usize..6, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let tower = ramified_tower(&field, &mut rng);
        let a = tower_element(&tower, &mut rng);
        let b = tower_element(&tower, &mut rng);
        let fr = |x: &TowerElement| tower.frobenius(x);
        prop_assert!(tower.equal(&fr(&tower.mul(&a, &b)), &tower.mul(&fr(&a), &fr(&b))));
        prop_assert!(tower.equal(&fr(&tower.add(&a, &b)), &tower.add(&fr(&a), &fr(&b))));
        prop_assert!(tower.equal(&fr(&a), &tower.pow(&a, field.p() as u64)));
        if !a.is_zero() {
            let inv = tower.inv(&a).unwrap();
            prop_assert!(tower.equal(&tower.mul(&a, &inv), &tower.one()));
        }
        // x^p - x = f
        let x = tower.generator(1);
        let wp = tower.sub(&fr(&x), &x);
        prop_assert!(tower.equal(&wp, tower.defining(1)));
    }

    #[test]
    fn normal_form_is_sound(fi in 0usize..6, seed in any::<u64>(), n in 1u32..=2) {
        let (field, mut rng) = setup(fi, seed);
        let place = random::rational_place(&field, &mut rng);
        let a = &random::polar(&field, &place, 8, 3, &mut rng) + &random::rational(&field, 2, &mut rng);
        let nf = normal_form(&a, &place, n).unwrap();
        let rebuilt = &(&nf.u + &nf.w.frobenius_iter(n)) + &nf.class.to_function(&field);
        prop_assert_eq!(rebuilt, a.clone());
        prop_assert!(place.valuation(&nf.u).at_least(0));
        // adding a p^N-th power does not change the class
        let shifted = &a + &random::polar(&field, &place, 3, 2, &mut rng).frobenius_iter(n);
        let ns = normal_form(&shifted, &place, n).unwrap();
        prop_assert_eq!(ns.class.to_function(&field), nf.class.to_function(&field));
    }

    #[test]
    fn kill_class_certificates_verify(fi in 0usize..3, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let place = random::rational_place(&field, &mut rng);
        let a = random::polar(&field, &place, 5, 2, &mut rng);
        let cert = kill_class(&a, &place).unwrap();
        prop_assert!(verify_certificate(&cert.to_file()).passed);
        let nf = normal_form(&a, &place, 1).unwrap();
        let expected = if nf.class.is_zero() { 1 } else { field.p() as u64 };
        prop_assert_eq!(cert.tower.degree(), expected);
    }

    #[test]
    fn text_round_trip(fi in 0usize..6, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let a = random::rational(&field, 4, &mut rng);
        prop_assert_eq!(parse_rational(&field, &a.to_string()).unwrap(), a);
        let place = random::rational_place(&field, &mut rng);
        prop_assert_eq!(parse_place(&field, &place.to_string()).unwrap(), place);
    }

    #[test]
    fn hinted_gcd_agrees_with_euclid(fi in 0usize..4, seed in any::<u64>()) {
        let (field, mut rng) = setup(fi, seed);
        let common = random::poly(&field, 6, &mut rng);
        let a = &random::poly(&field, 20, &mut rng) * &common;
        let b = &(&random::poly(&field, 20, &mut rng) * &common) * &common;
        asdescent::base_fields::register_factor_hint(&common);
        prop_assert_eq!(a.gcd_hinted(&b).unwrap(), a.gcd(&b).unwrap());
    }
}
