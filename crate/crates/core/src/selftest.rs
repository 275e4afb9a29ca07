//! Reduced-size runs of the invariant suites, used by `asdescent selftest`.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::artin_schreier::{as_reduce, classify_ramification, expansion_defect_for, ASTower, RamificationCase};
use crate::base_fields::fq::{MAX_FIELD_SIZE, SUPPORTED_PRIMES};
use crate::base_fields::place::degree_sum;
use crate::base_fields::{wp_preimage, Field, FieldSpec, Place, RationalFunction, ResidueField};
use crate::cover::{audit_cover, build_cover, BoundarySpec};
use crate::descent::{kill_class, normal_form, verify_certificate, TorsorData};
use crate::random;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub detail: String,
}

type Suite = fn(&mut ChaCha8Rng, usize) -> Result<usize, String>;

fn fields() -> Vec<Field> {
    [(2, 1), (3, 1), (2, 2), (3, 2)]
        .into_iter()
        .map(|(p, k)| FieldSpec::new(p, k).expect("supported"))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn valuations(rng: &mut ChaCha8Rng, n: usize) -> Result<usize, String> {
    let mut cases = 0;
    for field in fields() {
        for _ in 0..n {
            let f = random::nonzero_rational(&field, 4, rng);
            let g = random::nonzero_rational(&field, 4, rng);
            let pl = random::rational_place(&field, rng);
            let (vf, vg, vs) = (pl.valuation(&f), pl.valuation(&g), pl.valuation(&(&f + &g)));
            let m = if vf < vg { vf } else { vg };
            ensure(vs >= m, || format!("ultrametric fails for {f}, {g} at {pl}"))?;
            if vf != vg {
                ensure(vs == m, || format!("strict ultrametric fails for {f}, {g} at {pl}"))?;
            }
            ensure(degree_sum(&f) == 0, || format!("product formula fails for {f}"))?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn pth_roots(_: &mut ChaCha8Rng, _: usize) -> Result<usize, String> {
    let mut cases = 0;
    for p in SUPPORTED_PRIMES {
        let mut k = 1;
        while p.pow(k) <= MAX_FIELD_SIZE {
            let field = FieldSpec::new(p, k).map_err(|e| e.to_string())?;
            for a in field.elements() {
                ensure(field.frobenius(field.pth_root(a)) == a, || format!("F_{}: root of {a:?}", field.q()))?;
                ensure(field.pth_root(field.frobenius(a)) == a, || format!("F_{}: root of {a:?}", field.q()))?;
                cases += 1;
            }
            k += 1;
        }
    }
    Ok(cases)
}

fn wp(rng: &mut ChaCha8Rng, n: usize) -> Result<usize, String> {
    let mut cases = 0;
    for field in fields() {
        for _ in 0..n {
            let h = random::rational(&field, 3, rng);
            let f = h.wp();
            let g = wp_preimage(&f).ok_or_else(|| format!("no preimage for wp({h})"))?;
            ensure(g.wp() == f, || format!("bad preimage for {f}"))?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn ramification(rng: &mut ChaCha8Rng, n: usize) -> Result<usize, String> {
    let mut cases = 0;
    for field in fields() {
        let p = field.p();
        for _ in 0..n {
            let pl = random::rational_place(&field, rng);
            let f = random::polar(&field, &pl, 4, 3, rng);
            let red = as_reduce(&f, &pl).map_err(|e| e.to_string())?;
            let r = classify_ramification(&red.reduced, &pl).map_err(|e| e.to_string())?;
            if r.case == RamificationCase::Trivial {
                continue;
            }
            ensure(r.e * r.f * r.g == p, || format!("efg != p for {f}"))?;
            let v = pl.val(&red.reduced);
            if v >= 0 {
                let res = ResidueField::new(&field, &pl);
                let c = res.reduce(&red.reduced).map_err(|e| e.to_string())?;
                let root = res
                    .elements()
                    .any(|x| res.sub(&res.pow(&x, p as u128), &x) == res.normalize(&c));
                ensure(root == (r.case == RamificationCase::Split), || {
                    format!("root oracle disagrees for {f} at {pl}")
                })?;
            } else {
                ensure(r.case == RamificationCase::TotallyRamified, || format!("{f} at {pl}"))?;
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn defect(_: &mut ChaCha8Rng, _: usize) -> Result<usize, String> {
    let mut cases = 0;
    for p in [2u32, 3] {
        for s in (1..=7).filter(|s| s % p as i64 != 0) {
            for m in (1..=3).filter(|m| m % p as i64 != 0) {
                let got = expansion_defect_for(p, s, m).map_err(|e| e.to_string())?;
                let want = (p as i64 - 1) * s - m * p as i64;
                ensure(got == want, || format!("p={p} s={s} m={m}: {got} != {want}"))?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn tower(rng: &mut ChaCha8Rng, n: usize) -> Result<usize, String> {
    let mut cases = 0;
    for field in fields() {
        let t0 = Place::zero(&field);
        let base = ASTower::new(&field, std::slice::from_ref(&t0)).map_err(|e| e.to_string())?;
        let s = if field.p() == 2 { 3 } else { 2 };
        let f = base.base(&RationalFunction::t_pow(&field, -s));
        let tw = base.extend(&f).map_err(|e| e.to_string())?;
        let tp = tw.tracked()[0].clone();
        let elem = |rng: &mut ChaCha8Rng| {
            let x = tw.generator(1);
            (0..field.p() as usize).fold(tw.zero(), |acc, i| {
                let c = tw.base(&random::rational(&field, 2, rng));
                tw.add(&acc, &tw.mul(&c, &tw.pow(&x, i as u64)))
            })
        };
        for _ in 0..n {
            let a = elem(rng);
            let b = elem(rng);
            let ab = tw.mul(&a, &b);
            ensure(tw.equal(&tw.frobenius(&ab), &tw.mul(&tw.frobenius(&a), &tw.frobenius(&b))), || {
                "frobenius is not multiplicative".into()
            })?;
            ensure(
                tw.equal(&tw.frobenius(&tw.add(&a, &b)), &tw.add(&tw.frobenius(&a), &tw.frobenius(&b))),
                || "frobenius is not additive".into(),
            )?;
            if !a.is_zero() {
                let inv = tw.inv(&a).map_err(|e| e.to_string())?;
                ensure(tw.equal(&tw.mul(&a, &inv), &tw.one()), || "inverse check failed".into())?;
            }
            if !a.is_zero() && !b.is_zero() {
                let (va, vb, vab) = (tw.valuation(&a, &tp), tw.valuation(&b, &tp), tw.valuation(&ab, &tp));
                ensure(vab == va + vb, || "valuation is not additive".into())?;
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn normal_forms(rng: &mut ChaCha8Rng, n: usize) -> Result<usize, String> {
    let mut cases = 0;
    for field in fields() {
        for _ in 0..n {
            let pl = random::rational_place(&field, rng);
            let a = random::polar(&field, &pl, 6, 2, rng);
            let b = random::polar(&field, &pl, 6, 2, rng);
            let big_n = rng.gen_range(1..=2);
            let nf = |x| normal_form(x, &pl, big_n).map_err(|e| e.to_string());
            let (na, nb, nab) = (nf(&a)?, nf(&b)?, nf(&(&a + &b))?);
            let sum = &na.class.to_function(&field) + &nb.class.to_function(&field);
            ensure(nab.class.to_function(&field) == sum, || format!("additivity fails for {a}, {b}"))?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn kills(rng: &mut ChaCha8Rng, n: usize) -> Result<usize, String> {
    let mut cases = 0;
    for field in fields().into_iter().take(2) {
        for _ in 0..n {
            let pl = random::rational_place(&field, rng);
            let a = random::polar(&field, &pl, 4, 2, rng);
            let cert = kill_class(&a, &pl).map_err(|e| e.to_string())?;
            let report = verify_certificate(&cert.to_file());
            ensure(report.passed, || format!("certificate for {a} at {pl} fails"))?;
            let empty = normal_form(&a, &pl, 1).map_err(|e| e.to_string())?.class.is_zero();
            ensure(empty == (cert.tower.height() == 0), || format!("tower height mismatch for {a}"))?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn covers(rng: &mut ChaCha8Rng, n: usize) -> Result<usize, String> {
    let mut cases = 0;
    let field = FieldSpec::prime(2).map_err(|e| e.to_string())?;
    let zero = Place::zero(&field);
    let one = Place::rational(&field, field.one());
    let irr = crate::text::parse_place(&field, "irr:t^2 + t + 1").map_err(|e| e.to_string())?;
    for _ in 0..n.div_ceil(4) {
        let boundary = vec![zero.clone(), one.clone()];
        let a = &random::polar(&field, &zero, 3, 0, rng) + &random::polar(&field, &one, 3, 0, rng);
        let data = TorsorData::single(&a, rng.gen_range(1..=2), boundary.clone()).map_err(|e| e.to_string())?;
        let spec = BoundarySpec::new(boundary, vec![irr.clone(), Place::Infinity]).map_err(|e| e.to_string())?;
        let plan = build_cover(&data, &spec).map_err(|e| e.to_string())?;
        ensure(audit_cover(&plan).passed, || format!("audit fails for {a}"))?;
        cases += 1;
    }
    Ok(cases)
}

/// Runs every suite with `samples` random cases per field.
pub fn run_all(seed: u64, samples: usize) -> Vec<SuiteResult> {
    let suites: [(&str, Suite); 9] = [
        ("valuation", valuations),
        ("pth_root", pth_roots),
        ("wp_preimage", wp),
        ("ramification", ramification),
        ("expansion_defect", defect),
        ("tower_arithmetic", tower),
        ("normal_form", normal_forms),
        ("kill_class", kills),
        ("cover", covers),
    ];
    suites
        .iter()
        .enumerate()
        .map(|(i, (name, suite))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let outcome = catch_unwind(AssertUnwindSafe(|| suite(&mut rng, samples)));
            let (cases, passed, detail) = match outcome {
                Ok(Ok(c)) => (c, true, String::new()),
                Ok(Err(msg)) => (0, false, msg),
                Err(_) => (0, false, "panicked".to_string()),
            };
            SuiteResult {
                name: name.to_string(),
                cases,
                passed,
                detail,
            }
        })
        .collect()
}
