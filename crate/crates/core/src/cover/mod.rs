//! Covers of the projective line on which a torsor extends: one shared tower,
//! ramified only over the boundary, with an audited ramification table.

pub mod residue_algebra;

use serde::{Deserialize, Serialize};

use crate::artin_schreier::{as_reduce, classify_ramification, ASTower, RamificationCase, RamificationReport};
use crate::base_fields::{Place, RationalFunction};
use crate::descent::{
    check_coverage, kill_presentation, verify_rebuild, CertificateFile, ExtensionCertificate, TorsorData, TorsorFile,
    VerificationReport,
};
use crate::error::{Error, Result};
use crate::text::parse_place;

pub use residue_algebra::{split_inert_counts, ResidueAlgebra};

/// Boundary points `x_1..x_r` and interior sample places.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySpec {
    pub boundary: Vec<Place>,
    pub samples: Vec<Place>,
}

impl BoundarySpec {
    pub fn new(boundary: Vec<Place>, samples: Vec<Place>) -> Result<Self> {
        if boundary.is_empty() {
            return Err(Error::InvalidInput("the boundary needs at least one point".into()));
        }
        for (i, b) in boundary.iter().enumerate() {
            b.require_rational()?;
            if boundary[..i].contains(b) {
                return Err(Error::InvalidInput(format!("boundary point {b} listed twice")));
            }
        }
        for (i, s) in samples.iter().enumerate() {
            if boundary.contains(s) || samples[..i].contains(s) {
                return Err(Error::InvalidInput(format!(
                    "sample place {s} repeats or lies on the boundary"
                )));
            }
        }
        Ok(BoundarySpec { boundary, samples })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Boundary,
    Sample,
}

/// `count` places of the previous level above the base place, each with the
/// given behaviour in this layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AboveRecord {
    pub report: RamificationReport,
    pub count: usize,
}

/// Ramification of one base place in one layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub layer: usize,
    pub place: String,
    pub role: Role,
    pub above: Vec<AboveRecord>,
}

impl TableEntry {
    pub fn is_totally_ramified(&self) -> bool {
        !self.above.is_empty()
            && self
                .above
                .iter()
                .all(|r| r.report.case == RamificationCase::TotallyRamified)
    }

    pub fn is_unramified(&self) -> bool {
        !self.above.is_empty() && self.above.iter().all(|r| r.report.is_unramified())
    }
}

#[derive(Clone, Debug)]
pub struct CoverPlan {
    pub torsor: TorsorData,
    pub spec: BoundarySpec,
    pub certificate: ExtensionCertificate,
    pub table: Vec<TableEntry>,
}

/// Serialized [`CoverPlan`]: the certificate fields plus the torsor, the
/// boundary data and the ramification table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanFile {
    #[serde(flatten)]
    pub certificate: CertificateFile,
    pub torsor: TorsorFile,
    pub boundary: Vec<String>,
    pub samples: Vec<String>,
    pub ramification_table: Vec<TableEntry>,
}

impl CoverPlan {
    pub fn to_file(&self) -> PlanFile {
        PlanFile {
            certificate: self.certificate.to_file(),
            torsor: self.torsor.to_file(),
            boundary: self.spec.boundary.iter().map(|p| p.to_string()).collect(),
            samples: self.spec.samples.iter().map(|p| p.to_string()).collect(),
            ramification_table: self.table.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable") + "\n"
    }
}

fn single(report: RamificationReport) -> Vec<AboveRecord> {
    vec![AboveRecord { report, count: 1 }]
}

fn boundary_entry(tower: &ASTower, place: &Place, k: usize) -> Result<Vec<AboveRecord>> {
    let p = tower.p();
    let f = tower.defining(k);
    if k == 1 {
        let reduced = as_reduce(f.base(), place)?.reduced;
        return Ok(single(classify_ramification(&reduced, place)?));
    }
    let tp = tower
        .tracked_place(place)
        .ok_or_else(|| Error::InvalidInput(format!("boundary point {place} is not tracked")))?;
    match tower.valuation_at(f, tp, k - 1).finite() {
        Some(v) if v < 0 && v % p as i64 != 0 => Ok(single(RamificationReport::totally_ramified(p))),
        _ => Err(Error::NotNegativePrimeToP {
            place: place.to_string(),
            valuation: tower.valuation_at(f, tp, k - 1).to_string(),
        }),
    }
}

fn sample_entry(tower: &ASTower, place: &Place, k: usize) -> Result<Vec<AboveRecord>> {
    let p = tower.p();
    if k == 1 {
        let f = tower.defining(1).base();
        let reduced = as_reduce(f, place)?.reduced;
        let report = classify_ramification(&reduced, place)?;
        if report.is_unramified() && report.case != RamificationCase::Trivial {
            // cross-check against the residue-algebra count
            let expect = match report.case {
                RamificationCase::Split => (1, 0),
                _ => (0, 1),
            };
            let got = split_inert_counts(tower, place, 1)?;
            if got != expect {
                return Err(Error::InvalidInput(format!(
                    "classifiers disagree at {place}: {:?} vs counts {got:?}",
                    report.case
                )));
            }
        }
        return Ok(single(report));
    }
    // Layers above the first are integral above the sample place, so every
    // place above it is split or inert.
    let (split, inert) = split_inert_counts(tower, place, k)?;
    let mut out = Vec::new();
    if split > 0 {
        out.push(AboveRecord {
            report: RamificationReport::split(p),
            count: split,
        });
    }
    if inert > 0 {
        out.push(AboveRecord {
            report: RamificationReport::inert(p),
            count: inert,
        });
    }
    Ok(out)
}

/// The ramification table for every layer at every boundary and sample place.
pub fn ramification_table(tower: &ASTower, spec: &BoundarySpec) -> Result<Vec<TableEntry>> {
    let mut table = Vec::new();
    for k in 1..=tower.height() {
        for b in &spec.boundary {
            table.push(TableEntry {
                layer: k,
                place: b.to_string(),
                role: Role::Boundary,
                above: boundary_entry(tower, b, k)?,
            });
        }
        for s in &spec.samples {
            table.push(TableEntry {
                layer: k,
                place: s.to_string(),
                role: Role::Sample,
                above: sample_entry(tower, s, k)?,
            });
        }
    }
    Ok(table)
}

/// Places outside `allowed` where some base coefficient of `f` has a pole.
fn stray_poles(f: &crate::artin_schreier::TowerElement, allowed: &[Place]) -> Vec<Place> {
    let mut out: Vec<Place> = Vec::new();
    for c in f.base_coeffs() {
        let mut poles: Vec<Place> = c
            .den()
            .factor()
            .into_iter()
            .filter_map(|(pi, _)| Place::finite(pi).ok())
            .collect();
        if Place::Infinity.valuation(c) < 0 {
            poles.push(Place::Infinity);
        }
        for pl in poles {
            if !allowed.contains(&pl) && !out.contains(&pl) {
                out.push(pl);
            }
        }
    }
    out
}

/// Whether the poles of `a` lie on the boundary.
fn poles_on_boundary(a: &RationalFunction, boundary: &[Place]) -> bool {
    stray_poles(&crate::artin_schreier::Nested::Base(a.clone()), boundary).is_empty()
}

/// Builds the shared tower for `data` with boundary `spec.boundary`.
pub fn build_cover(data: &TorsorData, spec: &BoundarySpec) -> Result<CoverPlan> {
    for pl in &data.places {
        if !spec.boundary.contains(pl) {
            return Err(Error::InvalidInput(format!("torsor place {pl} is not on the boundary")));
        }
    }
    for (a, _) in data.entries() {
        if !poles_on_boundary(&a, &spec.boundary) {
            return Err(Error::InvalidInput(format!(
                "cocycle {a} has poles off the boundary; it does not define a torsor on the interior"
            )));
        }
    }
    let shared = TorsorData {
        places: spec.boundary.clone(),
        ..data.clone()
    };
    let certificate = kill_presentation(&shared)?;
    let table = ramification_table(&certificate.tower, spec)?;
    let plan = CoverPlan {
        torsor: data.clone(),
        spec: spec.clone(),
        certificate,
        table,
    };
    for e in &plan.table {
        let ok = match e.role {
            Role::Boundary => e.is_totally_ramified(),
            Role::Sample => e.is_unramified(),
        };
        if !ok {
            return Err(Error::InvalidInput(format!(
                "layer {} at {} violates the cover invariants",
                e.layer, e.place
            )));
        }
    }
    Ok(plan)
}

/// Re-checks a plan from scratch.
pub fn audit_cover(plan: &CoverPlan) -> VerificationReport {
    audit_plan_file(&plan.to_file())
}

/// Re-checks a serialized plan: the certificate, coverage of the torsor at
/// every boundary point, boundary-only poles of every layer, and a freshly
/// computed ramification table against the recorded one.
pub fn audit_plan_file(file: &PlanFile) -> VerificationReport {
    let (mut report, rebuilt) = verify_rebuild(&file.certificate);
    let Some(rebuilt) = rebuilt else {
        return report;
    };
    let field = rebuilt.tower.field().clone();
    let spec = (|| -> Result<BoundarySpec> {
        let b = file.boundary.iter().map(|s| parse_place(&field, s)).collect::<Result<_>>()?;
        let s = file.samples.iter().map(|s| parse_place(&field, s)).collect::<Result<_>>()?;
        BoundarySpec::new(b, s)
    })();
    let spec = match spec {
        Ok(s) => s,
        Err(e) => {
            report.record("boundary spec", false, e.to_string());
            return report;
        }
    };
    let torsor = match file.torsor.to_data() {
        Ok(t) if crate::base_fields::same_field(&t.field, &field) => t,
        Ok(_) => {
            report.record("torsor", false, "torsor lives over a different base field");
            return report;
        }
        Err(e) => {
            report.record("torsor", false, e.to_string());
            return report;
        }
    };
    check_coverage(&rebuilt, &torsor.entries(), &spec.boundary, &mut report);
    let tower = &rebuilt.tower;
    for k in 1..=tower.height() {
        let stray = stray_poles(tower.defining(k), &spec.boundary);
        report.record(
            format!("layer {k} poles"),
            stray.is_empty(),
            if stray.is_empty() {
                "poles only above the boundary".to_string()
            } else {
                format!("poles at {}", stray.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))
            },
        );
    }
    for k in 1..=tower.height() {
        for (role, places) in [(Role::Boundary, &spec.boundary), (Role::Sample, &spec.samples)] {
            for pl in places {
                let fresh = match role {
                    Role::Boundary => boundary_entry(tower, pl, k),
                    Role::Sample => sample_entry(tower, pl, k),
                };
                let name = format!("layer {k} at {pl}");
                let fresh = match fresh {
                    Ok(f) => f,
                    Err(e) => {
                        report.record(name, false, e.to_string());
                        continue;
                    }
                };
                let entry = TableEntry {
                    layer: k,
                    place: pl.to_string(),
                    role,
                    above: fresh,
                };
                let (ok, what) = match role {
                    Role::Boundary => (entry.is_totally_ramified(), "totally ramified"),
                    Role::Sample => (entry.is_unramified(), "unramified"),
                };
                report.record(
                    name.clone(),
                    ok,
                    if ok { what.to_string() } else { format!("expected {what}: {:?}", entry.above) },
                );
                let recorded = file.ramification_table.contains(&entry);
                report.record(format!("{name} recorded"), recorded, "table entry matches the recomputation");
            }
        }
    }
    let expected_rows = tower.height() * (spec.boundary.len() + spec.samples.len());
    report.record(
        "table size",
        file.ramification_table.len() == expected_rows,
        format!("{} rows, expected {expected_rows}", file.ramification_table.len()),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_fields::FieldSpec;
    use crate::text::parse_rational;

    fn example() -> (TorsorData, BoundarySpec) {
        let f2 = FieldSpec::prime(2).unwrap();
        let b = vec![Place::zero(&f2), parse_place(&f2, "t + 1").unwrap()];
        let s = vec![parse_place(&f2, "irr:t^2 + t + 1").unwrap(), Place::Infinity];
        let a = parse_rational(&f2, "1/t + 1/(t + 1)").unwrap();
        (
            TorsorData::single(&a, 1, b.clone()).unwrap(),
            BoundarySpec::new(b, s).unwrap(),
        )
    }

    #[test]
    fn example_plan_passes() {
        let (data, spec) = example();
        let plan = build_cover(&data, &spec).unwrap();
        assert_eq!(plan.certificate.tower.height(), 1);
        for tp in plan.certificate.tower.tracked() {
            assert_eq!(tp.layers[0].s, 3);
        }
        let report = audit_cover(&plan);
        assert!(report.passed, "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn integral_cocycle_gives_empty_tower() {
        let f2 = FieldSpec::prime(2).unwrap();
        let spec = BoundarySpec::new(vec![Place::Infinity], vec![Place::zero(&f2)]).unwrap();
        // t^2 has a pole at infinity but is a square
        for a in ["1", "t^2"] {
            let data = TorsorData::single(&parse_rational(&f2, a).unwrap(), 1, vec![]).unwrap();
            let plan = build_cover(&data, &spec).unwrap();
            assert_eq!(plan.certificate.tower.height(), 0);
            assert!(audit_cover(&plan).passed);
        }
    }

    #[test]
    fn infinity_boundary() {
        let f2 = FieldSpec::prime(2).unwrap();
        let spec = BoundarySpec::new(vec![Place::Infinity], vec![Place::zero(&f2)]).unwrap();
        let data = TorsorData::single(&RationalFunction::t(&f2), 1, vec![Place::Infinity]).unwrap();
        let plan = build_cover(&data, &spec).unwrap();
        assert_eq!(plan.certificate.tower.tracked()[0].layers[0].s, 3);
        assert!(audit_cover(&plan).passed);
    }

    #[test]
    fn negative_audits() {
        let (data, spec) = example();
        let plan = build_cover(&data, &spec).unwrap();
        let mut file = plan.to_file();
        file.certificate.tracked_places.pop();
        assert!(!audit_plan_file(&file).passed);

        let mut file = plan.to_file();
        file.certificate.tower[0] = format!("{} + 1/(t^2 + t + 1)", file.certificate.tower[0]);
        let report = audit_plan_file(&file);
        assert!(!report.passed);
        assert!(report.failures().any(|c| c.name.contains("irr:")));
    }

    #[test]
    fn second_exponent_cover() {
        let f2 = FieldSpec::prime(2).unwrap();
        let spec = BoundarySpec::new(
            vec![Place::zero(&f2), Place::Infinity],
            vec![parse_place(&f2, "t + 1").unwrap(), parse_place(&f2, "irr:t^2 + t + 1").unwrap()],
        )
        .unwrap();
        let data = TorsorData::single(&parse_rational(&f2, "t^-1 + t").unwrap(), 2, vec![]).unwrap();
        let plan = build_cover(&data, &spec).unwrap();
        assert!(plan.certificate.tower.height() <= 2);
        let report = audit_cover(&plan);
        assert!(report.passed, "{:?}", report.failures().collect::<Vec<_>>());
    }
}
