//! Extension certificates, their JSON file format and the independent verifier.

use serde::{Deserialize, Serialize};

use crate::artin_schreier::{format_nested, ASTower, TowerElement};
use crate::base_fields::{Field, FieldSpec, Place, RationalFunction};
use crate::error::{Error, Result};
use crate::text::{format_modulus, parse_modulus, parse_place, parse_rational};

/// Version tag of the certificate file format.
pub const CERT_FORMAT: &str = "asdescent-cert/1";

/// Largest exponent `N` the verifier accepts.
pub const MAX_EXPONENT_N: u32 = 8;

/// `a = h^{p^N} + g` with `g` integral at every tracked place of the tower.
#[derive(Clone, Debug)]
pub struct CertifiedEntry {
    pub a: RationalFunction,
    pub n: u32,
    pub h: TowerElement,
    pub g: TowerElement,
}

/// A tower together with witnesses for each killed class.
#[derive(Clone, Debug)]
pub struct ExtensionCertificate {
    pub tower: ASTower,
    pub entries: Vec<CertifiedEntry>,
    /// Retries and other producer remarks; not used by the verifier.
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub p: u32,
    pub k: u32,
    pub modulus: String,
}

impl FieldRecord {
    pub fn of(field: &FieldSpec) -> Self {
        FieldRecord {
            p: field.p(),
            k: field.k(),
            modulus: format_modulus(field),
        }
    }

    pub fn to_field(&self) -> Result<Field> {
        let m = parse_modulus(self.p, &self.modulus)?;
        let field = FieldSpec::with_modulus(self.p, m)?;
        if field.k() != self.k {
            return Err(Error::UnsupportedField(format!(
                "modulus has degree {}, record says k = {}",
                field.k(),
                self.k
            )));
        }
        Ok(field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerRecord {
    pub s: i64,
    pub a: i64,
    pub b: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackedRecord {
    pub place: String,
    pub layers: Vec<LayerRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationRecord {
    pub place: String,
    pub v: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub a: String,
    pub h: String,
    pub g: String,
    #[serde(rename = "N")]
    pub n: u32,
    /// Advisory; the verifier recomputes them.
    #[serde(default)]
    pub valuations: Vec<ValuationRecord>,
}

/// The serialized certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub format: String,
    pub base_field: FieldRecord,
    pub tower: Vec<String>,
    pub tracked_places: Vec<TrackedRecord>,
    pub entries: Vec<EntryRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ExtensionCertificate {
    pub fn field(&self) -> &Field {
        self.tower.field()
    }

    pub fn to_file(&self) -> CertificateFile {
        let tower = &self.tower;
        let tracked_places = tower
            .tracked()
            .iter()
            .map(|tp| TrackedRecord {
                place: tp.place.to_string(),
                layers: tp
                    .layers
                    .iter()
                    .map(|l| LayerRecord { s: l.s, a: l.a, b: l.b })
                    .collect(),
            })
            .collect();
        let entries = self
            .entries
            .iter()
            .map(|e| EntryRecord {
                a: e.a.to_string(),
                h: format_nested(&e.h),
                g: format_nested(&e.g),
                n: e.n,
                valuations: tower
                    .tracked()
                    .iter()
                    .map(|tp| ValuationRecord {
                        place: tp.place.to_string(),
                        v: tower.valuation(&e.g, tp).to_string(),
                    })
                    .collect(),
            })
            .collect();
        CertificateFile {
            format: CERT_FORMAT.to_string(),
            base_field: FieldRecord::of(tower.field()),
            tower: (1..=tower.height()).map(|k| format_nested(tower.defining(k))).collect(),
            tracked_places,
            entries,
            notes: self.notes.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable") + "\n"
    }
}

/// One named check of a verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport {
            passed: true,
            checks: Vec::new(),
        }
    }

    pub fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.passed &= other.passed;
        self.checks.extend(other.checks);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// A verified, re-parsed certificate.
#[derive(Clone, Debug)]
pub struct Rebuilt {
    pub tower: ASTower,
    pub entries: Vec<CertifiedEntry>,
}

/// Re-parses the tower and re-derives the tracked-place data.
fn rebuild_tower(file: &CertificateFile, report: &mut VerificationReport) -> Option<ASTower> {
    if file.format != CERT_FORMAT {
        report.record("format", false, format!("unknown format '{}'", file.format));
        return None;
    }
    report.record("format", true, CERT_FORMAT);
    let field = match file.base_field.to_field() {
        Ok(f) => f,
        Err(e) => {
            report.record("base field", false, e.to_string());
            return None;
        }
    };
    report.record("base field", true, format!("F_{}", field.q()));
    let places: Result<Vec<Place>> = file
        .tracked_places
        .iter()
        .map(|r| parse_place(&field, &r.place))
        .collect();
    let mut tower = match places.and_then(|p| ASTower::new(&field, &p)) {
        Ok(t) => t,
        Err(e) => {
            report.record("tracked places", false, e.to_string());
            return None;
        }
    };
    for (i, f) in file.tower.iter().enumerate() {
        let next = tower.parse(f).and_then(|f| tower.extend(&f));
        match next {
            Ok(t) => tower = t,
            Err(e) => {
                report.record("tower well-formed", false, format!("layer {}: {e}", i + 1));
                return None;
            }
        }
    }
    report.record(
        "tower well-formed",
        true,
        format!("{} layers; every tracked place has negative valuation prime to p", tower.height()),
    );
    let p = tower.p() as i64;
    let mut data_ok = true;
    let mut detail = String::from("s, a, b re-derived");
    for (tp, rec) in tower.tracked().iter().zip(&file.tracked_places) {
        let derived: Vec<LayerRecord> = tp
            .layers
            .iter()
            .map(|l| LayerRecord { s: l.s, a: l.a, b: l.b })
            .collect();
        let coprime = derived.iter().all(|l| l.s % p != 0 && -l.s * l.a + p * l.b == 1);
        if !coprime {
            data_ok = false;
            detail = format!("layer data at {} violates p ∤ s or -s a + p b = 1", tp.place);
        } else if derived != rec.layers {
            data_ok = false;
            detail = format!("recorded layer data at {} differs from the derived data", tp.place);
        }
    }
    report.record("p ∤ s_k", data_ok, detail);
    let expected = (p as u64).pow(tower.height() as u32);
    report.record(
        "tower degree",
        tower.degree() == expected,
        format!("[L:K] = {} = p^{}", tower.degree(), tower.height()),
    );
    Some(tower)
}

fn check_entry(
    tower: &ASTower,
    idx: usize,
    rec: &EntryRecord,
    report: &mut VerificationReport,
) -> Option<CertifiedEntry> {
    let name = format!("entry {idx}");
    if rec.n == 0 || rec.n > MAX_EXPONENT_N {
        report.record(format!("{name} exponent"), false, format!("N = {} out of range", rec.n));
        return None;
    }
    let parsed = (|| -> Result<(RationalFunction, TowerElement, TowerElement)> {
        let a = parse_rational(tower.field(), &rec.a)?;
        Ok((a, tower.parse(&rec.h)?, tower.parse(&rec.g)?))
    })();
    let (a, h, g) = match parsed {
        Ok(v) => v,
        Err(e) => {
            report.record(format!("{name} parse"), false, e.to_string());
            return None;
        }
    };
    let top = tower.height();
    let h = tower.lift(&h, top.max(h.level()));
    let rhs = tower.add(&tower.frobenius_iter(&h, rec.n), &g);
    let identity = tower.equal(&tower.base(&a), &rhs);
    report.record(
        format!("{name} identity"),
        identity,
        if identity {
            format!("a = h^(p^{}) + g exactly", rec.n)
        } else {
            "a - h^(p^N) - g is nonzero".to_string()
        },
    );
    for tp in tower.tracked() {
        let v = tower.valuation_at(&g, tp, top);
        report.record(
            format!("{name} valuation at {}", tp.place),
            v.at_least(0),
            format!("v(g) = {v}"),
        );
    }
    Some(CertifiedEntry { a, n: rec.n, h, g })
}

/// Checks a certificate from scratch. Recorded valuations are ignored.
pub fn verify_certificate(file: &CertificateFile) -> VerificationReport {
    verify_rebuild(file).0
}

/// [`verify_certificate`], also returning the re-parsed data whenever the
/// tower itself could be rebuilt (entries that fail to parse are dropped).
pub fn verify_rebuild(file: &CertificateFile) -> (VerificationReport, Option<Rebuilt>) {
    let mut report = VerificationReport::new();
    let Some(tower) = rebuild_tower(file, &mut report) else {
        return (report, None);
    };
    let mut entries = Vec::new();
    for (i, rec) in file.entries.iter().enumerate() {
        if let Some(e) = check_entry(&tower, i, rec, &mut report) {
            entries.push(e);
        }
    }
    (report, Some(Rebuilt { tower, entries }))
}

/// Checks a certificate given as JSON text; malformed input fails the report.
pub fn verify_json(text: &str) -> VerificationReport {
    match serde_json::from_str::<CertificateFile>(text) {
        Ok(file) => verify_certificate(&file),
        Err(e) => {
            let mut report = VerificationReport::new();
            report.record("format", false, format!("malformed certificate: {e}"));
            report
        }
    }
}

/// Whether the certificate covers every `(a, N)` pair, at every listed place.
pub fn check_coverage(
    rebuilt: &Rebuilt,
    wanted: &[(RationalFunction, u32)],
    places: &[Place],
    report: &mut VerificationReport,
) {
    for pl in places {
        report.record(
            format!("tracked {pl}"),
            rebuilt.tower.tracked_place(pl).is_some(),
            "place must be tracked by the tower",
        );
    }
    for (a, n) in wanted {
        let found = rebuilt.entries.iter().any(|e| &e.a == a && e.n >= *n);
        report.record(format!("covers {a}"), found, format!("entry with N >= {n}"));
    }
}
