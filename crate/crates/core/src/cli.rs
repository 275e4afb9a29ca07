//! Command-line front end. JSON goes to stdout, an aligned table to stderr.
//!
//! Exit codes: 0 success, 1 verification failed, 2 usage or parse error,
//! 3 computation error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::artin_schreier::{as_reduce, classify_ramification};
use crate::base_fields::{Embedding, Field, FieldSpec, Place, Poly, RationalFunction};
use crate::cover::{audit_plan_file, build_cover, BoundarySpec, PlanFile};
use crate::descent::{
    kill_higher, normal_form, verify_certificate, CertificateFile, ExtensionCertificate, TermRecord, TorsorFile,
    VerificationReport,
};
use crate::error::Error;
use crate::selftest;
use crate::text::{format_fq, parse_modulus, parse_place, parse_rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "asdescent", version, about = "Artin-Schreier ramification, torsor normal forms and extension certificates over F_q(t)")]
struct Cli {
    #[command(flatten)]
    field: FieldArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Characteristic (2, 3, 5 or 7).
    #[arg(long, global = true, default_value_t = 2)]
    p: u32,
    /// Degree of F_q over F_p.
    #[arg(long, global = true, default_value_t = 1)]
    k: u32,
    /// Modulus of F_q as a polynomial in g, e.g. "g^2 + g + 1".
    #[arg(long, global = true)]
    modulus: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce f at a place and classify the place in x^p - x = f.
    Classify {
        /// Rational function in t, e.g. "1/t^3 + t".
        #[arg(long)]
        f: String,
        /// Place: "t - c", "inf" or "irr:<monic irreducible>".
        #[arg(long)]
        place: String,
    },
    /// Normal form of the class of a in K / (O_P + K^(p^N)).
    NormalForm {
        /// Rational function in t whose class is taken.
        #[arg(long)]
        a: String,
        /// Place: "t - c", "inf" or "irr:<monic irreducible>".
        #[arg(long)]
        place: String,
        /// Work modulo K^(p^N).
        #[arg(long = "N", default_value_t = 1)]
        n: u32,
    },
    /// Kill the class of a at one place and print the certificate.
    Kill {
        /// Rational function in t whose class is taken.
        #[arg(long)]
        a: String,
        /// Place: "t - c", "inf" or "irr:<monic irreducible>".
        #[arg(long)]
        place: String,
        /// Work modulo K^(p^N).
        #[arg(long = "N", default_value_t = 1)]
        n: u32,
        /// Work over F_(q^e) instead of F_q.
        #[arg(long)]
        extend_constants: Option<u32>,
        /// Also write the JSON output to this file.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Kill the class of a at several places with one shared tower.
    KillMulti {
        /// Rational function in t whose class is taken.
        #[arg(long)]
        a: String,
        /// Places separated by ';'.
        #[arg(long, value_delimiter = ';', num_args = 1..)]
        places: Vec<String>,
        /// Work modulo K^(p^N).
        #[arg(long = "N", default_value_t = 1)]
        n: u32,
        /// Work over F_(q^e) instead of F_q.
        #[arg(long)]
        extend_constants: Option<u32>,
        /// Also write the JSON output to this file.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Build a cover plan for a torsor file.
    Cover {
        /// Torsor file (JSON).
        #[arg(long)]
        torsor: std::path::PathBuf,
        /// Rational boundary places separated by ';'.
        #[arg(long, value_delimiter = ';', num_args = 1..)]
        boundary: Vec<String>,
        /// Interior places to tabulate, separated by ';'.
        #[arg(long, value_delimiter = ';', num_args = 0.., default_value = "")]
        samples: Vec<String>,
        /// Also write the JSON output to this file.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Verify a certificate or a cover plan; exit 0 iff every check passes.
    Verify {
        /// Certificate or cover plan (JSON).
        file: std::path::PathBuf,
    },
    /// Run the invariant suites at reduced sample counts (seed: ASDESCENT_SEED).
    Selftest {
        /// Random cases per suite.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::UnsupportedField(_)
            | Error::NotIrreducible(_)
            | Error::FieldMismatch
            | Error::UnsupportedPlaceDegree(_) => EXIT_USAGE,
            _ => EXIT_COMPUTE,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

type Out<'a> = (&'a mut dyn Write, &'a mut dyn Write);

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    match dispatch(&cli, (stdout, &mut *stderr)) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.msg);
            f.code
        }
    }
}

fn field_of(args: &FieldArgs) -> Result<Field, Failure> {
    let field = match &args.modulus {
        Some(m) => FieldSpec::with_modulus(args.p, parse_modulus(args.p, m)?)?,
        None => FieldSpec::new(args.p, args.k)?,
    };
    if field.k() != args.k && args.modulus.is_some() && args.k != 1 {
        return Err(usage(format!("--k {} disagrees with the modulus degree {}", args.k, field.k())));
    }
    Ok(field)
}

fn map_poly(p: &Poly, emb: &Embedding) -> Poly {
    Poly::new(emb.target(), p.coeffs().iter().map(|&c| emb.map(c)).collect())
}

fn map_rational(f: &RationalFunction, emb: &Embedding) -> Result<RationalFunction, Failure> {
    Ok(RationalFunction::new(map_poly(f.num(), emb), map_poly(f.den(), emb))?)
}

fn map_place(pl: &Place, emb: &Embedding) -> Result<Place, Failure> {
    match pl {
        Place::Infinity => Ok(Place::Infinity),
        Place::Finite(pi) => Place::finite(map_poly(pi, emb)).map_err(|_| {
            usage(format!("place {pl} splits over the extended field; give its rational factors instead"))
        }),
    }
}

/// Parses `a` and the places over `F_q`, then moves them to `F_{q^e}` if asked.
fn kill_inputs(
    base: &Field,
    a: &str,
    places: &[String],
    extend: Option<u32>,
) -> Result<(RationalFunction, Vec<Place>), Failure> {
    let a = parse_rational(base, a)?;
    let places = places
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_place(base, s))
        .collect::<Result<Vec<_>, _>>()?;
    match extend {
        None | Some(1) => Ok((a, places)),
        Some(0) => Err(usage("--extend-constants needs e >= 1")),
        Some(e) => {
            let (_, emb) = base.extend_constants(e)?;
            let places = places.iter().map(|p| map_place(p, &emb)).collect::<Result<_, _>>()?;
            Ok((map_rational(&a, &emb)?, places))
        }
    }
}

fn emit(out: &mut dyn Write, value: &str, path: Option<&std::path::Path>) -> Result<(), Failure> {
    if let Some(path) = path {
        std::fs::write(path, value).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    out.write_all(value.as_bytes())
        .map_err(|e| usage(format!("cannot write output: {e}")))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Column-aligned rows.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<w$}", w = widths[i]))
            .collect();
        s.push_str(line.join("  ").trim_end());
        s.push('\n');
    }
    s
}

fn certificate_table(cert: &ExtensionCertificate) -> String {
    let tower = &cert.tower;
    let mut rows = vec![vec!["layer".into(), "place".into(), "s".into(), "a".into(), "b".into(), "f".into()]];
    for tp in tower.tracked() {
        for (k, l) in tp.layers.iter().enumerate() {
            rows.push(vec![
                (k + 1).to_string(),
                tp.place.to_string(),
                l.s.to_string(),
                l.a.to_string(),
                l.b.to_string(),
                crate::artin_schreier::format_nested(tower.defining(k + 1)),
            ]);
        }
    }
    let mut s = format!("tower degree {}\n", tower.degree());
    if rows.len() > 1 {
        s.push_str(&table(&rows));
    }
    let mut erows = vec![vec!["a".into(), "N".into(), "place".into(), "v(g)".into()]];
    for e in &cert.entries {
        for tp in tower.tracked() {
            erows.push(vec![
                e.a.to_string(),
                e.n.to_string(),
                tp.place.to_string(),
                tower.valuation(&e.g, tp).to_string(),
            ]);
        }
    }
    if erows.len() > 1 {
        s.push_str(&table(&erows));
    }
    s
}

fn report_table(report: &VerificationReport) -> String {
    let mut rows = vec![vec!["check".into(), "result".into(), "detail".into()]];
    for c in &report.checks {
        rows.push(vec![
            c.name.clone(),
            if c.passed { "pass" } else { "FAIL" }.into(),
            c.detail.clone(),
        ]);
    }
    table(&rows)
}

fn dispatch(cli: &Cli, (out, err): Out<'_>) -> Result<i32, Failure> {
    match &cli.command {
        Command::Classify { f, place } => {
            let field = field_of(&cli.field)?;
            let f = parse_rational(&field, f)?;
            let place = parse_place(&field, place)?;
            let red = as_reduce(&f, &place)?;
            let report = classify_ramification(&red.reduced, &place)?;
            let v = json!({
                "f": f.to_string(),
                "place": place.to_string(),
                "g": red.g.to_string(),
                "reduced": red.reduced.to_string(),
                "report": report,
            });
            emit(out, &pretty(&v), None)?;
            let _ = write!(
                err,
                "{}",
                table(&[
                    vec!["case".into(), "e".into(), "f".into(), "g".into()],
                    vec![
                        format!("{:?}", report.case),
                        report.e.to_string(),
                        report.f.to_string(),
                        report.g.to_string()
                    ],
                ])
            );
            Ok(EXIT_OK)
        }
        Command::NormalForm { a, place, n } => {
            let field = field_of(&cli.field)?;
            let a = parse_rational(&field, a)?;
            let place = parse_place(&field, place)?;
            let nf = normal_form(&a, &place, *n)?;
            let terms: Vec<TermRecord> = nf
                .class
                .terms
                .iter()
                .map(|&(n, c)| TermRecord {
                    n,
                    c: format_fq(&field, c),
                })
                .collect();
            let v = json!({
                "a": a.to_string(),
                "place": place.to_string(),
                "N": n,
                "terms": terms,
                "u": nf.u.to_string(),
                "w": nf.w.to_string(),
                "extendable": nf.class.is_zero(),
            });
            emit(out, &pretty(&v), None)?;
            let mut rows = vec![vec!["n".into(), "c".into()]];
            rows.extend(terms.iter().map(|t| vec![t.n.to_string(), t.c.clone()]));
            let _ = write!(err, "{}", table(&rows));
            Ok(EXIT_OK)
        }
        Command::Kill {
            a,
            place,
            n,
            extend_constants,
            out: path,
        } => {
            let field = field_of(&cli.field)?;
            let (a, places) = kill_inputs(&field, a, std::slice::from_ref(place), *extend_constants)?;
            let cert = kill_higher(&a, *n, &places)?;
            emit(out, &cert.to_json(), path.as_deref())?;
            let _ = write!(err, "{}", certificate_table(&cert));
            Ok(EXIT_OK)
        }
        Command::KillMulti {
            a,
            places,
            n,
            extend_constants,
            out: path,
        } => {
            let field = field_of(&cli.field)?;
            let (a, places) = kill_inputs(&field, a, places, *extend_constants)?;
            if places.is_empty() {
                return Err(usage("--places needs at least one place"));
            }
            let cert = kill_higher(&a, *n, &places)?;
            emit(out, &cert.to_json(), path.as_deref())?;
            let _ = write!(err, "{}", certificate_table(&cert));
            Ok(EXIT_OK)
        }
        Command::Cover {
            torsor,
            boundary,
            samples,
            out: path,
        } => {
            let text = std::fs::read_to_string(torsor)
                .map_err(|e| usage(format!("cannot read {}: {e}", torsor.display())))?;
            let file: TorsorFile =
                serde_json::from_str(&text).map_err(|e| usage(format!("malformed torsor file: {e}")))?;
            let data = file.to_data()?;
            let parse_all = |v: &[String]| -> Result<Vec<Place>, Failure> {
                v.iter()
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| parse_place(&data.field, s).map_err(Failure::from))
                    .collect()
            };
            let spec = BoundarySpec::new(parse_all(boundary)?, parse_all(samples)?).map_err(|e| usage(e.to_string()))?;
            let plan = build_cover(&data, &spec)?;
            emit(out, &plan.to_json(), path.as_deref())?;
            let mut rows = vec![vec!["layer".into(), "place".into(), "role".into(), "above".into()]];
            for e in &plan.table {
                let above: Vec<String> = e
                    .above
                    .iter()
                    .map(|r| format!("{}x{:?}(e={},f={},g={})", r.count, r.report.case, r.report.e, r.report.f, r.report.g))
                    .collect();
                rows.push(vec![
                    e.layer.to_string(),
                    e.place.clone(),
                    format!("{:?}", e.role).to_lowercase(),
                    above.join(" "),
                ]);
            }
            let _ = write!(err, "{}{}", certificate_table(&plan.certificate), table(&rows));
            Ok(EXIT_OK)
        }
        Command::Verify { file } => {
            let bytes = std::fs::read(file).map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
            let report = verify_bytes(&bytes);
            emit(out, &(serde_json::to_string_pretty(&report).expect("serializable") + "\n"), None)?;
            let _ = write!(err, "{}", report_table(&report));
            Ok(if report.passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Selftest { samples } => {
            let seed = std::env::var("ASDESCENT_SEED")
                .ok()
                .map(|s| s.trim().parse::<u64>().map_err(|_| usage("ASDESCENT_SEED must be an unsigned integer")))
                .transpose()?
                .unwrap_or(0);
            let results = selftest::run_all(seed, *samples);
            let passed = results.iter().all(|r| r.passed);
            let v = json!({ "seed": seed, "passed": passed, "suites": results });
            emit(out, &pretty(&v), None)?;
            let mut rows = vec![vec!["suite".into(), "cases".into(), "result".into(), "detail".into()]];
            for r in &results {
                rows.push(vec![
                    r.name.clone(),
                    r.cases.to_string(),
                    if r.passed { "pass" } else { "FAIL" }.into(),
                    r.detail.clone(),
                ]);
            }
            let _ = write!(err, "{}", table(&rows));
            Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}

/// Verifies a certificate or a cover plan given as raw file bytes.
pub fn verify_bytes(bytes: &[u8]) -> VerificationReport {
    let fail = |msg: String| {
        let mut r = VerificationReport::new();
        r.record("format", false, msg);
        r
    };
    let value: serde_json::Value = match serde_json::from_slice(bytes) {
        Ok(v) => v,
        Err(e) => return fail(format!("not JSON: {e}")),
    };
    if value.get("ramification_table").is_some() {
        match serde_json::from_value::<PlanFile>(value) {
            Ok(plan) => audit_plan_file(&plan),
            Err(e) => fail(format!("malformed cover plan: {e}")),
        }
    } else {
        match serde_json::from_value::<CertificateFile>(value) {
            Ok(cert) => verify_certificate(&cert),
            Err(e) => fail(format!("malformed certificate: {e}")),
        }
    }
}
