//! Classes of `alpha_{p^N}`-torsors at a place, their normal forms, and
//! certificates that they extend after an Artin-Schreier tower.

pub mod brute;
pub mod certificate;
pub mod kill;
pub mod normal_form;
pub mod torsor;

pub use brute::{brute_force_membership, MAX_CANDIDATES};
pub use certificate::{
    check_coverage, verify_certificate, verify_json, verify_rebuild, CertificateFile, CertifiedEntry, Check,
    ExtensionCertificate, FieldRecord, VerificationReport, CERT_FORMAT,
};
pub use kill::{
    kill_class, kill_class_multi, kill_entries, kill_higher, kill_presentation, strip_pth_powers, Decomposition,
};
pub use normal_form::{choose_s, is_extendable, normal_form, NormalForm, QClass, TermRecord};
pub use torsor::{Component, TorsorData, TorsorFile, UnipotentPresentation};
