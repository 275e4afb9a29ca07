//! Verifies a certificate or cover plan file, independently of how it was produced.

use asdescent::cover::{audit_plan_file, PlanFile};
use asdescent::descent::verify_json;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).ok_or("usage: verify FILE")?;
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let report = if value.get("ramification_table").is_some() {
        audit_plan_file(&serde_json::from_value::<PlanFile>(value)?)
    } else {
        verify_json(&text)
    };
    for c in &report.checks {
        println!("[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    println!("passed: {}", report.passed);
    std::process::exit(if report.passed { 0 } else { 1 });
}
