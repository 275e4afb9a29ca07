//! A cover ramified only over the boundary on which a torsor extends.

use asdescent::cover::{audit_cover, build_cover, BoundarySpec};
use asdescent::descent::TorsorFile;
use asdescent::text::parse_place;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/torsor_alpha_p2.json").into());
    let file: TorsorFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let data = file.to_data()?;
    let field = data.field.clone();
    let boundary = ["t", "t - 1", "inf"].map(|s| parse_place(&field, s)).into_iter().collect::<Result<_, _>>()?;
    let samples = vec![parse_place(&field, "irr:t^2 + t + 1")?, parse_place(&field, "irr:t^3 + t + 1")?];
    let spec = BoundarySpec::new(boundary, samples)?;
    let plan = build_cover(&data, &spec)?;
    println!("tower: {} (degree {})", plan.certificate.tower, plan.certificate.tower.degree());
    for row in &plan.table {
        let above: Vec<String> = row.above.iter().map(|r| format!("{}x{:?}", r.count, r.report.case)).collect();
        println!("layer {} {:>16} {:?}: {}", row.layer, row.place, row.role, above.join(", "));
    }
    println!("audit: {}", audit_cover(&plan).passed);
    Ok(())
}
