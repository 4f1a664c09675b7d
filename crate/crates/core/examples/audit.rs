//! Printed data against its recomputation, one verdict per item.

use ncgq::audit::{build_audit, AuditOptions, Verdict};
use ncgq::fixtures::Fixtures;
use ncgq::qparams::QMode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fx = Fixtures::load()?;
    let report = build_audit(&fx, QMode::PlusI, &AuditOptions::default())?;
    for section in report.sections() {
        let rows: Vec<_> = report
            .rows
            .iter()
            .filter(|r| r.section == section)
            .collect();
        let matched = rows.iter().filter(|r| r.verdict == Verdict::Match).count();
        println!("{section:<32} {matched:>3}/{:<3} match", rows.len());
    }
    for r in report
        .rows
        .iter()
        .filter(|r| r.verdict == Verdict::Unparseable)
    {
        println!("unparseable: {} ({})", r.quantity, r.printed);
    }
    Ok(())
}
