//! Runs the invariant suites the way `ncgq verify` does.

use ncgq::fixtures::Fixtures;
use ncgq::qparams::QMode;
use ncgq::verify::run_verify;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fx = Fixtures::load()?;
    let report = run_verify(&fx, QMode::PlusI, 1e-3)?;
    println!("{report}");
    Ok(())
}
