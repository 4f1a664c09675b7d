//! Assembles the torsion/cotorsion system at q = i and compares it with the
//! closed-form connection.

use ncgq::calculus::{AdTable, Calculus, DiffForm};
use ncgq::fixtures::Fixtures;
use ncgq::qparams::{QMode, QParams};
use ncgq::riemannian::{residuals, ConnectionSystem, SpinConnection};
use ncgq::scalars::GaussianRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fx = Fixtures::load()?;
    let p = QParams::at(QMode::PlusI).expect("numeric mode");
    let cal = Calculus::<GaussianRational>::constant(QMode::PlusI).expect("root mode");
    let ad = AdTable::printed(&p)?;

    let sys = ConnectionSystem::assemble(&cal, &ad)?;
    println!(
        "{} equations, rank {}, augmented rank {}",
        sys.equations(),
        sys.rank(),
        sys.augmented_rank()
    );
    match sys.solve() {
        Ok(conn) => println!("solved: {:?}", conn.entries()),
        Err(e) => println!("no exact solution: {e}"),
    }

    let printed = SpinConnection::printed(&fx.connection, &p)?;
    for (k, v) in printed.entries() {
        println!("  {k} = {v}");
    }
    let (tor, cot) = residuals(&cal, &ad, &printed)?;
    let nonzero = tor
        .iter()
        .chain(cot.iter())
        .filter(|f| !DiffForm::is_zero(f))
        .count();
    println!("printed connection leaves {nonzero} of 8 residuals nonzero");
    Ok(())
}
