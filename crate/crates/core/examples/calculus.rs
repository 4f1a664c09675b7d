//! Λ, the exterior derivative d = μ⁻¹[θ, } and where d² fails.

use ncgq::algebra::{AlgebraElement, Generator, QPlusI, QuantumAlgebra};
use ncgq::calculus::{Calculus, DiffForm, FormBasis};
use ncgq::qparams::QMode;
use ncgq::scalars::GaussianRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let consts = Calculus::<GaussianRational>::constant(QMode::PlusI).expect("root mode");
    println!(
        "graded dimensions of Λ: {:?}",
        consts.exterior().graded_dimensions()
    );
    for e in FormBasis::ALL {
        let d = consts.exterior_d(&DiffForm::basis_form(e), true)?;
        println!("d {e} = {d}");
    }

    let alg = QuantumAlgebra::<QPlusI>::standard()?;
    let cal = Calculus::<AlgebraElement<QPlusI>>::root();
    for g in [
        Generator::Alpha,
        Generator::Beta,
        Generator::BetaStar,
        Generator::Delta,
    ] {
        let f = DiffForm::function(alg.generator(g));
        let df = cal.exterior_d(&f, true)?;
        let ddf = cal.exterior_d(&df, true)?;
        println!("d{} = {df}", g.symbol());
        if !ddf.is_zero() {
            println!("  d²{} = {ddf}", g.symbol());
        }
    }
    Ok(())
}
