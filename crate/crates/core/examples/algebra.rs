//! The 16-dimensional algebra at q = i: products in normal form and the
//! Hopf-axiom report.

use ncgq::algebra::{AlgebraElement, Generator, QPlusI, QuantumAlgebra};
use ncgq::fixtures::Fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fx = Fixtures::load()?;
    let alg = QuantumAlgebra::<QPlusI>::from_fixtures(&fx)?;
    let (a, b) = (
        AlgebraElement::<QPlusI>::alpha(),
        AlgebraElement::<QPlusI>::beta(),
    );

    println!("β·α   = {}", &b * &a);
    println!("(αβ)² = {}", (&a * &b).pow(2));
    println!("β*    = {}", alg.generator(Generator::BetaStar));
    println!("δ     = {}", alg.generator(Generator::Delta));

    for (name, r) in alg.relation_residuals() {
        println!(
            "{:<20} {}",
            name,
            if r.is_zero() {
                "holds".to_string()
            } else {
                format!("residual {r}")
            }
        );
    }

    let h = alg.hopf_report();
    println!(
        "coassociativity fails on {} monomials",
        h.coassociativity_failures.len()
    );
    println!("left counit fails on {:?}", h.left_counit_failures);
    println!("antipode rank {}", h.antipode_rank);
    Ok(())
}
