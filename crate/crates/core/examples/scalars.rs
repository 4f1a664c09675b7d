//! Exact arithmetic in ℚ(i) and ℚ(q), and specializing a closed form.

use ncgq::qparams::{QMode, QParams};
use ncgq::scalars::{Field, GaussianRational, RationalFunction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let i = GaussianRational::i();
    let z = GaussianRational::from_parts(3, 2, 1, 2);
    println!("({z}) · i = {}", z.clone() * &i);
    println!("1 / ({z}) = {}", z.inv()?);

    // ρ = (q − q² − q³) / (1 + q)
    let rho = RationalFunction::from_ints(&[0, 1, -1, -1], &[1, 1])?;
    println!("ρ(q) = {rho}");
    for mode in [QMode::One, QMode::PlusI, QMode::MinusI] {
        let p = QParams::at(mode).expect("numeric mode");
        println!("  q = {mode:>2}: ρ = {}, μ = {}", p.lift(&rho)?, p.mu);
    }

    let g = QParams::generic();
    println!("generic: μ = {}, [2]_q = {}", g.mu, g.two);
    Ok(())
}
