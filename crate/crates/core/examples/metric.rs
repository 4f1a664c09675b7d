//! The metric η and its image under ∧.

use ncgq::calculus::{Calculus, FormBasis};
use ncgq::qparams::{QMode, QParams};
use ncgq::riemannian::{wedge_eta, Metric};
use ncgq::scalars::GaussianRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = QParams::at(QMode::PlusI).expect("numeric mode");
    let cal = Calculus::<GaussianRational>::constant(QMode::PlusI).expect("root mode");
    let eta = Metric::build(&p)?;
    for j in FormBasis::ALL {
        for k in FormBasis::ALL {
            let c = eta.coeff(j, k);
            if !ncgq::scalars::Field::is_zero(c) {
                println!("η[{j}, {k}] = {c}");
            }
        }
    }
    println!("∧(η) = {}", wedge_eta(&cal, &eta));
    let shifted = eta.add_theta_theta(&GaussianRational::from_parts(5, 3, -1, 7));
    println!("∧(η + cθ⊗θ) = {}", wedge_eta(&cal, &shifted));
    Ok(())
}
