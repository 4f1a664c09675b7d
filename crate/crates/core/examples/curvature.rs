//! Riemann curvature of the closed-form connection, tensoriality and
//! regularity at q = i.

use ncgq::algebra::{AlgebraElement, Monomial, QPlusI};
use ncgq::calculus::{AdTable, Calculus, FormBasis};
use ncgq::fixtures::Fixtures;
use ncgq::qparams::{QMode, QParams};
use ncgq::riemannian::{
    regularity_defects, regularity_kernel, tensoriality_defects, Curvature, SpinConnection,
};
use ncgq::scalars::GaussianRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fx = Fixtures::load()?;
    let p = QParams::at(QMode::PlusI).expect("numeric mode");
    let ad = AdTable::printed(&p)?;
    let conn = SpinConnection::printed(&fx.connection, &p)?;

    let consts = Calculus::<GaussianRational>::constant(QMode::PlusI).expect("root mode");
    let curv = Curvature::<GaussianRational>::new(&ad, &conn);
    for i in FormBasis::ALL {
        let r = curv.riemann(&consts, i)?;
        let terms = r.iter().filter(|f| !f.is_zero()).count();
        println!("Riemann({i}) has {terms} nonzero components");
    }

    let cal = Calculus::<AlgebraElement<QPlusI>>::root();
    let curv = Curvature::<AlgebraElement<QPlusI>>::new(&ad, &conn);
    let samples: Vec<_> = Monomial::all()
        .map(|m| AlgebraElement::monomial(m.p, m.r))
        .collect();
    let mut failing: Vec<String> = tensoriality_defects(&cal, &curv, &samples)?
        .iter()
        .map(|d| d.function.to_string())
        .collect();
    failing.sort();
    failing.dedup();
    println!("Riemann(f e_i) ≠ f Riemann(e_i) for f ∈ {failing:?}");

    let kernel = regularity_kernel(&cal)?;
    let defects = regularity_defects(&cal, &conn, &kernel)?;
    println!("dim ker ε ∩ ker π̃ = {}", kernel.len());
    for d in &defects {
        println!("  f = {}: {}", d.function, d.value);
    }
    Ok(())
}
