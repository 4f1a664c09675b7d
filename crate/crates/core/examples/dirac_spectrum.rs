//! Builds the 32×32 Dirac operator and matches its spectrum against the
//! printed list.

use ncgq::dirac::{build_dirac, compare_spectrum, DiracOptions, Spectrum};
use ncgq::fixtures::Fixtures;
use ncgq::qparams::QMode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fx = Fixtures::load()?;
    for mode in [QMode::One, QMode::PlusI, QMode::MinusI] {
        let d = build_dirac(&fx, mode, DiracOptions::default())?;
        let s = Spectrum::compute(&d)?;
        println!(
            "q = {mode}: tr D̸ = {}, max residual {:.1e}",
            d.trace(),
            s.max_residual
        );
        if let Some(reference) = fx.spectrum(mode) {
            let m = compare_spectrum(&s.eigenvalues, &reference.values(), 1e-3)?;
            println!(
                "  printed list: max distance {:.3}, {} of {} above 1e-3",
                m.max_distance,
                m.excess.len(),
                m.pairs.len()
            );
        }
        let naive = Spectrum::compute(&build_dirac(
            &fx,
            mode,
            DiracOptions {
                with_connection: false,
                ..DiracOptions::default()
            },
        )?)?;
        let gap = compare_spectrum(&naive.eigenvalues, &s.eigenvalues, 0.0)?;
        println!("  ∂̸ alone is {:.3} away from D̸", gap.max_distance);
    }
    Ok(())
}
