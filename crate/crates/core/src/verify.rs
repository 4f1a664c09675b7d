//! Invariant suites run by `ncgq verify`.

use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    AlgebraElement, AlgebraError, Generator, Monomial, QMinusI, QPlusI, QuantumAlgebra, RootMode,
};
use crate::calculus::{
    pass_table_holds_relations, AdTable, Calculus, CalculusError, Coefficient, DiffForm, FormBasis,
};
use crate::dirac::{
    build_dirac, compare_spectrum, gamma_roundtrip, DiracError, DiracOptions, Spectrum,
};
use crate::fixtures::Fixtures;
use crate::qparams::{QMode, QParams};
use crate::riemannian::{
    regularity_defects, regularity_kernel, residuals, tensoriality_defects, wedge_eta,
    ConnectionSystem, Curvature, Metric, RiemannianError, SpinConnection,
};
use crate::scalars::{Field, ScalarError};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("verify has no suite for q = {0}")]
    UnsupportedMode(QMode),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Riemannian(#[from] RiemannianError),
    #[error(transparent)]
    Dirac(#[from] DiracError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub q: QMode,
    pub tolerance: f64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self
            .checks
            .iter()
            .map(|c| c.name.chars().count())
            .max()
            .unwrap_or(0);
        let mut suite = "";
        for c in &self.checks {
            if c.suite != suite {
                writeln!(f, "[{}]", c.suite)?;
                suite = c.suite;
            }
            let mark = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  {mark} {}", c.name)?;
            } else {
                let pad = w - c.name.chars().count();
                writeln!(f, "  {mark} {}{}  {}", c.name, " ".repeat(pad), c.detail)?;
            }
        }
        let failed = self.failures().count();
        write!(
            f,
            "q = {}: {} checks, {} passed, {} failed",
            self.q,
            self.checks.len(),
            self.checks.len() - failed,
            failed
        )
    }
}

struct Suite<'a> {
    name: &'static str,
    out: &'a mut Vec<Check>,
}

impl Suite<'_> {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.out.push(Check {
            suite: self.name,
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn failures(&mut self, name: impl Into<String>, total: usize, failed: &[String]) {
        let detail = if failed.is_empty() {
            format!("{total}/{total}")
        } else {
            format!(
                "{}/{total}, fails on {}",
                total - failed.len(),
                abbreviate(failed)
            )
        };
        self.check(name, failed.is_empty(), detail);
    }
}

fn abbreviate(items: &[String]) -> String {
    const SHOWN: usize = 6;
    let mut s = items
        .iter()
        .take(SHOWN)
        .cloned()
        .collect::<Vec<_>>()
        .join(", ");
    if items.len() > SHOWN {
        let _ = write!(s, ", … ({} more)", items.len() - SHOWN);
    }
    s
}

/// Runs every suite that applies at `mode`. Spectral comparisons use `tol`.
pub fn run_verify(fx: &Fixtures, mode: QMode, tol: f64) -> Result<VerifyReport, VerifyError> {
    let mut checks = Vec::new();
    match mode {
        QMode::Generic => {
            let p = QParams::generic();
            scalar_suite(&p, &mut checks)?;
            let cal = Calculus::generic();
            forms_suite(fx, &p, &cal, &mut checks)?;
        }
        QMode::PlusI => root_suites::<QPlusI>(fx, tol, &mut checks)?,
        QMode::MinusI => root_suites::<QMinusI>(fx, tol, &mut checks)?,
        QMode::One => return Err(VerifyError::UnsupportedMode(mode)),
    }
    Ok(VerifyReport {
        q: mode,
        tolerance: tol,
        checks,
    })
}

fn scalar_suite<F: Field>(p: &QParams<F>, out: &mut Vec<Check>) -> Result<(), VerifyError> {
    let mut s = Suite {
        name: "scalars",
        out,
    };
    s.check("q·q⁻¹ = 1", (p.q.clone() * &p.qinv).is_one(), "");
    s.check("μ = 1 − q⁻²", p.mu == F::one() - p.qinv.pow(2)?, "");
    s.check("μ invertible", p.mu_inv().is_ok(), "");
    s.check("[2]_q invertible", p.two.inv().is_ok(), "");
    Ok(())
}

fn root_suites<M: RootMode>(
    fx: &Fixtures,
    tol: f64,
    out: &mut Vec<Check>,
) -> Result<(), VerifyError> {
    let p = M::params().clone();
    scalar_suite(&p, out)?;
    {
        let mut s = Suite {
            name: "scalars",
            out: &mut *out,
        };
        s.check("q⁴ = 1", p.q.pow(4)?.is_one(), "");
    }

    let alg = QuantumAlgebra::<M>::from_fixtures(fx)?;
    algebra_suite(&alg, out);
    let cal = Calculus::<AlgebraElement<M>>::root();
    calculus_suite(&alg, &cal, out)?;

    let consts = Calculus::constant(M::MODE).expect("root mode");
    forms_suite(fx, &p, &consts, out)?;

    let ad = AdTable::printed(&p)?;
    let conn = SpinConnection::printed(&fx.connection, &p)?;
    let curv = Curvature::<AlgebraElement<M>>::new(&ad, &conn);
    let samples: Vec<AlgebraElement<M>> = Monomial::all()
        .map(|m| AlgebraElement::monomial(m.p, m.r))
        .collect();
    let bad = tensoriality_defects(&cal, &curv, &samples)?;
    let mut funcs: Vec<String> = Vec::new();
    for d in &bad {
        let f = d.function.to_string();
        if !funcs.contains(&f) {
            funcs.push(f);
        }
    }
    let mut s = Suite {
        name: "riemannian",
        out: &mut *out,
    };
    s.failures("Riemann(f e_i) = f Riemann(e_i), f monomial", 16, &funcs);
    let kernel = regularity_kernel(&cal)?;
    let defects = regularity_defects(&cal, &conn, &kernel)?;
    s.check(
        "ker ε ∩ ker π̃ witnesses non-regularity",
        !defects.is_empty(),
        format!(
            "{} of {} kernel elements give a nonzero sum",
            defects.len(),
            kernel.len()
        ),
    );

    dirac_suite(fx, M::MODE, tol, out)
}

fn algebra_suite<M: RootMode>(alg: &QuantumAlgebra<M>, out: &mut Vec<Check>) {
    let mut s = Suite {
        name: "algebra",
        out,
    };
    for (name, r) in alg.relation_residuals() {
        s.check(
            name,
            r.is_zero(),
            if r.is_zero() {
                "0".to_string()
            } else {
                format!("residual {r}")
            },
        );
    }
    let bad: Vec<String> = pass_table_holds_relations::<M>()
        .into_iter()
        .filter(|(_, _, ok)| !ok)
        .map(|(e, r, _)| format!("{e}: {r}"))
        .collect();
    s.failures(
        "form/function rules respect the algebra relations",
        12,
        &bad,
    );
    let h = alg.hopf_report();
    s.failures("coassociativity", 16, &h.coassociativity_failures);
    s.failures("left counit", 16, &h.left_counit_failures);
    s.failures("right counit", 16, &h.right_counit_failures);
    s.failures("left antipode", 16, &h.left_antipode_failures);
    s.failures("right antipode", 16, &h.right_antipode_failures);
    s.check(
        "antipode invertible",
        h.antipode_rank == 16,
        format!("rank {}", h.antipode_rank),
    );
}

fn calculus_suite<M: RootMode>(
    alg: &QuantumAlgebra<M>,
    cal: &Calculus<AlgebraElement<M>>,
    out: &mut Vec<Check>,
) -> Result<(), VerifyError> {
    let mut s = Suite {
        name: "calculus",
        out,
    };
    let mut functions: Vec<(String, AlgebraElement<M>)> = Monomial::all()
        .map(|m| (m.to_string(), AlgebraElement::monomial(m.p, m.r)))
        .collect();
    for g in [Generator::BetaStar, Generator::Delta] {
        functions.push((g.symbol().to_string(), alg.generator(g)));
    }
    for normalized in [true, false] {
        let tag = if normalized {
            "μ⁻¹[θ, }"
        } else {
            "[θ, }"
        };
        let mut bad = Vec::new();
        for (name, f) in &functions {
            let df = cal.exterior_d(&DiffForm::function(f.clone()), normalized)?;
            if !cal.exterior_d(&df, normalized)?.is_zero() {
                bad.push(name.clone());
            }
        }
        s.failures(
            format!("d² = 0 on functions, d = {tag}"),
            functions.len(),
            &bad,
        );

        let mut bad = Vec::new();
        for (nf, f) in &functions[..16] {
            for (ng, g) in &functions[..16] {
                let (x, y) = (DiffForm::function(f.clone()), DiffForm::function(g.clone()));
                let lhs = cal.exterior_d(&cal.wedge(&x, &y), normalized)?;
                let rhs = cal
                    .wedge(&cal.exterior_d(&x, normalized)?, &y)
                    .add(&cal.wedge(&x, &cal.exterior_d(&y, normalized)?));
                if lhs != rhs {
                    bad.push(format!("({nf}, {ng})"));
                }
            }
        }
        s.failures(format!("Leibniz on monomial pairs, d = {tag}"), 256, &bad);
    }

    let gens = [
        Generator::Alpha,
        Generator::Beta,
        Generator::BetaStar,
        Generator::Delta,
    ];
    let mut bad = Vec::new();
    let mut total = 0;
    for k in 1..=2 {
        for w in cal.exterior().basis(k).to_vec() {
            let form = cal.word(&w, AlgebraElement::one());
            for x in gens {
                for y in gens {
                    total += 1;
                    let (fx, fy) = (alg.generator(x), alg.generator(y));
                    let left = cal.wedge(
                        &cal.wedge(&form, &DiffForm::function(fx.clone())),
                        &DiffForm::function(fy.clone()),
                    );
                    let right = cal.wedge(&form, &DiffForm::function(alg.multiply(&fx, &fy)));
                    if left != right {
                        bad.push(format!("({w})·{}·{}", x.symbol(), y.symbol()));
                    }
                }
            }
        }
    }
    s.failures("(ω·x)·y = ω·(xy) for basis ω of degree 1, 2", total, &bad);

    let defects: Vec<String> = cal
        .relation_defects()
        .into_iter()
        .filter(|(_, _, d)| !d.is_zero())
        .map(|(r, g, _)| format!("({r})·{}", g.symbol()))
        .collect();
    let n = cal.exterior().relations().len() * 2;
    s.failures("relations of Λ closed under right α, β", n, &defects);
    Ok(())
}

/// Checks that only need constant-coefficient forms.
fn forms_suite<F>(
    fx: &Fixtures,
    p: &QParams<F>,
    cal: &Calculus<F>,
    out: &mut Vec<Check>,
) -> Result<(), VerifyError>
where
    F: Field + Coefficient<Scalar = F>,
{
    let mut s = Suite { name: "forms", out };
    let dims: Vec<usize> = cal
        .exterior()
        .graded_dimensions()
        .into_iter()
        .take_while(|&d| d > 0)
        .collect();
    s.check(
        "Λ graded dimensions (1, 4, 6, 4, 1)",
        dims == [1, 4, 6, 4, 1],
        format!("{dims:?}"),
    );
    let mc = cal.maurer_cartan();
    let mut bad = Vec::new();
    for e in FormBasis::ALL {
        if cal.exterior_d(&DiffForm::basis_form(e), true)? != mc[e.index()] {
            bad.push(e.to_string());
        }
    }
    s.failures("d e_i equals the Maurer–Cartan values", 4, &bad);
    let mut bad = Vec::new();
    for e in FormBasis::ALL {
        let d = cal.exterior_d(&DiffForm::basis_form(e), true)?;
        if !cal.exterior_d(&d, true)?.is_zero() {
            bad.push(e.to_string());
        }
    }
    s.failures("d² e_i = 0", 4, &bad);

    let eta = Metric::build(p)?;
    let w = wedge_eta(cal, &eta);
    s.check(
        "∧(η) = 0",
        w.is_zero(),
        if w.is_zero() {
            "0".into()
        } else {
            w.to_string()
        },
    );
    let mut bad = Vec::new();
    for c in 1..=10 {
        let c = F::from_ratio(2 * c - 7, c);
        if wedge_eta(cal, &eta.add_theta_theta(&c)) != w {
            bad.push(c.to_string());
        }
    }
    s.failures("∧(η + cθ⊗θ) = ∧(η)", 10, &bad);

    let ad = AdTable::printed(p)?;
    let sys = ConnectionSystem::assemble(cal, &ad)?;
    let (rank, aug) = (sys.rank(), sys.augmented_rank());
    s.check(
        "torsion/cotorsion system has a unique solution",
        rank == 16 && aug == 16,
        format!(
            "{} equations, rank {rank}, augmented rank {aug}",
            sys.equations()
        ),
    );
    if let Ok(solved) = sys.solve() {
        let (t, c) = residuals(cal, &ad, &solved)?;
        let zero = t.iter().chain(c.iter()).all(DiffForm::is_zero);
        s.check("solved connection is torsion- and cotorsion-free", zero, "");
    }
    let printed = SpinConnection::printed(&fx.connection, p)?;
    let (t, c) = residuals(cal, &ad, &printed)?;
    let bad: Vec<String> = FormBasis::ALL
        .iter()
        .filter(|e| !t[e.index()].is_zero())
        .map(|e| format!("torsion {e}"))
        .chain(
            FormBasis::ALL
                .iter()
                .filter(|e| !c[e.index()].is_zero())
                .map(|e| format!("cotorsion {e}")),
        )
        .collect();
    s.failures("printed connection solves torsion and cotorsion", 8, &bad);
    Ok(())
}

fn dirac_suite(
    fx: &Fixtures,
    mode: QMode,
    tol: f64,
    out: &mut Vec<Check>,
) -> Result<(), VerifyError> {
    let mut s = Suite { name: "dirac", out };
    let bad: Vec<String> = FormBasis::ALL
        .iter()
        .filter(|&&e| gamma_roundtrip(e) != e)
        .map(|e| e.to_string())
        .collect();
    s.failures("gamma map round-trips", 4, &bad);

    let d = build_dirac(fx, mode, DiracOptions::default())?;
    let full = Spectrum::compute(&d)?;
    s.check(
        "eigenvalue residuals",
        full.max_residual <= 1e-9,
        format!("max {:.2e}", full.max_residual),
    );
    s.check(
        "Σλ = tr D̸",
        full.trace_defect <= 1e-9,
        format!("relative defect {:.2e}", full.trace_defect),
    );
    let other = if mode == QMode::PlusI {
        QMode::MinusI
    } else {
        QMode::PlusI
    };
    let mirror = Spectrum::compute(&build_dirac(fx, other, DiracOptions::default())?)?;
    let conj = compare_spectrum(&full.eigenvalues, &mirror.conj(), 1e-9)?;
    s.check(
        format!("spectrum(q = {mode}) = conj spectrum(q = {other})"),
        conj.within_tolerance(),
        format!("max distance {:.2e}", conj.max_distance),
    );
    let naive = Spectrum::compute(&build_dirac(
        fx,
        mode,
        DiracOptions {
            with_connection: false,
            ..DiracOptions::default()
        },
    )?)?;
    let diff = compare_spectrum(&naive.eigenvalues, &full.eigenvalues, 1e-9)?;
    s.check(
        "∂̸ alone has a different spectrum",
        !diff.within_tolerance(),
        format!("max distance {:.2e}", diff.max_distance),
    );
    if let Some(reference) = fx.spectrum(mode) {
        let r = compare_spectrum(&full.eigenvalues, &reference.values(), tol)?;
        s.check(
            "spectrum matches the printed list",
            r.within_tolerance(),
            format!(
                "max distance {:.3e}, {} above {tol:.0e}",
                r.max_distance,
                r.excess.len()
            ),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_suite_runs_forms_only() {
        let fx = Fixtures::embedded().unwrap();
        let r = run_verify(&fx, QMode::Generic, 1e-3).unwrap();
        assert!(r
            .checks
            .iter()
            .all(|c| c.suite == "scalars" || c.suite == "forms"));
        assert!(r
            .checks
            .iter()
            .any(|c| c.name == "∧(η + cθ⊗θ) = ∧(η)" && c.passed));
    }

    #[test]
    fn q_one_has_no_suite() {
        let fx = Fixtures::embedded().unwrap();
        assert!(matches!(
            run_verify(&fx, QMode::One, 1e-3),
            Err(VerifyError::UnsupportedMode(_))
        ));
    }
}
