use std::fmt::Display;

use num_complex::Complex64;
use thiserror::Error;

use super::{AuditReport, AuditRow, Verdict};
use crate::algebra::{
    audit_algebra, AlgebraElement, AlgebraError, Generator, Monomial, QMinusI, QPlusI,
    QuantumAlgebra, RootMode,
};
use crate::calculus::{
    bimodule_rules, compute_ad, pi_tilde, power_rules, AdTable, Calculus, CalculusError,
    Coefficient, DiffForm, FormBasis,
};
use crate::dirac::{
    a_slash, a_slash_printed, build_dirac, compare_spectrum, connection_scalars,
    pi_s_inverse_derived, pi_s_inverse_printed, DiracError, DiracOptions, ScalarPlacement,
    Spectrum,
};
use crate::fixtures::Fixtures;
use crate::linalg::LinalgError;
use crate::qparams::{QMode, QParams};
use crate::riemannian::{
    entry_label, evaluate_quadratic, nabla_table, printed_nabla_table, printed_riemann,
    regularity_defects, regularity_kernel, residuals, tensoriality_defects, wedge_eta,
    ConnectionSystem, Curvature, Metric, RiemannianError, SpinConnection, VectorForm,
};
use crate::scalars::{Field, GaussianRational, RationalFunction, ScalarError};

#[derive(Debug, Error)]
pub enum AuditError {
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

#[derive(Clone, Debug)]
pub struct AuditOptions {
    /// Largest matched distance accepted between computed and printed eigenvalues.
    pub spectrum_tolerance: f64,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            spectrum_tolerance: 1e-3,
        }
    }
}

const S_TRANSLATION: &str = "translation matrices";
const S_HOPF: &str = "hopf structure";
const S_BIMODULE: &str = "bimodule relations";
const S_CALCULUS: &str = "exterior derivative";
const S_AD: &str = "braided-lie constants";
const S_METRIC: &str = "metric";
const S_CONNECTION: &str = "spin connection";
const S_NABLA: &str = "covariant derivative";
const S_RIEMANN: &str = "riemann curvature";
const S_REGULARITY: &str = "regularity";
const S_DIRAC: &str = "dirac operator";
const S_SPECTRUM: &str = "spectrum";

fn unverifiable(
    section: &str,
    quantity: impl Into<String>,
    printed: impl Into<String>,
    why: &str,
) -> AuditRow {
    AuditRow::new(section, quantity, printed, why, Verdict::Unverifiable)
}

fn form_string<C: Coefficient>(f: &DiffForm<C>) -> String
where
    C: Display,
{
    if f.is_zero() {
        return "0".into();
    }
    f.terms()
        .map(|(w, c)| format!("({c})·{w}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn vector_string<C: Coefficient + Display>(v: &VectorForm<C>) -> String {
    let parts: Vec<String> = FormBasis::ALL
        .iter()
        .filter(|e| !v[e.index()].is_zero())
        .map(|e| format!("[{}] ⊗ {}", form_string(&v[e.index()]), e))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn complex_string(z: Complex64) -> String {
    format!("{:.6}{:+.6}i", z.re, z.im)
}

/// Every printed item paired with its recomputation for one q.
pub fn build_audit(
    fx: &Fixtures,
    mode: QMode,
    opts: &AuditOptions,
) -> Result<AuditReport, AuditError> {
    let mut rows = Vec::new();
    let mut assumptions = vec![
        "γ in the printed formulas is β*".to_string(),
        "Λ has the four displayed relations, three more from the connection proof, and e_a², e_b², e_c² = 0"
            .to_string(),
        "R_δ is taken equal to R_α as printed when assembling the Dirac operator".to_string(),
        "the scalar block of the Dirac operator follows the displayed operator matrix".to_string(),
    ];
    match mode {
        QMode::PlusI => root_sections::<QPlusI>(fx, &mut rows, &mut assumptions)?,
        QMode::MinusI => root_sections::<QMinusI>(fx, &mut rows, &mut assumptions)?,
        QMode::Generic => {
            no_algebra_rows(
                &mut rows,
                "the 16-dimensional algebra exists only at q = ±i",
            );
            let p = QParams::generic();
            let cal = Calculus::<RationalFunction>::generic();
            let ad = AdTable::printed(&p)?;
            ad_rows_unverifiable(&mut rows, &ad);
            forms_sections(fx, &p, &cal, &ad, &mut rows, &mut assumptions)?;
            let conn = SpinConnection::printed(&fx.connection, &p)?;
            curvature_rows(&cal, &ad, &conn, &mut rows)?;
        }
        QMode::One => {
            no_algebra_rows(
                &mut rows,
                "the 16-dimensional algebra exists only at q = ±i",
            );
            let p = QParams::new(GaussianRational::one())?;
            let ad = AdTable::printed(&p)?;
            ad_rows_unverifiable(&mut rows, &ad);
            let cal = Calculus::<GaussianRational>::new(p.clone());
            forms_sections(fx, &p, &cal, &ad, &mut rows, &mut assumptions)?;
            for i in FormBasis::ALL {
                rows.push(unverifiable(
                    S_RIEMANN,
                    format!("Riemann({i}) at the printed connection"),
                    "printed expansion",
                    "μ = 0, d is undefined",
                ));
            }
        }
    }
    if !mode.is_root_of_unity() {
        for name in ["α", "β", "γ", "δ"] {
            rows.push(unverifiable(
                S_DIRAC,
                format!("π̃S⁻¹{name} (coefficients of A(π̃S⁻¹{name}))"),
                "printed projection",
                "S⁻¹ is computed in the 16-dimensional algebra",
            ));
        }
        for (r, c) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            rows.push(unverifiable(
                S_DIRAC,
                format!("A̸^{r}_{c}"),
                "printed closed form",
                "S⁻¹ is computed in the 16-dimensional algebra",
            ));
        }
    }
    dirac_rows(fx, mode, opts, &mut rows)?;
    Ok(AuditReport {
        q: mode,
        fixture_origin: fx
            .origin
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| "embedded".into()),
        assumptions,
        rows,
    })
}

fn no_algebra_rows(rows: &mut Vec<AuditRow>, why: &str) {
    for name in [
        "R_α derived vs printed",
        "R_β derived vs printed",
        "R_β* derived vs printed",
        "R_δ = R_α",
    ] {
        rows.push(unverifiable(S_TRANSLATION, name, "printed matrix", why));
    }
    for name in [
        "coassociativity",
        "left counit",
        "right counit",
        "left antipode",
        "right antipode",
    ] {
        rows.push(unverifiable(S_HOPF, name, "holds", why));
    }
}

fn ad_rows_unverifiable<F: Field>(rows: &mut Vec<AuditRow>, ad: &AdTable<F>) {
    for (name, t) in [("ad_R", &ad.right), ("ad_L", &ad.left)] {
        for (i, j, k, v) in AdTable::entries(t) {
            rows.push(unverifiable(
                S_AD,
                format!("{name}({i}): {j}⊗{k}"),
                v.to_string(),
                "needs the 16-dimensional algebra",
            ));
        }
    }
    for (name, v) in [("ν", &ad.nu), ("ξ", &ad.xi), ("λ", &ad.lambda)] {
        rows.push(unverifiable(
            S_AD,
            name,
            v.to_string(),
            "needs the 16-dimensional algebra",
        ));
    }
}

fn root_sections<M: RootMode>(
    fx: &Fixtures,
    rows: &mut Vec<AuditRow>,
    assumptions: &mut Vec<String>,
) -> Result<(), AuditError> {
    let alg = QuantumAlgebra::<M>::from_fixtures(fx)?;
    let cal = Calculus::<AlgebraElement<M>>::root();
    let p = M::params().clone();
    assumptions.push(format!(
        "β* = {} and δ = {} in the derived algebra",
        alg.beta_star(),
        alg.delta()
    ));
    rows.extend(audit_algebra(&alg, &fx.translation)?);
    hopf_rows(&alg, rows);
    bimodule_rows(&alg, rows);
    calculus_rows(&alg, &cal, rows)?;
    let ad = AdTable::printed(&p)?;
    ad_rows(&alg, &cal, &ad, rows)?;
    let consts = Calculus::<GaussianRational>::constant(M::MODE).expect("root mode");
    forms_sections(fx, &p, &consts, &ad, rows, assumptions)?;
    let conn = SpinConnection::printed(&fx.connection, &p)?;
    curvature_rows(&consts, &ad, &conn, rows)?;

    let curv = Curvature::<AlgebraElement<M>>::new(&ad, &conn);
    let samples: Vec<AlgebraElement<M>> = Monomial::all()
        .map(|m| AlgebraElement::monomial(m.p, m.r))
        .collect();
    let bad = tensoriality_defects(&cal, &curv, &samples)?;
    let mut funcs: Vec<String> = bad.iter().map(|d| d.function.to_string()).collect();
    funcs.sort();
    funcs.dedup();
    rows.push(
        AuditRow::check(
            S_RIEMANN,
            "Riemann(f e_i) = f Riemann(e_i)",
            "holds (Riemann is a tensor)",
            if bad.is_empty() {
                "holds on all 16 monomials".to_string()
            } else {
                format!("fails for f ∈ {{{}}}", funcs.join(", "))
            },
            bad.is_empty(),
        )
        .with_details(
            bad.iter()
                .map(|d| {
                    format!(
                        "f = {}, e_i = {}: defect {}",
                        d.function,
                        d.form,
                        vector_string(&d.defect)
                    )
                })
                .collect(),
        ),
    );

    let kernel = regularity_kernel(&cal)?;
    let defects = regularity_defects(&cal, &conn, &kernel)?;
    rows.push(
        AuditRow::check(
            S_REGULARITY,
            "Σ A_i∧A_j ε(∂^i∂^j f) on ker ε ∩ ker π̃",
            "not zero in general (connection not regular)",
            format!(
                "nonzero on {} of {} kernel basis elements",
                defects.len(),
                kernel.len()
            ),
            !defects.is_empty(),
        )
        .with_details(
            defects
                .iter()
                .map(|d| format!("f = {}: {}", d.function, form_string(&d.value)))
                .collect(),
        ),
    );

    let derived = pi_s_inverse_derived(&alg, &cal)?;
    let printed = pi_s_inverse_printed(&p)?;
    for (g, name) in ["α", "β", "γ", "δ"].iter().enumerate() {
        let show = |v: &[GaussianRational; 4]| {
            form_string(&DiffForm::<GaussianRational>::from_components(v.clone()))
        };
        rows.push(AuditRow::check(
            S_DIRAC,
            format!("π̃S⁻¹{name} (coefficients of A(π̃S⁻¹{name}))"),
            show(&printed[g]),
            show(&derived[g]),
            printed[g] == derived[g],
        ));
    }
    let shown = a_slash_printed(&conn, &p)?;
    let from_derived = a_slash(&derived, &conn);
    for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        rows.push(AuditRow::check(
            S_DIRAC,
            format!("A̸^{}_{}", r + 1, c + 1),
            shown[r][c].to_string(),
            from_derived[r][c].to_string(),
            shown[r][c] == from_derived[r][c],
        ));
    }
    Ok(())
}

fn hopf_rows<M: RootMode>(alg: &QuantumAlgebra<M>, rows: &mut Vec<AuditRow>) {
    let h = alg.hopf_report();
    let mut push = |name: &str, fails: &[String]| {
        rows.push(
            AuditRow::check(
                S_HOPF,
                name,
                "holds",
                if fails.is_empty() {
                    "holds on all 16 monomials".to_string()
                } else {
                    format!("fails on {} of 16 monomials", fails.len())
                },
                fails.is_empty(),
            )
            .with_details(fails.to_vec()),
        );
    };
    push("coassociativity", &h.coassociativity_failures);
    push("left counit", &h.left_counit_failures);
    push("right counit", &h.right_counit_failures);
    push("left antipode", &h.left_antipode_failures);
    push("right antipode", &h.right_antipode_failures);
    rows.push(AuditRow::check(
        S_HOPF,
        "antipode invertible",
        "S⁻¹ used in the Dirac operator",
        format!("rank {} of 16", h.antipode_rank),
        h.antipode_rank == 16,
    ));
}

fn components_string<M: RootMode>(c: &[AlgebraElement<M>; 4]) -> String {
    let parts: Vec<String> = FormBasis::ALL
        .iter()
        .filter(|e| !c[e.index()].is_zero())
        .map(|e| format!("({}) {}", c[e.index()], e))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn bimodule_rows<M: RootMode>(alg: &QuantumAlgebra<M>, rows: &mut Vec<AuditRow>) {
    for r in bimodule_rules(alg) {
        let x = alg.generator(r.generator);
        let engine = AlgebraElement::commute_past(r.form, &x);
        let mut row = AuditRow::check(
            S_BIMODULE,
            format!("{} · {}", r.form, r.generator.symbol()),
            r.printed,
            components_string(&engine),
            engine == r.rhs,
        );
        if r.reassigned {
            row = row.with_details(vec![format!(
                "printed under another form; read as the {} rule",
                r.form
            )]);
        }
        if engine != r.rhs {
            row.details
                .push(format!("printed rule gives {}", components_string(&r.rhs)));
        }
        rows.push(row);
    }
    for l in power_rules(alg) {
        let x = alg.generator(l.generator).pow(l.power as u32);
        let engine = AlgebraElement::commute_past(l.form, &x);
        let row = match &l.rhs {
            None => AuditRow::new(
                S_BIMODULE,
                format!("{} (power {})", l.label, l.power),
                l.printed,
                components_string(&engine),
                Verdict::Unparseable,
            ),
            Some(rhs) => AuditRow::check(
                S_BIMODULE,
                format!("{} (power {})", l.label, l.power),
                l.printed,
                components_string(&engine),
                rhs == &engine,
            ),
        };
        rows.push(row);
    }
}

fn calculus_rows<M: RootMode>(
    alg: &QuantumAlgebra<M>,
    cal: &Calculus<AlgebraElement<M>>,
    rows: &mut Vec<AuditRow>,
) -> Result<(), AuditError> {
    let mut bad = Vec::new();
    for m in Monomial::all() {
        let f = AlgebraElement::<M>::monomial(m.p, m.r);
        for normalized in [true, false] {
            let dd = cal.exterior_d(
                &cal.exterior_d(&DiffForm::function(f.clone()), normalized)?,
                normalized,
            )?;
            if !dd.is_zero() && normalized {
                bad.push(f.to_string());
            }
        }
    }
    rows.push(
        AuditRow::check(
            S_CALCULUS,
            "d² f = 0 on basis monomials",
            "d² = 0",
            if bad.is_empty() {
                "holds".to_string()
            } else {
                format!("fails for {}", bad.join(", "))
            },
            bad.is_empty(),
        )
        .with_details(
            cal.relation_defects()
                .into_iter()
                .filter(|(_, _, d)| !d.is_zero())
                .map(|(r, g, d)| format!("({r}) · {}: {}", g.symbol(), form_string(&d)))
                .collect(),
        ),
    );
    for (g, printed) in [
        (Generator::Alpha, "q/[2]_q (q e_a − e_d)"),
        (Generator::Beta, "e_c"),
        (Generator::BetaStar, "e_b"),
        (Generator::Delta, "1/[2]_q (q² e_d − (1+q⁻¹) e_a)"),
    ] {
        let p = M::params();
        let two_inv = p.two.inv()?;
        let expect: [GaussianRational; 4] = match g {
            Generator::Alpha => {
                let c = p.q.clone() * &two_inv;
                [
                    c.clone() * &p.q,
                    GaussianRational::zero(),
                    GaussianRational::zero(),
                    -c,
                ]
            }
            Generator::Beta => [0, 0, 1, 0].map(GaussianRational::from_int),
            Generator::BetaStar => [0, 1, 0, 0].map(GaussianRational::from_int),
            Generator::Delta => [
                -((GaussianRational::one() + &p.qinv) * &two_inv),
                GaussianRational::zero(),
                GaussianRational::zero(),
                p.q2.clone() * &two_inv,
            ],
        };
        let got = pi_tilde(cal, &alg.generator(g))?;
        let show = |v: &[GaussianRational; 4]| {
            form_string(&DiffForm::<GaussianRational>::from_components(v.clone()))
        };
        rows.push(AuditRow::check(
            S_CALCULUS,
            format!("π̃({})", g.symbol()),
            format!("{printed} = {}", show(&expect)),
            show(&got),
            got == expect,
        ));
    }
    Ok(())
}

fn ad_rows<M: RootMode>(
    alg: &QuantumAlgebra<M>,
    cal: &Calculus<AlgebraElement<M>>,
    ad: &AdTable<GaussianRational>,
    rows: &mut Vec<AuditRow>,
) -> Result<(), AuditError> {
    let computed = compute_ad(alg, cal)?;
    for i in FormBasis::ALL {
        for j in FormBasis::ALL {
            for k in FormBasis::ALL {
                let pr = &ad.right[i.index()][j.index()][k.index()];
                let co = &computed[i.index()][j.index()][k.index()];
                if pr.is_zero() && co.is_zero() {
                    continue;
                }
                rows.push(AuditRow::check(
                    S_AD,
                    format!("ad_R({i}): {j}⊗{k}"),
                    pr.to_string(),
                    co.to_string(),
                    pr == co,
                ));
            }
        }
    }
    for (i, j, k, v) in AdTable::entries(&ad.left) {
        rows.push(unverifiable(
            S_AD,
            format!("ad_L({i}): {j}⊗{k}"),
            v.to_string(),
            "needs S⁻¹, which does not exist on the 16-dimensional algebra",
        ));
    }
    use FormBasis::{A, B, C, D};
    let q2 = M::params().q2.clone();
    let nu = computed[A.index()][A.index()][B.index()].clone();
    let xi = computed[A.index()][D.index()][B.index()].clone() + &q2;
    rows.push(AuditRow::check(
        S_AD,
        "ν",
        ad.nu.to_string(),
        nu.to_string(),
        nu == ad.nu,
    ));
    rows.push(AuditRow::check(
        S_AD,
        "ξ",
        ad.xi.to_string(),
        xi.to_string(),
        xi == ad.xi,
    ));
    let lnu = -(computed[D.index()][A.index()][C.index()].clone() + &q2);
    let lambda = if nu.is_zero() {
        None
    } else {
        Some(lnu.clone() * &nu.inv()?)
    };
    rows.push(match lambda {
        Some(l) => AuditRow::check(
            S_AD,
            "λ",
            ad.lambda.to_string(),
            l.to_string(),
            l == ad.lambda,
        ),
        None => AuditRow::new(
            S_AD,
            "λ",
            ad.lambda.to_string(),
            format!("λν = {lnu} with ν = 0"),
            Verdict::Mismatch,
        ),
    });
    Ok(())
}

/// Metric, Maurer–Cartan, the connection system and the closed forms,
/// for any field where the constant-coefficient calculus exists.
fn forms_sections<F>(
    fx: &Fixtures,
    p: &QParams<F>,
    cal: &Calculus<F>,
    ad: &AdTable<F>,
    rows: &mut Vec<AuditRow>,
    assumptions: &mut Vec<String>,
) -> Result<(), AuditError>
where
    F: Field + Coefficient<Scalar = F> + Display,
{
    assumptions.push(format!(
        "graded dimensions of Λ: {:?}",
        cal.exterior().graded_dimensions()
    ));
    let normalized = p.mu_inv().is_ok();
    nabla_rows(p, ad, rows)?;
    let mc = cal.maurer_cartan();
    for e in FormBasis::ALL {
        let printed = form_string(&mc[e.index()]);
        let quantity = format!("d {e}");
        rows.push(if normalized {
            let d = cal.exterior_d(&DiffForm::basis_form(e), true)?;
            AuditRow::check(
                S_CALCULUS,
                quantity,
                printed,
                form_string(&d),
                d == mc[e.index()],
            )
        } else {
            unverifiable(
                S_CALCULUS,
                quantity,
                printed,
                "μ = 0, the normalized d is undefined",
            )
        });
    }

    let eta = Metric::build(p)?;
    let w = wedge_eta(cal, &eta);
    rows.push(AuditRow::check(
        S_METRIC,
        "∧(η)",
        "0",
        form_string(&w),
        w.is_zero(),
    ));
    let zero = eta.add_theta_theta(&-eta.rho.clone());
    let tt = zero.add_theta_theta(&F::one());
    let wt = wedge_eta(cal, &tt.add_theta_theta(&-F::one()));
    let shift = wedge_eta(cal, &tt).sub(&wt);
    rows.push(AuditRow::check(
        S_METRIC,
        "∧(θ⊗θ)",
        "0 (any multiple of θ⊗θ may be added)",
        form_string(&shift),
        shift.is_zero(),
    ));

    let printed_conn = SpinConnection::printed(&fx.connection, p)?;
    if !normalized {
        for c in &fx.connection.coefficients {
            rows.push(unverifiable(
                S_CONNECTION,
                c.entry.clone(),
                c.printed.clone(),
                "μ = 0, the torsion equations need the normalized d",
            ));
        }
        return Ok(());
    }
    let sys = ConnectionSystem::assemble(cal, ad)?;
    let solved = sys.solve();
    let status = match &solved {
        Ok(_) => "unique solution".to_string(),
        Err(LinalgError::Inconsistent {
            rank,
            augmented_rank,
        }) => {
            format!("no solution: rank {rank}, augmented rank {augmented_rank}")
        }
        Err(e) => e.to_string(),
    };
    rows.push(AuditRow::check(
        S_CONNECTION,
        "torsion and cotorsion system",
        "unique solution",
        format!("{} equations in 16 unknowns, {status}", sys.equations()),
        solved.is_ok(),
    ));
    let konst = -(p.mu.clone() * &(F::one() + &(p.qinv.clone() * &p.qinv)));
    let implied = sys.implies(
        &[
            (FormBasis::A, FormBasis::A, -ad.nu.clone()),
            (FormBasis::D, FormBasis::A, -ad.xi.clone()),
        ],
        konst,
    );
    rows.push(AuditRow::check(
        S_CONNECTION,
        "−μ(1+q⁻²) − νA_a^a − ξA_d^a = 0",
        "one of the listed equations",
        if implied {
            "implied by the system"
        } else {
            "not implied by the system"
        },
        implied,
    ));
    for c in &fx.connection.coefficients {
        let (i, j) = c.indices().expect("validated on load");
        let (fi, fj) = (FormBasis::from_index(i), FormBasis::from_index(j));
        let printed_value = printed_conn.get(fi, fj);
        let row = match (&solved, c.corrupted) {
            (Ok(s), true) => AuditRow::new(
                S_CONNECTION,
                entry_label(fi, fj),
                c.printed.clone(),
                format!("solved {}", s.get(fi, fj)),
                Verdict::Unparseable,
            ),
            (Err(_), true) => AuditRow::new(
                S_CONNECTION,
                entry_label(fi, fj),
                c.printed.clone(),
                format!("{status}; literal reading gives {printed_value}"),
                Verdict::Unparseable,
            ),
            (Ok(s), false) => AuditRow::check(
                S_CONNECTION,
                entry_label(fi, fj),
                format!("{} = {printed_value}", c.printed),
                s.get(fi, fj).to_string(),
                s.get(fi, fj) == printed_value,
            ),
            (Err(_), false) => AuditRow::new(
                S_CONNECTION,
                entry_label(fi, fj),
                format!("{} = {printed_value}", c.printed),
                status.clone(),
                Verdict::Mismatch,
            ),
        };
        rows.push(match &c.reading {
            Some(r) => row.with_details(vec![r.clone()]),
            None => row,
        });
    }
    let (tor, cot) = residuals(cal, ad, &printed_conn)?;
    for (name, res) in [("torsion", &tor), ("cotorsion", &cot)] {
        let zero = res.iter().all(DiffForm::is_zero);
        rows.push(
            AuditRow::check(
                S_CONNECTION,
                format!("{name} of the printed connection"),
                "0",
                if zero {
                    "0".to_string()
                } else {
                    "nonzero".to_string()
                },
                zero,
            )
            .with_details(
                FormBasis::ALL
                    .iter()
                    .filter(|e| !res[e.index()].is_zero())
                    .map(|e| format!("{e}: {}", form_string(&res[e.index()])))
                    .collect(),
            ),
        );
    }

    Ok(())
}

fn nabla_rows<F: Field + Display>(
    p: &QParams<F>,
    ad: &AdTable<F>,
    rows: &mut Vec<AuditRow>,
) -> Result<(), AuditError> {
    let computed = nabla_table(ad);
    let printed = printed_nabla_table(p, ad)?;
    for i in FormBasis::ALL {
        let show = |t: &[[F; 4]; 4]| {
            let mut parts = Vec::new();
            for j in FormBasis::ALL {
                for k in FormBasis::ALL {
                    let c = &t[j.index()][k.index()];
                    if !c.is_zero() {
                        parts.push(format!("({c}) A_{}⊗{k}", j.letter()));
                    }
                }
            }
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        };
        let (c, pr) = (&computed[i.index()], &printed[i.index()]);
        rows.push(AuditRow::check(
            S_NABLA,
            format!("∇{i}"),
            show(pr),
            show(c),
            c == pr,
        ));
    }
    Ok(())
}

fn curvature_rows<F>(
    cal: &Calculus<F>,
    ad: &AdTable<F>,
    conn: &SpinConnection<F>,
    rows: &mut Vec<AuditRow>,
) -> Result<(), AuditError>
where
    F: Field + Coefficient<Scalar = F> + Display,
{
    let curv = Curvature::<F>::new(ad, conn);
    let printed = printed_riemann(cal.params(), ad)?;
    for i in FormBasis::ALL {
        let full = curv.riemann(cal, i)?;
        let expected = evaluate_quadratic(cal, conn, &printed[i.index()]);
        let mut quad: VectorForm<F> = std::array::from_fn(|_| DiffForm::zero());
        for l in 0..4 {
            for (m, q) in quad.iter_mut().enumerate() {
                *q = q.add(&cal.wedge(&curv.omega[i.index()][l], &curv.omega[l][m]));
            }
        }
        let quad_ok = quad == expected;
        rows.push(
            AuditRow::check(
                S_RIEMANN,
                format!("Riemann({i}) at the printed connection"),
                vector_string(&expected),
                vector_string(&full),
                full == expected,
            )
            .with_details(vec![format!(
                "quadratic part Σ Ω∧Ω alone {} the printed expansion",
                if quad_ok { "matches" } else { "differs from" }
            )]),
        );
    }
    Ok(())
}

fn dirac_rows(
    fx: &Fixtures,
    mode: QMode,
    opts: &AuditOptions,
    rows: &mut Vec<AuditRow>,
) -> Result<(), AuditError> {
    let p = QParams::generic();
    let conn = SpinConnection::printed(&fx.connection, &p)?;
    let a = a_slash_printed(&conn, &p)?;
    let shown = connection_scalars(&a, ScalarPlacement::Displayed);
    let direct = connection_scalars(&a, ScalarPlacement::Direct);
    for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        rows.push(AuditRow::check(
            S_DIRAC,
            format!("displayed c{}{} vs −A̸^{}_{}", r + 1, c + 1, r + 1, c + 1),
            shown[r][c].to_string(),
            direct[r][c].to_string(),
            shown[r][c] == direct[r][c],
        ));
    }

    if mode == QMode::Generic {
        for q in ["1", "i", "-i"] {
            rows.push(unverifiable(
                S_SPECTRUM,
                format!("spectrum q = {q}"),
                "printed list",
                "evaluated only at q = 1, i, -i",
            ));
        }
        return Ok(());
    }
    let reference = fx.spectrum(mode).ok_or_else(|| {
        DiracError::Fixture(crate::fixtures::FixtureError::Missing(format!(
            "spectrum q = {mode}"
        )))
    })?;
    let d = build_dirac(fx, mode, DiracOptions::default())?;
    let s = Spectrum::compute(&d)?;
    let report = compare_spectrum(&s.eigenvalues, &reference.values(), opts.spectrum_tolerance)?;
    let sum: Complex64 = reference.values().iter().sum();
    rows.push(AuditRow::check(
        S_SPECTRUM,
        format!("Σλ = tr D̸ at q = {mode}"),
        complex_string(sum),
        complex_string(d.matrix.trace()),
        (sum - d.matrix.trace()).norm()
            <= opts.spectrum_tolerance * reference.values().len() as f64,
    ));
    rows.push(
        AuditRow::check(
            S_SPECTRUM,
            format!("spectrum q = {mode}"),
            format!("{} printed eigenvalues", reference.eigenvalues.len()),
            format!(
                "max matched distance {:.3e}, mean {:.3e}, {} above {:.0e}",
                report.max_distance,
                report.mean_distance,
                report.excess.len(),
                opts.spectrum_tolerance
            ),
            report.within_tolerance(),
        )
        .with_details(
            report
                .excess
                .iter()
                .map(|m| {
                    format!(
                        "{} vs printed {}: {:.3e}",
                        complex_string(m.computed),
                        complex_string(m.reference),
                        m.distance
                    )
                })
                .collect(),
        ),
    );
    if mode == QMode::MinusI {
        let plus = Spectrum::compute(&build_dirac(fx, QMode::PlusI, DiracOptions::default())?)?;
        let r = compare_spectrum(&s.eigenvalues, &plus.conj(), 1e-9)?;
        rows.push(AuditRow::check(
            S_SPECTRUM,
            "spectrum(−i) = conj spectrum(i)",
            "the complex conjugate",
            format!("max matched distance {:.3e}", r.max_distance),
            r.within_tolerance(),
        ));
        if let Some(pi) = fx.spectrum(QMode::PlusI) {
            let conj: Vec<Complex64> = pi.values().iter().map(Complex64::conj).collect();
            let r = compare_spectrum(&reference.values(), &conj, 1e-9)?;
            rows.push(AuditRow::check(
                S_SPECTRUM,
                "printed list(−i) = conj printed list(i)",
                "the complex conjugate",
                format!("max matched distance {:.3e}", r.max_distance),
                r.within_tolerance(),
            ));
        }
    }
    let naive = Spectrum::compute(&build_dirac(
        fx,
        mode,
        DiracOptions {
            with_connection: false,
            ..DiracOptions::default()
        },
    )?)?;
    let r = compare_spectrum(&naive.eigenvalues, &s.eigenvalues, 1e-9)?;
    rows.push(AuditRow::check(
        S_SPECTRUM,
        format!("∂̸ alone differs from D̸ at q = {mode}"),
        "not the naive ∂",
        format!("max matched distance {:.3e}", r.max_distance),
        !r.within_tolerance(),
    ));
    Ok(())
}
