//! Right multiplication of forms by functions.
//!
//! The engine moves e_i past a monomial α^p β^r by applying the α- and
//! β-rules letter by letter; those eight rules are compatible with
//! `βα = q²αβ`, `α⁴ = 1` and `β⁴ = 1`, so the result is well defined on the
//! 16-dimensional algebra. The β*- and δ-rules are kept as data for comparison.

use std::sync::OnceLock;

use super::FormBasis;
use crate::algebra::{AlgebraElement, Generator, Monomial, QuantumAlgebra, RootMode};
use crate::qparams::QMode;
use crate::scalars::{qint, Field, GaussianRational};

type Components<M> = [AlgebraElement<M>; 4];

fn zero4<M: RootMode>() -> Components<M> {
    std::array::from_fn(|_| AlgebraElement::zero())
}

fn comps<M: RootMode>(terms: Vec<(FormBasis, AlgebraElement<M>)>) -> Components<M> {
    let mut out = zero4();
    for (e, x) in terms {
        out[e.index()] = out[e.index()].clone() + x;
    }
    out
}

/// One generator-level rule `e · g = Σ c_j e_j`.
#[derive(Clone, Debug)]
pub struct BimoduleRule<M: RootMode> {
    pub form: FormBasis,
    pub generator: Generator,
    pub printed: &'static str,
    /// The printed rule was listed under a different form.
    pub reassigned: bool,
    pub rhs: Components<M>,
}

fn alpha_beta_rule<M: RootMode>(e: FormBasis, g: Generator) -> Components<M> {
    use FormBasis::*;
    let p = M::params();
    let (q, qi, q2, mu) = (&p.q, &p.qinv, &p.q2, &p.mu);
    let a = AlgebraElement::<M>::alpha();
    let b = AlgebraElement::<M>::beta();
    let mu2 = mu.clone() * mu;
    match (e, g) {
        (A, Generator::Alpha) => comps(vec![(A, a.scale(q))]),
        (B, Generator::Alpha) => comps(vec![(B, a.scale(qi))]),
        (C, Generator::Alpha) => comps(vec![(C, a.scale(q)), (A, b.scale(&(q2.clone() * mu)))]),
        (D, Generator::Alpha) => comps(vec![(D, a.scale(qi)), (B, b.scale(mu))]),
        (A, Generator::Beta) => comps(vec![(A, b.scale(qi))]),
        (B, Generator::Beta) => comps(vec![(B, b.scale(qi)), (A, a.scale(mu))]),
        (C, Generator::Beta) => comps(vec![(C, b.scale(q))]),
        (D, Generator::Beta) => comps(vec![
            (D, b.scale(q)),
            (C, a.scale(mu)),
            (A, b.scale(&(q.clone() * &mu2))),
        ]),
        _ => unreachable!("only α and β rules drive the engine"),
    }
}

/// All sixteen rules. γ in the printed list is β*; the second printed
/// `[e_d, δ]` rule is used for the pair (e_c, δ).
pub fn bimodule_rules<M: RootMode>(alg: &QuantumAlgebra<M>) -> Vec<BimoduleRule<M>> {
    use FormBasis::*;
    use Generator::{Alpha, Beta, BetaStar, Delta};
    let p = M::params();
    let (q, qi, q2, mu) = (&p.q, &p.qinv, &p.q2, &p.mu);
    let mu2 = mu.clone() * mu;
    let a = alg.generator(Alpha);
    let b = alg.generator(Beta);
    let g = alg.generator(BetaStar);
    let d = alg.generator(Delta);
    let dma = d.clone() - a.clone();
    let rule = |form, generator, printed, reassigned, rhs| BimoduleRule {
        form,
        generator,
        printed,
        reassigned,
        rhs,
    };
    let ab = |e, gen| alpha_beta_rule::<M>(e, gen);
    vec![
        rule(A, Alpha, "[e_a,α]_q = 0", false, ab(A, Alpha)),
        rule(A, Beta, "[e_a,β]_{q⁻¹} = 0", false, ab(A, Beta)),
        rule(
            A,
            BetaStar,
            "[e_a,γ]_q = μαe_b",
            false,
            comps(vec![(A, g.scale(q)), (B, a.scale(mu))]),
        ),
        rule(
            A,
            Delta,
            "[e_a,δ]_{q⁻¹} = μβe_b + qμ²αe_a",
            false,
            comps(vec![
                (A, d.scale(qi) + a.scale(&(q.clone() * &mu2))),
                (B, b.scale(mu)),
            ]),
        ),
        rule(B, Alpha, "[e_b,α]_{q⁻¹} = 0", false, ab(B, Alpha)),
        rule(B, Beta, "[e_b,β]_{q⁻¹} = μαe_a", false, ab(B, Beta)),
        rule(
            B,
            BetaStar,
            "[e_b,γ]_q = 0",
            false,
            comps(vec![(B, g.scale(q))]),
        ),
        rule(
            B,
            Delta,
            "[e_b,δ]_q = q²μγe_a",
            false,
            comps(vec![(B, d.scale(q)), (A, g.scale(&(q2.clone() * mu)))]),
        ),
        rule(C, Alpha, "[e_c,α]_q = q²μβe_a", false, ab(C, Alpha)),
        rule(C, Beta, "[e_c,β]_q = 0", false, ab(C, Beta)),
        rule(
            C,
            BetaStar,
            "[e_c,γ]_{q⁻¹} = μ(δ−α)e_a + μαe_d + qμ²βe_b",
            false,
            comps(vec![
                (C, g.scale(qi)),
                (A, dma.scale(mu)),
                (D, a.scale(mu)),
                (B, b.scale(&(q.clone() * &mu2))),
            ]),
        ),
        rule(
            C,
            Delta,
            "[e_d,δ]_{q⁻¹} = μ(q²−2)βe_a + q²μβe_d + qμ²αe_c",
            true,
            comps(vec![
                (C, d.scale(qi) + a.scale(&(q.clone() * &mu2))),
                (
                    A,
                    b.scale(&(mu.clone() * (q2.clone() - GaussianRational::from_int(2)))),
                ),
                (D, b.scale(&(q2.clone() * mu))),
            ]),
        ),
        rule(D, Alpha, "[e_d,α]_{q⁻¹} = μβe_b", false, ab(D, Alpha)),
        rule(D, Beta, "[e_d,β]_q = μαe_c + qμ²βe_a", false, ab(D, Beta)),
        rule(
            D,
            BetaStar,
            "[e_d,γ]_{q⁻¹} = μ(δ−α)e_b",
            false,
            comps(vec![(D, g.scale(qi)), (B, dma.scale(mu))]),
        ),
        rule(
            D,
            Delta,
            "[e_d,δ]_q = −μβe_b + qμ²(δ−α)e_a + μγe_c",
            false,
            comps(vec![
                (D, d.scale(q)),
                (B, b.scale(&-mu.clone())),
                (A, dma.scale(&(q.clone() * &mu2))),
                (C, g.scale(mu)),
            ]),
        ),
    ]
}

/// `Σ_j c_j e_j · g` through the given rule lookup.
fn step<M: RootMode>(
    x: &Components<M>,
    rule: impl Fn(FormBasis) -> Components<M>,
) -> Components<M> {
    let mut out = zero4::<M>();
    for (j, cj) in x.iter().enumerate() {
        if cj.is_zero() {
            continue;
        }
        let r = rule(FormBasis::from_index(j));
        for k in 0..4 {
            if !r[k].is_zero() {
                out[k] = out[k].clone() + cj * &r[k];
            }
        }
    }
    out
}

fn unit<M: RootMode>(e: FormBasis) -> Components<M> {
    let mut x = zero4::<M>();
    x[e.index()] = AlgebraElement::one();
    x
}

/// `e · g₁ g₂ ⋯ gₙ` by applying the printed generator rules one at a time.
pub fn commute_past_word<M: RootMode>(
    rules: &[BimoduleRule<M>],
    e: FormBasis,
    word: &[Generator],
) -> Components<M> {
    let lookup = |f: FormBasis, g: Generator| {
        rules
            .iter()
            .find(|r| r.form == f && r.generator == g)
            .map(|r| r.rhs.clone())
            .expect("a rule for every pair")
    };
    word.iter()
        .fold(unit::<M>(e), |x, &g| step(&x, |f| lookup(f, g)))
}

type RawTable = Vec<[Vec<GaussianRational>; 4]>;

fn build_table<M: RootMode>() -> RawTable {
    let mut table = Vec::with_capacity(64);
    for e in FormBasis::ALL {
        for m in Monomial::all() {
            let mut x = unit::<M>(e);
            for _ in 0..m.p {
                x = step(&x, |f| alpha_beta_rule::<M>(f, Generator::Alpha));
            }
            for _ in 0..m.r {
                x = step(&x, |f| alpha_beta_rule::<M>(f, Generator::Beta));
            }
            table.push(x.map(|c| c.coeffs().to_vec()));
        }
    }
    table
}

fn table<M: RootMode>() -> &'static RawTable {
    static PLUS: OnceLock<RawTable> = OnceLock::new();
    static MINUS: OnceLock<RawTable> = OnceLock::new();
    let cell = match M::MODE {
        QMode::MinusI => &MINUS,
        _ => &PLUS,
    };
    cell.get_or_init(build_table::<M>)
}

/// `e · x` on the monomial basis, through the α/β pass table.
pub(crate) fn pass_algebra<M: RootMode>(e: FormBasis, x: &AlgebraElement<M>) -> Components<M> {
    let t = table::<M>();
    let mut out: [Vec<GaussianRational>; 4] =
        std::array::from_fn(|_| vec![GaussianRational::zero(); 16]);
    for (m, c) in x.terms() {
        let row = &t[16 * e.index() + m.index()];
        for k in 0..4 {
            for (slot, v) in out[k].iter_mut().zip(&row[k]) {
                if !v.is_zero() {
                    *slot = slot.clone() + c.clone() * v;
                }
            }
        }
    }
    out.map(AlgebraElement::from_coeffs)
}

/// Whether the α/β rules respect `βα = q²αβ`, `α⁴ = 1` and `β⁴ = 1` for each
/// form, as `(form, relation, holds)`.
pub fn pass_table_holds_relations<M: RootMode>() -> Vec<(FormBasis, &'static str, bool)> {
    use Generator::{Alpha, Beta};
    let q2 = M::params().q2.clone();
    let run = |e: FormBasis, word: &[Generator]| {
        word.iter().fold(unit::<M>(e), |x, &g| {
            step(&x, |f| alpha_beta_rule::<M>(f, g))
        })
    };
    let mut out = Vec::new();
    for e in FormBasis::ALL {
        let ba = run(e, &[Beta, Alpha]);
        let ab = run(e, &[Alpha, Beta]).map(|c| c.scale(&q2));
        out.push((e, "βα = q²αβ", ba == ab));
        out.push((e, "α⁴ = 1", run(e, &[Alpha; 4]) == unit::<M>(e)));
        out.push((e, "β⁴ = 1", run(e, &[Beta; 4]) == unit::<M>(e)));
    }
    out
}

/// A printed power-law commutation line, instantiated at one exponent.
#[derive(Clone, Debug)]
pub struct PowerRule<M: RootMode> {
    pub label: &'static str,
    pub form: FormBasis,
    pub generator: Generator,
    pub power: u8,
    pub printed: &'static str,
    /// `None` when the printed line cannot be read.
    pub rhs: Option<Components<M>>,
}

/// The printed lines for exponents 1 to 3. γ is β*.
pub fn power_rules<M: RootMode>(alg: &QuantumAlgebra<M>) -> Vec<PowerRule<M>> {
    use FormBasis::*;
    use Generator::{Alpha, Beta, BetaStar, Delta};
    let p = M::params();
    let (q, q2, mu) = (&p.q, &p.q2, &p.mu);
    let qp = |n: i32| q.pow(n).expect("q is a unit");
    let bracket = |n: u32| qint(q2, n);
    let a = alg.generator(Alpha);
    let b = alg.generator(Beta);
    let g = alg.generator(BetaStar);
    let dma = alg.generator(Delta) - a.clone();
    let pw = |x: &AlgebraElement<M>, n: i32| x.pow(n.max(0) as u32);
    let mu2 = mu.clone() * mu;
    let mut out = Vec::new();
    for n in 1..=3i32 {
        let nn = n as u32;
        let mut push = |label, form, generator, printed, rhs| {
            out.push(PowerRule {
                label,
                form,
                generator,
                power: n as u8,
                printed,
                rhs,
            })
        };
        push(
            "e_a γ^s",
            A,
            BetaStar,
            "e_a γ^s = q^s γ^s e_a + μq^{s−1}[s]_{q²} αγ^{s−1} e_b",
            Some(comps(vec![
                (A, pw(&g, n).scale(&qp(n))),
                (
                    B,
                    (&a * &pw(&g, n - 1)).scale(&(mu.clone() * qp(n - 1) * bracket(nn))),
                ),
            ])),
        );
        push(
            "e_b γ^s",
            B,
            BetaStar,
            "e_b γ^s = q^s γ^s e_b",
            Some(comps(vec![(B, pw(&g, n).scale(&qp(n)))])),
        );
        push(
            "e_c α^p",
            C,
            Alpha,
            "e_c α^p = q^p α^p e_c + μq^{p+1}[p]_{q²} α^{p−1}β e_a",
            Some(comps(vec![
                (C, pw(&a, n).scale(&qp(n))),
                (
                    A,
                    (&pw(&a, n - 1) * &b).scale(&(mu.clone() * qp(n + 1) * bracket(nn))),
                ),
            ])),
        );
        push("e_c γ^s", C, BetaStar,
            "e_c γ^s = μq^{−1}[s]_{q²} γ(\\deg − q^{2(1−s)}α)e_a + ([s−1]_{q²}q^{−s}μ^s α^{s−1}(δ−α) + …)e_b + …",
            None);
        push(
            "e_c β^r",
            C,
            Beta,
            "e_c β^r = q^{−r} β^r e_c + μq^{1−r}[r]_{q²} αβ^{r−1} e_a",
            Some(comps(vec![
                (C, pw(&b, n).scale(&qp(-n))),
                (
                    A,
                    (&a * &pw(&b, n - 1)).scale(&(mu.clone() * qp(1 - n) * bracket(nn))),
                ),
            ])),
        );
        push(
            "e_b β^r",
            B,
            Beta,
            "e_b β^r = q^{−r} β^r e_b + q^{1−r}μ[r]_{q²} αβ^{r−1} e_a",
            Some(comps(vec![
                (B, pw(&b, n).scale(&qp(-n))),
                (
                    A,
                    (&a * &pw(&b, n - 1)).scale(&(mu.clone() * qp(1 - n) * bracket(nn))),
                ),
            ])),
        );
        push(
            "e_d α^p",
            D,
            Alpha,
            "e_d α^p = q^{−p} α^p e_d + q^{1−p}μ[p]_{q²} α^{p−1}β e_b",
            Some(comps(vec![
                (D, pw(&a, n).scale(&qp(-n))),
                (
                    B,
                    (&pw(&a, n - 1) * &b).scale(&(mu.clone() * qp(1 - n) * bracket(nn))),
                ),
            ])),
        );
        push(
            "e_d β^r",
            D,
            Beta,
            "e_d β^r = q^r β^r e_d + q^{r−1}μ[r]_{q²} αβ^{r−1} e_c + μ²q^{2−r}[r]_{q²} β^r e_a",
            Some(comps(vec![
                (D, pw(&b, n).scale(&qp(n))),
                (
                    C,
                    (&a * &pw(&b, n - 1)).scale(&(mu.clone() * qp(n - 1) * bracket(nn))),
                ),
                (A, pw(&b, n).scale(&(mu2.clone() * qp(2 - n) * bracket(nn)))),
            ])),
        );
        push(
            "e_d γ^s",
            D,
            BetaStar,
            "e_d γ^s = q^{−s} γ^s e_d + q^{1−s}μ[2]_{q²} γ^{s−1}(δ−α) e_b",
            Some(comps(vec![
                (D, pw(&g, n).scale(&qp(-n))),
                (
                    B,
                    (&pw(&g, n - 1) * &dma).scale(&(mu.clone() * qp(1 - n) * bracket(2))),
                ),
            ])),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{QMinusI, QPlusI};
    use crate::calculus::Coefficient;

    #[test]
    fn alpha_beta_rules_are_compatible() {
        for (e, rel, ok) in pass_table_holds_relations::<QPlusI>() {
            assert!(ok, "{e}: {rel}");
        }
        for (e, rel, ok) in pass_table_holds_relations::<QMinusI>() {
            assert!(ok, "{e}: {rel}");
        }
    }

    #[test]
    fn table_reproduces_generator_rules() {
        let alg = QuantumAlgebra::<QPlusI>::standard().unwrap();
        for r in bimodule_rules(&alg) {
            if matches!(r.generator, Generator::Alpha | Generator::Beta) {
                let x = alg.generator(r.generator);
                assert_eq!(AlgebraElement::commute_past(r.form, &x), r.rhs);
            }
        }
    }

    #[test]
    fn sixteen_rules_one_reassigned() {
        let alg = QuantumAlgebra::<QPlusI>::standard().unwrap();
        let rules = bimodule_rules(&alg);
        assert_eq!(rules.len(), 16);
        assert_eq!(rules.iter().filter(|r| r.reassigned).count(), 1);
    }

    #[test]
    fn e_b_beta_power_line_matches_engine() {
        let alg = QuantumAlgebra::<QPlusI>::standard().unwrap();
        for fx in power_rules(&alg)
            .into_iter()
            .filter(|f| f.label == "e_b β^r")
        {
            let x = alg.generator(Generator::Beta).pow(fx.power as u32);
            assert_eq!(Some(AlgebraElement::commute_past(FormBasis::B, &x)), fx.rhs);
        }
    }
}
