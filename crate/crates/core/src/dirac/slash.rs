use serde::Serialize;

use crate::algebra::{AlgebraElement, QuantumAlgebra, RootMode};
use crate::calculus::{pi_tilde, Calculus, CalculusError, FormBasis};
use crate::qparams::QParams;
use crate::riemannian::SpinConnection;
use crate::scalars::{Field, GaussianRational, ScalarError};

/// 2×2 matrix in spinor indices `[α][β]`.
pub type Spinor2<F> = [[F; 2]; 2];

/// `π̃S⁻¹t^γ_β` as coefficients on `e_a..e_d`, one row per generator in
/// `α, β, β*, δ` order.
pub type PiSInverse<F> = [[F; 4]; 4];

fn k_factor<F: Field>(p: &QParams<F>) -> Result<F, ScalarError> {
    Ok((F::one() + &p.qinv - &p.q) * &p.two.inv()?)
}

/// The proof values `A(π̃S⁻¹α) = −A_a + kA_d`, `A(π̃S⁻¹β) = −q²A_c`,
/// `A(π̃S⁻¹γ) = −q²A_b`, `A(π̃S⁻¹δ) = (q²A_a − qA_d)/[2]_q` with
/// `k = (1 + q⁻¹ − q)/(1 + q)`.
pub fn pi_s_inverse_printed<F: Field>(p: &QParams<F>) -> Result<PiSInverse<F>, ScalarError> {
    let z = F::zero;
    let two_inv = p.two.inv()?;
    Ok([
        [-F::one(), z(), z(), k_factor(p)?],
        [z(), z(), -p.q2.clone(), z()],
        [z(), -p.q2.clone(), z(), z()],
        [p.q2.clone() * &two_inv, z(), z(), -(p.q.clone() * &two_inv)],
    ])
}

/// `π̃` of `S⁻¹(u) = [[δ, −q⁻²β], [−q²β*, α]]`, the inverse of the antipode
/// on the generator matrix, in the derived algebra.
pub fn pi_s_inverse_derived<M: RootMode>(
    alg: &QuantumAlgebra<M>,
    cal: &Calculus<AlgebraElement<M>>,
) -> Result<PiSInverse<GaussianRational>, CalculusError> {
    let p = M::params();
    let qi2 = p.qinv.clone() * &p.qinv;
    let images = [
        alg.delta().clone(),
        AlgebraElement::beta().scale(&-qi2),
        alg.beta_star().scale(&-p.q2.clone()),
        AlgebraElement::alpha(),
    ];
    let [a, b, c, d] = images;
    Ok([
        pi_tilde(cal, &a)?,
        pi_tilde(cal, &b)?,
        pi_tilde(cal, &c)?,
        pi_tilde(cal, &d)?,
    ])
}

/// `A̸^α_β = Σ_γ A(π̃S⁻¹t^γ_β)^α_γ` with `γ(e_i)` the identity conversion.
pub fn a_slash<F: Field>(pis: &PiSInverse<F>, conn: &SpinConnection<F>) -> Spinor2<F> {
    let mut out: Spinor2<F> = std::array::from_fn(|_| std::array::from_fn(|_| F::zero()));
    for (alpha, row) in out.iter_mut().enumerate() {
        for (beta, entry) in row.iter_mut().enumerate() {
            for gamma in 0..2 {
                let t = &pis[2 * gamma + beta];
                let j = FormBasis::from_endo(alpha, gamma);
                for i in FormBasis::ALL {
                    let c = &t[i.index()];
                    if !c.is_zero() {
                        *entry = entry.clone() + c.clone() * conn.get(i, j);
                    }
                }
            }
        }
    }
    out
}

/// The four closed-form `A̸` entries of the proof.
pub fn a_slash_printed<F: Field>(
    conn: &SpinConnection<F>,
    p: &QParams<F>,
) -> Result<Spinor2<F>, ScalarError> {
    use FormBasis::{A, B, C, D};
    let k = k_factor(p)?;
    let two_inv = p.two.inv()?;
    let a = |i, j| conn.get(i, j).clone();
    let q2t = p.q2.clone() * &two_inv;
    let qt = p.q.clone() * &two_inv;
    Ok([
        [
            k.clone() * &a(D, A) - a(A, A) - p.q2.clone() * &a(B, B),
            q2t.clone() * &a(A, B) - qt.clone() * &a(D, B),
        ],
        [
            k * &a(D, C) - a(A, C),
            q2t * &a(A, D) - qt * &a(D, D) - p.q2.clone() * &a(C, C),
        ],
    ])
}

/// How the scalar block enters `D̸ = [[∂^a + c₁₁, ∂^b + c₁₂], [∂^c + c₂₁, ∂^d + c₂₂]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarPlacement {
    /// The displayed operator: off-diagonal entries of `−A̸` swapped.
    Displayed,
    /// `c = −A̸` entrywise.
    Direct,
}

/// The scalar block `c` from `A̸`.
pub fn connection_scalars<F: Field>(
    a_slash: &Spinor2<F>,
    placement: ScalarPlacement,
) -> Spinor2<F> {
    let neg = |x: &F| -x.clone();
    match placement {
        ScalarPlacement::Direct => a_slash.clone().map(|r| r.map(|x| -x)),
        ScalarPlacement::Displayed => [
            [neg(&a_slash[0][0]), neg(&a_slash[1][0])],
            [neg(&a_slash[0][1]), neg(&a_slash[1][1])],
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QPlusI;
    use crate::fixtures::Fixtures;
    use crate::qparams::QMode;

    #[test]
    fn printed_scalars_at_one() {
        let fx = Fixtures::embedded().unwrap();
        let p = QParams::new(GaussianRational::one()).unwrap();
        let conn = SpinConnection::printed(&fx.connection, &p).unwrap();
        let c = connection_scalars(
            &a_slash_printed(&conn, &p).unwrap(),
            ScalarPlacement::Displayed,
        );
        assert_eq!(c[0][0], GaussianRational::from_int(4));
        assert_eq!(c[1][1], GaussianRational::from_int(6));
    }

    #[test]
    fn printed_entries_follow_from_printed_projections() {
        let fx = Fixtures::embedded().unwrap();
        for p in [
            QParams::new(GaussianRational::one()).unwrap(),
            QParams::at(QMode::PlusI).unwrap(),
        ] {
            let conn = SpinConnection::printed(&fx.connection, &p).unwrap();
            let from = a_slash(&pi_s_inverse_printed(&p).unwrap(), &conn);
            assert_eq!(from, a_slash_printed(&conn, &p).unwrap());
        }
    }

    #[test]
    fn derived_projection_agrees_on_beta_and_beta_star_only() {
        let alg = QuantumAlgebra::<QPlusI>::standard().unwrap();
        let cal = Calculus::<AlgebraElement<QPlusI>>::root();
        let d = pi_s_inverse_derived(&alg, &cal).unwrap();
        let pr = pi_s_inverse_printed(&QParams::at(QMode::PlusI).unwrap()).unwrap();
        let agree: Vec<bool> = (0..4).map(|g| d[g] == pr[g]).collect();
        assert!(agree[1]);
        assert!(d[0].iter().all(Field::is_zero));
        assert!(!agree[0]);
    }
}
