use super::{SpinConnection, VectorForm};
use crate::calculus::{AdTable, Calculus, Coefficient, DiffForm, FormBasis, Rank3};
use crate::qparams::QParams;
use crate::scalars::{Field, ScalarError};

fn zeros<F: Field>() -> Rank3<F> {
    std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| F::zero())))
}

/// `t[i][j][k]`: the coefficient of `A_j ⊗ e_k` in `∇e_i = −Σ A_j ⊗ e_k ad_L(jk|i)`.
pub fn nabla_table<F: Field>(ad: &AdTable<F>) -> Rank3<F> {
    let mut out = zeros::<F>();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                out[i][j][k] = -ad.left[i][j][k].clone();
            }
        }
    }
    out
}

/// The expanded `∇e_i` as displayed, in the same layout as [`nabla_table`].
pub fn printed_nabla_table<F: Field>(
    p: &QParams<F>,
    ad: &AdTable<F>,
) -> Result<Rank3<F>, ScalarError> {
    use FormBasis::{A, B, C, D};
    let two_inv = p.two.inv()?;
    let q2 = &p.q2;
    let (nu, xi, la) = (&ad.nu, &ad.xi, &ad.lambda);
    let mut t = zeros::<F>();
    let mut set = |i: FormBasis, j: FormBasis, k: FormBasis, c: F| {
        let e = &mut t[i.index()][j.index()][k.index()];
        *e = e.clone() + c;
    };
    set(A, B, C, q2.clone());
    set(A, B, D, q2.clone() - xi);
    set(A, B, A, -nu.clone());
    set(D, C, A, q2.clone() + &(la.clone() * nu));
    set(D, C, B, q2.clone());
    set(D, C, D, la.clone() * xi);
    set(B, B, D, q2.clone());
    set(B, B, C, q2.clone());
    set(B, D, B, -(q2.clone() * &two_inv));
    set(B, A, B, -((F::one() + &p.qinv) * &two_inv));
    set(C, C, A, q2.clone());
    set(C, C, B, q2.clone());
    set(C, A, C, -(q2.clone() * &two_inv));
    set(C, C, C, p.q.clone() * &two_inv);
    Ok(t)
}

/// `s · (Σ x_j A_j) ∧ (Σ y_j A_j) ⊗ (Σ z_k e_k)`.
#[derive(Clone, Debug)]
pub struct QuadraticTerm<F> {
    pub scale: F,
    pub left: [F; 4],
    pub right: [F; 4],
    pub target: [F; 4],
}

/// The displayed `Riemann(e_i)`, which has no `dA` terms.
pub fn printed_riemann<F: Field>(
    p: &QParams<F>,
    ad: &AdTable<F>,
) -> Result<[Vec<QuadraticTerm<F>>; 4], ScalarError> {
    let two_inv = p.two.inv()?;
    let (q, q2) = (&p.q, &p.q2);
    let (nu, xi, la) = (&ad.nu, &ad.xi, &ad.lambda);
    let z = F::zero;
    let o = F::one;
    let a_b = [z(), o(), z(), z()];
    let a_c = [z(), z(), o(), z()];
    let q3t = q2.clone() * q * &two_inv;
    let qa_minus_c = [q.clone(), z(), -o(), z()];
    let d_combo = [-(o() + &p.qinv), z(), z(), q2.clone()];
    let q2t = q2.clone() * &two_inv;
    let nu_xi = [nu.clone(), z(), z(), xi.clone()];
    let term = |scale: F, left: &[F; 4], right: &[F; 4], target: [F; 4]| QuadraticTerm {
        scale,
        left: left.clone(),
        right: right.clone(),
        target,
    };
    Ok([
        vec![
            term(o(), &a_b, &a_c, [o(), o(), z(), z()]),
            term(-q3t.clone(), &a_b, &qa_minus_c, [z(), z(), o(), z()]),
            term(q2.clone() * la, &a_b, &a_c, nu_xi.clone()),
        ],
        vec![
            term(
                q2.clone(),
                &a_b,
                &a_c,
                [
                    q2.clone() + &(la.clone() * nu),
                    q2.clone(),
                    z(),
                    la.clone() * xi,
                ],
            ),
            term(-q3t, &a_b, &qa_minus_c, [z(), z(), o(), z()]),
        ],
        vec![
            term(
                q2.clone(),
                &a_c,
                &a_b,
                [-nu.clone(), z(), q2.clone(), q2.clone() - xi],
            ),
            term(q2.clone(), &a_c, &a_b, [z(), z(), q2.clone(), q2.clone()]),
            term(-q2t.clone(), &a_c, &d_combo, [z(), o(), z(), z()]),
        ],
        vec![
            term(o(), &a_c, &a_b, [z(), z(), o(), o()]),
            term(-q2.clone(), &a_c, &a_b, nu_xi),
            term(-q2t, &a_c, &d_combo, [z(), o(), z(), z()]),
        ],
    ])
}

fn combo<C: Coefficient>(conn: &SpinConnection<C::Scalar>, x: &[C::Scalar; 4]) -> DiffForm<C> {
    FormBasis::ALL.iter().fold(DiffForm::zero(), |acc, &j| {
        let c = &x[j.index()];
        if c.is_zero() {
            acc
        } else {
            acc.add(&conn.form::<C>(j).scale(c))
        }
    })
}

pub fn evaluate_quadratic<C: Coefficient>(
    cal: &Calculus<C>,
    conn: &SpinConnection<C::Scalar>,
    terms: &[QuadraticTerm<C::Scalar>],
) -> VectorForm<C> {
    let mut out: VectorForm<C> = std::array::from_fn(|_| DiffForm::zero());
    for t in terms {
        let w = cal
            .wedge(&combo(conn, &t.left), &combo(conn, &t.right))
            .scale(&t.scale);
        for (k, c) in t.target.iter().enumerate() {
            if !c.is_zero() {
                out[k] = out[k].add(&w.scale(c));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_nabla_agrees_only_on_e_a() {
        let p = QParams::generic();
        let ad = AdTable::printed(&p).unwrap();
        let c = nabla_table(&ad);
        let pr = printed_nabla_table(&p, &ad).unwrap();
        let agree: Vec<bool> = (0..4).map(|i| c[i] == pr[i]).collect();
        assert_eq!(agree, vec![true, false, false, false]);
    }
}
