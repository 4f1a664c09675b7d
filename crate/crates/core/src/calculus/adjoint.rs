use super::form::Calculus;
use super::{CalculusError, FormBasis};
use crate::algebra::{AlgebraElement, Generator, QuantumAlgebra, RootMode};
use crate::qparams::QParams;
use crate::scalars::{Field, GaussianRational, RationalFunction, ScalarError};

/// `t[i][j][k]`: the coefficient of `e_j ⊗ e_k` in `ad(e_i)`.
pub type Rank3<F> = [[[F; 4]; 4]; 4];

fn zeros<F: Field>() -> Rank3<F> {
    std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| F::zero())))
}

/// The printed braided-Lie constants.
#[derive(Clone, Debug)]
pub struct AdTable<F> {
    pub right: Rank3<F>,
    pub left: Rank3<F>,
    pub nu: F,
    pub xi: F,
    pub lambda: F,
}

impl AdTable<RationalFunction> {
    pub fn nu_closed_form() -> RationalFunction {
        RationalFunction::from_ints(&[34, 7, -24, 1], &[-30, -50, -15, 5]).expect("nonzero")
    }

    pub fn xi_closed_form() -> RationalFunction {
        RationalFunction::from_ints(&[-13, -15, 0, 1], &[-30, -50, -15, 5]).expect("nonzero")
    }

    pub fn lambda_closed_form() -> RationalFunction {
        RationalFunction::from_ints(&[1, 2, 2], &[-2, 0, 2, 1]).expect("nonzero")
    }
}

impl<F: Field> AdTable<F> {
    pub fn printed(p: &QParams<F>) -> Result<Self, ScalarError> {
        use FormBasis::{A, B, C, D};
        let nu = p.lift(&AdTable::nu_closed_form())?;
        let xi = p.lift(&AdTable::xi_closed_form())?;
        let lambda = p.lift(&AdTable::lambda_closed_form())?;
        let two_inv = p.two.inv()?;
        let one = F::one();
        let mq2 = -p.q2.clone();
        let q2_two = p.q2.clone() * &two_inv;
        let q_two = p.q.clone() * &two_inv;
        let oq_two = (one.clone() + &p.qinv) * &two_inv;
        let mut right = zeros::<F>();
        let mut left = zeros::<F>();
        let set = |t: &mut Rank3<F>, i: FormBasis, j: FormBasis, k: FormBasis, c: F| {
            let e = &mut t[i.index()][j.index()][k.index()];
            *e = e.clone() + c;
        };
        set(&mut right, A, C, B, one.clone());
        set(&mut right, A, D, B, mq2.clone());
        set(&mut right, A, A, B, nu.clone());
        set(&mut right, A, D, B, xi.clone());
        set(&mut right, D, A, C, mq2.clone());
        set(&mut right, D, B, C, one.clone());
        set(&mut right, D, A, C, -(lambda.clone() * &nu));
        set(&mut right, D, D, C, -(lambda.clone() * &xi));
        set(&mut right, B, B, A, q2_two.clone());
        set(&mut right, B, B, D, -q_two.clone());
        set(&mut right, B, C, B, mq2.clone());
        set(&mut right, B, D, B, one.clone());
        set(&mut right, C, A, C, one.clone());
        set(&mut right, C, B, C, mq2.clone());
        set(&mut right, C, C, D, q2_two.clone());
        set(&mut right, C, C, A, -oq_two.clone());

        set(&mut left, A, B, C, mq2.clone());
        set(&mut left, A, B, D, mq2.clone());
        set(&mut left, A, B, A, nu.clone());
        set(&mut left, A, B, D, xi.clone());
        set(&mut left, D, C, A, mq2.clone());
        set(&mut left, D, C, B, mq2.clone());
        set(&mut left, D, C, A, lambda.clone() * &nu);
        set(&mut left, D, C, D, lambda.clone() * &xi);
        set(&mut left, B, B, D, mq2.clone());
        set(&mut left, B, B, C, mq2.clone());
        set(&mut left, B, D, B, q2_two.clone());
        set(&mut left, B, A, B, -oq_two);
        set(&mut left, C, C, A, mq2.clone());
        set(&mut left, C, C, B, mq2);
        set(&mut left, C, A, C, q2_two);
        set(&mut left, C, D, C, -q_two);
        Ok(AdTable {
            right,
            left,
            nu,
            xi,
            lambda,
        })
    }

    /// Nonzero `(i, j, k, value)` entries of one table.
    pub fn entries(t: &Rank3<F>) -> Vec<(FormBasis, FormBasis, FormBasis, F)> {
        let mut out = Vec::new();
        for i in FormBasis::ALL {
            for j in FormBasis::ALL {
                for k in FormBasis::ALL {
                    let v = &t[i.index()][j.index()][k.index()];
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }
}

/// `π̃(f) = Σ_i e_i ε(∂^i f)` with the normalized partials.
pub fn pi_tilde<M: RootMode>(
    cal: &Calculus<AlgebraElement<M>>,
    f: &AlgebraElement<M>,
) -> Result<[GaussianRational; 4], CalculusError> {
    Ok(cal.partials(f, true)?.map(|c| c.counit()))
}

const ENDO: [[Generator; 2]; 2] = [
    [Generator::Alpha, Generator::Beta],
    [Generator::BetaStar, Generator::Delta],
];

/// `ad_R(e_α^β) = Σ e_γ^δ ⊗ π̃(t^γ_α S t^β_δ)` from the derived algebra.
///
/// Only the right table is computed: the left one needs `S⁻¹`, which does not
/// exist on the 16-dimensional algebra.
pub fn compute_ad<M: RootMode>(
    alg: &QuantumAlgebra<M>,
    cal: &Calculus<AlgebraElement<M>>,
) -> Result<Rank3<GaussianRational>, CalculusError> {
    let mut out = zeros::<GaussianRational>();
    for i in FormBasis::ALL {
        let (a, b) = i.endo();
        for j in FormBasis::ALL {
            let (g, d) = j.endo();
            let x = &alg.generator(ENDO[g][a]) * &alg.antipode_generator(ENDO[b][d]);
            let pi = pi_tilde(cal, &x)?;
            for (k, v) in pi.into_iter().enumerate() {
                out[i.index()][j.index()][k] = v;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QPlusI;
    use crate::qparams::QMode;

    #[test]
    fn lambda_at_i() {
        let p = QParams::at(QMode::PlusI).unwrap();
        let t = AdTable::printed(&p).unwrap();
        assert_eq!(t.lambda, GaussianRational::from_parts(2, 17, -9, 17));
        assert!(t.right[0][2][1].is_one());
    }

    #[test]
    fn printed_pi_tilde_on_beta_and_alpha() {
        let cal = Calculus::<AlgebraElement<QPlusI>>::root();
        let pb = pi_tilde(&cal, &AlgebraElement::beta()).unwrap();
        assert_eq!(pb.iter().filter(|c| !c.is_zero()).count(), 1);
        assert!(pb[2].is_one());
        let pa = pi_tilde(&cal, &AlgebraElement::alpha()).unwrap();
        assert_eq!(pa[0], GaussianRational::from_parts(-1, 2, 1, 2));
        assert_eq!(pa[3], GaussianRational::from_parts(-1, 2, -1, 2));
    }

    #[test]
    fn generic_table_has_fourteen_entries_each() {
        let t = AdTable::printed(&QParams::generic()).unwrap();
        assert_eq!(AdTable::entries(&t.right).len(), 14);
        assert_eq!(AdTable::entries(&t.left).len(), 14);
    }
}
