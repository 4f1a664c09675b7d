use serde::Serialize;

use crate::calculus::{Calculus, Coefficient, DiffForm, FormBasis};
use crate::qparams::QParams;
use crate::scalars::{Field, RationalFunction, ScalarError};

/// `η = Σ g[j][k] e_j ⊗ e_k` with constant coefficients.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metric<F> {
    pub g: [[F; 4]; 4],
    pub rho: F,
}

pub fn rho_closed_form() -> RationalFunction {
    RationalFunction::from_ints(&[0, 1, -1, -1], &[1, 1]).expect("nonzero")
}

impl<F: Field> Metric<F> {
    /// `η = e_c⊗e_b + q²e_b⊗e_c + (e_a⊗e_a − q e_a⊗e_d − q e_d⊗e_a + q(q²+q−1) e_d⊗e_d)/[2]_q + ρ θ⊗θ`.
    pub fn build(p: &QParams<F>) -> Result<Self, ScalarError> {
        use FormBasis::{A, B, C, D};
        let rho = p.lift(&rho_closed_form())?;
        let two_inv = p.two.inv()?;
        let q = &p.q;
        let mut g: [[F; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| F::zero()));
        let mut put = |j: FormBasis, k: FormBasis, c: F| {
            let e = &mut g[j.index()][k.index()];
            *e = e.clone() + c;
        };
        put(C, B, F::one());
        put(B, C, p.q2.clone());
        put(A, A, two_inv.clone());
        put(A, D, -(q.clone() * &two_inv));
        put(D, A, -(q.clone() * &two_inv));
        let dd = q.clone() * (p.q2.clone() + q - F::one());
        put(D, D, dd * &two_inv);
        let mut m = Metric { g, rho: F::zero() };
        m = m.add_theta_theta(&rho);
        m.rho = rho;
        Ok(m)
    }

    /// `η + c θ⊗θ`.
    pub fn add_theta_theta(&self, c: &F) -> Self {
        let mut out = self.clone();
        for j in [0, 3] {
            for k in [0, 3] {
                out.g[j][k] = out.g[j][k].clone() + c;
            }
        }
        out.rho = out.rho.clone() + c;
        out
    }

    pub fn coeff(&self, j: FormBasis, k: FormBasis) -> &F {
        &self.g[j.index()][k.index()]
    }
}

/// `∧(η) = Σ g[j][k] e_j∧e_k` in Λ².
pub fn wedge_eta<C: Coefficient>(cal: &Calculus<C>, eta: &Metric<C::Scalar>) -> DiffForm<C> {
    let mut terms = Vec::new();
    for j in FormBasis::ALL {
        for k in FormBasis::ALL {
            let c = eta.coeff(j, k);
            if !c.is_zero() {
                terms.push((c.clone(), j, k));
            }
        }
    }
    cal.two_form(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qparams::QMode;
    use crate::scalars::GaussianRational;

    #[test]
    fn rho_and_printed_coefficients_at_i() {
        let p = QParams::at(QMode::PlusI).unwrap();
        let m = Metric::build(&p).unwrap();
        assert_eq!(m.rho, GaussianRational::from_parts(3, 2, 1, 2));
        assert!(m.coeff(FormBasis::C, FormBasis::B).is_one());
        assert_eq!(
            m.coeff(FormBasis::B, FormBasis::C),
            &GaussianRational::from_int(-1)
        );
    }

    #[test]
    fn theta_theta_is_wedge_closed() {
        let cal = Calculus::<GaussianRational>::constant(QMode::PlusI).unwrap();
        let zero = Metric {
            g: std::array::from_fn(|_| std::array::from_fn(|_| GaussianRational::zero())),
            rho: GaussianRational::zero(),
        };
        let tt = zero.add_theta_theta(&GaussianRational::from_parts(3, 1, -2, 7));
        assert!(wedge_eta(&cal, &tt).is_zero());
    }

    #[test]
    fn pole_at_minus_one() {
        let p = QParams::new(GaussianRational::from_int(-1)).unwrap();
        assert!(Metric::build(&p).is_err());
    }
}
