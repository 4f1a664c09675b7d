use serde::Serialize;

use super::{RiemannianError, SpinConnection};
use crate::algebra::{AlgebraElement, Monomial, RootMode};
use crate::calculus::{pi_tilde, Calculus, DiffForm, FormBasis};
use crate::linalg::Matrix;
use crate::scalars::{Field, GaussianRational};

/// A basis of `ker ε ∩ ker π̃` in the 16-dimensional algebra.
pub fn regularity_kernel<M: RootMode>(
    cal: &Calculus<AlgebraElement<M>>,
) -> Result<Vec<AlgebraElement<M>>, RiemannianError> {
    let mut rows = vec![Vec::with_capacity(16); 5];
    for m in Monomial::all() {
        let f = AlgebraElement::<M>::monomial(m.p, m.r);
        rows[0].push(f.counit());
        for (k, c) in pi_tilde(cal, &f)?.into_iter().enumerate() {
            rows[k + 1].push(c);
        }
    }
    let m = Matrix::from_rows(rows)?;
    Ok(m.nullspace()
        .into_iter()
        .map(AlgebraElement::from_coeffs)
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityDefect<M: RootMode> {
    pub function: AlgebraElement<M>,
    pub value: DiffForm<GaussianRational>,
}

/// `Σ_ij ε(∂^i ∂^j f) A_i∧A_j` on each kernel element; regular when all vanish.
pub fn regularity_defects<M: RootMode>(
    cal: &Calculus<AlgebraElement<M>>,
    conn: &SpinConnection<GaussianRational>,
    kernel: &[AlgebraElement<M>],
) -> Result<Vec<RegularityDefect<M>>, RiemannianError> {
    let consts = Calculus::<GaussianRational>::new(cal.params().clone());
    let forms: Vec<DiffForm<GaussianRational>> =
        FormBasis::ALL.iter().map(|&i| conn.form(i)).collect();
    let mut out = Vec::new();
    for f in kernel {
        let mut acc = DiffForm::zero();
        for (j, pj) in cal.partials(f, true)?.iter().enumerate() {
            for (i, pij) in cal.partials(pj, true)?.iter().enumerate() {
                let c = pij.counit();
                if c.is_zero() {
                    continue;
                }
                acc = acc.add(&consts.wedge(&forms[i], &forms[j]).scale(&c));
            }
        }
        if !acc.is_zero() {
            out.push(RegularityDefect {
                function: f.clone(),
                value: acc,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QPlusI;
    use crate::riemannian::ConnectionSource;

    #[test]
    fn kernel_has_codimension_five() {
        let cal = Calculus::<AlgebraElement<QPlusI>>::root();
        let k = regularity_kernel(&cal).unwrap();
        assert_eq!(k.len(), 11);
        for f in &k {
            assert!(f.counit().is_zero());
            assert!(pi_tilde(&cal, f).unwrap().iter().all(Field::is_zero));
        }
    }

    #[test]
    fn zero_connection_is_regular() {
        let cal = Calculus::<AlgebraElement<QPlusI>>::root();
        let k = regularity_kernel(&cal).unwrap();
        let conn = SpinConnection::zero(ConnectionSource::Solved);
        assert!(regularity_defects(&cal, &conn, &k).unwrap().is_empty());
    }
}
