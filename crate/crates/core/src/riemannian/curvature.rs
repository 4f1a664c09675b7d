use serde::Serialize;

use super::{RiemannianError, SpinConnection};
use crate::algebra::{AlgebraElement, RootMode};
use crate::calculus::{AdTable, Calculus, Coefficient, DiffForm, FormBasis};
use crate::scalars::Field;

/// `Σ_m v[m] ⊗ e_m`, forms on the left of the invariant basis.
pub type VectorForm<C> = [DiffForm<C>; 4];

fn zero_vector<C: Coefficient>() -> VectorForm<C> {
    std::array::from_fn(|_| DiffForm::zero())
}

/// The left connection `∇e_i = Σ_k Ω_ik ⊗ e_k` with `Ω_ik = −Σ_j ad_L(jk|i) A_j`.
#[derive(Clone, Debug)]
pub struct Curvature<C: Coefficient> {
    pub omega: [[DiffForm<C>; 4]; 4],
}

impl<C: Coefficient> Curvature<C> {
    pub fn new(ad: &AdTable<C::Scalar>, conn: &SpinConnection<C::Scalar>) -> Self {
        let mut omega: [[DiffForm<C>; 4]; 4] = std::array::from_fn(|_| zero_vector());
        for i in FormBasis::ALL {
            for j in FormBasis::ALL {
                let a_j: DiffForm<C> = conn.form(j);
                for k in FormBasis::ALL {
                    let c = &ad.left[i.index()][j.index()][k.index()];
                    if c.is_zero() {
                        continue;
                    }
                    let o = &mut omega[i.index()][k.index()];
                    *o = o.sub(&a_j.scale(c));
                }
            }
        }
        Curvature { omega }
    }

    pub fn nabla_basis(&self, i: FormBasis) -> VectorForm<C> {
        self.omega[i.index()].clone()
    }

    /// `∇(f e_i) = df ⊗ e_i + f ∇e_i`.
    pub fn nabla(
        &self,
        cal: &Calculus<C>,
        f: &C,
        i: FormBasis,
    ) -> Result<VectorForm<C>, RiemannianError> {
        let mut out: VectorForm<C> = std::array::from_fn(|k| self.omega[i.index()][k].left_mul(f));
        let df = cal.exterior_d(&DiffForm::function(f.clone()), true)?;
        out[i.index()] = out[i.index()].add(&df);
        Ok(out)
    }

    /// `(id∧∇ − d⊗id)` on a 1-form valued vector.
    pub fn apply(
        &self,
        cal: &Calculus<C>,
        v: &VectorForm<C>,
    ) -> Result<VectorForm<C>, RiemannianError> {
        let mut out = zero_vector::<C>();
        for l in 0..4 {
            if v[l].is_zero() {
                continue;
            }
            for m in 0..4 {
                out[m] = out[m].add(&cal.wedge(&v[l], &self.omega[l][m]));
            }
            out[l] = out[l].sub(&cal.exterior_d(&v[l], true)?);
        }
        Ok(out)
    }

    /// `R(e_i) = Σ_m (Σ_l Ω_il∧Ω_lm − dΩ_im) ⊗ e_m`.
    pub fn riemann(
        &self,
        cal: &Calculus<C>,
        i: FormBasis,
    ) -> Result<VectorForm<C>, RiemannianError> {
        self.apply(cal, &self.nabla_basis(i))
    }

    pub fn is_flat(&self, cal: &Calculus<C>) -> Result<bool, RiemannianError> {
        for i in FormBasis::ALL {
            if !self.riemann(cal, i)?.iter().all(DiffForm::is_zero) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `R(f e_i) − f R(e_i)` for a sample function.
#[derive(Clone, Debug, Serialize)]
pub struct TensorialityDefect<M: RootMode> {
    pub function: AlgebraElement<M>,
    pub form: FormBasis,
    pub defect: VectorForm<AlgebraElement<M>>,
}

pub fn tensoriality_defects<M: RootMode>(
    cal: &Calculus<AlgebraElement<M>>,
    curv: &Curvature<AlgebraElement<M>>,
    samples: &[AlgebraElement<M>],
) -> Result<Vec<TensorialityDefect<M>>, RiemannianError> {
    let mut out = Vec::new();
    for i in FormBasis::ALL {
        let r = curv.riemann(cal, i)?;
        for f in samples {
            let lhs = curv.apply(cal, &curv.nabla(cal, f, i)?)?;
            let defect: VectorForm<_> = std::array::from_fn(|m| lhs[m].sub(&r[m].left_mul(f)));
            if !defect.iter().all(DiffForm::is_zero) {
                out.push(TensorialityDefect {
                    function: f.clone(),
                    form: i,
                    defect,
                });
            }
        }
    }
    Ok(out)
}
