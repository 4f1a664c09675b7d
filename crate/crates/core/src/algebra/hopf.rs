use std::collections::BTreeMap;
use std::marker::PhantomData;

use serde::Serialize;

use super::{AlgebraElement, AlgebraError, Generator, Monomial, QuantumAlgebra, RootMode};
use crate::linalg::Matrix;
use crate::scalars::{Field, GaussianRational};

/// A sparse element of the K-fold tensor power of the algebra, keyed by
/// monomial basis indices.
pub struct Tensor<M, const K: usize> {
    terms: BTreeMap<[u8; K], GaussianRational>,
    mode: PhantomData<M>,
}

impl<M, const K: usize> Clone for Tensor<M, K> {
    fn clone(&self) -> Self {
        Tensor {
            terms: self.terms.clone(),
            mode: PhantomData,
        }
    }
}

impl<M, const K: usize> PartialEq for Tensor<M, K> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<M, const K: usize> std::fmt::Debug for Tensor<M, K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, v)| {
                let label: Vec<String> = k
                    .iter()
                    .map(|&i| Monomial::from_index(i as usize).to_string())
                    .collect();
                (label.join(" ⊗ "), v.to_string())
            }))
            .finish()
    }
}

impl<M: RootMode, const K: usize> Tensor<M, K> {
    pub fn zero() -> Self {
        Tensor {
            terms: BTreeMap::new(),
            mode: PhantomData,
        }
    }

    pub fn basis(key: [u8; K]) -> Self {
        let mut t = Self::zero();
        t.terms.insert(key, GaussianRational::one());
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8; K], &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: [u8; K], c: GaussianRational) {
        let slot = self.terms.entry(key).or_insert_with(GaussianRational::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(*k, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-GaussianRational::one()))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v.clone() * c);
        }
        out
    }

    /// Factorwise product in the tensor-power algebra.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut key = [0u8; K];
                let mut c = ca.clone() * cb;
                for s in 0..K {
                    let (m, sign) = AlgebraElement::<M>::monomial_product(
                        Monomial::from_index(ka[s] as usize),
                        Monomial::from_index(kb[s] as usize),
                    );
                    key[s] = m.index() as u8;
                    c = c * sign;
                }
                out.add_term(key, c);
            }
        }
        out
    }

    /// Applies a linear map `A → A^{⊗L}` to slot `slot`, producing a tensor of
    /// rank `N = K - 1 + L`.
    pub fn map_slot<const L: usize, const N: usize>(
        &self,
        slot: usize,
        f: impl Fn(Monomial) -> Tensor<M, L>,
    ) -> Tensor<M, N> {
        assert_eq!(N, K - 1 + L);
        let mut out = Tensor::<M, N>::zero();
        for (k, c) in &self.terms {
            let image = f(Monomial::from_index(k[slot] as usize));
            for (ik, ic) in &image.terms {
                let mut key = [0u8; N];
                key[..slot].copy_from_slice(&k[..slot]);
                key[slot..slot + L].copy_from_slice(ik);
                key[slot + L..].copy_from_slice(&k[slot + 1..]);
                out.add_term(key, c.clone() * ic);
            }
        }
        out
    }
}

impl<M: RootMode> Tensor<M, 1> {
    pub fn from_element(x: &AlgebraElement<M>) -> Self {
        let mut t = Self::zero();
        for (m, c) in x.terms() {
            t.add_term([m.index() as u8], c.clone());
        }
        t
    }

    pub fn to_element(&self) -> AlgebraElement<M> {
        let mut v = vec![GaussianRational::zero(); 16];
        for (k, c) in &self.terms {
            v[k[0] as usize] = c.clone();
        }
        AlgebraElement::from_coeffs(v)
    }
}

impl<M: RootMode> Tensor<M, 2> {
    pub fn pure(x: &AlgebraElement<M>, y: &AlgebraElement<M>) -> Self {
        let mut t = Self::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                t.add_term([a.index() as u8, b.index() as u8], ca.clone() * cb);
            }
        }
        t
    }

    /// The multiplication map `A ⊗ A → A`.
    pub fn multiply_out(&self) -> AlgebraElement<M> {
        let mut out = AlgebraElement::zero();
        for (k, c) in &self.terms {
            let (m, sign) = AlgebraElement::<M>::monomial_product(
                Monomial::from_index(k[0] as usize),
                Monomial::from_index(k[1] as usize),
            );
            out = out + AlgebraElement::monomial(m.p, m.r).scale(&(sign * c));
        }
        out
    }
}

fn element_as_tensor<M: RootMode>(x: AlgebraElement<M>) -> Tensor<M, 1> {
    Tensor::from_element(&x)
}

fn scalar_as_tensor<M: RootMode>(c: GaussianRational) -> Tensor<M, 0> {
    let mut t = Tensor::zero();
    t.add_term([], c);
    t
}

/// Which Hopf-algebra identities hold on each basis monomial.
#[derive(Clone, Debug, Serialize)]
pub struct HopfReport {
    pub coassociativity_failures: Vec<String>,
    pub left_counit_failures: Vec<String>,
    pub right_counit_failures: Vec<String>,
    pub left_antipode_failures: Vec<String>,
    pub right_antipode_failures: Vec<String>,
    pub antipode_rank: usize,
}

impl HopfReport {
    pub fn all_hold(&self) -> bool {
        self.coassociativity_failures.is_empty()
            && self.counit_holds()
            && self.left_antipode_failures.is_empty()
            && self.right_antipode_failures.is_empty()
    }

    pub fn counit_holds(&self) -> bool {
        self.left_counit_failures.is_empty() && self.right_counit_failures.is_empty()
    }
}

impl<M: RootMode> QuantumAlgebra<M> {
    /// Δ on the generators in matrix-coalgebra form, extended over each basis
    /// monomial as `Δ(α)^p Δ(β)^r`.
    pub fn coproduct_generators(&self) -> [Tensor<M, 2>; 2] {
        let u = self.generator_matrix();
        let row = |i: usize, j: usize| {
            Tensor::pure(&u[i][0], &u[0][j]).add(&Tensor::pure(&u[i][1], &u[1][j]))
        };
        [row(0, 0), row(0, 1)]
    }

    pub fn coproduct_monomial(&self, m: Monomial) -> Tensor<M, 2> {
        let [da, db] = self.coproduct_generators();
        let mut acc = Tensor::basis([0, 0]);
        for _ in 0..m.p {
            acc = acc.mul(&da);
        }
        for _ in 0..m.r {
            acc = acc.mul(&db);
        }
        acc
    }

    pub fn coproduct(&self, x: &AlgebraElement<M>) -> Tensor<M, 2> {
        x.terms().fold(Tensor::zero(), |acc, (m, c)| {
            acc.add(&self.coproduct_monomial(m).scale(c))
        })
    }

    /// S(α) = δ, S(β) = -q²β, extended anti-multiplicatively over monomials:
    /// `S(α^p β^r) = S(β)^r S(α)^p`.
    pub fn antipode_monomial(&self, m: Monomial) -> AlgebraElement<M> {
        let sb = AlgebraElement::beta().scale(&-M::params().q2.clone());
        let sa = self.delta().clone();
        sb.pow(m.r as u32) * sa.pow(m.p as u32)
    }

    /// `S(u) = [[δ, −q²β], [−q⁻²β*, α]]` on the generators themselves.
    pub fn antipode_generator(&self, g: Generator) -> AlgebraElement<M> {
        let p = M::params();
        match g {
            Generator::Alpha => self.delta().clone(),
            Generator::Beta => AlgebraElement::beta().scale(&-p.q2.clone()),
            Generator::BetaStar => {
                let qi2 = p.qinv.clone() * &p.qinv;
                self.beta_star().scale(&-qi2)
            }
            Generator::Delta => AlgebraElement::alpha(),
        }
    }

    pub fn antipode(&self, x: &AlgebraElement<M>) -> AlgebraElement<M> {
        x.terms().fold(AlgebraElement::zero(), |acc, (m, c)| {
            acc + self.antipode_monomial(m).scale(c)
        })
    }

    /// Matrix of S on the monomial basis, column j the image of monomial j.
    pub fn antipode_matrix(&self) -> Matrix<GaussianRational> {
        let mut s = Matrix::zeros(16, 16);
        for m in Monomial::all() {
            for (i, c) in self.antipode_monomial(m).coeffs().iter().enumerate() {
                s[(i, m.index())] = c.clone();
            }
        }
        s
    }

    pub fn inverse_antipode(
        &self,
        x: &AlgebraElement<M>,
    ) -> Result<AlgebraElement<M>, AlgebraError> {
        let s = self.antipode_matrix();
        let inv = s
            .inverse()
            .map_err(|_| AlgebraError::SingularAntipode { rank: s.rank() })?;
        Ok(AlgebraElement::from_coeffs(inv.mul_vec(x.coeffs())?))
    }

    pub fn hopf_report(&self) -> HopfReport {
        let mut report = HopfReport {
            coassociativity_failures: Vec::new(),
            left_counit_failures: Vec::new(),
            right_counit_failures: Vec::new(),
            left_antipode_failures: Vec::new(),
            right_antipode_failures: Vec::new(),
            antipode_rank: self.antipode_matrix().rank(),
        };
        let delta = |m: Monomial| self.coproduct_monomial(m);
        let eps =
            |m: Monomial| scalar_as_tensor::<M>(AlgebraElement::<M>::monomial(m.p, m.r).counit());
        for m in Monomial::all() {
            let x = AlgebraElement::<M>::monomial(m.p, m.r);
            let d = delta(m);
            let left: Tensor<M, 3> = d.map_slot::<2, 3>(0, delta);
            let right: Tensor<M, 3> = d.map_slot::<2, 3>(1, delta);
            if left != right {
                report.coassociativity_failures.push(m.to_string());
            }
            let xt = Tensor::from_element(&x);
            if d.map_slot::<0, 1>(0, eps) != xt {
                report.left_counit_failures.push(m.to_string());
            }
            if d.map_slot::<0, 1>(1, eps) != xt {
                report.right_counit_failures.push(m.to_string());
            }
            let unit = AlgebraElement::<M>::constant(x.counit());
            let s = |n: Monomial| element_as_tensor(self.antipode_monomial(n));
            if d.map_slot::<1, 2>(0, s).multiply_out() != unit {
                report.left_antipode_failures.push(m.to_string());
            }
            if d.map_slot::<1, 2>(1, s).multiply_out() != unit {
                report.right_antipode_failures.push(m.to_string());
            }
        }
        report
    }

    /// Whether `Δ(xy) = Δ(x)Δ(y)` and `ε(xy) = ε(x)ε(y)` on one pair.
    pub fn is_algebra_map_on(&self, x: &AlgebraElement<M>, y: &AlgebraElement<M>) -> (bool, bool) {
        let xy = x * y;
        let delta_ok = self.coproduct(&xy) == self.coproduct(x).mul(&self.coproduct(y));
        let eps_ok = xy.counit() == x.counit() * y.counit();
        (delta_ok, eps_ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QPlusI;

    fn alg() -> QuantumAlgebra<QPlusI> {
        QuantumAlgebra::standard().unwrap()
    }

    #[test]
    fn coproduct_of_generators_is_matrix_form() {
        let alg = alg();
        let a = alg.generator(Generator::Alpha);
        let b = alg.generator(Generator::Beta);
        let [da, db] = alg.coproduct_generators();
        assert_eq!(
            da,
            Tensor::pure(&a, &a).add(&Tensor::pure(&b, alg.beta_star()))
        );
        assert_eq!(db, Tensor::pure(&a, &b).add(&Tensor::pure(&b, alg.delta())));
        assert_eq!(alg.coproduct(&AlgebraElement::one()), Tensor::basis([0, 0]));
    }

    #[test]
    fn right_counit_holds_left_fails_past_beta_four() {
        // ε(β⁴) = 1 while ε(β) = 0, so the left axiom breaks once p + r ≥ 4.
        let r = alg().hopf_report();
        assert!(r.right_counit_failures.is_empty());
        let expect: Vec<String> = Monomial::all()
            .filter(|m| m.p + m.r >= 4)
            .map(|m| m.to_string())
            .collect();
        assert_eq!(r.left_counit_failures, expect);
    }

    #[test]
    fn antipode_of_one_and_rank() {
        let alg = alg();
        assert_eq!(alg.antipode(&AlgebraElement::one()), AlgebraElement::one());
        let report = alg.hopf_report();
        assert_eq!(report.antipode_rank, 4);
        assert!(matches!(
            alg.inverse_antipode(&AlgebraElement::one()),
            Err(AlgebraError::SingularAntipode { rank: 4 })
        ));
    }

    #[test]
    fn antipode_axiom_on_alpha_uses_beta_star() {
        // m(S ⊗ id)Δ(α) = S(α)α + S(β)β*
        let alg = alg();
        let d = alg.coproduct_monomial(Monomial::new(1, 0));
        let lhs = d
            .map_slot::<1, 2>(0, |n| element_as_tensor(alg.antipode_monomial(n)))
            .multiply_out();
        let sb = AlgebraElement::beta().scale(&-QPlusI::params().q2.clone());
        let expect = alg.delta() * &AlgebraElement::alpha() + &sb * alg.beta_star();
        assert_eq!(lhs, expect);
    }
}
