use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::RootMode;
use crate::scalars::{Field, GaussianRational};

/// `α^p β^r` with `0 ≤ p, r ≤ 3`; basis index `4p + r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub p: u8,
    pub r: u8,
}

impl Monomial {
    pub fn new(p: u8, r: u8) -> Self {
        Monomial { p: p % 4, r: r % 4 }
    }

    pub fn index(self) -> usize {
        4 * self.p as usize + self.r as usize
    }

    pub fn from_index(i: usize) -> Self {
        Monomial::new((i / 4) as u8, (i % 4) as u8)
    }

    pub fn all() -> impl Iterator<Item = Monomial> {
        (0..16).map(Monomial::from_index)
    }
}

/// Written `a^p b^r`, dropping zero powers and unit exponents: `1`, `b`,
/// `a b^2`, `a^3 b^3`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |sym: &str, n: u8| match n {
            0 => None,
            1 => Some(sym.to_string()),
            _ => Some(format!("{sym}^{n}")),
        };
        let parts: Vec<String> = [part("a", self.p), part("b", self.r)]
            .into_iter()
            .flatten()
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// An element of the 16-dimensional algebra, stored densely.
pub struct AlgebraElement<M> {
    coeffs: Vec<GaussianRational>,
    mode: PhantomData<M>,
}

impl<M> Clone for AlgebraElement<M> {
    fn clone(&self) -> Self {
        AlgebraElement {
            coeffs: self.coeffs.clone(),
            mode: PhantomData,
        }
    }
}

impl<M> PartialEq for AlgebraElement<M> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<M> Eq for AlgebraElement<M> {}

impl<M> std::hash::Hash for AlgebraElement<M> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<M: RootMode> fmt::Debug for AlgebraElement<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({self})")
    }
}

impl<M: RootMode> AlgebraElement<M> {
    pub fn zero() -> Self {
        Self::from_coeffs(vec![GaussianRational::zero(); 16])
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn alpha() -> Self {
        Self::monomial(1, 0)
    }

    pub fn beta() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(p: u8, r: u8) -> Self {
        let mut x = Self::zero();
        x.coeffs[Monomial::new(p, r).index()] = GaussianRational::one();
        x
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::one().scale(&c)
    }

    /// Panics unless exactly 16 coefficients are given.
    pub fn from_coeffs(coeffs: Vec<GaussianRational>) -> Self {
        assert_eq!(coeffs.len(), 16, "an algebra element has 16 coefficients");
        AlgebraElement {
            coeffs,
            mode: PhantomData,
        }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, m: Monomial) -> &GaussianRational {
        &self.coeffs[m.index()]
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &GaussianRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::from_index(i), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x.clone() * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc * self)
    }

    /// The counit: α ↦ 1, β ↦ 0, multiplicative.
    pub fn counit(&self) -> GaussianRational {
        (0..4).fold(GaussianRational::zero(), |acc, p| {
            acc + &self.coeffs[Monomial::new(p, 0).index()]
        })
    }

    /// Product of basis monomials: `α^p β^r · α^s β^t = q^{2rs} α^{p+s} β^{r+t}`.
    pub fn monomial_product(a: Monomial, b: Monomial) -> (Monomial, GaussianRational) {
        let sign = M::params().q2.pow((a.r * b.p) as i32).expect("unit");
        (Monomial::new(a.p + b.p, a.r + b.r), sign)
    }
}

impl<M: RootMode> fmt::Display for AlgebraElement<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(m, c)| match (m.index(), c.is_one()) {
                (0, _) => format!("({c})"),
                (_, true) => m.to_string(),
                _ => format!("({c})*{m}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `[{"monomial": "a^p b^r", "coeff": "..."}]`, nonzero terms in basis order.
impl<M: RootMode> Serialize for AlgebraElement<M> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            monomial: String,
            coeff: String,
        }
        let terms: Vec<Term> = self
            .terms()
            .map(|(m, c)| Term {
                monomial: m.to_string(),
                coeff: c.to_string(),
            })
            .collect();
        let mut seq = s.serialize_seq(Some(terms.len()))?;
        for t in &terms {
            seq.serialize_element(t)?;
        }
        seq.end()
    }
}

impl<M: RootMode> Add for AlgebraElement<M> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a = a.clone() + b;
        }
        self
    }
}

impl<M: RootMode> Sub for AlgebraElement<M> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<M: RootMode> Neg for AlgebraElement<M> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_coeffs(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<M: RootMode> Mul for AlgebraElement<M> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a, M: RootMode> Mul<&'a AlgebraElement<M>> for AlgebraElement<M> {
    type Output = AlgebraElement<M>;
    fn mul(self, rhs: &'a AlgebraElement<M>) -> AlgebraElement<M> {
        &self * rhs
    }
}

impl<'b, M: RootMode> Mul<&'b AlgebraElement<M>> for &AlgebraElement<M> {
    type Output = AlgebraElement<M>;
    fn mul(self, rhs: &'b AlgebraElement<M>) -> AlgebraElement<M> {
        let mut out = vec![GaussianRational::zero(); 16];
        for (a, ca) in self.terms() {
            for (b, cb) in rhs.terms() {
                let (m, sign) = AlgebraElement::<M>::monomial_product(a, b);
                let slot = &mut out[m.index()];
                *slot = slot.clone() + sign * ca * cb;
            }
        }
        AlgebraElement::from_coeffs(out)
    }
}

impl<'a, M: RootMode> Add<&'a AlgebraElement<M>> for AlgebraElement<M> {
    type Output = AlgebraElement<M>;
    fn add(self, rhs: &'a AlgebraElement<M>) -> AlgebraElement<M> {
        self + rhs.clone()
    }
}

impl<'a, M: RootMode> Sub<&'a AlgebraElement<M>> for AlgebraElement<M> {
    type Output = AlgebraElement<M>;
    fn sub(self, rhs: &'a AlgebraElement<M>) -> AlgebraElement<M> {
        self - rhs.clone()
    }
}

impl<'b, M: RootMode> Add<&'b AlgebraElement<M>> for &AlgebraElement<M> {
    type Output = AlgebraElement<M>;
    fn add(self, rhs: &'b AlgebraElement<M>) -> AlgebraElement<M> {
        self.clone() + rhs.clone()
    }
}

impl<'b, M: RootMode> Sub<&'b AlgebraElement<M>> for &AlgebraElement<M> {
    type Output = AlgebraElement<M>;
    fn sub(self, rhs: &'b AlgebraElement<M>) -> AlgebraElement<M> {
        self.clone() - rhs.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{QMinusI, QPlusI};

    type E = AlgebraElement<QPlusI>;

    #[test]
    fn monomial_labels_follow_basis_order() {
        let labels: Vec<String> = Monomial::all().map(|m| m.to_string()).collect();
        assert_eq!(&labels[..6], &["1", "b", "b^2", "b^3", "a", "a b"]);
        assert_eq!(labels[15], "a^3 b^3");
    }

    #[test]
    fn alpha_beta_squared() {
        // (αβ)(αβ) = q² α²β²
        let ab = E::monomial(1, 1);
        let q2 = QPlusI::params().q2.clone();
        assert_eq!(&ab * &ab, E::monomial(2, 2).scale(&q2));
    }

    #[test]
    fn counit_is_multiplicative_until_beta_wraps() {
        for a in Monomial::all() {
            for b in Monomial::all().filter(|b| a.r + b.r < 4) {
                let x = E::monomial(a.p, a.r);
                let y = E::monomial(b.p, b.r);
                assert_eq!((&x * &y).counit(), x.counit() * y.counit());
            }
        }
        assert!(E::monomial(0, 3).counit().is_zero());
        assert!((E::beta().pow(4)).counit().is_one());
    }

    #[test]
    fn json_lists_nonzero_terms() {
        let x = E::one() + E::monomial(1, 2).scale(&GaussianRational::i());
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(
            s,
            r#"[{"monomial":"1","coeff":"1"},{"monomial":"a b^2","coeff":"1*i"}]"#
        );
    }

    #[test]
    fn modes_share_the_torus_product() {
        let x = AlgebraElement::<QMinusI>::beta() * AlgebraElement::alpha();
        assert_eq!(
            x,
            AlgebraElement::monomial(1, 1).scale(&GaussianRational::from_int(-1))
        );
    }
}
