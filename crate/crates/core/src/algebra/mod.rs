//! The reduced quantum group at a primitive fourth root of unity as a
//! 16-dimensional algebra on the monomials α^p β^r, 0 ≤ p, r ≤ 3.
//!
//! Products are computed on the basis directly: `β α = q² α β`, `α⁴ = 1` and
//! `β⁴ = 1`. The dependent generators β* and δ are stored as elements of this
//! basis (see [`QuantumAlgebra`]).

mod element;
mod hopf;
mod translation;

pub use element::{AlgebraElement, Monomial};
pub use hopf::{HopfReport, Tensor};
pub use translation::{audit_algebra, translation_matrix, TranslationMatrix, TranslationSource};

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fixtures::{FixtureError, Fixtures};
use crate::linalg::LinalgError;
use crate::qparams::{QMode, QParams};
use crate::scalars::GaussianRational;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("antipode is singular on the 16-dimensional algebra (rank {rank})")]
    SingularAntipode { rank: usize },
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Compile-time choice of q = i or q = -i. Elements of different modes have
/// different types, so they cannot be mixed in one expression.
pub trait RootMode:
    Copy + Clone + Default + Debug + PartialEq + Eq + Hash + Send + Sync + 'static
{
    const MODE: QMode;

    fn params() -> &'static QParams<GaussianRational>;

    fn q() -> GaussianRational {
        Self::params().q.clone()
    }
}

#[derive(Clone, Copy, Default, Debug, PartialEq, Eq, Hash)]
pub struct QPlusI;

#[derive(Clone, Copy, Default, Debug, PartialEq, Eq, Hash)]
pub struct QMinusI;

impl RootMode for QPlusI {
    const MODE: QMode = QMode::PlusI;
    fn params() -> &'static QParams<GaussianRational> {
        static P: OnceLock<QParams<GaussianRational>> = OnceLock::new();
        P.get_or_init(|| QParams::at(QMode::PlusI).expect("numeric mode"))
    }
}

impl RootMode for QMinusI {
    const MODE: QMode = QMode::MinusI;
    fn params() -> &'static QParams<GaussianRational> {
        static P: OnceLock<QParams<GaussianRational>> = OnceLock::new();
        P.get_or_init(|| QParams::at(QMode::MinusI).expect("numeric mode"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    #[serde(rename = "alpha")]
    Alpha,
    #[serde(rename = "beta")]
    Beta,
    #[serde(rename = "beta*")]
    BetaStar,
    #[serde(rename = "delta")]
    Delta,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::Alpha,
        Generator::Beta,
        Generator::BetaStar,
        Generator::Delta,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Generator::Alpha => "α",
            Generator::Beta => "β",
            Generator::BetaStar => "β*",
            Generator::Delta => "δ",
        }
    }
}

/// The algebra together with the normal forms of β* and δ.
#[derive(Clone, Debug)]
pub struct QuantumAlgebra<M: RootMode> {
    beta_star: AlgebraElement<M>,
    delta: AlgebraElement<M>,
}

impl<M: RootMode> QuantumAlgebra<M> {
    /// Builds the algebra from a chosen expansion of β*. δ is then
    /// `α³(1 + q² β* β)`, using `α^{-1} = α³`.
    pub fn new(beta_star: AlgebraElement<M>) -> Self {
        let q2 = M::params().q2.clone();
        let a3 = AlgebraElement::monomial(3, 0);
        let delta =
            &a3 * &(AlgebraElement::one() + (&beta_star * &AlgebraElement::beta()).scale(&q2));
        QuantumAlgebra { beta_star, delta }
    }

    /// Reads β* off the image of 1 under the printed R_{β*}.
    pub fn from_fixtures(fx: &Fixtures) -> Result<Self, AlgebraError> {
        let r = fx.translation.matrix("R_beta_star")?.evaluate(&M::q());
        Ok(Self::new(AlgebraElement::from_coeffs(r.column(0))))
    }

    /// Uses the compiled-in or `NCGQ_FIXTURES` data.
    pub fn standard() -> Result<Self, AlgebraError> {
        Self::from_fixtures(&Fixtures::load()?)
    }

    pub fn generator(&self, g: Generator) -> AlgebraElement<M> {
        match g {
            Generator::Alpha => AlgebraElement::alpha(),
            Generator::Beta => AlgebraElement::beta(),
            Generator::BetaStar => self.beta_star.clone(),
            Generator::Delta => self.delta.clone(),
        }
    }

    pub fn beta_star(&self) -> &AlgebraElement<M> {
        &self.beta_star
    }

    pub fn delta(&self) -> &AlgebraElement<M> {
        &self.delta
    }

    /// `u = [[α, β], [β*, δ]]`, indexed `u[i][j] = t^i_j`.
    pub fn generator_matrix(&self) -> [[AlgebraElement<M>; 2]; 2] {
        [
            [
                self.generator(Generator::Alpha),
                self.generator(Generator::Beta),
            ],
            [
                self.generator(Generator::BetaStar),
                self.generator(Generator::Delta),
            ],
        ]
    }

    /// `c · g₁ g₂ ⋯ gₙ` on the monomial basis.
    pub fn normalize(&self, word: &[Generator], coeff: &GaussianRational) -> AlgebraElement<M> {
        word.iter()
            .fold(AlgebraElement::one(), |acc, &g| acc * self.generator(g))
            .scale(coeff)
    }

    pub fn multiply(&self, x: &AlgebraElement<M>, y: &AlgebraElement<M>) -> AlgebraElement<M> {
        x * y
    }

    pub fn counit(&self, x: &AlgebraElement<M>) -> GaussianRational {
        x.counit()
    }

    /// Checks the printed defining relations on the derived elements, returning
    /// `(relation, residual)` pairs; a zero residual means the relation holds.
    pub fn relation_residuals(&self) -> Vec<(&'static str, AlgebraElement<M>)> {
        let p = M::params();
        let (a, b) = (AlgebraElement::<M>::alpha(), AlgebraElement::<M>::beta());
        let (bs, d) = (self.beta_star.clone(), self.delta.clone());
        let one = AlgebraElement::<M>::one();
        vec![
            ("βα = q²αβ", &b * &a - (&a * &b).scale(&p.q2)),
            ("δα = αδ", &d * &a - &a * &d),
            (
                "[β,β*] = μα(δ-α)",
                &b * &bs - &bs * &b - (&a * &(d.clone() - a.clone())).scale(&p.mu),
            ),
            ("[δ,β] = μαβ", &d * &b - &b * &d - (&a * &b).scale(&p.mu)),
            (
                "αδ - q²β*β = 1",
                &a * &d - (&bs * &b).scale(&p.q2) - one.clone(),
            ),
            ("β⁴ = (β*)⁴", b.pow(4) - bs.pow(4)),
            ("α⁴ = 1", a.pow(4) - one.clone()),
            ("δ⁴ = 1", d.pow(4) - one),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;

    fn alg() -> QuantumAlgebra<QPlusI> {
        QuantumAlgebra::standard().unwrap()
    }

    #[test]
    fn beta_star_read_from_printed_matrix() {
        // q²(α - 1)β³ with q² = -1
        let alg = alg();
        let expect = AlgebraElement::<QPlusI>::monomial(0, 3) - AlgebraElement::monomial(1, 3);
        assert_eq!(alg.beta_star(), &expect);
    }

    #[test]
    fn delta_reduces_to_one() {
        assert_eq!(alg().delta(), &AlgebraElement::one());
        let alg_m = QuantumAlgebra::<QMinusI>::standard().unwrap();
        assert_eq!(alg_m.delta(), &AlgebraElement::one());
    }

    #[test]
    fn normalize_examples() {
        let alg = alg();
        let one = GaussianRational::one();
        let q2 = QPlusI::params().q2.clone();
        assert_eq!(
            alg.normalize(&[Generator::Beta, Generator::Alpha], &one),
            AlgebraElement::monomial(1, 1).scale(&q2)
        );
        let a = AlgebraElement::<QPlusI>::alpha();
        assert_eq!(&a * &a.pow(3), AlgebraElement::one());
    }

    #[test]
    fn counit_of_determinant_relation() {
        let alg = alg();
        let q2 = QPlusI::params().q2.clone();
        let x = &alg.generator(Generator::Alpha) * alg.delta()
            - (alg.beta_star() * &alg.generator(Generator::Beta)).scale(&q2);
        assert_eq!(alg.counit(&x), GaussianRational::one());
    }

    #[test]
    fn torus_relations_hold_but_commutator_does_not() {
        let res = alg().relation_residuals();
        let holds = |name: &str| res.iter().find(|(n, _)| *n == name).unwrap().1.is_zero();
        assert!(holds("βα = q²αβ"));
        assert!(holds("α⁴ = 1"));
        assert!(holds("αδ - q²β*β = 1"));
        assert!(!holds("[β,β*] = μα(δ-α)"));
    }
}
