use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::bimodule::pass_algebra;
use super::exterior::{ExteriorAlgebra, Word};
use super::{CalculusError, FormBasis};
use crate::algebra::{AlgebraElement, Generator, QMinusI, QPlusI, RootMode};
use crate::qparams::{QMode, QParams};
use crate::scalars::{Field, GaussianRational, RationalFunction};

/// A coefficient ring for forms: either plain scalars (constant forms) or
/// functions on the quantum group.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Serialize
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    type Scalar: Field;

    fn scalar(c: Self::Scalar) -> Self;

    fn vanishes(&self) -> bool;

    /// `e · x` written as `Σ_j c_j e_j` with coefficients on the left.
    fn commute_past(e: FormBasis, x: &Self) -> [Self; 4];
}

macro_rules! scalar_coefficient {
    ($t:ty) => {
        impl Coefficient for $t {
            type Scalar = $t;

            fn scalar(c: $t) -> Self {
                c
            }

            fn vanishes(&self) -> bool {
                Field::is_zero(self)
            }

            fn commute_past(e: FormBasis, x: &Self) -> [Self; 4] {
                let mut out = [<$t>::zero(), <$t>::zero(), <$t>::zero(), <$t>::zero()];
                out[e.index()] = x.clone();
                out
            }
        }
    };
}

scalar_coefficient!(GaussianRational);
scalar_coefficient!(RationalFunction);

impl<M: RootMode> Coefficient for AlgebraElement<M> {
    type Scalar = GaussianRational;

    fn scalar(c: GaussianRational) -> Self {
        AlgebraElement::constant(c)
    }

    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn commute_past(e: FormBasis, x: &Self) -> [Self; 4] {
        pass_algebra(e, x)
    }
}

/// `Σ c_w · w` over normal-form words, coefficients on the left.
#[derive(Clone, PartialEq)]
pub struct DiffForm<C> {
    terms: BTreeMap<Word, C>,
}

impl<C: Coefficient> DiffForm<C> {
    pub fn zero() -> Self {
        DiffForm {
            terms: BTreeMap::new(),
        }
    }

    pub fn function(c: C) -> Self {
        Self::term(Word::empty(), c)
    }

    /// A single term; the word must already be a basis word.
    pub fn term(w: Word, c: C) -> Self {
        let mut f = Self::zero();
        f.add_term(w, c);
        f
    }

    pub fn basis_form(e: FormBasis) -> Self {
        Self::term(Word::letter(e), C::scalar(C::Scalar::one()))
    }

    /// `θ = e_a + e_d`.
    pub fn theta() -> Self {
        Self::basis_form(FormBasis::A).add(&Self::basis_form(FormBasis::D))
    }

    /// `Σ c_i e_i`.
    pub fn from_components(c: [C; 4]) -> Self {
        let mut f = Self::zero();
        for (e, x) in FormBasis::ALL.into_iter().zip(c) {
            f.add_term(Word::letter(e), x);
        }
        f
    }

    fn add_term(&mut self, w: Word, c: C) {
        if c.vanishes() {
            return;
        }
        match self.terms.remove(&w) {
            Some(old) => {
                let s = old + c;
                if !s.vanishes() {
                    self.terms.insert(w, s);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Option<&C> {
        self.terms.get(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The degree if every term has the same degree; zero counts as degree 0.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::degree);
        match it.next() {
            None => Some(0),
            Some(d) => it.all(|e| e == d).then_some(d),
        }
    }

    pub fn component(&self, k: usize) -> Self {
        DiffForm {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == k)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        DiffForm {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &C::Scalar) -> Self {
        let s = C::scalar(s.clone());
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.clone() * &s);
        }
        out
    }

    /// Left multiplication by a function.
    pub fn left_mul(&self, f: &C) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f.clone() * c);
        }
        out
    }

    /// The four degree-1 coefficients.
    pub fn components(&self) -> [C; 4] {
        FormBasis::ALL.map(|e| {
            self.terms
                .get(&Word::letter(e))
                .cloned()
                .unwrap_or_else(|| C::scalar(C::Scalar::zero()))
        })
    }
}

impl<C: Coefficient> fmt::Display for DiffForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                if w.degree() == 0 {
                    format!("({c})")
                } else {
                    format!("({c}) {w}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<C: Coefficient> fmt::Debug for DiffForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffForm({self})")
    }
}

/// `{"degree": k, "terms": [{"coeff": …, "wedge": ["e_a", …]}]}`; degree is
/// null for an inhomogeneous form.
impl<C: Coefficient> Serialize for DiffForm<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a, C> {
            coeff: &'a C,
            wedge: &'a Word,
        }
        let terms: Vec<Term<C>> = self
            .terms
            .iter()
            .map(|(w, c)| Term { coeff: c, wedge: w })
            .collect();
        let mut st = s.serialize_struct("DiffForm", 2)?;
        st.serialize_field("degree", &self.degree())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// The calculus over a coefficient ring: Λ together with the q-parameters.
#[derive(Clone, Debug)]
pub struct Calculus<C: Coefficient> {
    params: QParams<C::Scalar>,
    lambda: Arc<ExteriorAlgebra<C::Scalar>>,
}

fn shared_lambda(mode: QMode) -> Arc<ExteriorAlgebra<GaussianRational>> {
    static PLUS: OnceLock<Arc<ExteriorAlgebra<GaussianRational>>> = OnceLock::new();
    static MINUS: OnceLock<Arc<ExteriorAlgebra<GaussianRational>>> = OnceLock::new();
    let cell = match mode {
        QMode::MinusI => &MINUS,
        _ => &PLUS,
    };
    cell.get_or_init(|| {
        Arc::new(ExteriorAlgebra::standard(
            &QParams::at(mode).expect("numeric mode"),
        ))
    })
    .clone()
}

impl<M: RootMode> Calculus<AlgebraElement<M>> {
    /// Forms with function coefficients at q = ±i.
    pub fn root() -> Self {
        Calculus {
            params: M::params().clone(),
            lambda: shared_lambda(M::MODE),
        }
    }
}

impl<M: RootMode> Calculus<AlgebraElement<M>> {
    /// `r · g` rewritten in Λ for every relation r and g ∈ {α, β}. All zero
    /// exactly when the relations span a sub-bimodule.
    pub fn relation_defects(&self) -> Vec<(&'static str, Generator, DiffForm<AlgebraElement<M>>)> {
        let mut out = Vec::new();
        for r in self.lambda.relations() {
            for g in [Generator::Alpha, Generator::Beta] {
                let x = AlgebraElement::<M>::monomial(
                    (g == Generator::Alpha) as u8,
                    (g == Generator::Beta) as u8,
                );
                let mut acc = DiffForm::zero();
                for (c, a, b) in &r.terms {
                    for (cc, w) in self.commute_word(&Word::pair(*a, *b), &x) {
                        acc = acc.add(&self.word(&w, cc.scale(c)));
                    }
                }
                out.push((r.label, g, acc));
            }
        }
        out
    }
}

impl Calculus<GaussianRational> {
    /// Constant-coefficient forms at q = ±i.
    pub fn constant(mode: QMode) -> Option<Self> {
        match mode {
            QMode::PlusI => Some(Calculus {
                params: QPlusI::params().clone(),
                lambda: shared_lambda(mode),
            }),
            QMode::MinusI => Some(Calculus {
                params: QMinusI::params().clone(),
                lambda: shared_lambda(mode),
            }),
            _ => None,
        }
    }
}

impl Calculus<RationalFunction> {
    /// Constant-coefficient forms over ℚ(q).
    pub fn generic() -> Self {
        let params = QParams::generic();
        let lambda = Arc::new(ExteriorAlgebra::standard(&params));
        Calculus { params, lambda }
    }
}

impl<C: Coefficient> Calculus<C> {
    pub fn new(params: QParams<C::Scalar>) -> Self {
        let lambda = Arc::new(ExteriorAlgebra::standard(&params));
        Calculus { params, lambda }
    }

    pub fn params(&self) -> &QParams<C::Scalar> {
        &self.params
    }

    pub fn exterior(&self) -> &ExteriorAlgebra<C::Scalar> {
        &self.lambda
    }

    /// `c · w` for an arbitrary word, rewritten on the Λ basis.
    pub fn word(&self, w: &Word, c: C) -> DiffForm<C> {
        let mut out = DiffForm::zero();
        for (b, s) in self.lambda.normal_form(w) {
            out.add_term(b, c.clone() * &C::scalar(s));
        }
        out
    }

    /// `Σ c · x∧y` with scalar coefficients.
    pub fn two_form(&self, terms: &[(C::Scalar, FormBasis, FormBasis)]) -> DiffForm<C> {
        terms.iter().fold(DiffForm::zero(), |acc, (c, x, y)| {
            acc.add(&self.word(&Word::pair(*x, *y), C::scalar(c.clone())))
        })
    }

    /// Moves the word past a coefficient: `w · x = Σ c_v · v` with `|v| = |w|`.
    pub fn commute_word(&self, w: &Word, x: &C) -> Vec<(C, Word)> {
        let mut acc: Vec<(C, Vec<FormBasis>)> = vec![(x.clone(), Vec::new())];
        for &e in w.0.iter().rev() {
            let mut next = Vec::new();
            for (c, suffix) in acc {
                for (j, cj) in C::commute_past(e, &c).into_iter().enumerate() {
                    if cj.vanishes() {
                        continue;
                    }
                    let mut v = Vec::with_capacity(suffix.len() + 1);
                    v.push(FormBasis::from_index(j));
                    v.extend_from_slice(&suffix);
                    next.push((cj, v));
                }
            }
            acc = next;
        }
        acc.into_iter().map(|(c, v)| (c, Word(v))).collect()
    }

    pub fn wedge(&self, x: &DiffForm<C>, y: &DiffForm<C>) -> DiffForm<C> {
        let mut raw: BTreeMap<Word, C> = BTreeMap::new();
        for (w1, c1) in &x.terms {
            for (w2, c2) in &y.terms {
                for (c, v) in self.commute_word(w1, c2) {
                    let key = v.concat(w2);
                    let val = c1.clone() * &c;
                    match raw.remove(&key) {
                        Some(old) => {
                            raw.insert(key, old + val);
                        }
                        None => {
                            raw.insert(key, val);
                        }
                    }
                }
            }
        }
        let mut out = DiffForm::zero();
        for (w, c) in raw {
            if c.vanishes() {
                continue;
            }
            out = out.add(&self.word(&w, c));
        }
        out
    }

    /// Graded commutator `[θ, x} = θ∧x − (−1)^k x∧θ`, summed over homogeneous parts.
    pub fn graded_commutator(&self, x: &DiffForm<C>) -> DiffForm<C> {
        let theta = DiffForm::theta();
        let mut out = DiffForm::zero();
        let max = x.terms.keys().map(Word::degree).max().unwrap_or(0);
        for k in 0..=max {
            let part = x.component(k);
            if part.is_zero() {
                continue;
            }
            let left = self.wedge(&theta, &part);
            let right = self.wedge(&part, &theta);
            out = out.add(&if k % 2 == 0 {
                left.sub(&right)
            } else {
                left.add(&right)
            });
        }
        out
    }

    /// `d = μ⁻¹[θ, }` when normalized, `[θ, }` otherwise.
    pub fn exterior_d(
        &self,
        x: &DiffForm<C>,
        normalized: bool,
    ) -> Result<DiffForm<C>, CalculusError> {
        let c = self.d_factor(normalized)?;
        Ok(self.graded_commutator(x).scale(&c))
    }

    fn d_factor(&self, normalized: bool) -> Result<C::Scalar, CalculusError> {
        if normalized {
            self.params
                .mu_inv()
                .map_err(|_| CalculusError::Unnormalizable)
        } else {
            Ok(C::Scalar::one())
        }
    }

    /// The unique `∂^i f` with `d f = Σ (∂^i f) e_i`.
    pub fn partials(&self, f: &C, normalized: bool) -> Result<[C; 4], CalculusError> {
        let df = self.exterior_d(&DiffForm::function(f.clone()), normalized)?;
        Ok(df.components())
    }

    /// The printed values `d e_a = −e_c∧e_b`, `d e_b = −e_b∧(q⁻²e_a − e_d)`,
    /// `d e_c = e_c∧(e_a − q²e_d)`, `d e_d = e_c∧e_b`.
    pub fn maurer_cartan(&self) -> [DiffForm<C>; 4] {
        use FormBasis::{A, B, C as Cc, D};
        let p = &self.params;
        let one = C::Scalar::one();
        let q2inv = p.qinv.clone() * &p.qinv;
        [
            self.two_form(&[(-one.clone(), Cc, B)]),
            self.two_form(&[(-q2inv, B, A), (one.clone(), B, D)]),
            self.two_form(&[(one.clone(), Cc, A), (-p.q2.clone(), Cc, D)]),
            self.two_form(&[(one, Cc, B)]),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QPlusI;
    use FormBasis::*;

    type E = AlgebraElement<QPlusI>;

    #[test]
    fn maurer_cartan_at_i() {
        let cal = Calculus::<E>::root();
        let printed = cal.maurer_cartan();
        for e in FormBasis::ALL {
            let d = cal.exterior_d(&DiffForm::basis_form(e), true).unwrap();
            assert_eq!(d, printed[e.index()], "d {e}");
        }
    }

    #[test]
    fn d_squared_fails_on_even_alpha_odd_beta() {
        let cal = Calculus::<E>::root();
        for p in 0..4 {
            for r in 0..4 {
                let f = DiffForm::function(E::monomial(p, r));
                let df = cal.exterior_d(&f, true).unwrap();
                let dd = cal.exterior_d(&df, true).unwrap();
                assert_eq!(dd.is_zero(), p % 2 == 1 || r % 2 == 0, "α^{p} β^{r}");
            }
        }
    }

    #[test]
    fn relation_ideal_is_not_a_bimodule() {
        let cal = Calculus::<E>::root();
        let defects = cal.relation_defects();
        assert!(defects.iter().any(|(_, _, f)| !f.is_zero()));
        assert!(defects
            .iter()
            .filter(|(l, _, _)| l.starts_with("e_a∧e_a") || l.starts_with("e_a∧e_d + e_d∧e_a"))
            .all(|(_, _, f)| f.is_zero()));
    }

    #[test]
    fn partial_of_one_vanishes_and_beta_projects_to_e_c() {
        let cal = Calculus::<E>::root();
        for c in cal.partials(&E::one(), true).unwrap() {
            assert!(c.is_zero());
        }
        let d = cal.partials(&E::beta(), true).unwrap();
        let eps: Vec<_> = d.iter().map(|x| x.counit()).collect();
        assert!(eps[0].is_zero() && eps[1].is_zero() && eps[3].is_zero());
        assert!(eps[2].is_one());
    }

    #[test]
    fn constant_forms_wedge_is_scalar() {
        let cal = Calculus::<GaussianRational>::constant(QMode::PlusI).unwrap();
        let x = cal.wedge(&DiffForm::basis_form(D), &DiffForm::basis_form(D));
        assert_eq!(x, cal.two_form(&[(GaussianRational::from_int(2), C, B)]));
    }

    #[test]
    fn json_shape() {
        let cal = Calculus::<GaussianRational>::constant(QMode::PlusI).unwrap();
        let x = cal.two_form(&[(GaussianRational::one(), C, B)]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(
            s,
            r#"{"degree":2,"terms":[{"coeff":"1","wedge":["e_b","e_c"]}]}"#
        );
    }
}
