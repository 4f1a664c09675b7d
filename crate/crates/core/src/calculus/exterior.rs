use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use super::FormBasis;
use crate::linalg::{sparse_rref, SparseRow};
use crate::qparams::QParams;
use crate::scalars::Field;

/// Highest degree whose normal form is ever built; the algebra vanishes
/// well before this.
pub const MAX_DEGREE: usize = 6;

/// A word `e_{i1} ∧ ⋯ ∧ e_{ik}`, ordered by length and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<FormBasis>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(e: FormBasis) -> Self {
        Word(vec![e])
    }

    pub fn pair(x: FormBasis, y: FormBasis) -> Self {
        Word(vec![x, y])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    fn code(&self) -> usize {
        self.0.iter().fold(0, |acc, e| 4 * acc + e.index())
    }

    fn decode(k: usize, mut code: usize) -> Word {
        let mut v = vec![FormBasis::A; k];
        for slot in v.iter_mut().rev() {
            *slot = FormBasis::from_index(code % 4);
            code /= 4;
        }
        Word(v)
    }

    /// All `4^k` words of length k in increasing order.
    pub fn all(k: usize) -> impl Iterator<Item = Word> {
        (0..4usize.pow(k as u32)).map(move |c| Word::decode(k, c))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<&str> = self.0.iter().map(|e| e.symbol()).collect();
        write!(f, "{}", parts.join("∧"))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// A quadratic relation `Σ c · x∧y = 0`.
#[derive(Clone, Debug)]
pub struct Relation<F> {
    pub label: &'static str,
    pub terms: Vec<(F, FormBasis, FormBasis)>,
}

impl<F: Field> fmt::Display for Relation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, x, y)| format!("({c}) {}∧{}", x.symbol(), y.symbol()))
            .collect();
        write!(f, "{} = 0", parts.join(" + "))
    }
}

#[derive(Debug)]
struct Degree<F> {
    basis: Vec<Word>,
    reductions: HashMap<Word, Vec<(Word, F)>>,
}

/// The quadratic algebra Λ on e_a, e_b, e_c, e_d.
///
/// Degree-k normal forms come from reducing the span of all relation
/// multiples in degree k. Larger words are eliminated first, so the surviving
/// basis consists of the smallest words in each degree.
#[derive(Debug)]
pub struct ExteriorAlgebra<F> {
    relations: Vec<Relation<F>>,
    degrees: Vec<OnceLock<Degree<F>>>,
}

impl<F: Field> ExteriorAlgebra<F> {
    pub fn new(relations: Vec<Relation<F>>) -> Self {
        ExteriorAlgebra {
            relations,
            degrees: (0..=MAX_DEGREE).map(|_| OnceLock::new()).collect(),
        }
    }

    /// The four printed relations, the three further relations used in the
    /// connection computation, and `e_a² = e_b² = e_c² = 0`.
    pub fn standard(p: &QParams<F>) -> Self {
        use FormBasis::{A, B, C, D};
        let one = F::one();
        let (mu, q2) = (p.mu.clone(), p.q2.clone());
        let rel = |label, terms: Vec<(F, FormBasis, FormBasis)>| Relation { label, terms };
        Self::new(vec![
            rel(
                "e_a∧e_d + e_d∧e_a + μ e_c∧e_b = 0",
                vec![(one.clone(), A, D), (one.clone(), D, A), (mu.clone(), C, B)],
            ),
            rel(
                "e_d∧e_c + q² e_c∧e_d + μ e_a∧e_c = 0",
                vec![(one.clone(), D, C), (q2.clone(), C, D), (mu.clone(), A, C)],
            ),
            rel(
                "e_b∧e_d + q² e_d∧e_b + μ e_b∧e_a = 0",
                vec![(one.clone(), B, D), (q2.clone(), D, B), (mu.clone(), B, A)],
            ),
            rel(
                "e_d∧e_d = μ e_c∧e_b",
                vec![(one.clone(), D, D), (-mu.clone(), C, B)],
            ),
            rel(
                "e_d∧e_a + e_a∧e_d + μ e_b∧e_c = 0",
                vec![(one.clone(), D, A), (one.clone(), A, D), (mu.clone(), B, C)],
            ),
            rel(
                "e_c∧e_d + q² e_d∧e_c + μ e_c∧e_a = 0",
                vec![(one.clone(), C, D), (q2.clone(), D, C), (mu.clone(), C, A)],
            ),
            rel(
                "e_d∧e_b + q² e_b∧e_d + μ e_a∧e_b = 0",
                vec![(one.clone(), D, B), (q2.clone(), B, D), (mu, A, B)],
            ),
            rel("e_a∧e_a = 0", vec![(one.clone(), A, A)]),
            rel("e_b∧e_b = 0", vec![(one.clone(), B, B)]),
            rel("e_c∧e_c = 0", vec![(one, C, C)]),
        ])
    }

    pub fn relations(&self) -> &[Relation<F>] {
        &self.relations
    }

    fn degree(&self, k: usize) -> &Degree<F> {
        assert!(k <= MAX_DEGREE, "exterior degree {k} exceeds {MAX_DEGREE}");
        self.degrees[k].get_or_init(|| {
            if k >= 1 && self.degree(k - 1).basis.is_empty() {
                return Degree {
                    basis: Vec::new(),
                    reductions: HashMap::new(),
                };
            }
            self.build_degree(k)
        })
    }

    fn build_degree(&self, k: usize) -> Degree<F> {
        let n = 4usize.pow(k as u32);
        let col = |w: &Word| n - 1 - w.code();
        let mut rows: Vec<SparseRow<F>> = Vec::new();
        if k >= 2 {
            for pos in 0..k - 1 {
                for pre in Word::all(pos) {
                    for post in Word::all(k - 2 - pos) {
                        for r in &self.relations {
                            let mut row = SparseRow::new();
                            for (c, x, y) in &r.terms {
                                let w = pre.concat(&Word::pair(*x, *y)).concat(&post);
                                let e = row.entry(col(&w)).or_insert_with(F::zero);
                                *e = e.clone() + c;
                            }
                            row.retain(|_, v| !v.is_zero());
                            if !row.is_empty() {
                                rows.push(row);
                            }
                        }
                    }
                }
            }
        }
        let reduced = sparse_rref(rows);
        let mut reductions = HashMap::new();
        let mut pivots = std::collections::HashSet::new();
        for (p, row) in reduced {
            pivots.insert(p);
            let terms = row
                .into_iter()
                .filter(|(c, _)| *c != p)
                .map(|(c, v)| (Word::decode(k, n - 1 - c), -v))
                .collect();
            reductions.insert(Word::decode(k, n - 1 - p), terms);
        }
        let basis = Word::all(k).filter(|w| !pivots.contains(&col(w))).collect();
        Degree { basis, reductions }
    }

    /// Normal-form basis words of degree k.
    pub fn basis(&self, k: usize) -> &[Word] {
        &self.degree(k).basis
    }

    pub fn dim(&self, k: usize) -> usize {
        self.basis(k).len()
    }

    /// `dim Λ^k` for k = 0, 1, … up to and including the first zero.
    pub fn graded_dimensions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for k in 0..=MAX_DEGREE {
            let d = self.dim(k);
            out.push(d);
            if d == 0 {
                break;
            }
        }
        out
    }

    pub fn top_degree(&self) -> usize {
        self.graded_dimensions()
            .iter()
            .rposition(|&d| d > 0)
            .unwrap_or(0)
    }

    /// The word rewritten on the basis of its degree.
    pub fn normal_form(&self, w: &Word) -> Vec<(Word, F)> {
        let deg = self.degree(w.degree().min(MAX_DEGREE));
        if w.degree() > MAX_DEGREE {
            assert!(
                deg.basis.is_empty(),
                "word longer than {MAX_DEGREE} in a nonvanishing degree"
            );
            return Vec::new();
        }
        match deg.reductions.get(w) {
            Some(terms) => terms.clone(),
            None if deg.basis.is_empty() => Vec::new(),
            None => vec![(w.clone(), F::one())],
        }
    }

    /// Normal form of a scalar combination of words.
    pub fn reduce(&self, terms: impl IntoIterator<Item = (Word, F)>) -> BTreeMap<Word, F> {
        let mut out: BTreeMap<Word, F> = BTreeMap::new();
        for (w, c) in terms {
            if c.is_zero() {
                continue;
            }
            for (b, v) in self.normal_form(&w) {
                let e = out.entry(b).or_insert_with(F::zero);
                *e = e.clone() + c.clone() * v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Whether the combination lies in the relation ideal.
    pub fn vanishes(&self, terms: impl IntoIterator<Item = (Word, F)>) -> bool {
        self.reduce(terms).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qparams::QMode;
    use crate::scalars::{GaussianRational, RationalFunction};
    use FormBasis::*;

    fn at_i() -> ExteriorAlgebra<GaussianRational> {
        ExteriorAlgebra::standard(&QParams::at(QMode::PlusI).unwrap())
    }

    #[test]
    fn graded_dimensions_at_i() {
        let l = at_i();
        assert_eq!(l.graded_dimensions(), vec![1, 4, 6, 4, 1, 0]);
        assert_eq!(l.top_degree(), 4);
    }

    #[test]
    fn squares_and_printed_relation() {
        let l = at_i();
        let g = GaussianRational::one();
        assert!(l.vanishes([(Word::pair(A, A), g.clone())]));
        // e_d∧e_d = μ e_c∧e_b with μ = 2
        assert!(l.vanishes([
            (Word::pair(D, D), g.clone()),
            (Word::pair(C, B), GaussianRational::from_int(-2)),
        ]));
        // e_c∧e_b = e_b∧e_c
        assert!(l.vanishes([(Word::pair(C, B), g.clone()), (Word::pair(B, C), -g)]));
    }

    #[test]
    fn basis_words_are_fixed_points() {
        let l = at_i();
        for k in 0..=4 {
            for w in l.basis(k) {
                assert_eq!(l.normal_form(w), vec![(w.clone(), GaussianRational::one())]);
            }
        }
        assert!(l.normal_form(&Word(vec![A, B, C, D, A])).is_empty());
    }

    #[test]
    fn generic_degree_two() {
        let l = ExteriorAlgebra::standard(&QParams::<RationalFunction>::generic());
        assert_eq!(l.dim(1), 4);
        assert_eq!(l.dim(2), 6);
    }

    #[test]
    fn word_order_is_graded() {
        assert!(Word::letter(D) < Word::pair(A, A));
        assert_eq!(Word::pair(C, B).to_string(), "e_c∧e_b");
        assert_eq!(Word::all(2).count(), 16);
    }
}
