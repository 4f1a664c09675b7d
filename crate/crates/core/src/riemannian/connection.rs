use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::RiemannianError;
use crate::calculus::{AdTable, Calculus, Coefficient, DiffForm, FormBasis, Word};
use crate::fixtures::ConnectionFixture;
use crate::linalg::{LinalgError, Matrix};
use crate::qparams::QParams;
use crate::scalars::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectionSource {
    Solved,
    PrintedClosedForms,
}

/// `A_i = Σ_j A_i^j e_j` with constant coefficients, stored `a[i][j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinConnection<F> {
    pub a: [[F; 4]; 4],
    pub source: ConnectionSource,
}

pub fn entry_label(i: FormBasis, j: FormBasis) -> String {
    format!("A_{}^{}", i.letter(), j.letter())
}

impl<F: Field> SpinConnection<F> {
    pub fn zero(source: ConnectionSource) -> Self {
        SpinConnection {
            a: std::array::from_fn(|_| std::array::from_fn(|_| F::zero())),
            source,
        }
    }

    pub fn get(&self, i: FormBasis, j: FormBasis) -> &F {
        &self.a[i.index()][j.index()]
    }

    /// The printed closed forms, entries not printed taken as zero.
    pub fn printed(fx: &ConnectionFixture, p: &QParams<F>) -> Result<Self, RiemannianError> {
        let mut out = Self::zero(ConnectionSource::PrintedClosedForms);
        for c in &fx.coefficients {
            let (i, j) = c.indices().expect("validated on load");
            out.a[i][j] = p.lift(&c.closed_form()?)?;
        }
        Ok(out)
    }

    /// `A_i` as a 1-form.
    pub fn form<C: Coefficient<Scalar = F>>(&self, i: FormBasis) -> DiffForm<C> {
        DiffForm::from_components(self.a[i.index()].clone().map(C::scalar))
    }

    pub fn entries(&self) -> BTreeMap<String, F> {
        let mut out = BTreeMap::new();
        for i in FormBasis::ALL {
            for j in FormBasis::ALL {
                out.insert(entry_label(i, j), self.get(i, j).clone());
            }
        }
        out
    }
}

impl<F: Field> Serialize for SpinConnection<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: BTreeMap<String, String> = self
            .entries()
            .into_iter()
            .map(|(k, v)| (k, v.to_string()))
            .collect();
        let mut st = s.serialize_struct("SpinConnection", 2)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("coefficients", &entries)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EquationKind {
    Torsion,
    Cotorsion,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquationLabel {
    pub kind: EquationKind,
    pub form: FormBasis,
    pub word: Word,
}

/// One linear equation per Λ² basis coefficient of each torsion and cotorsion
/// expression, in the unknowns `A_i^j` (column `4i + j`).
#[derive(Clone, Debug)]
pub struct ConnectionSystem<F> {
    pub matrix: Matrix<F>,
    pub rhs: Vec<F>,
    pub labels: Vec<EquationLabel>,
}

fn unknown(i: usize, j: usize) -> usize {
    4 * i + j
}

/// Torsion `d e_i + Σ ad_L(jk|i) A_j∧e_k` and cotorsion
/// `d e_i + Σ ad_R(jk|i) e_j∧A_k` for each i.
pub fn residuals<F: Field + Coefficient<Scalar = F>>(
    cal: &Calculus<F>,
    ad: &AdTable<F>,
    conn: &SpinConnection<F>,
) -> Result<([DiffForm<F>; 4], [DiffForm<F>; 4]), RiemannianError> {
    let mut tor: [DiffForm<F>; 4] = std::array::from_fn(|_| DiffForm::zero());
    let mut cot: [DiffForm<F>; 4] = std::array::from_fn(|_| DiffForm::zero());
    for i in FormBasis::ALL {
        let de = cal.exterior_d(&DiffForm::basis_form(i), true)?;
        let mut t = de.clone();
        let mut c = de;
        for j in FormBasis::ALL {
            for k in FormBasis::ALL {
                let l = &ad.left[i.index()][j.index()][k.index()];
                if !l.is_zero() {
                    let w = cal.wedge(&conn.form(j), &DiffForm::basis_form(k));
                    t = t.add(&w.scale(l));
                }
                let r = &ad.right[i.index()][j.index()][k.index()];
                if !r.is_zero() {
                    let w = cal.wedge(&DiffForm::basis_form(j), &conn.form(k));
                    c = c.add(&w.scale(r));
                }
            }
        }
        tor[i.index()] = t;
        cot[i.index()] = c;
    }
    Ok((tor, cot))
}

impl<F: Field + Coefficient<Scalar = F>> ConnectionSystem<F> {
    pub fn assemble(cal: &Calculus<F>, ad: &AdTable<F>) -> Result<Self, RiemannianError> {
        let basis: Vec<Word> = cal.exterior().basis(2).to_vec();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let mut labels = Vec::new();
        for kind in [EquationKind::Torsion, EquationKind::Cotorsion] {
            for i in FormBasis::ALL {
                let de = cal.exterior_d(&DiffForm::basis_form(i), true)?;
                // column u collects the 2-form multiplying A_j^m
                let mut cols: Vec<DiffForm<F>> = vec![DiffForm::zero(); 16];
                for j in FormBasis::ALL {
                    for k in FormBasis::ALL {
                        let (tbl, x) = match kind {
                            EquationKind::Torsion => (&ad.left, j),
                            EquationKind::Cotorsion => (&ad.right, k),
                        };
                        let c = &tbl[i.index()][j.index()][k.index()];
                        if c.is_zero() {
                            continue;
                        }
                        for m in FormBasis::ALL {
                            let w = match kind {
                                EquationKind::Torsion => Word::pair(m, k),
                                EquationKind::Cotorsion => Word::pair(j, m),
                            };
                            let u = unknown(x.index(), m.index());
                            cols[u] = cols[u].add(&cal.word(&w, c.clone()));
                        }
                    }
                }
                for b in &basis {
                    let row: Vec<F> = cols
                        .iter()
                        .map(|f| f.coeff(b).cloned().unwrap_or_else(F::zero))
                        .collect();
                    let constant = de.coeff(b).cloned().unwrap_or_else(F::zero);
                    if row.iter().all(Field::is_zero) && constant.is_zero() {
                        continue;
                    }
                    rows.push(row);
                    rhs.push(-constant);
                    labels.push(EquationLabel {
                        kind,
                        form: i,
                        word: b.clone(),
                    });
                }
            }
        }
        Ok(ConnectionSystem {
            matrix: Matrix::from_rows(rows)?,
            rhs,
            labels,
        })
    }

    pub fn equations(&self) -> usize {
        self.rhs.len()
    }

    fn augmented(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.matrix.rows(), 17);
        for r in 0..self.matrix.rows() {
            for c in 0..16 {
                m[(r, c)] = self.matrix[(r, c)].clone();
            }
            m[(r, 16)] = self.rhs[r].clone();
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn augmented_rank(&self) -> usize {
        self.augmented().rank()
    }

    /// The unique exact solution, or the rank defect.
    pub fn solve(&self) -> Result<SpinConnection<F>, LinalgError> {
        let x = self.matrix.solve(&self.rhs)?;
        let mut out = SpinConnection::zero(ConnectionSource::Solved);
        for i in 0..4 {
            for j in 0..4 {
                out.a[i][j] = x[unknown(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// Whether `Σ coeffs[u] A_u + constant = 0` is a consequence of the system.
    pub fn implies(&self, coeffs: &[(FormBasis, FormBasis, F)], constant: F) -> bool {
        let aug = self.augmented();
        let mut extra = vec![F::zero(); 17];
        for (i, j, c) in coeffs {
            let u = unknown(i.index(), j.index());
            extra[u] = extra[u].clone() + c;
        }
        extra[16] = -constant;
        let mut rows: Vec<Vec<F>> = (0..aug.rows()).map(|r| aug.row(r).to_vec()).collect();
        let before = aug.rank();
        rows.push(extra);
        Matrix::from_rows(rows)
            .map(|m| m.rank() == before)
            .unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::Fixtures;
    use crate::qparams::QMode;
    use crate::scalars::GaussianRational;

    #[test]
    fn printed_closed_form_values() {
        let fx = Fixtures::embedded().unwrap();
        let p1 = QParams::new(GaussianRational::one()).unwrap();
        let c = SpinConnection::printed(&fx.connection, &p1).unwrap();
        assert_eq!(
            c.get(FormBasis::A, FormBasis::A),
            &GaussianRational::from_int(6)
        );
        assert_eq!(
            c.get(FormBasis::D, FormBasis::A),
            &GaussianRational::from_int(4)
        );
        assert!(c.get(FormBasis::B, FormBasis::B).is_zero());
        let pi = QParams::at(QMode::PlusI).unwrap();
        let c = SpinConnection::printed(&fx.connection, &pi).unwrap();
        assert_eq!(
            c.get(FormBasis::B, FormBasis::B),
            &GaussianRational::from_parts(-11, 17, 7, 17)
        );
    }

    #[test]
    fn system_at_i_is_inconsistent() {
        let p = QParams::at(QMode::PlusI).unwrap();
        let cal = Calculus::<GaussianRational>::constant(QMode::PlusI).unwrap();
        let ad = AdTable::printed(&p).unwrap();
        let sys = ConnectionSystem::assemble(&cal, &ad).unwrap();
        assert_eq!(sys.equations(), 48);
        assert_eq!(sys.rank(), 16);
        assert_eq!(sys.augmented_rank(), 17);
        assert!(matches!(
            sys.solve(),
            Err(LinalgError::Inconsistent {
                rank: 16,
                augmented_rank: 17
            })
        ));
    }
}
