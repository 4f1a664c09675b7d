//! Printed reference data: translation matrices, the connection table and the
//! three eigenvalue lists.
//!
//! The JSON files under `fixtures/` are compiled in. Setting `NCGQ_FIXTURES`
//! to a directory loads same-named files from there instead.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::qparams::QMode;
use crate::scalars::{Complex64, Field, Poly, RationalFunction, ScalarError};

pub const FIXTURE_ENV: &str = "NCGQ_FIXTURES";
const SUPPORTED_VERSION: u32 = 1;

const TRANSLATION_FILE: &str = "translation_matrices.json";
const CONNECTION_FILE: &str = "connection_table.json";
const SPECTRUM_FILES: [(QMode, &str); 3] = [
    (QMode::One, "spectrum_q1.json"),
    (QMode::PlusI, "spectrum_qi.json"),
    (QMode::MinusI, "spectrum_qminusi.json"),
];

const EMBEDDED: [(&str, &str); 5] = [
    (
        TRANSLATION_FILE,
        include_str!("../fixtures/translation_matrices.json"),
    ),
    (
        CONNECTION_FILE,
        include_str!("../fixtures/connection_table.json"),
    ),
    (
        "spectrum_q1.json",
        include_str!("../fixtures/spectrum_q1.json"),
    ),
    (
        "spectrum_qi.json",
        include_str!("../fixtures/spectrum_qi.json"),
    ),
    (
        "spectrum_qminusi.json",
        include_str!("../fixtures/spectrum_qminusi.json"),
    ),
];

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read fixture {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed fixture {name}: {source}")]
    Json {
        name: String,
        source: serde_json::Error,
    },
    #[error("fixture {name}: {reason}")]
    Invalid { name: String, reason: String },
    #[error("missing fixture: {0}")]
    Missing(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub row: usize,
    pub col: usize,
    pub coeff: Poly,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrintedMatrix {
    pub name: String,
    pub printed_symbol: String,
    pub entries: Vec<MatrixEntry>,
}

impl PrintedMatrix {
    /// The 16×16 matrix with every polynomial entry evaluated at `q`.
    pub fn evaluate<F: Field>(&self, q: &F) -> Matrix<F> {
        let mut m = Matrix::zeros(16, 16);
        for e in &self.entries {
            m[(e.row, e.col)] = e.coeff.eval(q);
        }
        m
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixClaim {
    pub lhs: String,
    pub rhs: String,
    pub printed: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TranslationFixture {
    pub source: String,
    pub version: u32,
    pub basis: Vec<String>,
    pub matrices: Vec<PrintedMatrix>,
    pub claims: Vec<MatrixClaim>,
}

impl TranslationFixture {
    pub fn matrix(&self, name: &str) -> Result<&PrintedMatrix, FixtureError> {
        self.matrices
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| FixtureError::Missing(format!("{TRANSLATION_FILE}: {name}")))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrintedCoefficient {
    /// `A_i^j`, the e_j component of A_i.
    pub entry: String,
    pub num: Poly,
    pub den: Poly,
    pub printed: String,
    #[serde(default)]
    pub corrupted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reading: Option<String>,
}

impl PrintedCoefficient {
    pub fn closed_form(&self) -> Result<RationalFunction, ScalarError> {
        RationalFunction::new(self.num.clone(), self.den.clone())
    }

    /// `(i, j)` form indices parsed from `A_i^j`.
    pub fn indices(&self) -> Option<(usize, usize)> {
        let rest = self.entry.strip_prefix("A_")?;
        let (i, j) = rest.split_once('^')?;
        Some((form_index(i)?, form_index(j)?))
    }
}

fn form_index(s: &str) -> Option<usize> {
    match s {
        "a" => Some(0),
        "b" => Some(1),
        "c" => Some(2),
        "d" => Some(3),
        _ => None,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConnectionFixture {
    pub source: String,
    pub version: u32,
    pub convention: String,
    pub coefficients: Vec<PrintedCoefficient>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumFixture {
    pub source: String,
    pub version: u32,
    pub q: QMode,
    pub normalization: String,
    pub reference: String,
    pub digits: u32,
    pub eigenvalues: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_claim: Option<String>,
}

impl SpectrumFixture {
    pub fn values(&self) -> Vec<Complex64> {
        self.eigenvalues
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Fixtures {
    pub translation: TranslationFixture,
    pub connection: ConnectionFixture,
    pub spectra: Vec<SpectrumFixture>,
    /// Directory the data came from, or `None` for the compiled-in copy.
    pub origin: Option<PathBuf>,
}

impl Fixtures {
    /// Honors `NCGQ_FIXTURES`, falling back to the compiled-in data.
    pub fn load() -> Result<Self, FixtureError> {
        match std::env::var_os(FIXTURE_ENV) {
            Some(dir) if !dir.is_empty() => Self::from_dir(Path::new(&dir)),
            _ => Self::embedded(),
        }
    }

    pub fn embedded() -> Result<Self, FixtureError> {
        Self::build(
            |name| {
                EMBEDDED
                    .iter()
                    .find(|(n, _)| *n == name)
                    .map(|(_, s)| s.to_string())
                    .ok_or_else(|| FixtureError::Missing(name.to_string()))
            },
            None,
        )
    }

    pub fn from_dir(dir: &Path) -> Result<Self, FixtureError> {
        Self::build(
            |name| {
                let path = dir.join(name);
                std::fs::read_to_string(&path).map_err(|source| FixtureError::Io { path, source })
            },
            Some(dir.to_path_buf()),
        )
    }

    fn build(
        read: impl Fn(&str) -> Result<String, FixtureError>,
        origin: Option<PathBuf>,
    ) -> Result<Self, FixtureError> {
        let translation: TranslationFixture = parse(TRANSLATION_FILE, &read(TRANSLATION_FILE)?)?;
        check_header(TRANSLATION_FILE, &translation.source, translation.version)?;
        for m in &translation.matrices {
            if let Some(e) = m.entries.iter().find(|e| e.row >= 16 || e.col >= 16) {
                return Err(FixtureError::Invalid {
                    name: TRANSLATION_FILE.into(),
                    reason: format!("{} entry ({}, {}) outside 16x16", m.name, e.row, e.col),
                });
            }
        }
        let connection: ConnectionFixture = parse(CONNECTION_FILE, &read(CONNECTION_FILE)?)?;
        check_header(CONNECTION_FILE, &connection.source, connection.version)?;
        for c in &connection.coefficients {
            if c.indices().is_none() {
                return Err(FixtureError::Invalid {
                    name: CONNECTION_FILE.into(),
                    reason: format!("bad entry label {:?}", c.entry),
                });
            }
        }
        let mut spectra = Vec::new();
        for (mode, file) in SPECTRUM_FILES {
            let s: SpectrumFixture = parse(file, &read(file)?)?;
            check_header(file, &s.source, s.version)?;
            if s.q != mode {
                return Err(FixtureError::Invalid {
                    name: file.into(),
                    reason: format!("expected q = {mode}, found {}", s.q),
                });
            }
            spectra.push(s);
        }
        Ok(Fixtures {
            translation,
            connection,
            spectra,
            origin,
        })
    }

    pub fn spectrum(&self, mode: QMode) -> Option<&SpectrumFixture> {
        self.spectra.iter().find(|s| s.q == mode)
    }
}

fn parse<T: for<'de> Deserialize<'de>>(name: &str, text: &str) -> Result<T, FixtureError> {
    serde_json::from_str(text).map_err(|source| FixtureError::Json {
        name: name.to_string(),
        source,
    })
}

fn check_header(name: &str, source: &str, version: u32) -> Result<(), FixtureError> {
    if source != "paper" {
        return Err(FixtureError::Invalid {
            name: name.into(),
            reason: format!("source must be \"paper\", found {source:?}"),
        });
    }
    if version != SUPPORTED_VERSION {
        return Err(FixtureError::Invalid {
            name: name.into(),
            reason: format!("unsupported version {version}"),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::GaussianRational;

    #[test]
    fn embedded_fixtures_parse() {
        let f = Fixtures::embedded().unwrap();
        assert_eq!(f.translation.matrices.len(), 3);
        assert_eq!(f.connection.coefficients.len(), 10);
        for s in &f.spectra {
            assert_eq!(s.eigenvalues.len(), 32);
        }
    }

    #[test]
    fn printed_r_beta_sends_beta_cubed_to_one() {
        let f = Fixtures::embedded().unwrap();
        let rb = f
            .translation
            .matrix("R_beta")
            .unwrap()
            .evaluate(&GaussianRational::i());
        assert_eq!(rb[(0, 3)], GaussianRational::one());
    }

    #[test]
    fn corrupted_entry_is_flagged() {
        let f = Fixtures::embedded().unwrap();
        let bad: Vec<_> = f
            .connection
            .coefficients
            .iter()
            .filter(|c| c.corrupted)
            .collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].entry, "A_d^b");
        assert_eq!(bad[0].indices(), Some((3, 1)));
    }

    #[test]
    fn directory_override_reports_missing_files() {
        let err = Fixtures::from_dir(Path::new("/nonexistent-ncgq-dir")).unwrap_err();
        assert!(matches!(err, FixtureError::Io { .. }));
    }
}
