//! The Dirac operator on Weyl spinors: gamma matrices, the connection term,
//! the 32×32 operator for q ∈ {1, i, −i}, a dense complex eigensolver and
//! matching against reference spectra.

mod eigen;
mod gamma;
mod matching;
mod operator;
mod slash;

pub use eigen::{eigenvalues, residual, ComplexMatrix, Eigenvalues};
pub use gamma::{gamma, gamma_roundtrip};
pub use matching::{compare_spectrum, hungarian, MatchReport, MatchedPair};
pub use operator::{build_dirac, printed_scalars, DiracMatrix, DiracOptions, SPINOR_DIM};
pub use slash::{
    a_slash, a_slash_printed, connection_scalars, pi_s_inverse_derived, pi_s_inverse_printed,
    PiSInverse, ScalarPlacement, Spinor2,
};

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::fixtures::FixtureError;
use crate::qparams::QMode;
use crate::riemannian::RiemannianError;
use crate::scalars::ScalarError;

#[derive(Debug, Error)]
pub enum DiracError {
    #[error("the Dirac operator is defined only for q = 1, i, -i (got {0})")]
    UnsupportedMode(QMode),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error(
        "QR iteration did not converge after {sweeps} sweeps (last subdiagonal {subdiagonal:e})"
    )]
    NoConvergence { sweeps: usize, subdiagonal: f64 },
    #[error("spectrum lengths differ: {computed} computed, {reference} reference")]
    LengthMismatch { computed: usize, reference: usize },
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Riemannian(#[from] RiemannianError),
}

pub(crate) fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

pub(crate) fn ser_complex_list<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

/// Sorted eigenvalues of a Dirac matrix with their residuals.
#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub q: QMode,
    pub with_connection: bool,
    #[serde(serialize_with = "ser_complex_list")]
    pub eigenvalues: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    /// `|Σλ − tr D̸| / ‖D̸‖_F`
    pub trace_defect: f64,
}

impl Spectrum {
    pub fn compute(d: &DiracMatrix) -> Result<Self, DiracError> {
        let e = eigenvalues(&d.matrix)?;
        let mut pairs: Vec<(Complex64, f64)> = e.values.into_iter().zip(e.residuals).collect();
        pairs.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
        let (eigenvalues, residuals): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let sum: Complex64 = eigenvalues.iter().sum();
        let norm = d.matrix.frobenius().max(f64::MIN_POSITIVE);
        Ok(Spectrum {
            q: d.mode,
            with_connection: d.options.with_connection,
            max_residual: residuals.iter().copied().fold(0.0, f64::max),
            trace_defect: (sum - d.matrix.trace()).norm() / norm,
            eigenvalues,
            residuals,
        })
    }

    pub fn conj(&self) -> Vec<Complex64> {
        self.eigenvalues.iter().map(Complex64::conj).collect()
    }
}
