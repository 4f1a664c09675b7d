//! Quantum Riemannian geometry on the calculus: the metric, the spin
//! connection as the solution of torsion and cotorsion freeness, its
//! curvature and the regularity condition.

mod connection;
mod curvature;
mod metric;
mod printed;
mod regularity;

pub use connection::{
    entry_label, residuals, ConnectionSource, ConnectionSystem, EquationKind, EquationLabel,
    SpinConnection,
};
pub use curvature::{tensoriality_defects, Curvature, TensorialityDefect, VectorForm};
pub use metric::{rho_closed_form, wedge_eta, Metric};
pub use printed::{
    evaluate_quadratic, nabla_table, printed_nabla_table, printed_riemann, QuadraticTerm,
};
pub use regularity::{regularity_defects, regularity_kernel, RegularityDefect};

use thiserror::Error;

use crate::calculus::CalculusError;
use crate::fixtures::FixtureError;
use crate::linalg::LinalgError;
use crate::scalars::ScalarError;

#[derive(Debug, Error)]
pub enum RiemannianError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
}
