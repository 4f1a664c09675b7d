//! Exact coefficient arithmetic: Gaussian rationals for q = ±i, rational
//! functions in a formal q, and the double-precision complex type used only
//! by the spectral layer.

mod field;
mod gaussian;
mod poly;
mod ratfunc;

pub use field::{format_rational, parse_rational, Field};
pub use gaussian::GaussianRational;
pub use num_complex::Complex64;
pub use num_rational::BigRational;
pub use poly::Poly;
pub use ratfunc::{eval_ratfunc, RationalFunction};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
}

/// `[n]_x = (1 - x^n) / (1 - x)` evaluated as the finite sum `1 + x + ... + x^{n-1}`,
/// which stays defined at `x = 1`.
pub fn qint<F: Field>(x: &F, n: u32) -> F {
    let mut acc = F::zero();
    let mut p = F::one();
    for _ in 0..n {
        acc = acc + &p;
        p = p * x;
    }
    acc
}
