//! The 4-dimensional bicovariant calculus: the exterior algebra Λ on the
//! invariant forms e_a, e_b, e_c, e_d, the bimodule structure of forms over
//! the function algebra, the exterior derivative `d = μ⁻¹[θ, }` and the
//! braided-Lie constants.

mod adjoint;
mod bimodule;
mod exterior;
mod form;

pub use adjoint::{compute_ad, pi_tilde, AdTable, Rank3};
pub use bimodule::{
    bimodule_rules, commute_past_word, pass_table_holds_relations, power_rules, BimoduleRule,
    PowerRule,
};
pub use exterior::{ExteriorAlgebra, Relation, Word, MAX_DEGREE};
pub use form::{Calculus, Coefficient, DiffForm};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::ScalarError;

#[derive(Debug, Error)]
pub enum CalculusError {
    #[error("the normalized derivative needs μ ≠ 0, which fails at q = 1")]
    Unnormalizable,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The invariant 1-forms, `e_a = e₁¹, e_b = e₁², e_c = e₂¹, e_d = e₂²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormBasis {
    #[serde(rename = "e_a")]
    A,
    #[serde(rename = "e_b")]
    B,
    #[serde(rename = "e_c")]
    C,
    #[serde(rename = "e_d")]
    D,
}

impl FormBasis {
    pub const ALL: [FormBasis; 4] = [FormBasis::A, FormBasis::B, FormBasis::C, FormBasis::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }

    /// `(row, column)` in the 2×2 endomorphism labeling.
    pub fn endo(self) -> (usize, usize) {
        (self.index() / 2, self.index() % 2)
    }

    pub fn from_endo(row: usize, col: usize) -> Self {
        Self::ALL[2 * row + col]
    }

    pub fn symbol(self) -> &'static str {
        match self {
            FormBasis::A => "e_a",
            FormBasis::B => "e_b",
            FormBasis::C => "e_c",
            FormBasis::D => "e_d",
        }
    }

    pub fn letter(self) -> char {
        ['a', 'b', 'c', 'd'][self.index()]
    }
}

impl fmt::Display for FormBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}
