use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::scalars::{eval_ratfunc, Field, GaussianRational, RationalFunction, ScalarError};

/// Which value of q a computation runs at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QMode {
    /// q stays a formal symbol; only invariant-form computations apply.
    #[serde(rename = "generic")]
    Generic,
    /// q = 1, an evaluation point for closed forms only.
    #[serde(rename = "1")]
    One,
    #[serde(rename = "i")]
    PlusI,
    #[serde(rename = "-i")]
    MinusI,
}

impl QMode {
    pub fn as_str(self) -> &'static str {
        match self {
            QMode::Generic => "generic",
            QMode::One => "1",
            QMode::PlusI => "i",
            QMode::MinusI => "-i",
        }
    }

    /// The numeric value of q, if the mode has one.
    pub fn value(self) -> Option<GaussianRational> {
        match self {
            QMode::Generic => None,
            QMode::One => Some(GaussianRational::one()),
            QMode::PlusI => Some(GaussianRational::i()),
            QMode::MinusI => Some(-GaussianRational::i()),
        }
    }

    pub fn is_root_of_unity(self) -> bool {
        matches!(self, QMode::PlusI | QMode::MinusI)
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "generic" => Ok(QMode::Generic),
            "1" => Ok(QMode::One),
            "i" => Ok(QMode::PlusI),
            "-i" => Ok(QMode::MinusI),
            other => Err(format!(
                "unknown q mode {other:?} (expected generic, 1, i or -i)"
            )),
        }
    }
}

/// The recurring q-dependent scalars, computed once in the working field.
#[derive(Clone, Debug, PartialEq)]
pub struct QParams<F> {
    pub q: F,
    pub qinv: F,
    pub q2: F,
    /// `μ = 1 - q^{-2}`
    pub mu: F,
    /// `[2]_q = 1 + q`
    pub two: F,
}

impl<F: Field> QParams<F> {
    pub fn new(q: F) -> Result<Self, ScalarError> {
        let qinv = q.inv()?;
        let q2 = q.clone() * &q;
        let mu = F::one() - qinv.clone() * &qinv;
        let two = F::one() + &q;
        Ok(QParams {
            q,
            qinv,
            q2,
            mu,
            two,
        })
    }

    /// `μ^{-1}`, which fails at q = ±1.
    pub fn mu_inv(&self) -> Result<F, ScalarError> {
        self.mu.inv()
    }

    /// Specializes a closed form in ℚ(q) to this q.
    pub fn lift(&self, f: &RationalFunction) -> Result<F, ScalarError> {
        eval_ratfunc(f, &self.q)
    }

    pub fn int(&self, n: i64) -> F {
        F::from_int(n)
    }
}

impl QParams<RationalFunction> {
    pub fn generic() -> Self {
        Self::new(RationalFunction::q()).expect("q is invertible")
    }
}

impl QParams<GaussianRational> {
    /// Parameters at a numeric mode; `None` for the generic mode.
    pub fn at(mode: QMode) -> Option<Self> {
        mode.value().map(|q| Self::new(q).expect("q is a unit"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_to_the_fourth_is_one_and_q_squared_is_not() {
        for mode in [QMode::PlusI, QMode::MinusI] {
            let p = QParams::at(mode).unwrap();
            assert!(p.q.pow(4).unwrap().is_one());
            assert!(!p.q2.is_one());
            assert_eq!(p.mu, GaussianRational::from_int(2));
        }
    }

    #[test]
    fn mu_vanishes_at_one() {
        let p = QParams::at(QMode::One).unwrap();
        assert!(p.mu_inv().is_err());
    }

    #[test]
    fn mode_strings_round_trip() {
        for m in [QMode::Generic, QMode::One, QMode::PlusI, QMode::MinusI] {
            assert_eq!(m.as_str().parse::<QMode>().unwrap(), m);
        }
        assert!("2".parse::<QMode>().is_err());
    }
}
