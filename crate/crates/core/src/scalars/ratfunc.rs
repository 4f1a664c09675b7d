use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::field::{forward_ref_binops, Field};
use super::{GaussianRational, Poly, ScalarError};

/// An element of ℚ(q): `num / den` with `den` monic and `gcd(num, den) = 1`.
///
/// The canonical form makes `==` decide equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawRatFunc", into = "RawRatFunc")]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

#[derive(Serialize, Deserialize)]
struct RawRatFunc {
    num: Poly,
    den: Poly,
}

impl TryFrom<RawRatFunc> for RationalFunction {
    type Error = ScalarError;
    fn try_from(r: RawRatFunc) -> Result<Self, ScalarError> {
        RationalFunction::new(r.num, r.den)
    }
}

impl From<RationalFunction> for RawRatFunc {
    fn from(r: RationalFunction) -> Self {
        RawRatFunc {
            num: r.num,
            den: r.den,
        }
    }
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(Poly::zero()));
        }
        let g = num.gcd(&den);
        let (n, _) = num.divrem(&g)?;
        let (d, _) = den.divrem(&g)?;
        let lc = d.leading().expect("nonzero").recip();
        Ok(RationalFunction {
            num: n.scale(&lc),
            den: d.scale(&lc),
        })
    }

    /// Shorthand for `new` from integer coefficient lists, lowest degree first.
    pub fn from_ints(num: &[i64], den: &[i64]) -> Result<Self, ScalarError> {
        Self::new(Poly::from_ints(num), Poly::from_ints(den))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Exact substitution `q = q0`.
    pub fn evaluate_at(&self, q0: &GaussianRational) -> Result<GaussianRational, ScalarError> {
        eval_ratfunc(self, q0)
    }
}

/// Substitutes `q = q0` into `f` inside any field containing ℚ, failing on a
/// pole.
pub fn eval_ratfunc<F: Field>(f: &RationalFunction, q0: &F) -> Result<F, ScalarError> {
    let d = f.den.eval(q0);
    if d.is_zero() {
        return Err(ScalarError::Pole(q0.to_string()));
    }
    f.num.eval(q0).div(&d)
}

impl Field for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn from_rational(r: BigRational) -> Self {
        Self::from_poly(Poly::constant(r))
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl Add for RationalFunction {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return Self::new(self.num + rhs.num, self.den).expect("nonzero denominator");
        }
        Self::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            self.den * rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl Neg for RationalFunction {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Sub for RationalFunction {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for RationalFunction {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.num * rhs.num, self.den * rhs.den).expect("nonzero denominator")
    }
}

forward_ref_binops!(RationalFunction);

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
        GaussianRational::from_parts(a, b, c, d)
    }

    #[test]
    fn canonical_form_cancels_common_factors() {
        let f = RationalFunction::from_ints(&[1, 1], &[1, 1]).unwrap();
        assert_eq!(f, RationalFunction::one());
        let g = RationalFunction::from_ints(&[2, 4], &[6]).unwrap();
        assert_eq!(g.denominator(), &Poly::one());
    }

    #[test]
    fn lambda_at_i() {
        let lambda = RationalFunction::from_ints(&[1, 2, 2], &[-2, 0, 2, 1]).unwrap();
        assert_eq!(
            lambda.evaluate_at(&GaussianRational::i()).unwrap(),
            gr(2, 17, -9, 17)
        );
    }

    #[test]
    fn rho_at_i() {
        // q(1-q-q^2)/(1+q)
        let rho = RationalFunction::from_ints(&[0, 1, -1, -1], &[1, 1]).unwrap();
        assert_eq!(
            rho.evaluate_at(&GaussianRational::i()).unwrap(),
            gr(3, 2, 1, 2)
        );
    }

    #[test]
    fn pole_is_reported() {
        let f = RationalFunction::from_ints(&[1], &[1, 1]).unwrap();
        let minus_one = GaussianRational::from_int(-1);
        assert!(matches!(
            f.evaluate_at(&minus_one),
            Err(ScalarError::Pole(_))
        ));
    }

    #[test]
    fn mu_and_qint_at_i() {
        let q = RationalFunction::q();
        let mu = RationalFunction::one() - q.pow(-2).unwrap();
        assert_eq!(
            mu.evaluate_at(&GaussianRational::i()).unwrap(),
            GaussianRational::from_int(2)
        );
        let q2 = q.pow(2).unwrap();
        let two_q2 = crate::scalars::qint(&q2, 2);
        assert!(two_q2
            .evaluate_at(&GaussianRational::i())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn json_round_trip() {
        let f = RationalFunction::from_ints(&[1, 2, 2], &[-2, 0, 2, 1]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let back: RationalFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<RationalFunction>(r#"{"num":["1"],"den":[]}"#).is_err());
    }
}
