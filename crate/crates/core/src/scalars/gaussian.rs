use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{format_rational, forward_ref_binops, parse_rational, Field};
use super::ScalarError;

/// An element `re + im·i` of the Gaussian rationals ℚ(i).
///
/// This is the coefficient field for both root-of-unity modes q = ±i.
/// `BigRational` keeps both parts in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    /// `(re_n/re_d) + (im_n/im_d)·i` from machine integers.
    pub fn from_parts(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> Self {
        GaussianRational {
            re: BigRational::new(re_n.into(), re_d.into()),
            im: BigRational::new(im_n.into(), im_d.into()),
        }
    }

    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::from_integer(1.into()),
        }
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Squared modulus `re² + im²`, a rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn one() -> Self {
        Self::from_int(1)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn from_rational(r: BigRational) -> Self {
        GaussianRational {
            re: r,
            im: BigRational::zero(),
        }
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(GaussianRational {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

forward_ref_binops!(GaussianRational);

/// `a/b+c/d*i`, omitting zero parts; zero prints as `0`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", format_rational(&self.re)),
            (true, false) => write!(f, "{}*i", format_rational(&self.im)),
            (false, false) => {
                let im = format_rational(&self.im);
                if im.starts_with('-') {
                    write!(f, "{}{}*i", format_rational(&self.re), im)
                } else {
                    write!(f, "{}+{}*i", format_rational(&self.re), im)
                }
            }
        }
    }
}

impl FromStr for GaussianRational {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ScalarError::Parse(s));
        }
        let Some(body) = s.strip_suffix("*i") else {
            return Ok(GaussianRational::from_rational(parse_rational(&s)?));
        };
        // split the imaginary part at the last sign that is not leading
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        match split {
            Some(k) => {
                let re = parse_rational(&body[..k])?;
                let im_str = body[k..].trim_start_matches('+');
                Ok(GaussianRational::new(re, parse_rational(im_str)?))
            }
            None => Ok(GaussianRational::new(
                BigRational::zero(),
                parse_rational(body)?,
            )),
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
        GaussianRational::from_parts(a, b, c, d)
    }

    #[test]
    fn display_omits_zero_parts() {
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(gr(3, 2, 0, 1).to_string(), "3/2");
        assert_eq!(gr(0, 1, 1, 2).to_string(), "1/2*i");
        assert_eq!(gr(3, 2, 1, 2).to_string(), "3/2+1/2*i");
        assert_eq!(gr(2, 17, -9, 17).to_string(), "2/17-9/17*i");
        assert_eq!(gr(-11, 17, 7, 17).to_string(), "-11/17+7/17*i");
    }

    #[test]
    fn parse_round_trips_display() {
        for s in [
            "0",
            "7",
            "-3/4",
            "1*i",
            "-1/2*i",
            "3/2+1/2*i",
            "-11/17-7/17*i",
        ] {
            let v: GaussianRational = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("x".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert_eq!(
            GaussianRational::zero().inv(),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
        assert_eq!(i.pow(4).unwrap(), GaussianRational::one());
        assert_eq!(i.pow(-1).unwrap(), -GaussianRational::i());
    }

    #[test]
    fn division_matches_hand_values() {
        // (1+2i+2i²)/(-2+2i²+i³) = (-1+2i)/(-4-i) = (2-9i)/17
        let i = GaussianRational::i();
        let one = GaussianRational::one();
        let two = GaussianRational::from_int(2);
        let num = one.clone() + &two * &i + &two * &i.pow(2).unwrap();
        let den = -two.clone() + &two * &i.pow(2).unwrap() + i.pow(3).unwrap();
        assert_eq!(num.div(&den).unwrap(), gr(2, 17, -9, 17));
    }
}
