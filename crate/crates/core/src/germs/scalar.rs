//! Gaussian rationals `a + bi`, `a, b ∈ Q`.

use std::str::FromStr;

use num::bigint::BigInt;
use num::{BigRational, Complex, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Scalar = Complex<BigRational>;

pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn real(numer: i64, denom: i64) -> Scalar {
    Complex::new(rational(numer, denom), BigRational::zero())
}

pub fn gaussian(re: BigRational, im: BigRational) -> Scalar {
    Complex::new(re, im)
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"a/b"` or `"a"`; decimals are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if t.contains('.') || t.contains('e') || t.contains('E') {
        return Err(Error::Parse(format!("rational {s:?} must be of the form a/b")));
    }
    let r = BigRational::from_str(t).map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
    Ok(r)
}

/// Always `"a/b"`, with `b >= 1`.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn to_c64(z: &Scalar) -> Complex<f64> {
    Complex::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
}

/// `|re| + |im|`, an exact upper bound for the modulus.
pub fn l1_abs(z: &Scalar) -> BigRational {
    z.re.abs() + z.im.abs()
}

/// `"a/b"` for real scalars, `"a/b + c/d i"` otherwise.
pub fn format_scalar(z: &Scalar) -> String {
    if z.im.is_zero() {
        format_rational(&z.re)
    } else {
        format!("{} + {} i", format_rational(&z.re), format_rational(&z.im))
    }
}

/// JSON form `{"re": "a/b", "im": "c/d"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

fn zero_string() -> String {
    "0/1".into()
}

impl ScalarJson {
    pub fn parse(&self) -> Result<Scalar> {
        Ok(Complex::new(parse_rational(&self.re)?, parse_rational(&self.im)?))
    }
}

impl From<&Scalar> for ScalarJson {
    fn from(z: &Scalar) -> Self {
        Self {
            re: format_rational(&z.re),
            im: format_rational(&z.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), rational(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), rational(-4, 1));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rational(-2, 4)), "-1/2");
        assert_eq!(format_rational(&rational(3, 1)), "3/1");
    }

    #[test]
    fn gaussian_arithmetic_is_exact() {
        let a = gaussian(rational(1, 3), rational(1, 2));
        let b = gaussian(rational(-2, 5), rational(1, 7));
        let q = &a / &b;
        assert_eq!(q * b, a);
        assert_eq!(l1_abs(&a), rational(5, 6));
        assert_eq!(format_scalar(&a), "1/3 + 1/2 i");
    }

    #[test]
    fn json_round_trip() {
        let z = gaussian(rational(-7, 3), rational(2, 9));
        let j = ScalarJson::from(&z);
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"re":"-7/3","im":"2/9"}"#);
        assert_eq!(j.parse().unwrap(), z);
        let j: ScalarJson = serde_json::from_str(r#"{"re":"1/2"}"#).unwrap();
        assert_eq!(j.parse().unwrap(), real(1, 2));
    }
}
