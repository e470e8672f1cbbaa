//! Exact rational scalars.
//!
//! Scalars are `BigRational`s, which are kept in lowest terms with a
//! positive denominator. Text form is `p/q` (or `p` when `q = 1`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Decimal points are rejected.
pub fn parse(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn fmt(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_integer(x: &Scalar) -> bool {
    x.denom().is_one()
}

/// The integer value of `x`, if it is an integer that fits in `i64`.
pub fn to_i64(x: &Scalar) -> Option<i64> {
    if !is_integer(x) {
        return None;
    }
    i64::try_from(x.numer().clone()).ok()
}

/// `x - floor(x)`, the representative of `x` modulo the integers in `[0, 1)`.
pub fn frac_part(x: &Scalar) -> Scalar {
    let fl = x.numer().div_floor(x.denom());
    x - BigRational::from_integer(fl)
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

pub mod serde_scalar {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse("-2").unwrap(), int(-2));
        assert_eq!(fmt(&frac(-3, 6)), "-1/2");
        assert_eq!(fmt(&int(0)), "0");
        assert!(parse("1.5").is_err());
        assert!(parse("1/0").is_err());
    }

    #[test]
    fn fractional_part() {
        assert_eq!(frac_part(&frac(5, 3)), frac(2, 3));
        assert_eq!(frac_part(&frac(-1, 3)), frac(2, 3));
        assert_eq!(frac_part(&int(4)), int(0));
    }
}
