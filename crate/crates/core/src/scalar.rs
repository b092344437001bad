//! Exact rational scalars and their text form.
//!
//! Scalars are `BigRational`, always kept in reduced form with a positive
//! denominator. The text form is `p/q`, or just `p` when the denominator is
//! one; both are accepted when parsing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::Parse(format!("malformed rational {t:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {t:?}")));
    }
    Ok(Scalar::new(num, den))
}

pub fn fmt_scalar(v: &Scalar) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// `|v|`
pub fn abs(v: &Scalar) -> Scalar {
    v.abs()
}

pub fn is_nonneg(v: &Scalar) -> bool {
    !v.is_negative()
}

/// Smallest integer `>= v`.
pub fn ceil_int(v: &Scalar) -> BigInt {
    v.ceil().to_integer()
}

pub fn pow(base: &Scalar, exp: u32) -> Scalar {
    let mut out = Scalar::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

pub fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}
