//! Scalar kinds.
//!
//! Every value in the library is generic over a [`Scalar`]. Two kinds exist:
//! exact rationals ([`Rational`], arbitrary precision, compared with `==`)
//! and binary floats (`f64`, compared with an explicit tolerance). A value
//! never mixes kinds.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::Error;

/// Arbitrary-precision exact rational.
pub type Rational = num_rational::BigRational;

/// Which arithmetic a value set uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Rational,
    Float,
}

impl std::str::FromStr for ScalarKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" | "exact" => Ok(ScalarKind::Rational),
            "float" | "f64" => Ok(ScalarKind::Float),
            other => Err(Error::Input(format!("unknown scalar kind `{other}`"))),
        }
    }
}

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const KIND: ScalarKind;

    fn from_i64(v: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Zero for pivoting purposes: exact zero for rationals, below an
    /// absolute threshold for floats.
    fn is_negligible(&self) -> bool;

    /// Equality under the kind's comparison rule. `tol` is ignored for exact
    /// scalars.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self, Error>;
}

impl Scalar for Rational {
    const KIND: ScalarKind = ScalarKind::Rational;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self, Error> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => match n.as_i64() {
                Some(i) => Ok(Self::from_i64(i)),
                None => Err(Error::Input(format!(
                    "non-integer number {n} in exact mode; write it as \"p/q\""
                ))),
            },
            other => Err(Error::Input(format!("expected a scalar, found {other}"))),
        }
    }
}

impl Scalar for f64 {
    const KIND: ScalarKind = ScalarKind::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-12
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol * (1.0 + self.abs().max(other.abs()))
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_json(v: &Value) -> Result<Self, Error> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Input(format!("bad number {n}"))),
            Value::String(s) => {
                if let Ok(x) = s.trim().parse::<f64>() {
                    Ok(x)
                } else {
                    parse_rational(s).map(|q| Scalar::to_f64(&q))
                }
            }
            other => Err(Error::Input(format!("expected a scalar, found {other}"))),
        }
    }
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Input(format!("malformed rational `{s}`"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Largest absolute value, as a float. Used for norms and pivot choice.
pub fn abs_f64<S: Scalar>(x: &S) -> f64 {
    x.to_f64().abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        let q = Rational::from_ratio(-14, 4);
        assert_eq!(format_rational(&q), "-7/2");
        assert_eq!(parse_rational("-7/2").unwrap(), q);
        assert_eq!(parse_rational(" 5 ").unwrap(), Rational::from_i64(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn json_scalars() {
        let v: Value = serde_json::json!("3/6");
        assert_eq!(Rational::from_json(&v).unwrap(), Rational::from_ratio(1, 2));
        assert_eq!(Rational::from_json(&serde_json::json!(4)).unwrap(), Rational::from_i64(4));
        assert!(Rational::from_json(&serde_json::json!(0.5)).is_err());
        assert_eq!(f64::from_json(&serde_json::json!("1/4")).unwrap(), 0.25);
        assert_eq!(f64::from_json(&serde_json::json!(2.5)).unwrap(), 2.5);
    }

    #[test]
    fn float_comparison_is_relative() {
        assert!(1e6_f64.approx_eq(&(1e6 + 1e-4), 1e-9));
        assert!(!1.0_f64.approx_eq(&1.001, 1e-9));
    }
}
