//! Dynamically tagged scalar used where the arithmetic mode is only known
//! at run time (command line, Python bindings).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::field::{Field, Mode, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(v) => *v == 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => Field::to_f64(r),
            Scalar::Float(v) => *v,
        }
    }

    fn binary(
        &self,
        rhs: &Scalar,
        exact: impl FnOnce(&Rational, &Rational) -> Result<Rational>,
        float: impl FnOnce(f64, f64) -> f64,
    ) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => exact(a, b).map(Scalar::Exact),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(float(*a, *b))),
            _ => Err(Error::MixedMode),
        }
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(rhs, |a, b| Ok(a + b), |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(rhs, |a, b| Ok(a - b), |a, b| a - b)
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(rhs, |a, b| Ok(a * b), |a, b| a * b)
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero("scalar division".into()));
        }
        self.binary(rhs, |a, b| Ok(a / b), |a, b| a / b)
    }

    /// Parses `p/q` or an integer as an exact rational.
    pub fn parse_exact(text: &str) -> Result<Rational> {
        let t = text.trim();
        let bad = || Error::Parse(text.to_string());
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

    /// Parses a floating value; `p/q` is accepted and divided out.
    pub fn parse_float(text: &str) -> Result<f64> {
        let t = text.trim();
        if t.contains('/') {
            return Scalar::parse_exact(t).map(|r| Field::to_f64(&r));
        }
        t.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Parse(text.to_string()))
    }

    pub fn parse(text: &str, mode: Mode) -> Result<Scalar> {
        match mode {
            Mode::Exact => Scalar::parse_exact(text).map(Scalar::Exact),
            Mode::Float => Scalar::parse_float(text).map(Scalar::Float),
        }
    }
}

/// Float text with 17 significant digits, enough to round-trip any `f64`.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(v) => f.write_str(&format_f64(*v)),
        }
    }
}
