//! The scalar field abstraction shared by every algorithm in the crate.
//!
//! Two implementations exist: [`Rational`] (arbitrary precision, always in
//! lowest terms) and `f64`. Algorithms are generic over [`Field`], so a
//! computation is either entirely exact or entirely floating.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::Scalar;
use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Domain(format!("unknown mode {other:?}"))),
        }
    }
}

pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
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
    const MODE: Mode;

    fn from_i64(v: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    fn to_scalar(&self) -> Scalar;

    fn try_from_scalar(s: &Scalar) -> Result<Self>;

    fn abs(&self) -> Self;

    fn from_usize(v: usize) -> Self {
        Self::from_i64(v as i64)
    }

    /// `n / d` as a field element.
    fn ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    /// Quotient that reports a zero divisor instead of panicking (exact) or
    /// producing an infinity (float).
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self.clone() / rhs.clone())
        }
    }

    fn ipow(&self, k: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out * self.clone();
        }
        out
    }
}

impl Field for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Exact(self.clone())
    }

    fn try_from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Exact(r) => Ok(r.clone()),
            Scalar::Float(_) => Err(Error::MixedMode),
        }
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

impl Field for f64 {
    const MODE: Mode = Mode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Float(*self)
    }

    fn try_from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Float(v) => Ok(*v),
            Scalar::Exact(_) => Err(Error::MixedMode),
        }
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

/// Rising factorial `v (v+1) ... (v+k-1)`; equals one for `k = 0`.
pub fn pochhammer<F: Field>(v: &F, k: usize) -> F {
    (0..k).fold(F::one(), |acc, i| acc * (v.clone() + F::from_usize(i)))
}

/// Relative tolerance used wherever floating-point values are compared.
pub const FLOAT_TOLERANCE: f64 = 1e-10;

/// Zero test: exact in exact mode, `|v| <= FLOAT_TOLERANCE * max(scale, 1)`
/// in float mode.
pub fn negligible<F: Field>(v: &F, scale: f64) -> bool {
    match F::MODE {
        Mode::Exact => v.is_zero(),
        Mode::Float => v.to_f64().abs() <= FLOAT_TOLERANCE * scale.max(1.0),
    }
}

/// Equality: exact in exact mode, relative to `max(|a|, |b|, 1)` in float
/// mode.
pub fn approx_eq<F: Field>(a: &F, b: &F) -> bool {
    match F::MODE {
        Mode::Exact => a == b,
        Mode::Float => {
            let (x, y) = (a.to_f64(), b.to_f64());
            (x - y).abs() <= FLOAT_TOLERANCE * x.abs().max(y.abs()).max(1.0)
        }
    }
}

/// Exact rational `n/d`. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
