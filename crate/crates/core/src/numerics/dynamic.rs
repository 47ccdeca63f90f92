//! Mode-tagged polynomial for the dynamic boundaries of the crate.

use super::field::{Field, Mode, Rational};
use super::poly::SparsePoly2;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum DynPoly {
    Exact(SparsePoly2<Rational>),
    Float(SparsePoly2<f64>),
}

impl DynPoly {
    pub fn mode(&self) -> Mode {
        match self {
            DynPoly::Exact(_) => Mode::Exact,
            DynPoly::Float(_) => Mode::Float,
        }
    }

    pub fn from_terms(mode: Mode, terms: &[((u32, u32), Scalar)]) -> Result<Self> {
        match mode {
            Mode::Exact => terms
                .iter()
                .map(|(e, s)| Ok((*e, Rational::try_from_scalar(s)?)))
                .collect::<Result<Vec<_>>>()
                .map(|t| DynPoly::Exact(SparsePoly2::from_terms(t))),
            Mode::Float => terms
                .iter()
                .map(|(e, s)| Ok((*e, f64::try_from_scalar(s)?)))
                .collect::<Result<Vec<_>>>()
                .map(|t| DynPoly::Float(SparsePoly2::from_terms(t))),
        }
    }

    pub fn terms(&self) -> Vec<((u32, u32), Scalar)> {
        match self {
            DynPoly::Exact(p) => p.terms().map(|(e, v)| (*e, v.to_scalar())).collect(),
            DynPoly::Float(p) => p.terms().map(|(e, v)| (*e, v.to_scalar())).collect(),
        }
    }

    pub fn degree(&self) -> Option<u32> {
        match self {
            DynPoly::Exact(p) => p.degree(),
            DynPoly::Float(p) => p.degree(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            DynPoly::Exact(p) => p.is_zero(),
            DynPoly::Float(p) => p.is_zero(),
        }
    }

    pub fn try_add(&self, rhs: &DynPoly) -> Result<DynPoly> {
        match (self, rhs) {
            (DynPoly::Exact(a), DynPoly::Exact(b)) => Ok(DynPoly::Exact(a + b)),
            (DynPoly::Float(a), DynPoly::Float(b)) => Ok(DynPoly::Float(a + b)),
            _ => Err(Error::MixedMode),
        }
    }

    pub fn try_sub(&self, rhs: &DynPoly) -> Result<DynPoly> {
        match (self, rhs) {
            (DynPoly::Exact(a), DynPoly::Exact(b)) => Ok(DynPoly::Exact(a - b)),
            (DynPoly::Float(a), DynPoly::Float(b)) => Ok(DynPoly::Float(a - b)),
            _ => Err(Error::MixedMode),
        }
    }

    /// Product of two polynomials of the same mode (`poly_mul`).
    pub fn try_mul(&self, rhs: &DynPoly) -> Result<DynPoly> {
        match (self, rhs) {
            (DynPoly::Exact(a), DynPoly::Exact(b)) => Ok(DynPoly::Exact(a * b)),
            (DynPoly::Float(a), DynPoly::Float(b)) => Ok(DynPoly::Float(a * b)),
            _ => Err(Error::MixedMode),
        }
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Result<Scalar> {
        match self {
            DynPoly::Exact(p) => Ok(Scalar::Exact(p.eval(
                &Rational::try_from_scalar(x)?,
                &Rational::try_from_scalar(y)?,
            ))),
            DynPoly::Float(p) => Ok(Scalar::Float(
                p.eval(&f64::try_from_scalar(x)?, &f64::try_from_scalar(y)?),
            )),
        }
    }
}

impl std::fmt::Display for DynPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DynPoly::Exact(p) => write!(f, "{p}"),
            DynPoly::Float(p) => write!(f, "{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::field::rat;

    #[test]
    fn mixed_mode_product_fails() {
        let e = DynPoly::Exact(SparsePoly2::x());
        let f = DynPoly::Float(SparsePoly2::y());
        assert_eq!(e.try_mul(&f), Err(Error::MixedMode));
        assert_eq!(f.try_add(&e), Err(Error::MixedMode));
        let xy = e.try_mul(&DynPoly::Exact(SparsePoly2::y())).unwrap();
        assert_eq!(xy.terms(), vec![((1, 1), Scalar::Exact(rat(1, 1)))]);
    }

    #[test]
    fn eval_rejects_wrong_mode_point() {
        let p = DynPoly::Exact(SparsePoly2::x());
        assert!(p.eval(&Scalar::Float(0.5), &Scalar::Float(0.0)).is_err());
        assert_eq!(
            p.eval(&Scalar::Exact(rat(1, 2)), &Scalar::Exact(rat(0, 1))).unwrap(),
            Scalar::Exact(rat(1, 2))
        );
    }
}
