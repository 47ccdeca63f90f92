use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Exponent = (u32, u32);

/// Exact (or floating) bivariate polynomial stored as a sparse map from
/// exponents to nonzero coefficients.
#[derive(Clone, PartialEq)]
pub struct SparsePoly2<F> {
    terms: BTreeMap<Exponent, F>,
}

impl<F: Field> Default for SparsePoly2<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> SparsePoly2<F> {
    pub fn zero() -> Self {
        SparsePoly2 {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: F) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, F::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, F::one())
    }

    /// `sum_i coeffs[i] x^i`.
    pub fn from_x_coeffs(coeffs: &[F]) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term((i as u32, 0), c.clone());
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, F)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Accumulates `c x^i y^j`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, exp: Exponent, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                let sum = v.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> F {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, _)| *i).max()
    }

    pub fn y_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(_, j)| *j).max()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(e, v)| (*e, v.clone() * c.clone())))
    }

    /// Multiplication by `x^i y^j`.
    pub fn shift(&self, i: u32, j: u32) -> Self {
        SparsePoly2 {
            terms: self
                .terms
                .iter()
                .map(|((a, b), v)| ((a + i, b + j), v.clone()))
                .collect(),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        if c.is_zero() {
            return;
        }
        for (e, v) in &other.terms {
            self.add_term(*e, v.clone() * c.clone());
        }
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a, b), u) in &self.terms {
            for ((c, d), v) in &other.terms {
                out.add_term((a + c, b + d), u.clone() * v.clone());
            }
        }
        out
    }

    /// Evaluation by Horner's rule in `x` for each power of `y`, then in `y`.
    pub fn eval(&self, x: &F, y: &F) -> F {
        let Some(ydeg) = self.y_degree() else {
            return F::zero();
        };
        let mut rows: Vec<Vec<(u32, F)>> = vec![Vec::new(); ydeg as usize + 1];
        for ((i, j), v) in &self.terms {
            rows[*j as usize].push((*i, v.clone()));
        }
        let horner_x = |row: &[(u32, F)]| -> F {
            // row is sorted by ascending x exponent
            let mut acc = F::zero();
            let mut prev = row.last().map(|(i, _)| *i).unwrap_or(0);
            for (i, v) in row.iter().rev() {
                for _ in *i..prev {
                    acc = acc * x.clone();
                }
                acc = acc + v.clone();
                prev = *i;
            }
            for _ in 0..prev {
                acc = acc * x.clone();
            }
            acc
        };
        rows.iter()
            .rev()
            .fold(F::zero(), |acc, row| acc * y.clone() + horner_x(row))
    }

    pub fn max_abs_coeff(&self) -> F {
        self.terms
            .values()
            .map(|v| v.abs())
            .fold(F::zero(), |m, v| if v > m { v } else { m })
    }

    pub fn map<G: Field>(&self, mut f: impl FnMut(&F) -> G) -> SparsePoly2<G> {
        SparsePoly2::from_terms(self.terms.iter().map(|(e, v)| (*e, f(v))))
    }
}

impl<F: Field> Add for &SparsePoly2<F> {
    type Output = SparsePoly2<F>;

    fn add(self, rhs: Self) -> SparsePoly2<F> {
        let mut out = self.clone();
        out.add_scaled(rhs, &F::one());
        out
    }
}

impl<F: Field> Sub for &SparsePoly2<F> {
    type Output = SparsePoly2<F>;

    fn sub(self, rhs: Self) -> SparsePoly2<F> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-F::one());
        out
    }
}

impl<F: Field> Mul for &SparsePoly2<F> {
    type Output = SparsePoly2<F>;

    fn mul(self, rhs: Self) -> SparsePoly2<F> {
        self.mul_poly(rhs)
    }
}

impl<F: Field> Neg for &SparsePoly2<F> {
    type Output = SparsePoly2<F>;

    fn neg(self) -> SparsePoly2<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> fmt::Display for SparsePoly2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((i, j), v)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({v})")?;
            match i {
                0 => {}
                1 => f.write_str("*x")?,
                _ => write!(f, "*x^{i}")?,
            }
            match j {
                0 => {}
                1 => f.write_str("*y")?,
                _ => write!(f, "*y^{j}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for SparsePoly2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::field::{rat, Rational};

    type P = SparsePoly2<Rational>;

    #[test]
    fn products() {
        let x = P::x();
        let y = P::y();
        assert_eq!(&x * &y, P::monomial(1, 1, rat(1, 1)));

        let one = P::one();
        let lhs = &(&one + &x) * &(&one - &x);
        assert_eq!(lhs, &one - &P::monomial(2, 0, rat(1, 1)));

        let d = &(&x + &y) * &(&x - &y);
        assert_eq!(d, &P::monomial(2, 0, rat(1, 1)) - &P::monomial(0, 2, rat(1, 1)));
        assert_eq!(d.len(), 2, "cross terms cancel and are pruned");
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        let z = P::zero();
        assert_eq!(z.degree(), None);
        let p = &P::x() - &P::x();
        assert!(p.is_zero());
        assert_eq!(P::constant(rat(0, 1)).len(), 0);
    }

    #[test]
    fn horner_matches_naive() {
        let p = P::from_terms([
            ((0, 0), rat(1, 2)),
            ((3, 0), rat(-2, 1)),
            ((1, 2), rat(5, 3)),
            ((0, 4), rat(1, 7)),
        ]);
        let (x, y) = (rat(2, 3), rat(-3, 5));
        let naive = p.terms().fold(rat(0, 1), |acc, ((i, j), v)| {
            acc + v.clone() * x.ipow(*i as usize) * y.ipow(*j as usize)
        });
        assert_eq!(p.eval(&x, &y), naive);
    }
}
