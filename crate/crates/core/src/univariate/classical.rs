//! Classical families: Jacobi on `[-1, 1]` and `[0, 1]`, Laguerre and
//! Bessel, all normalized to `h0 = 1`.

use super::family::{Recurrence, RecurrenceFamily};
use crate::error::{Error, Result};
use crate::numerics::Field;

fn quot<F: Field>(num: F, den: F, what: &str) -> std::result::Result<F, String> {
    num.checked_div(&den)
        .ok_or_else(|| format!("zero denominator in {what}"))
}

fn int<F: Field>(n: usize) -> F {
    F::from_usize(n)
}

/// Recurrence coefficients of `P_n^{(alpha, beta)}` on `[-1, 1]`. At
/// `n = 0` the displayed forms are replaced by their limits
/// `a_0 = 2/(alpha+beta+2)`, `b_0 = (beta-alpha)/(alpha+beta+2)`.
pub fn jacobi_coefficients<F: Field>(
    alpha: &F,
    beta: &F,
    n: usize,
) -> std::result::Result<Recurrence<F>, String> {
    let two = F::from_i64(2);
    let s = alpha.clone() + beta.clone();
    if n == 0 {
        let d = s + two.clone();
        return Ok(Recurrence {
            a: quot(two, d.clone(), "a_0")?,
            b: quot(beta.clone() - alpha.clone(), d, "b_0")?,
            c: F::zero(),
        });
    }
    let nn: F = int(n);
    let m = two.clone() * nn.clone() + s.clone();
    let a = quot(
        two.clone() * (nn.clone() + F::one()) * (nn.clone() + s.clone() + F::one()),
        (m.clone() + F::one()) * (m.clone() + two.clone()),
        "a_n",
    )?;
    let b = quot(
        beta.clone() * beta.clone() - alpha.clone() * alpha.clone(),
        m.clone() * (m.clone() + two.clone()),
        "b_n",
    )?;
    let c = quot(
        two * (nn.clone() + alpha.clone()) * (nn + beta.clone()),
        m.clone() * (m + F::one()),
        "c_n",
    )?;
    Ok(Recurrence { a, b, c })
}

/// Jacobi polynomials `P_n^{(alpha, beta)}` on `[-1, 1]` with
/// `P_n(1) = binomial(n + alpha, n)`.
pub fn jacobi_std<F: Field>(alpha: F, beta: F) -> RecurrenceFamily<F> {
    let label = format!("jacobi(alpha={alpha}, beta={beta})");
    RecurrenceFamily::new(label, F::one(), move |n| jacobi_coefficients(&alpha, &beta, n))
}

/// Jacobi polynomials on `[0, 1]`: `P_n^{(alpha, beta)}(2x - 1)`, whose
/// coefficients are `a/2`, `(b + 1)/2`, `c/2`.
pub fn jacobi_shift<F: Field>(alpha: F, beta: F) -> RecurrenceFamily<F> {
    let label = format!("jacobi01(alpha={alpha}, beta={beta})");
    let two = F::from_i64(2);
    RecurrenceFamily::new(label, F::one(), move |n| {
        let r = jacobi_coefficients(&alpha, &beta, n)?;
        Ok(Recurrence {
            a: r.a / two.clone(),
            b: (r.b + F::one()) / two.clone(),
            c: r.c / two.clone(),
        })
    })
}

/// Laguerre polynomials `L_n^{(alpha)}` with `L_n(0) = binomial(n + alpha, n)`.
pub fn laguerre<F: Field>(alpha: F) -> RecurrenceFamily<F> {
    let label = format!("laguerre(alpha={alpha})");
    RecurrenceFamily::new(label, F::one(), move |n| {
        let nn: F = int(n);
        Ok(Recurrence {
            a: -(nn.clone() + F::one()),
            b: F::from_i64(2) * nn.clone() + alpha.clone() + F::one(),
            c: -(nn + alpha.clone()),
        })
    })
}

/// Recurrence coefficients of the Bessel polynomials `B_n^{(a, b)}`, with
/// the `n = 0` limits `a_0 = b/a`, `b_0 = -b/a`.
pub fn bessel_coefficients<F: Field>(
    a: &F,
    b: &F,
    n: usize,
) -> std::result::Result<Recurrence<F>, String> {
    let two = F::from_i64(2);
    if n == 0 {
        return Ok(Recurrence {
            a: quot(b.clone(), a.clone(), "a_0")?,
            b: quot(-b.clone(), a.clone(), "b_0")?,
            c: F::zero(),
        });
    }
    let nn: F = int(n);
    let m = two.clone() * nn.clone() + a.clone();
    let an = quot(
        (nn.clone() + a.clone() - F::one()) * b.clone(),
        (m.clone() - F::one()) * m.clone(),
        "a_n",
    )?;
    let bn = quot(
        -(a.clone() - two.clone()) * b.clone(),
        (m.clone() - two.clone()) * m.clone(),
        "b_n",
    )?;
    let cn = quot(
        -nn * b.clone(),
        (m.clone() - two) * (m - F::one()),
        "c_n",
    )?;
    Ok(Recurrence { a: an, b: bn, c: cn })
}

/// Generalized Bessel polynomials `B_n^{(a, b)}` with `B_n(0) = 1`. The
/// functional is not positive definite; `a` must avoid the non-positive
/// integers at the indices actually used, which is detected lazily.
pub fn bessel<F: Field>(a: F, b: F) -> Result<RecurrenceFamily<F>> {
    if b.is_zero() {
        return Err(Error::Domain("bessel: parameter b must be nonzero".into()));
    }
    let label = format!("bessel(a={a}, b={b})");
    Ok(RecurrenceFamily::new(label, F::one(), move |n| {
        bessel_coefficients(&a, &b, n)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{rat, Rational};

    #[test]
    fn jacobi_values() {
        let leg = jacobi_std(rat(0, 1), rat(0, 1));
        assert_eq!(leg.a(0).unwrap(), rat(1, 1));
        assert_eq!(leg.b(0).unwrap(), rat(0, 1));
        assert_eq!(leg.a(2).unwrap(), rat(3, 5));
        assert_eq!(leg.c(2).unwrap(), rat(2, 5));
        let j = jacobi_std(rat(1, 1), rat(0, 1));
        assert_eq!(j.b(1).unwrap(), rat(-1, 15));
    }

    #[test]
    fn shifted_jacobi_values() {
        let f = jacobi_shift(rat(0, 1), rat(0, 1));
        assert_eq!(f.a(0).unwrap(), rat(1, 2));
        assert_eq!(f.b(0).unwrap(), rat(1, 2));
        assert_eq!(f.c(1).unwrap(), rat(1, 6));
        let (al, be) = (rat(3, 2), rat(-1, 3));
        let s = jacobi_shift(al.clone(), be.clone());
        let j = jacobi_std(al, be);
        for n in 0..6 {
            assert_eq!(s.a(n).unwrap() * rat(2, 1), j.a(n).unwrap());
        }
    }

    #[test]
    fn jacobi_normalization_at_one() {
        let (al, be) = (rat(1, 2), rat(2, 1));
        let f = jacobi_std(al.clone(), be);
        // binomial(n + alpha, n) = (alpha + 1)_n / n!
        let mut binom = rat(1, 1);
        for n in 0..8 {
            assert_eq!(f.eval(n, &rat(1, 1)).unwrap(), binom);
            binom = binom * (al.clone() + rat(n as i64 + 1, 1)) / rat(n as i64 + 1, 1);
        }
    }

    #[test]
    fn laguerre_values() {
        let f = laguerre(rat(0, 1));
        assert_eq!(f.a(0).unwrap(), rat(-1, 1));
        assert_eq!(f.c(3).unwrap(), rat(-3, 1));
        assert_eq!(f.moments(3).unwrap()[3], rat(6, 1));
        assert_eq!(laguerre(rat(1, 2)).b(2).unwrap(), rat(11, 2));
        assert_eq!(laguerre(rat(7, 3)).eval(1, &rat(0, 1)).unwrap(), rat(10, 3));
    }

    #[test]
    fn bessel_values() {
        let f = bessel(rat(3, 1), rat(1, 1)).unwrap();
        assert_eq!(f.c(1).unwrap(), rat(-1, 12));
        assert_eq!(f.a(0).unwrap(), rat(1, 3));
        assert_eq!(f.b(0).unwrap(), rat(-1, 3));
        assert_eq!(f.leading(1).unwrap().k, rat(3, 1));
        assert_eq!(f.norm(1).unwrap() / f.norm(0).unwrap(), rat(-1, 4));
        assert!(bessel(rat(3, 1), rat(0, 1)).is_err());
        // a = -3 breaks down at n = 2 where (2n + a - 1)(2n + a) = 0
        let bad = bessel(rat(-3, 1), rat(1, 1)).unwrap();
        assert!(bad.leading(2).is_ok());
        let err = bad.leading(3).unwrap_err();
        assert!(err.is_quasi_definite(), "{err}");
    }

    #[test]
    fn bessel_a2_has_vanishing_b_for_positive_n() {
        let f = bessel(rat(2, 1), rat(5, 1)).unwrap();
        assert_eq!(f.b(0).unwrap(), rat(-5, 2));
        for n in 1..10 {
            assert_eq!(f.b(n).unwrap(), rat(0, 1));
        }
    }

    #[test]
    fn float_mode_matches_exact() {
        let e = jacobi_std(rat(1, 2), rat(1, 4));
        let f = jacobi_std(0.5f64, 0.25f64);
        for n in 0..6 {
            let diff = Field::to_f64(&e.a(n).unwrap()) - f.a(n).unwrap();
            assert!(diff.abs() < 1e-15);
        }
        let _: Rational = e.norm(3).unwrap();
    }
}
