//! Closed-form connection coefficients for the classical ladders, as
//! tabulated in the literature, plus a few related closed forms (Bessel
//! leading coefficients and norms).
//!
//! Each ladder steps one classical family to the family of `rho^2` times
//! its functional:
//!
//! | ladder             | step                         | `rho^2`     |
//! |--------------------|------------------------------|-------------|
//! | `Jacobi`           | `(a, b) -> (a+1, b+1)`       | `1 - x^2`   |
//! | `Jacobi01`         | `(a, b) -> (a, b+1)` on [0,1]| `x`         |
//! | `Jacobi01Square`   | `(a, b) -> (a+2, b)` on [0,1]| `(1 - x)^2` |
//! | `Laguerre`         | `a -> a+2`                   | `x^2`       |
//! | `Bessel`           | `(a, b) -> (a+2, b)`         | `x^2`       |
//!
//! The `printed_*` functions reproduce the published expressions
//! verbatim. Three of them are wrong (they fail the polynomial identities
//! they are meant to satisfy); `corrected_*` gives the expressions that
//! the generic construction, the identities and the Gram oracle all agree
//! on. [`LADDER_ERRATA`] lists the differences.

use super::adjacent::{AdjacentDown, AdjacentUp};
use super::classical::{bessel, jacobi_shift, jacobi_std, laguerre};
use super::family::RecurrenceFamily;
use crate::error::Result;
use crate::numerics::{pochhammer, Field};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ladder {
    Jacobi,
    Jacobi01,
    Jacobi01Square,
    Laguerre,
    Bessel,
}

impl Ladder {
    pub const ALL: [Ladder; 5] = [
        Ladder::Jacobi,
        Ladder::Jacobi01,
        Ladder::Jacobi01Square,
        Ladder::Laguerre,
        Ladder::Bessel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Ladder::Jacobi => "jacobi (1-x^2)",
            Ladder::Jacobi01 => "jacobi01 (x)",
            Ladder::Jacobi01Square => "jacobi01 ((1-x)^2)",
            Ladder::Laguerre => "laguerre (x^2)",
            Ladder::Bessel => "bessel (x^2)",
        }
    }
}

/// The adjacent pair of `ladder` at parameters `(a, b)` together with
/// the `x^2` coefficient of `rho^2`. The second family is normalized by
/// `<rho^2 u, 1>`, so that its norms are chained to the first.
pub fn ladder_pair<F: Field>(
    ladder: Ladder,
    a: &F,
    b: &F,
) -> Result<(RecurrenceFamily<F>, RecurrenceFamily<F>, F)> {
    let one = F::one();
    let two = F::from_i64(2);
    let (lo, hi, rho2) = match ladder {
        Ladder::Jacobi => (
            jacobi_std(a.clone(), b.clone()),
            jacobi_std(a.clone() + one.clone(), b.clone() + one.clone()),
            [one.clone(), F::zero(), -one.clone()],
        ),
        Ladder::Jacobi01 => (
            jacobi_shift(a.clone(), b.clone()),
            jacobi_shift(a.clone(), b.clone() + one.clone()),
            [F::zero(), one.clone(), F::zero()],
        ),
        Ladder::Jacobi01Square => (
            jacobi_shift(a.clone(), b.clone()),
            jacobi_shift(a.clone() + two.clone(), b.clone()),
            [one.clone(), -two.clone(), one.clone()],
        ),
        Ladder::Laguerre => (
            laguerre(a.clone()),
            laguerre(a.clone() + two.clone()),
            [F::zero(), F::zero(), one.clone()],
        ),
        Ladder::Bessel => (
            bessel(a.clone(), b.clone())?,
            bessel(a.clone() + two.clone(), b.clone())?,
            [F::zero(), F::zero(), one.clone()],
        ),
    };
    let mu = lo.moments(2)?;
    let h0 = rho2
        .iter()
        .zip(&mu)
        .fold(F::zero(), |acc, (r, m)| acc + r.clone() * m.clone());
    let [_, _, s2] = rho2;
    Ok((lo.clone(), hi.with_h0(lo.h0().clone() * h0 / mu[0].clone()), s2))
}

/// A published expression that disagrees with the identity it documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Erratum {
    pub location: &'static str,
    pub entry: &'static str,
    pub printed: &'static str,
    pub corrected: &'static str,
    pub note: &'static str,
}

pub const LADDER_ERRATA: &[Erratum] = &[
    Erratum {
        location: "jacobi (1-x^2) connection",
        entry: "theta",
        printed: "4(a-b)/((2n+a+b+2)(2n+a+b+4))",
        corrected: "4(a-b)(n+1)/((2n+a+b+2)(2n+a+b+4))",
        note: "factor (n+1) missing; only visible for a != b",
    },
    Erratum {
        location: "bessel (x^2) connection",
        entry: "zeta",
        printed: "n(n-1)b^2/((2n+a-2)(2n+a-1)a(a+1))",
        corrected: "n(n-1)/((2n+a-2)(2n+a-1))",
        note: "spurious factor b^2/(a(a+1)), the ratio <v^(a),x^2>/<v^(a),1>; \
               consistent with norms taken unchained across a -> a+2",
    },
    Erratum {
        location: "bessel (x^2) connection",
        entry: "theta",
        printed: "-2a(a+1)(n+a)/((2n+a)(2n+a+2))",
        corrected: "-2b^2/((2n+a)(2n+a+2))",
        note: "printed value fails x^2 B_n(0) = 0, i.e. eta + theta + vartheta = 0",
    },
    Erratum {
        location: "bessel (x^2) connection",
        entry: "vartheta",
        printed: "a(a+1)/((2n+a)(2n+a+1))",
        corrected: "b^2/((2n+a)(2n+a+1))",
        note: "factor a(a+1)/b^2 off, same origin as zeta",
    },
];

fn f<F: Field>(n: usize) -> F {
    F::from_usize(n)
}

fn c<F: Field>(v: i64) -> F {
    F::from_i64(v)
}

/// Published `(delta, epsilon, zeta)` for the ladder with parameters
/// `(a, b)` (Laguerre ignores `b`). Entries that are undefined at small
/// `n` are `None`, as in [`super::adjacent_down`].
pub fn printed_down<F: Field>(ladder: Ladder, a: &F, b: &F, n: usize) -> Option<AdjacentDown<F>> {
    let nn: F = f(n);
    let s = a.clone() + b.clone();
    let t = c::<F>(2) * nn.clone() + s.clone();
    let (delta, epsilon, zeta) = match ladder {
        Ladder::Jacobi => (
            ((nn.clone() + s.clone() + c(1)) * (nn.clone() + s.clone() + c(2)))
                .checked_div(&((t.clone() + c(1)) * (t.clone() + c(2))))?,
            ((a.clone() - b.clone()) * (nn.clone() + s.clone() + c(1)))
                .checked_div(&(t.clone() * (t.clone() + c(2)))),
            (-(nn.clone() + a.clone()) * (nn.clone() + b.clone()))
                .checked_div(&(t.clone() * (t.clone() + c(1)))),
        ),
        Ladder::Jacobi01 => (
            (nn.clone() + s.clone() + c(1)).checked_div(&(t.clone() + c(1)))?,
            (nn.clone() + a.clone()).checked_div(&(t.clone() + c(1))),
            Some(F::zero()),
        ),
        Ladder::Jacobi01Square => (
            ((nn.clone() + s.clone() + c(1)) * (nn.clone() + s.clone() + c(2)))
                .checked_div(&((t.clone() + c(1)) * (t.clone() + c(2))))?,
            (c::<F>(-2) * (nn.clone() + b.clone()) * (nn.clone() + s.clone() + c(1)))
                .checked_div(&(t.clone() * (t.clone() + c(2)))),
            ((nn.clone() + b.clone()) * (nn.clone() + b.clone() - c(1)))
                .checked_div(&(t.clone() * (t.clone() + c(1)))),
        ),
        Ladder::Laguerre => (c(1), Some(c(-2)), Some(c(1))),
        Ladder::Bessel => {
            let t = c::<F>(2) * nn.clone() + a.clone();
            (
                ((nn.clone() + a.clone() - c(1)) * (nn.clone() + a.clone()))
                    .checked_div(&((t.clone() - c(1)) * t.clone()))?,
                (c::<F>(2) * nn.clone() * (nn.clone() + a.clone() - c(1)))
                    .checked_div(&((t.clone() - c(2)) * t.clone())),
                (nn.clone() * (nn.clone() - c(1)) * b.clone() * b.clone()).checked_div(
                    &((t.clone() - c(2)) * (t.clone() - c(1)) * a.clone() * (a.clone() + c(1))),
                ),
            )
        }
    };
    Some(AdjacentDown {
        delta,
        epsilon: if n >= 1 { Some(epsilon?) } else { None },
        zeta: if n >= 2 { Some(zeta?) } else { None },
    })
}

/// Published `(eta, theta, vartheta)` for the ladder with parameters `(a, b)`.
pub fn printed_up<F: Field>(ladder: Ladder, a: &F, b: &F, n: usize) -> Option<AdjacentUp<F>> {
    let nn: F = f(n);
    let s = a.clone() + b.clone();
    let t = c::<F>(2) * nn.clone() + s.clone();
    let (eta, theta, vartheta) = match ladder {
        Ladder::Jacobi => (
            (c::<F>(-4) * (nn.clone() + c(1)) * (nn.clone() + c(2)))
                .checked_div(&((t.clone() + c(3)) * (t.clone() + c(4))))?,
            (c::<F>(4) * (a.clone() - b.clone()))
                .checked_div(&((t.clone() + c(2)) * (t.clone() + c(4))))?,
            (c::<F>(4) * (nn.clone() + a.clone() + c(1)) * (nn.clone() + b.clone() + c(1)))
                .checked_div(&((t.clone() + c(2)) * (t.clone() + c(3))))?,
        ),
        Ladder::Jacobi01 => (
            F::zero(),
            (nn.clone() + c(1)).checked_div(&(t.clone() + c(2)))?,
            (nn.clone() + b.clone() + c(1)).checked_div(&(t.clone() + c(2)))?,
        ),
        Ladder::Jacobi01Square => (
            ((nn.clone() + c(1)) * (nn.clone() + c(2)))
                .checked_div(&((t.clone() + c(3)) * (t.clone() + c(4))))?,
            (c::<F>(-2) * (nn.clone() + c(1)) * (nn.clone() + a.clone() + c(2)))
                .checked_div(&((t.clone() + c(2)) * (t.clone() + c(4))))?,
            ((nn.clone() + a.clone() + c(1)) * (nn.clone() + a.clone() + c(2)))
                .checked_div(&((t.clone() + c(2)) * (t.clone() + c(3))))?,
        ),
        Ladder::Laguerre => (
            (nn.clone() + c(1)) * (nn.clone() + c(2)),
            c::<F>(-2) * (nn.clone() + a.clone() + c(2)) * (nn.clone() + c(1)),
            (nn.clone() + a.clone() + c(1)) * (nn.clone() + a.clone() + c(2)),
        ),
        Ladder::Bessel => {
            let t = c::<F>(2) * nn.clone() + a.clone();
            let aa = a.clone() * (a.clone() + c(1));
            (
                (b.clone() * b.clone()).checked_div(&((t.clone() + c(1)) * (t.clone() + c(2))))?,
                (c::<F>(-2) * aa.clone() * (nn.clone() + a.clone()))
                    .checked_div(&(t.clone() * (t.clone() + c(2))))?,
                aa.checked_div(&(t.clone() * (t.clone() + c(1))))?,
            )
        }
    };
    Some(AdjacentUp {
        eta,
        theta,
        vartheta,
    })
}

/// Published forms with the entries listed in [`LADDER_ERRATA`] replaced.
pub fn corrected_down<F: Field>(ladder: Ladder, a: &F, b: &F, n: usize) -> Option<AdjacentDown<F>> {
    let mut d = printed_down(ladder, a, b, n)?;
    if ladder == Ladder::Bessel && n >= 2 {
        let t = c::<F>(2) * f::<F>(n) + a.clone();
        d.zeta = Some(
            (f::<F>(n) * f::<F>(n - 1)).checked_div(&((t.clone() - c(2)) * (t - c(1))))?,
        );
    }
    Some(d)
}

/// Published forms with the entries listed in [`LADDER_ERRATA`] replaced.
pub fn corrected_up<F: Field>(ladder: Ladder, a: &F, b: &F, n: usize) -> Option<AdjacentUp<F>> {
    let mut u = printed_up(ladder, a, b, n)?;
    match ladder {
        Ladder::Jacobi => {
            u.theta = u.theta * (f::<F>(n) + c(1));
        }
        Ladder::Bessel => {
            let t = c::<F>(2) * f::<F>(n) + a.clone();
            let bb = b.clone() * b.clone();
            u.theta = (c::<F>(-2) * bb.clone()).checked_div(&(t.clone() * (t.clone() + c(2))))?;
            u.vartheta = bb.checked_div(&(t.clone() * (t + c(1))))?;
        }
        _ => {}
    }
    Some(u)
}

/// Published leading and subleading coefficients of `B_n^{(a, b)}`:
/// `k_n = (n+a-1)_n / b^n`, `l_n = n (n+a-1)_{n-1} / b^{n-1}`.
pub fn bessel_leading<F: Field>(a: &F, b: &F, n: usize) -> (F, F) {
    let base = f::<F>(n) + a.clone() - c(1);
    let k = pochhammer(&base, n) / b.ipow(n);
    let l = if n == 0 {
        F::zero()
    } else {
        f::<F>(n) * pochhammer(&base, n - 1) / b.ipow(n - 1)
    };
    (k, l)
}

/// Published Bessel norm `(-1)^{n+1} n! b / ((2n+a-1) (a)_{n-1})`, only
/// for `n >= 1` where `(a)_{n-1}` is an ordinary Pochhammer symbol.
pub fn bessel_norm<F: Field>(a: &F, b: &F, n: usize) -> Option<F> {
    if n == 0 {
        return None;
    }
    let sign: F = if n % 2 == 1 { c(1) } else { c(-1) };
    let fact = (1..=n).fold(F::one(), |acc, j| acc * f::<F>(j));
    (sign * fact * b.clone())
        .checked_div(&((c::<F>(2) * f::<F>(n) + a.clone() - c(1)) * pochhammer(a, n - 1)))
}
