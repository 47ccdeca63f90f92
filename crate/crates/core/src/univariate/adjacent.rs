//! Connection coefficients between the families of `u` and `rho^2 u`.
//!
//! With `p_n` orthogonal for `u` and `p'_n` orthogonal for `rho^2 u`:
//!
//! ```text
//! p_n          = delta p'_n + epsilon p'_{n-1} + zeta p'_{n-2}
//! rho^2 p'_n   = eta p_{n+2} + theta p_{n+1} + vartheta p_n
//! ```
//!
//! Both families must carry consistent normalizations, i.e.
//! `h0(p') = <rho^2 u, 1>`; see `construction::norm_chain`.

use super::family::RecurrenceFamily;
use crate::error::{Error, Result};
use crate::numerics::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct AdjacentDown<F> {
    pub delta: F,
    /// Defined for `n >= 1`.
    pub epsilon: Option<F>,
    /// Defined for `n >= 2`.
    pub zeta: Option<F>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdjacentUp<F> {
    pub eta: F,
    pub theta: F,
    pub vartheta: F,
}

fn div<F: Field>(num: F, den: F, what: &str, fam: &RecurrenceFamily<F>, n: usize) -> Result<F> {
    num.checked_div(&den)
        .ok_or_else(|| Error::quasi(fam.label(), n, format!("zero denominator in {what}")))
}

/// `delta`, `epsilon`, `zeta` at index `n` for the pair (`fam_m`, `fam_m1`),
/// where `fam_m1` is orthogonal for `rho^2` times the functional of
/// `fam_m` and `s2` is the `x^2` coefficient of `rho^2`.
pub fn adjacent_down<F: Field>(
    fam_m: &RecurrenceFamily<F>,
    fam_m1: &RecurrenceFamily<F>,
    s2: &F,
    n: usize,
) -> Result<AdjacentDown<F>> {
    let lo = fam_m.leading(n)?;
    let hi = fam_m1.leading(n)?;
    let delta = div(lo.k.clone(), hi.k.clone(), "delta", fam_m1, n)?;
    let epsilon = if n >= 1 {
        let k1 = fam_m1.leading(n - 1)?.k;
        Some(div(lo.l.clone() - delta.clone() * hi.l.clone(), k1, "epsilon", fam_m1, n)?)
    } else {
        None
    };
    let zeta = if n >= 2 {
        let k2 = fam_m1.leading(n - 2)?.k;
        let ratio = div(fam_m.norm(n)?, fam_m1.norm(n - 2)?, "zeta", fam_m1, n)?;
        Some(s2.clone() * div(k2, lo.k.clone(), "zeta", fam_m, n)? * ratio)
    } else {
        None
    };
    Ok(AdjacentDown {
        delta,
        epsilon,
        zeta,
    })
}

/// `eta`, `theta`, `vartheta` at index `n` for the pair (`fam_m`, `fam_m1`).
pub fn adjacent_up<F: Field>(
    fam_m: &RecurrenceFamily<F>,
    fam_m1: &RecurrenceFamily<F>,
    s2: &F,
    n: usize,
) -> Result<AdjacentUp<F>> {
    let eta = s2.clone()
        * div(
            fam_m1.leading(n)?.k,
            fam_m.leading(n + 2)?.k,
            "eta",
            fam_m,
            n + 2,
        )?;
    let h_up = fam_m1.norm(n)?;
    let eps_next = adjacent_down(fam_m, fam_m1, s2, n + 1)?
        .epsilon
        .expect("epsilon is defined for n + 1 >= 1");
    let theta = eps_next * div(h_up.clone(), fam_m.norm(n + 1)?, "theta", fam_m, n + 1)?;
    let delta = adjacent_down(fam_m, fam_m1, s2, n)?.delta;
    let vartheta = delta * div(h_up, fam_m.norm(n)?, "vartheta", fam_m, n)?;
    Ok(AdjacentUp {
        eta,
        theta,
        vartheta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{rat, Rational};
    use crate::univariate::classical::{jacobi_std, laguerre};

    /// Second family with `h0` fixed by `<rho^2 u, 1>`.
    fn chained(
        lo: &RecurrenceFamily<Rational>,
        hi: RecurrenceFamily<Rational>,
        s: [Rational; 3],
    ) -> RecurrenceFamily<Rational> {
        let mu = lo.moments(2).unwrap();
        let [s2, s1, s0] = s;
        hi.with_h0(s2 * mu[2].clone() + s1 * mu[1].clone() + s0 * mu[0].clone())
    }

    #[test]
    fn legendre_to_jacobi11() {
        let lo = jacobi_std(rat(0, 1), rat(0, 1));
        let hi = chained(&lo, jacobi_std(rat(1, 1), rat(1, 1)), [rat(-1, 1), rat(0, 1), rat(1, 1)]);
        let d = adjacent_down(&lo, &hi, &rat(-1, 1), 2).unwrap();
        assert_eq!(d.delta, rat(2, 5));
        assert_eq!(d.epsilon, Some(rat(0, 1)));
        assert_eq!(d.zeta, Some(rat(-1, 5)));
        let u = adjacent_up(&lo, &hi, &rat(-1, 1), 0).unwrap();
        assert_eq!(u.vartheta, rat(2, 3));
    }

    #[test]
    fn laguerre_ladder() {
        let al = rat(1, 3);
        let lo = laguerre(al.clone());
        let hi = chained(&lo, laguerre(al + rat(2, 1)), [rat(1, 1), rat(0, 1), rat(0, 1)]);
        for n in 0..6 {
            let d = adjacent_down(&lo, &hi, &rat(1, 1), n).unwrap();
            assert_eq!(d.delta, rat(1, 1));
            if n >= 1 {
                assert_eq!(d.epsilon, Some(rat(-2, 1)));
            } else {
                assert_eq!(d.epsilon, None);
            }
            if n >= 2 {
                assert_eq!(d.zeta, Some(rat(1, 1)));
            }
            let u = adjacent_up(&lo, &hi, &rat(1, 1), n).unwrap();
            let nn = n as i64;
            assert_eq!(u.eta, rat((nn + 1) * (nn + 2), 1));
        }
    }

    #[test]
    fn zero_s2_kills_zeta_and_eta() {
        let lo = jacobi_std(rat(0, 1), rat(0, 1));
        let hi = chained(&lo, jacobi_std(rat(0, 1), rat(1, 1)), [rat(0, 1), rat(1, 1), rat(1, 1)]);
        let d = adjacent_down(&lo, &hi, &rat(0, 1), 3).unwrap();
        assert_eq!(d.zeta, Some(rat(0, 1)));
        let u = adjacent_up(&lo, &hi, &rat(0, 1), 3).unwrap();
        assert_eq!(u.eta, rat(0, 1));
    }
}
