use ortho2d::numerics::{rat, Field, Rational};
use ortho2d::univariate::tabulated::{
    bessel_leading, bessel_norm, corrected_down, corrected_up, ladder_pair, printed_down,
    printed_up, Ladder, LADDER_ERRATA,
};
use ortho2d::univariate::{
    adjacent_down, adjacent_up, bessel, jacobi_shift, jacobi_std, laguerre, RecurrenceFamily,
};
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Rational {
    rat(n, d)
}

fn binomial(top: &Rational, k: usize) -> Rational {
    (0..k).fold(r(1, 1), |acc, j| {
        acc * (top.clone() - Rational::from_usize(j)) / Rational::from_usize(j + 1)
    })
}

#[test]
fn jacobi_recurrence_values() {
    let legendre = jacobi_std(r(0, 1), r(0, 1));
    let r0 = legendre.recurrence(0).unwrap();
    assert_eq!((r0.a, r0.b), (r(1, 1), r(0, 1)));
    let r2 = legendre.recurrence(2).unwrap();
    assert_eq!((r2.a, r2.c), (r(3, 5), r(2, 5)));
    assert_eq!(jacobi_std(r(1, 1), r(0, 1)).b(1).unwrap(), r(-1, 15));
}

#[test]
fn shifted_jacobi_halves_coefficients() {
    let s = jacobi_shift(r(0, 1), r(0, 1));
    assert_eq!(s.a(0).unwrap(), r(1, 2));
    assert_eq!(s.b(0).unwrap(), r(1, 2));
    assert_eq!(s.c(1).unwrap(), r(1, 6));
    let (a, b) = (r(3, 2), r(-1, 3));
    for n in 0..6 {
        assert_eq!(jacobi_shift(a.clone(), b.clone()).a(n).unwrap(), jacobi_std(a.clone(), b.clone()).a(n).unwrap() / r(2, 1));
    }
}

#[test]
fn laguerre_and_bessel_values() {
    let l = laguerre(r(0, 1));
    assert_eq!((l.a(0).unwrap(), l.b(0).unwrap()), (r(-1, 1), r(1, 1)));
    assert_eq!(l.c(3).unwrap(), r(-3, 1));
    assert_eq!(laguerre(r(1, 2)).b(2).unwrap(), r(11, 2));
    let b = bessel(r(5, 1), r(7, 1)).unwrap();
    assert_eq!(b.a(0).unwrap(), r(7, 5));
    assert_eq!(b.b(0).unwrap(), r(-7, 5));
    assert_eq!(bessel(r(3, 1), r(1, 1)).unwrap().c(1).unwrap(), r(-1, 12));
    let flat = bessel(r(2, 1), r(3, 1)).unwrap();
    for n in 1..6 {
        assert_eq!(flat.b(n).unwrap(), r(0, 1));
    }
    assert!(bessel(r(2, 1), r(0, 1)).is_err());
}

#[test]
fn leading_norms_moments() {
    let legendre = jacobi_std(r(0, 1), r(0, 1));
    let lp = legendre.leading(0).unwrap();
    assert_eq!((lp.k, lp.l), (r(1, 1), r(0, 1)));
    let lp = legendre.leading(2).unwrap();
    assert_eq!((lp.k, lp.l), (r(3, 2), r(0, 1)));
    assert_eq!(legendre.norm(1).unwrap(), r(1, 3));
    let mu = legendre.moments(3).unwrap();
    assert_eq!(mu, vec![r(1, 1), r(0, 1), r(1, 3), r(0, 1)]);
    assert_eq!(legendre.coeffs(2).unwrap(), vec![r(-1, 2), r(0, 1), r(3, 2)]);
    assert_eq!(legendre.coeffs(1).unwrap(), vec![r(0, 1), r(1, 1)]);
    assert_eq!(laguerre(r(0, 1)).moments(3).unwrap()[3], r(6, 1));
}

#[test]
fn normalizations_at_special_points() {
    let (a, b) = (r(3, 2), r(1, 3));
    let j = jacobi_std(a.clone(), b);
    let l = laguerre(a.clone());
    for n in 0..7 {
        let top = Rational::from_usize(n) + a.clone();
        assert_eq!(j.eval(n, &r(1, 1)).unwrap(), binomial(&top, n));
        assert_eq!(l.eval(n, &r(0, 1)).unwrap(), binomial(&top, n));
    }
}

#[test]
fn bessel_closed_forms_match_recurrence() {
    for (a, b) in [(r(5, 1), r(-5, 1)), (r(7, 2), r(2, 1))] {
        let fam = bessel(a.clone(), b.clone()).unwrap();
        assert_eq!(fam.leading(1).unwrap().k, a.clone() / b.clone());
        for n in 0..8 {
            let lp = fam.leading(n).unwrap();
            assert_eq!((lp.k, lp.l), bessel_leading(&a, &b, n), "n={n}");
        }
        assert_eq!(fam.norm(1).unwrap() / fam.norm(0).unwrap(), r(-1, 1) / (a.clone() + r(1, 1)));
        let p1 = bessel_norm(&a, &b, 1).unwrap();
        for n in 2..8 {
            assert_eq!(
                fam.norm(n).unwrap() / fam.norm(1).unwrap(),
                bessel_norm(&a, &b, n).unwrap() / p1.clone(),
                "n={n}"
            );
        }
    }
}

#[test]
fn adjacent_examples() {
    let (lo, hi, s2) = ladder_pair(Ladder::Jacobi, &r(0, 1), &r(0, 1)).unwrap();
    let d = adjacent_down(&lo, &hi, &s2, 2).unwrap();
    assert_eq!(d.delta, r(2, 5));
    assert_eq!(d.epsilon, Some(r(0, 1)));
    assert_eq!(d.zeta, Some(r(-1, 5)));
    let (lo, hi, s2) = ladder_pair(Ladder::Laguerre, &r(1, 2), &r(0, 1)).unwrap();
    for n in 2..8 {
        let d = adjacent_down(&lo, &hi, &s2, n).unwrap();
        assert_eq!((d.delta, d.epsilon, d.zeta), (r(1, 1), Some(r(-2, 1)), Some(r(1, 1))));
        let u = adjacent_up(&lo, &hi, &s2, n).unwrap();
        assert_eq!(u.eta, Rational::from_usize((n + 1) * (n + 2)));
    }
    let (lo, hi, s2) = ladder_pair(Ladder::Jacobi01, &r(1, 2), &r(3, 2)).unwrap();
    assert_eq!(s2, r(0, 1));
    for n in 0..6 {
        assert_eq!(adjacent_down(&lo, &hi, &s2, n).unwrap().zeta.unwrap_or(r(0, 1)), r(0, 1));
        assert_eq!(adjacent_up(&lo, &hi, &s2, n).unwrap().eta, r(0, 1));
    }
}

/// Expands `p_n` in the adjacent family and checks it against the
/// coefficient lists: `p_n = delta p'_n + epsilon p'_{n-1} + zeta p'_{n-2}`.
fn down_identity_holds(lo: &RecurrenceFamily<Rational>, hi: &RecurrenceFamily<Rational>, s2: &Rational, n: usize) -> bool {
    let d = adjacent_down(lo, hi, s2, n).unwrap();
    let mut rhs: Vec<Rational> = hi.coeffs(n).unwrap().into_iter().map(|c| c * d.delta.clone()).collect();
    for (shift, coef) in [(1, d.epsilon), (2, d.zeta)] {
        if let Some(k) = coef {
            for (i, c) in hi.coeffs(n - shift).unwrap().into_iter().enumerate() {
                rhs[i] += c * k.clone();
            }
        }
    }
    rhs == lo.coeffs(n).unwrap()
}

#[test]
fn connection_identities_hold_polynomially() {
    for ladder in Ladder::ALL {
        let (lo, hi, s2) = ladder_pair(ladder, &r(1, 2), &r(5, 3)).unwrap();
        for n in 0..7 {
            assert!(down_identity_holds(&lo, &hi, &s2, n), "{} n={n}", ladder.name());
        }
    }
}

#[test]
fn printed_forms_differ_exactly_at_listed_errata() {
    let (a, b) = (r(5, 2), r(3, 4));
    for ladder in Ladder::ALL {
        for n in 0..8 {
            let pd = printed_down(ladder, &a, &b, n).unwrap();
            let cd = corrected_down(ladder, &a, &b, n).unwrap();
            let pu = printed_up(ladder, &a, &b, n).unwrap();
            let cu = corrected_up(ladder, &a, &b, n).unwrap();
            let listed = |entry: &str| {
                LADDER_ERRATA
                    .iter()
                    .any(|e| e.location.starts_with(ladder.name()) && e.entry == entry)
            };
            for (entry, differs) in [
                ("delta", pd.delta != cd.delta),
                ("epsilon", pd.epsilon != cd.epsilon),
                ("zeta", pd.zeta != cd.zeta),
                ("eta", pu.eta != cu.eta),
                ("theta", pu.theta != cu.theta),
                ("vartheta", pu.vartheta != cu.vartheta),
            ] {
                if differs {
                    assert!(listed(entry), "{} {entry} n={n} differs but is not listed", ladder.name());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gram_property_of_norms(an in 0i64..8, ad in 1i64..4, bn in 0i64..8, bd in 1i64..4) {
        let fam = jacobi_std(r(an, ad), r(bn, bd));
        let mu = fam.moments(8).unwrap();
        let pair = |i: usize, j: usize| -> Rational {
            let (p, q) = (fam.coeffs(i).unwrap(), fam.coeffs(j).unwrap());
            let mut s = r(0, 1);
            for (a, pa) in p.iter().enumerate() {
                for (b, qb) in q.iter().enumerate() {
                    s += pa.clone() * qb.clone() * mu[a + b].clone();
                }
            }
            s
        };
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { fam.norm(i).unwrap() } else { r(0, 1) };
                prop_assert_eq!(pair(i, j), want);
            }
        }
    }

    #[test]
    fn leading_coefficients_match_expansion(an in -1i64..6, bn in 1i64..6, n in 0usize..7) {
        let fam = laguerre(r(an, 2) + r(bn, 3));
        let c = fam.coeffs(n).unwrap();
        let lp = fam.leading(n).unwrap();
        prop_assert_eq!(&lp.k, &c[n]);
        let sub = if n == 0 { r(0, 1) } else { c[n - 1].clone() };
        prop_assert_eq!(lp.l, sub);
    }

    #[test]
    fn generic_connection_matches_corrected_tables(
        an in 1i64..9, ad in 1i64..4, bn in 1i64..9, bd in 1i64..4, n in 0usize..9
    ) {
        let (a, b) = (r(an, ad), r(bn, bd));
        for ladder in Ladder::ALL {
            let (lo, hi, s2) = ladder_pair(ladder, &a, &b).unwrap();
            prop_assert_eq!(adjacent_down(&lo, &hi, &s2, n).unwrap(), corrected_down(ladder, &a, &b, n).unwrap());
            prop_assert_eq!(adjacent_up(&lo, &hi, &s2, n).unwrap(), corrected_up(ladder, &a, &b, n).unwrap());
        }
    }
}
