use ortho2d::catalog::{make_system, CatalogId};
use ortho2d::construction::{assemble, RhoSpec};
use ortho2d::numerics::{rat, Rational};
use ortho2d::univariate::jacobi_std;
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Rational {
    rat(n, d)
}

fn legendre_square() -> CatalogId<Rational> {
    CatalogId::Square {
        alpha: r(0, 1),
        beta: r(0, 1),
        gamma: r(0, 1),
        delta: r(0, 1),
    }
}

#[test]
fn ladders_follow_the_catalog() {
    let sq = make_system(&legendre_square(), 4).unwrap();
    for m in 0..4 {
        let fam = sq.ladder(m).unwrap();
        assert_eq!(fam.h0(), &r(1, 1));
        for k in 0..5 {
            assert_eq!(fam.recurrence(k).unwrap(), jacobi_std(r(0, 1), r(0, 1)).recurrence(k).unwrap());
        }
    }
    let disk = make_system(&CatalogId::Disk { mu: r(1, 2) }, 4).unwrap();
    for m in 0..4 {
        let mm = r(1, 2) + r(m as i64, 1);
        let want = jacobi_std(mm.clone(), mm);
        for k in 0..5 {
            assert_eq!(disk.ladder(m).unwrap().recurrence(k).unwrap(), want.recurrence(k).unwrap());
        }
    }
}

#[test]
fn expansion_examples() {
    let disk = make_system(&CatalogId::Disk { mu: r(1, 2) }, 3).unwrap();
    assert_eq!(disk.expand_p(0, 0).unwrap().coeff(0, 0), r(1, 1));
    let p11 = disk.expand_p(1, 1).unwrap();
    assert_eq!(p11.len(), 1);
    assert_eq!(p11.coeff(0, 1), r(1, 1));
    let sq = make_system(&legendre_square(), 4).unwrap();
    let (x, y) = (r(1, 3), r(-3, 5));
    let leg = jacobi_std(r(0, 1), r(0, 1));
    for n in 0..4 {
        for m in 0..=n {
            let want = leg.eval(n - m, &x).unwrap() * leg.eval(m, &y).unwrap();
            assert_eq!(sq.expand_p(n, m).unwrap().eval(&x, &y), want);
        }
    }
    assert_eq!(sq.expand_p(2, 0).unwrap().eval(&r(1, 1), &r(0, 1)), r(1, 1));
    assert!(sq.expand_p(1, 2).is_err());
}

#[test]
fn moments_examples() {
    let disk = make_system(&CatalogId::Disk { mu: r(1, 2) }, 3).unwrap();
    assert_eq!(disk.w_moment(0, 0).unwrap(), r(1, 1));
    for h in 0..4 {
        for k in [1, 3, 5] {
            assert_eq!(disk.w_moment(h, k).unwrap(), r(0, 1));
        }
    }
    let id = CatalogId::Square {
        alpha: r(1, 1),
        beta: r(2, 1),
        gamma: r(0, 1),
        delta: r(1, 2),
    };
    let sq = make_system(&id, 3).unwrap();
    let mu = jacobi_std(r(1, 1), r(2, 1)).moments(6).unwrap();
    let nu = jacobi_std(r(0, 1), r(1, 2)).moments(6).unwrap();
    for h in 0..4 {
        for k in 0..4 {
            assert_eq!(sq.w_moment(h, k).unwrap(), mu[h].clone() * nu[k].clone());
        }
    }
}

#[test]
fn gram_examples() {
    let disk = make_system(&CatalogId::Disk { mu: r(1, 2) }, 3).unwrap();
    assert!(disk.gram_block(1, 0).unwrap().is_zero());
    let g0 = disk.gram_block(0, 0).unwrap();
    assert_eq!(g0.entries, vec![vec![r(1, 1)]]);
    let g1 = disk.gram_block(1, 1).unwrap();
    assert!(g1.is_diagonal());
    let h10 = disk.ladder(0).unwrap().norm(1).unwrap();
    let h01 = disk.ladder(1).unwrap().norm(0).unwrap() * disk.q().norm(1).unwrap();
    assert_eq!(g1.entries[0][0], h10);
    assert_eq!(g1.entries[1][1], h01);
}

#[test]
fn case_ii_rejects_asymmetric_y_family() {
    let rho = RhoSpec::sqrt_quadratic(r(-1, 1), r(0, 1), r(1, 1)).unwrap();
    let res = assemble(
        "bad",
        rho,
        |_| Ok(jacobi_std(r(1, 1), r(1, 1))),
        jacobi_std(r(1, 1), r(0, 1)),
        2,
    );
    assert!(res.is_err());
}

#[test]
fn breakdown_is_a_quasi_definiteness_error() {
    let id = CatalogId::BesselLaguerre { g: r(-1, 1), gamma: r(1, 1) };
    let err = make_system(&id, 3).and_then(|s| s.gram_block(3, 3).map(|_| ())).unwrap_err();
    assert!(err.is_quasi_definite(), "{err}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn recurrence_evaluation_agrees_with_expansion(
        mu in 0i64..5, xn in -9i64..9, yn in -9i64..9, n in 0usize..6
    ) {
        let sys = make_system(&CatalogId::Simplex { alpha: r(mu, 2), beta: r(1, 3), gamma: r(mu, 1) }, 6).unwrap();
        let (x, y) = (r(xn, 7), r(yn, 5));
        for m in 0..=n {
            prop_assert_eq!(sys.eval_p(n, m, &x, &y).unwrap(), sys.expand_p(n, m).unwrap().eval(&x, &y));
        }
    }

    #[test]
    fn even_rho_powers_agree(n in 0usize..6, beta in 0i64..4) {
        let sys = make_system(&CatalogId::Biangle { alpha: r(1, 2), beta: r(beta, 2) }, 6).unwrap();
        for m in 0..=n {
            prop_assert_eq!(sys.expand_p_via_square(n, m).unwrap(), (*sys.expand_p(n, m).unwrap()).clone());
        }
    }
}
