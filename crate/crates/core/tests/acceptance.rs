//! Acceptance suite: one PASS/FAIL line per criterion, followed by
//! indented detail lines. Exits with status 1 if any criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;

use ortho2d::catalog::{
    cross_check, cross_check_with, make_system, reference_ids, CatalogId, Family, Forms,
};
use ortho2d::construction::{Axis, RhoCase};
use ortho2d::numerics::{rat, Field, Rational, Scalar};
use ortho2d::ttr::{first_ttr, second_ttr, theorem_ttr, MatrixId};
use ortho2d::univariate::tabulated::{ladder_pair, printed_down, printed_up, Ladder};
use ortho2d::univariate::{adjacent_down, adjacent_up};
use ortho2d::verify::{
    symmetry_verdicts, verify_central_symmetry, verify_orthogonality,
    verify_orthonormal_transpose, verify_ranks, verify_relation, verify_relation_points,
};
use ortho2d::Error;

struct Verdict {
    passed: bool,
    details: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict {
            passed: true,
            details: Vec::new(),
        }
    }

    fn note(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.details.push(format!("{} {line}", if ok { "ok  " } else { "FAIL" }));
    }

    fn info(&mut self, line: String) {
        self.details.push(format!("info {line}"));
    }
}

fn float_id(id: &CatalogId<Rational>) -> CatalogId<f64> {
    let params: Vec<Scalar> = id
        .params()
        .into_iter()
        .map(|(_, v)| Scalar::Float(v.to_f64()))
        .collect();
    CatalogId::from_scalars(id.family(), &params).expect("float parameters")
}

fn closed_form_reproduction() -> Verdict {
    let mut v = Verdict::new();
    let mut errata: BTreeMap<String, usize> = BTreeMap::new();
    for id in reference_ids() {
        let report = cross_check(&id, 10).expect("cross check");
        let explained = report.mismatches.len() - report.unexplained().count();
        v.note(
            report.passed(),
            format!(
                "{}: {} band positions, {} mismatches ({} explained by known errata)",
                id.label(),
                report.compared,
                report.mismatches.len(),
                explained
            ),
        );
        if let Some(first) = report.unexplained().next() {
            v.info(format!("first unexplained mismatch: {first}"));
        }
        for m in &report.mismatches {
            if let Some(e) = m.erratum {
                *errata.entry(format!("{} {}", e.location, e.entry)).or_default() += 1;
            }
        }
        if !report.passed() {
            let fixed = cross_check_with(&id, 10, Forms::Corrected).expect("cross check");
            v.info(format!(
                "{}: with errata applied, {} mismatches",
                id.label(),
                fixed.mismatches.len()
            ));
        }
    }
    for (what, count) in errata {
        v.info(format!("errata applied: {what} ({count} positions)"));
    }
    v
}

fn relation_residuals() -> Verdict {
    let mut v = Verdict::new();
    for id in reference_ids() {
        let sys = make_system(&id, 10).expect("system");
        let mut failures = Vec::new();
        for n in 0..=10 {
            for axis in [Axis::X, Axis::Y] {
                let r = verify_relation(&sys, n, axis).expect("relation");
                if !r.passed {
                    failures.push(r.to_string());
                }
            }
        }
        v.note(
            failures.is_empty(),
            format!("exact {}: n<=10, both axes, {} failures", id.label(), failures.len()),
        );
        let fid = float_id(&id);
        let fsys = make_system(&fid, 6).expect("float system");
        let mut worst = 0.0f64;
        let mut ffail = Vec::new();
        for n in 0..=6 {
            let set = theorem_ttr(&fsys, n).expect("float builders");
            for axis in [Axis::X, Axis::Y] {
                let r = verify_relation_points(&fsys, &set, axis, 100, 7 + n as u64)
                    .expect("point residual");
                if let Some(d) = &r.detail {
                    if let Some(x) = d.rsplit(' ').next().and_then(|t| t.parse::<f64>().ok()) {
                        worst = worst.max(x);
                    }
                }
                if !r.passed {
                    ffail.push(r.to_string());
                }
            }
        }
        v.note(
            ffail.is_empty(),
            format!(
                "float {}: n<=6, 100 points per relation, max relative residual {worst:.3e}",
                fid.label()
            ),
        );
        for f in ffail.iter().take(2) {
            v.info(f.clone());
        }
    }
    v
}

fn orthogonality() -> Verdict {
    let mut v = Verdict::new();
    for id in reference_ids() {
        let sys = make_system(&id, 8).expect("system");
        let r = verify_orthogonality(&sys, 8).expect("orthogonality");
        v.note(r.passed, format!("{}: {r}", id.label()));
    }
    v
}

fn rank_conditions() -> Verdict {
    let mut v = Verdict::new();
    for id in reference_ids() {
        let sys = make_system(&id, 6).expect("system");
        let r = verify_ranks(&sys, 6).expect("ranks");
        v.note(r.passed, format!("{}: {r}", id.label()));
    }
    v
}

fn central_symmetry() -> Verdict {
    let mut v = Verdict::new();
    for id in reference_ids() {
        let sys = make_system(&id, 8).expect("system");
        let s = symmetry_verdicts(&sys, 8).expect("verdicts");
        let expected = match &id {
            CatalogId::Disk { .. } => Some(true),
            CatalogId::Square { alpha, beta, .. } if alpha != beta => Some(false),
            _ => None,
        };
        let ok = s.agree() && expected.is_none_or(|e| s.odd_moments_vanish == e);
        v.note(
            ok,
            format!(
                "{}: odd moments (order <= 17) vanish: {}, B (n <= 8) vanish: {}{}",
                id.label(),
                s.odd_moments_vanish,
                s.b_vanish,
                match expected {
                    Some(true) => ", expected symmetric",
                    Some(false) => ", expected not symmetric",
                    None => "",
                }
            ),
        );
        let r = verify_central_symmetry(&sys, 8).expect("symmetry check");
        assert_eq!(r.passed, s.agree());
    }
    v
}

fn appendix_identities() -> Verdict {
    let mut v = Verdict::new();
    let params: &[(Ladder, Rational, Rational)] = &[
        (Ladder::Jacobi, rat(1, 2), rat(1, 2)),
        (Ladder::Jacobi, rat(1, 2), rat(3, 2)),
        (Ladder::Jacobi, rat(2, 1), rat(1, 3)),
        (Ladder::Jacobi01, rat(1, 2), rat(3, 2)),
        (Ladder::Jacobi01, rat(1, 1), rat(-1, 2)),
        (Ladder::Jacobi01Square, rat(1, 2), rat(3, 2)),
        (Ladder::Jacobi01Square, rat(3, 1), rat(0, 1)),
        (Ladder::Laguerre, rat(1, 2), rat(0, 1)),
        (Ladder::Laguerre, rat(3, 1), rat(0, 1)),
        (Ladder::Bessel, rat(5, 1), rat(-5, 1)),
        (Ladder::Bessel, rat(7, 2), rat(2, 1)),
    ];
    for (ladder, a, b) in params {
        let (lo, hi, s2) = ladder_pair(*ladder, a, b).expect("ladder pair");
        let mut bad: BTreeMap<&str, usize> = BTreeMap::new();
        let mut first = None;
        for n in 0..=10 {
            let gd = adjacent_down(&lo, &hi, &s2, n).expect("generic down");
            let pd = printed_down(*ladder, a, b, n).expect("printed down");
            let gu = adjacent_up(&lo, &hi, &s2, n).expect("generic up");
            let pu = printed_up(*ladder, a, b, n).expect("printed up");
            let pairs = [
                ("delta", Some(gd.delta), Some(pd.delta)),
                ("epsilon", gd.epsilon, pd.epsilon),
                ("zeta", gd.zeta, pd.zeta),
                ("eta", Some(gu.eta), Some(pu.eta)),
                ("theta", Some(gu.theta), Some(pu.theta)),
                ("vartheta", Some(gu.vartheta), Some(pu.vartheta)),
            ];
            for (name, g, p) in pairs {
                if g != p {
                    *bad.entry(name).or_default() += 1;
                    first.get_or_insert_with(|| {
                        format!(
                            "{name} at n={n}: generic {}, printed {}",
                            g.map_or("undefined".into(), |x| x.to_string()),
                            p.map_or("undefined".into(), |x| x.to_string())
                        )
                    });
                }
            }
        }
        let summary = if bad.is_empty() {
            "all six coefficients agree".to_string()
        } else {
            let list: Vec<String> = bad.iter().map(|(k, c)| format!("{k} x{c}")).collect();
            format!("disagree: {}; first: {}", list.join(", "), first.unwrap_or_default())
        };
        v.note(
            bad.is_empty(),
            format!("{} a={a} b={b}, n<=10: {summary}", ladder.name()),
        );
    }
    v
}

fn degenerations() -> Verdict {
    let mut v = Verdict::new();
    let zero = rat(0, 1);
    for id in reference_ids() {
        let sys = make_system(&id, 10).expect("system");
        let mut problems: Vec<String> = Vec::new();
        let mut checked = Vec::new();
        if matches!(id.family(), Family::Square) {
            checked.push("tensor form");
            let ladder = sys.ladder(0).unwrap();
            for n in 0..=10 {
                let (a1, b1, c1) = first_ttr(&sys, n).unwrap();
                let (a2, b2, c2) = second_ttr(&sys, n).unwrap();
                for m in 0..=n {
                    let p = ladder.recurrence(n - m).unwrap();
                    let q = sys.q().recurrence(m).unwrap();
                    let mut want = vec![
                        (MatrixId::A1, &a1, m, p.a.clone()),
                        (MatrixId::B1, &b1, m, p.b.clone()),
                        (MatrixId::A2, &a2, m + 1, q.a.clone()),
                        (MatrixId::B2, &b2, m, q.b.clone()),
                    ];
                    if m < n {
                        want.push((MatrixId::C1, &c1, m, p.c.clone()));
                    }
                    if m >= 1 {
                        want.push((MatrixId::C2, &c2, m - 1, q.c.clone()));
                    }
                    for (mid, mat, col, value) in want {
                        if mat.get(m, col) != value {
                            problems.push(format!("n={n} {mid}[{m},{col}]"));
                        }
                    }
                    for (mid, mat) in [(MatrixId::A2, &a2), (MatrixId::B2, &b2), (MatrixId::C2, &c2)] {
                        for (r, c, val) in mat.nonzeros() {
                            let allowed = match mid {
                                MatrixId::A2 => c == r + 1,
                                MatrixId::B2 => c == r,
                                _ => c + 1 == r,
                            };
                            if r == m && !allowed && val != zero {
                                problems.push(format!("n={n} {mid}[{r},{c}] = {val}"));
                            }
                        }
                    }
                }
            }
        }
        if sys.rho().s2() == &zero {
            checked.push("s2 = 0");
            for n in 0..=10 {
                for m in 0..=n {
                    let lo = sys.ladder(m).unwrap();
                    let hi = sys.ladder(m + 1).unwrap();
                    let d = adjacent_down(&lo, &hi, &zero, n - m).unwrap();
                    let u = adjacent_up(&lo, &hi, &zero, n - m).unwrap();
                    if d.zeta.is_some_and(|z| z != zero) || u.eta != zero {
                        problems.push(format!("n={n} m={m}: zeta or eta nonzero"));
                    }
                }
                let (a2, _, c2) = second_ttr(&sys, n).unwrap();
                for m in 0..=n {
                    if m >= 1 && a2.get(m, m - 1) != zero {
                        problems.push(format!("n={n} A2[{m},{}] nonzero", m - 1));
                    }
                    if m + 1 < c2.cols() && c2.get(m, m + 1) != zero {
                        problems.push(format!("n={n} C2[{m},{}] nonzero", m + 1));
                    }
                }
            }
        }
        if sys.rho().case() == RhoCase::II {
            checked.push("case II mid-band");
            for n in 0..=10 {
                let (a2, b2, c2) = second_ttr(&sys, n).unwrap();
                for m in 0..=n {
                    for (mid, mat) in [(MatrixId::A2, &a2), (MatrixId::B2, &b2), (MatrixId::C2, &c2)] {
                        if m < mat.cols() && mat.get(m, m) != zero {
                            problems.push(format!("n={n} {mid}[{m},{m}] nonzero"));
                        }
                    }
                }
            }
        }
        if checked.is_empty() {
            continue;
        }
        v.note(
            problems.is_empty(),
            format!(
                "{} ({}): {}",
                id.label(),
                checked.join(", "),
                problems.first().map_or("holds for n<=10".to_string(), |p| format!(
                    "{} violations, first {p}",
                    problems.len()
                ))
            ),
        );
    }
    v
}

fn orthonormal_transpose() -> Verdict {
    let mut v = Verdict::new();
    for id in reference_ids() {
        let fid = float_id(&id);
        let sys = make_system(&fid, 5).expect("float system");
        let r = verify_orthonormal_transpose(&sys, 5);
        match (id.family(), r) {
            (Family::BesselLaguerre, Err(e @ Error::Domain(_))) => {
                v.note(true, format!("{}: rejected ({e})", fid.label()))
            }
            (Family::BesselLaguerre, other) => {
                v.note(false, format!("{}: expected rejection, got {other:?}", fid.label()))
            }
            (Family::LaguerreJacobi, Ok(r)) => v.info(format!("{} (not required): {r}", fid.label())),
            (Family::LaguerreJacobi, Err(e)) => v.info(format!("{} (not required): error {e}", fid.label())),
            (_, Ok(r)) => v.note(r.passed, format!("{}: {r}", fid.label())),
            (_, Err(e)) => v.note(false, format!("{}: error {e}", fid.label())),
        }
    }
    v
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("closed-form reproduction (printed forms), n<=10, exact", closed_form_reproduction),
        ("relation residuals: exact n<=10, float n<=6 at 100 points, tol 1e-10", relation_residuals),
        ("orthogonality n<=8, exact, diagonal = norm products", orthogonality),
        ("rank conditions n<=6, exact", rank_conditions),
        ("central symmetry iff B = 0", central_symmetry),
        ("appendix connection coefficients (printed forms), n<=10, exact", appendix_identities),
        ("degenerations: tensor form, s2 = 0, case II mid-band zeros", degenerations),
        ("orthonormal transpose, float, n<=5, tol 1e-10", orthonormal_transpose),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        if !verdict.passed {
            failed += 1;
        }
        println!(
            "{} criterion {}: {name} [{secs:.1}s]",
            if verdict.passed { "PASS" } else { "FAIL" },
            i + 1
        );
        for d in &verdict.details {
            println!("    {d}");
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
