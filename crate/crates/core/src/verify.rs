//! Verification suites: exact relation residuals, Gram orthogonality,
//! central symmetry, rank conditions and float spot checks.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{cross_check, make_system, CatalogId, Definiteness};
use crate::construction::{Axis, BivariateSystem};
use crate::error::{Error, Result};
use crate::numerics::{approx_eq, negligible, Field, Mode, SparsePoly2, FLOAT_TOLERANCE};
use crate::ttr::{rank_conditions, theorem_ttr, MatrixId, TTRSet};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Offending indices and value; always present on failure.
    pub witness: Option<String>,
    /// Extra information such as the largest residual seen.
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>, detail: Option<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            witness: None,
            detail,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            witness: Some(witness.into()),
            detail: None,
        }
    }

    fn with_detail(mut self, detail: Option<String>) -> Self {
        self.detail = detail;
        self
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.name)?;
        if let Some(w) = &self.witness {
            write!(f, " [{w}]")?;
        }
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub family: String,
    pub max_degree: usize,
    pub mode: Mode,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn rel_ok(residual: f64, scale: f64) -> bool {
    residual <= FLOAT_TOLERANCE * scale.max(f64::MIN_POSITIVE)
}

/// The polynomial residual of row `m`:
/// `t P_{n,m} - sum_j A[m][j] P_{n+1,j} - B P_n - C P_{n-1}`, and the
/// largest coefficient among the terms.
fn row_residual<F: Field>(
    sys: &BivariateSystem<F>,
    set: &TTRSet<F>,
    axis: Axis,
    m: usize,
) -> Result<(SparsePoly2<F>, F)> {
    let n = set.n;
    let (a, b, c) = set.axis(axis);
    let p = sys.expand_p(n, m)?;
    let lead = match axis {
        Axis::X => p.shift(1, 0),
        Axis::Y => p.shift(0, 1),
    };
    let mut scale = lead.max_abs_coeff();
    let mut res = lead;
    let mut sub = |mat: &crate::numerics::BandMatrix<F>, deg: usize| -> Result<()> {
        for j in 0..mat.cols() {
            let coef = mat.get(m, j);
            if coef.is_zero() {
                continue;
            }
            let term = sys.expand_p(deg, j)?.scale(&coef);
            let big = term.max_abs_coeff();
            if big > scale {
                scale = big;
            }
            res.add_scaled(&term, &-F::one());
        }
        Ok(())
    };
    sub(a, n + 1)?;
    sub(b, n)?;
    if n >= 1 {
        sub(c, n - 1)?;
    }
    Ok((res, scale))
}

/// Checks `t P_n = A P_{n+1} + B P_n + C P_{n-1}` coefficientwise for the
/// given matrices: exactly zero in exact mode, `max |residual| / max |term|
/// <= 1e-10` in float mode.
pub fn verify_relation_with<F: Field>(
    sys: &BivariateSystem<F>,
    set: &TTRSet<F>,
    axis: Axis,
) -> Result<CheckResult> {
    let name = format!("relation {} n={}", axis.name(), set.n);
    let mut worst = 0f64;
    for m in 0..=set.n {
        let (res, scale) = row_residual(sys, set, axis, m)?;
        match F::MODE {
            Mode::Exact => {
                if !res.is_zero() {
                    return Ok(CheckResult::fail(
                        name,
                        format!("row m={m}: residual {res}"),
                    ));
                }
            }
            Mode::Float => {
                let r = res.max_abs_coeff().to_f64();
                let s = scale.to_f64();
                let rel = if s > 0.0 { r / s } else { r };
                worst = worst.max(rel);
                if !rel_ok(r, s) {
                    return Ok(CheckResult::fail(
                        name,
                        format!("row m={m}: relative residual {rel:e}"),
                    ));
                }
            }
        }
    }
    let detail = (F::MODE == Mode::Float).then(|| format!("max relative residual {worst:e}"));
    Ok(CheckResult::pass(name, detail))
}

/// [`verify_relation_with`] on the matrices from the theorem builders.
pub fn verify_relation<F: Field>(
    sys: &BivariateSystem<F>,
    n: usize,
    axis: Axis,
) -> Result<CheckResult> {
    verify_relation_with(sys, &theorem_ttr(sys, n)?, axis)
}

/// Evaluates the relation at `points` uniform random points of
/// `[-1, 1]^2` (seeded), comparing `|residual|` with the sum of the
/// absolute values of the terms. Polynomial values come from the
/// univariate recurrences, not from the monomial expansion.
pub fn verify_relation_points<F: Field>(
    sys: &BivariateSystem<F>,
    set: &TTRSet<F>,
    axis: Axis,
    points: usize,
    seed: u64,
) -> Result<CheckResult> {
    let n = set.n;
    let name = format!("relation {} n={} at {points} random points", axis.name(), n);
    let (a, b, c) = set.axis(axis);
    let values = |deg: usize, x: f64, y: f64| -> Result<Vec<f64>> {
        sys.eval_degree_with(deg, &x, &y, |v| v.to_f64())
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0f64;
    for _ in 0..points {
        let x: f64 = rng.random_range(-1.0..=1.0);
        let y: f64 = rng.random_range(-1.0..=1.0);
        let t = match axis {
            Axis::X => x,
            Axis::Y => y,
        };
        let now = values(n, x, y)?;
        let next = values(n + 1, x, y)?;
        let prev = if n >= 1 { values(n - 1, x, y)? } else { Vec::new() };
        for m in 0..=n {
            let lhs = t * now[m];
            let mut res = lhs;
            let mut scale = lhs.abs();
            let mut add = |mat: &crate::numerics::BandMatrix<F>, ps: &[f64]| {
                for (j, p) in ps.iter().enumerate() {
                    let v = mat.get(m, j).to_f64() * p;
                    res -= v;
                    scale += v.abs();
                }
            };
            add(a, &next);
            add(b, &now);
            add(c, &prev);
            let rel = if scale > 0.0 { res.abs() / scale } else { res.abs() };
            worst = worst.max(rel);
            if !rel_ok(res.abs(), scale) {
                return Ok(CheckResult::fail(
                    name,
                    format!("row m={m} at (x, y) = ({x}, {y}): relative residual {rel:e}"),
                ));
            }
        }
    }
    Ok(CheckResult::pass(name, Some(format!("max relative residual {worst:e}"))))
}

/// `<w, P_n P_h^t> = 0` for `h < n <= max_degree`, and `H_n` diagonal
/// with diagonal entries `h^{(m)}_{n-m} h~_m`.
pub fn verify_orthogonality<F: Field>(
    sys: &BivariateSystem<F>,
    max_degree: usize,
) -> Result<CheckResult> {
    let name = format!("orthogonality n<={max_degree}");
    for n in 0..=max_degree {
        let diag = sys.gram_block(n, n)?;
        let scale = diag
            .entries
            .iter()
            .enumerate()
            .map(|(m, r)| r[m].to_f64().abs())
            .fold(0.0, f64::max);
        for h in 0..=n {
            let block = if h == n { diag.clone() } else { sys.gram_block(n, h)? };
            for (m, row) in block.entries.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if h == n && j == m {
                        let expect = sys.norm_product(n, m)?;
                        if !approx_eq(v, &expect) {
                            return Ok(CheckResult::fail(
                                name,
                                format!("H_{n}[{m},{m}] = {v}, norm product {expect}"),
                            ));
                        }
                    } else if !negligible(v, scale) {
                        return Ok(CheckResult::fail(
                            name,
                            format!("<w, P_({n},{m}) P_({h},{j})> = {v}"),
                        ));
                    }
                }
            }
        }
    }
    Ok(CheckResult::pass(name, None))
}

/// Both sides of the central-symmetry equivalence, computed independently.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryVerdicts {
    /// All moments of odd total order up to `2N + 1` vanish.
    pub odd_moments_vanish: bool,
    pub moment_witness: Option<String>,
    /// `B_{n,1} = B_{n,2} = 0` for `n <= N`.
    pub b_vanish: bool,
    pub b_witness: Option<String>,
}

impl SymmetryVerdicts {
    pub fn agree(&self) -> bool {
        self.odd_moments_vanish == self.b_vanish
    }
}

pub fn symmetry_verdicts<F: Field>(
    sys: &BivariateSystem<F>,
    max_degree: usize,
) -> Result<SymmetryVerdicts> {
    let mut moment_witness = None;
    'outer: for total in (1..=2 * max_degree + 1).step_by(2) {
        for h in 0..=total {
            let v = sys.w_moment(h, total - h)?;
            if !negligible(&v, 1.0) {
                moment_witness = Some(format!("<w, x^{h} y^{}> = {v}", total - h));
                break 'outer;
            }
        }
    }
    let mut b_witness = None;
    'deg: for n in 0..=max_degree {
        let set = theorem_ttr(sys, n)?;
        for id in [MatrixId::B1, MatrixId::B2] {
            if let Some((r, c, v)) = set.get(id).nonzeros().find(|(_, _, v)| !negligible(v, 1.0)) {
                b_witness = Some(format!("{id} at n={n}: [{r},{c}] = {v}"));
                break 'deg;
            }
        }
    }
    Ok(SymmetryVerdicts {
        odd_moments_vanish: moment_witness.is_none(),
        moment_witness,
        b_vanish: b_witness.is_none(),
        b_witness,
    })
}

/// Passes when the two verdicts of [`symmetry_verdicts`] agree.
pub fn verify_central_symmetry<F: Field>(
    sys: &BivariateSystem<F>,
    max_degree: usize,
) -> Result<CheckResult> {
    let v = symmetry_verdicts(sys, max_degree)?;
    let name = format!("central symmetry n<={max_degree}");
    let detail = format!(
        "odd moments vanish: {}, B vanish: {}",
        v.odd_moments_vanish, v.b_vanish
    );
    if v.agree() {
        Ok(CheckResult::pass(name, Some(detail)))
    } else {
        let w = v.moment_witness.or(v.b_witness).unwrap_or_default();
        Ok(CheckResult::fail(name, format!("{detail}; {w}")))
    }
}

/// Rank conditions for `n <= max_degree` (exact mode only).
pub fn verify_ranks<F: Field>(sys: &BivariateSystem<F>, max_degree: usize) -> Result<CheckResult> {
    let name = format!("rank conditions n<={max_degree}");
    for n in 0..=max_degree {
        let r = rank_conditions(sys, n)?;
        if let Some(c) = r.conditions.iter().find(|c| !c.holds()) {
            return Ok(CheckResult::fail(
                name,
                format!("{} = {}, expected {}", c.name, c.rank, c.expected),
            ));
        }
    }
    Ok(CheckResult::pass(name, None))
}

/// With `P~_n = H_n^{-1/2} P_n`, checks `C~_{n+1,i} = A~_{n,i}^t` for
/// `n <= max_degree` in floating point. `H_n` is taken as the diagonal of
/// norm products, which [`verify_orthogonality`] checks against the Gram
/// blocks. A norm that is not positive is a
/// domain error: the orthonormal basis does not exist.
pub fn verify_orthonormal_transpose<F: Field>(
    sys: &BivariateSystem<F>,
    max_degree: usize,
) -> Result<CheckResult> {
    let name = format!("orthonormal transpose n<={max_degree}");
    let norms = (0..=max_degree + 1)
        .map(|n| -> Result<Vec<f64>> {
            (0..=n)
                .map(|m| {
                    let h = sys.norm_product(n, m)?;
                    let v = h.to_f64();
                    if v > 0.0 {
                        Ok(v.sqrt())
                    } else {
                        Err(Error::Domain(format!(
                            "{}: H_{n}[{m}] = {h} is not positive; no orthonormal basis",
                            sys.label()
                        )))
                    }
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut worst = 0f64;
    for n in 0..=max_degree {
        let now = theorem_ttr(sys, n)?;
        let next = theorem_ttr(sys, n + 1)?;
        for axis in [Axis::X, Axis::Y] {
            let (a, _, _) = now.axis(axis);
            let (_, _, c) = next.axis(axis);
            for m in 0..=n {
                for j in 0..=n + 1 {
                    let at = a.get(m, j).to_f64() * norms[n + 1][j] / norms[n][m];
                    let ct = c.get(j, m).to_f64() * norms[n][m] / norms[n + 1][j];
                    let diff = (at - ct).abs();
                    let scale = at.abs().max(ct.abs()).max(1.0);
                    worst = worst.max(diff / scale);
                    if !rel_ok(diff, scale) {
                        return Ok(CheckResult::fail(
                            name,
                            format!(
                                "axis {} n={n}: A~[{m},{j}] = {at}, C~[{j},{m}] = {ct}",
                                axis.name()
                            ),
                        ));
                    }
                }
            }
        }
    }
    Ok(CheckResult::pass(name, Some(format!("max relative deviation {worst:e}"))))
}

/// A deliberate corruption of one matrix entry, for testing that the
/// suite reports failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fault {
    pub n: usize,
    pub matrix: MatrixId,
    pub row: usize,
    pub col: usize,
}

impl Fault {
    /// Adds one to the targeted entry; the matrix is made dense first so
    /// that off-band targets are accepted.
    pub fn apply<F: Field>(&self, set: &mut TTRSet<F>) -> Result<()> {
        let mat = set.get_mut(self.matrix);
        if self.row >= mat.rows() || self.col >= mat.cols() {
            return Err(Error::Range(format!(
                "fault target ({}, {}) outside a {}x{} matrix",
                self.row,
                self.col,
                mat.rows(),
                mat.cols()
            )));
        }
        let mut dense = crate::numerics::BandMatrix::dense(mat.rows(), mat.cols());
        for (r, c, v) in mat.nonzeros() {
            dense.set(r, c, v)?;
        }
        let v = dense.get(self.row, self.col) + F::one();
        dense.set(self.row, self.col, v)?;
        *mat = dense;
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    pub fault: Option<Fault>,
    /// Random points per relation in float mode (0 disables).
    pub float_points: usize,
    pub seed: u64,
}

/// The full suite for a catalog family: closed-form cross-check, relation
/// residuals on both axes, orthogonality, central symmetry, and (exact
/// mode) rank conditions or (float mode, positive-definite families) the
/// orthonormal transpose identity.
pub fn run_suite<F: Field>(
    id: &CatalogId<F>,
    max_degree: usize,
    options: &SuiteOptions,
) -> Result<VerifyReport> {
    let sys = make_system(id, max_degree + 1)?;
    let mut checks = Vec::new();
    let cc = cross_check(id, max_degree)?;
    let cc_name = format!("closed forms n<={max_degree}");
    checks.push(match cc.mismatches.first() {
        None => CheckResult::pass(cc_name, Some(format!("{} entries compared", cc.compared))),
        Some(first) => CheckResult::fail(cc_name, first.to_string()).with_detail(Some(format!(
            "{} of {} entries differ",
            cc.mismatches.len(),
            cc.compared
        ))),
    });
    for n in 0..=max_degree {
        let mut set = theorem_ttr(&sys, n)?;
        if let Some(f) = options.fault.filter(|f| f.n == n) {
            f.apply(&mut set)?;
        }
        for axis in [Axis::X, Axis::Y] {
            checks.push(verify_relation_with(&sys, &set, axis)?);
            if F::MODE == Mode::Float && options.float_points > 0 {
                checks.push(verify_relation_points(
                    &sys,
                    &set,
                    axis,
                    options.float_points,
                    options.seed,
                )?);
            }
        }
    }
    checks.push(verify_orthogonality(&sys, max_degree)?);
    checks.push(verify_central_symmetry(&sys, max_degree)?);
    match F::MODE {
        Mode::Exact => checks.push(verify_ranks(&sys, max_degree)?),
        Mode::Float => {
            if id.definiteness() == Definiteness::Positive {
                checks.push(verify_orthonormal_transpose(&sys, max_degree)?);
            }
        }
    }
    Ok(VerifyReport {
        family: id.label(),
        max_degree,
        mode: F::MODE,
        checks,
    })
}
