//! Bivariate systems `P_{n,m}(x, y) = p_{n-m}^{(m)}(x) rho(x)^m q_m(y / rho(x))`
//! built from a ladder of univariate families and a `y` family.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, MutexGuard};

use crate::error::{Error, Result};
use crate::numerics::{negligible, Field, SparsePoly2};
use crate::univariate::RecurrenceFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RhoCase {
    /// `rho(x) = r1 x + r0`.
    I,
    /// `rho(x)^2 = s2 x^2 + s1 x + s0` with a symmetric `y` functional.
    II,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RhoSpec<F> {
    case: RhoCase,
    r: Option<(F, F)>,
    s2: F,
    s1: F,
    s0: F,
}

impl<F: Field> RhoSpec<F> {
    /// Case I: `rho = r1 x + r0`.
    pub fn linear(r1: F, r0: F) -> Result<Self> {
        if r1.is_zero() && r0.is_zero() {
            return Err(Error::Domain("rho = r1 x + r0 needs r1 or r0 nonzero".into()));
        }
        let two = F::from_i64(2);
        Ok(RhoSpec {
            case: RhoCase::I,
            s2: r1.clone() * r1.clone(),
            s1: two * r1.clone() * r0.clone(),
            s0: r0.clone() * r0.clone(),
            r: Some((r1, r0)),
        })
    }

    /// Case II: `rho^2 = s2 x^2 + s1 x + s0`.
    pub fn sqrt_quadratic(s2: F, s1: F, s0: F) -> Result<Self> {
        if s2.is_zero() && s1.is_zero() && s0.is_zero() {
            return Err(Error::Domain("rho^2 must be a nonzero polynomial".into()));
        }
        Ok(RhoSpec {
            case: RhoCase::II,
            r: None,
            s2,
            s1,
            s0,
        })
    }

    pub fn case(&self) -> RhoCase {
        self.case
    }

    /// `(r1, r0)` in Case I.
    pub fn linear_coeffs(&self) -> Option<(&F, &F)> {
        self.r.as_ref().map(|(a, b)| (a, b))
    }

    pub fn s2(&self) -> &F {
        &self.s2
    }

    pub fn s1(&self) -> &F {
        &self.s1
    }

    pub fn s0(&self) -> &F {
        &self.s0
    }

    /// Coefficients (lowest degree first) of `rho^k` as a polynomial in
    /// `x`; `None` when `rho^k` is not a polynomial (Case II, odd `k`).
    pub fn power(&self, k: usize) -> Option<Vec<F>> {
        match &self.r {
            Some((r1, r0)) => Some(poly_pow(&[r0.clone(), r1.clone()], k)),
            None if k.is_multiple_of(2) => Some(self.square_power(k / 2)),
            None => None,
        }
    }

    /// Same as [`Self::power`] but with even powers always taken through
    /// `rho^2 = s2 x^2 + s1 x + s0`.
    pub fn power_via_square(&self, k: usize) -> Option<Vec<F>> {
        let even = self.square_power(k / 2);
        if k.is_multiple_of(2) {
            return Some(even);
        }
        let (r1, r0) = self.r.as_ref()?;
        Some(poly_mul(&even, &[r0.clone(), r1.clone()]))
    }

    fn square_power(&self, j: usize) -> Vec<F> {
        poly_pow(&[self.s0.clone(), self.s1.clone(), self.s2.clone()], j)
    }
}

fn poly_mul<F: Field>(p: &[F], q: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] = out[i + j].clone() + a.clone() * b.clone();
        }
    }
    out
}

fn poly_pow<F: Field>(base: &[F], k: usize) -> Vec<F> {
    (0..k).fold(vec![F::one()], |acc, _| poly_mul(&acc, base))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
        }
    }

    fn shift(self) -> (usize, usize) {
        match self {
            Axis::X => (1, 0),
            Axis::Y => (0, 1),
        }
    }
}

/// Dense block `<w, P_n P_h^t>` of size `(n+1) x (h+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramBlock<F> {
    pub n: usize,
    pub h: usize,
    pub entries: Vec<Vec<F>>,
}

impl<F: Field> GramBlock<F> {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|v| v.is_zero())
    }

    /// Off-diagonal entries vanish (in float mode: relative to the largest
    /// diagonal entry).
    pub fn is_diagonal(&self) -> bool {
        let scale = self
            .entries
            .iter()
            .enumerate()
            .filter_map(|(r, row)| row.get(r).map(|v| v.to_f64().abs()))
            .fold(0.0, f64::max);
        self.entries.iter().enumerate().all(|(r, row)| {
            row.iter()
                .enumerate()
                .all(|(c, v)| r == c || negligible(v, scale))
        })
    }
}

pub type LadderFn<F> = dyn Fn(usize) -> Result<RecurrenceFamily<F>> + Send + Sync;

/// `<w, x^a y^b P>` for `a + b <= reach`, indexed `[a][b]`.
type Contraction<F> = Arc<Vec<Vec<F>>>;

struct SystemCache<F: Field> {
    ladder: Vec<RecurrenceFamily<F>>,
    polys: HashMap<(usize, usize), Arc<SparsePoly2<F>>>,
    // w moments indexed [h][k] for h + k <= the stored reach
    w_table: Arc<Vec<Vec<F>>>,
    w_reach: Option<usize>,
    contractions: HashMap<(usize, usize), (usize, Contraction<F>)>,
}

impl<F: Field> Default for SystemCache<F> {
    fn default() -> Self {
        SystemCache {
            ladder: Vec::new(),
            polys: HashMap::new(),
            w_table: Arc::default(),
            w_reach: None,
            contractions: HashMap::new(),
        }
    }
}

/// A bivariate orthogonal polynomial system: `rho`, the ladder
/// `m -> p^{(m)}` of families for `u^{(m)} = rho^{2m+1} u`, and the family
/// `q` of the `y` functional.
///
/// The ladder normalizations are chained: `p^{(0)}` has `h0 = 1` and each
/// `p^{(m+1)}` has `h0 = <rho^2 u^{(m)}, 1>`. `q` has `h0 = 1`.
#[derive(Clone)]
pub struct BivariateSystem<F: Field> {
    label: Arc<str>,
    rho: RhoSpec<F>,
    ladder_fn: Arc<LadderFn<F>>,
    q: RecurrenceFamily<F>,
    max_m: usize,
    cache: Arc<Mutex<SystemCache<F>>>,
}

impl<F: Field> fmt::Debug for BivariateSystem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BivariateSystem")
            .field("label", &self.label)
            .field("rho", &self.rho)
            .field("q", &self.q)
            .field("max_m", &self.max_m)
            .finish()
    }
}

/// Builds a system, normalizing `q` and the ladder and checking the
/// ladder chain and (Case II) the symmetry of `q` up to `max_m`.
pub fn assemble<F: Field>(
    label: impl Into<String>,
    rho: RhoSpec<F>,
    ladder: impl Fn(usize) -> Result<RecurrenceFamily<F>> + Send + Sync + 'static,
    q: RecurrenceFamily<F>,
    max_m: usize,
) -> Result<BivariateSystem<F>> {
    let sys = BivariateSystem {
        label: label.into().into(),
        rho,
        ladder_fn: Arc::new(ladder),
        q: q.with_h0(F::one()),
        max_m,
        cache: Arc::default(),
    };
    if sys.rho.case() == RhoCase::II {
        for m in 0..=max_m {
            if !sys.q.b(m)?.is_zero() {
                return Err(Error::Domain(format!(
                    "{}: case II needs a symmetric y family, but b_{m} = {} for {}",
                    sys.label,
                    sys.q.b(m)?,
                    sys.q.label()
                )));
            }
        }
    }
    sys.ladder(max_m)?;
    Ok(sys)
}

impl<F: Field> BivariateSystem<F> {
    fn lock(&self) -> MutexGuard<'_, SystemCache<F>> {
        self.cache.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rho(&self) -> &RhoSpec<F> {
        &self.rho
    }

    pub fn q(&self) -> &RecurrenceFamily<F> {
        &self.q
    }

    pub fn max_m(&self) -> usize {
        self.max_m
    }

    /// Ladder family `p^{(m)}` with its chained normalization.
    pub fn ladder(&self, m: usize) -> Result<RecurrenceFamily<F>> {
        if let Some(f) = self.lock().ladder.get(m) {
            return Ok(f.clone());
        }
        let start = self.lock().ladder.len();
        for j in start..=m {
            let raw = (self.ladder_fn)(j)?;
            let fam = if j == 0 {
                raw.with_h0(F::one())
            } else {
                let prev = self.lock().ladder[j - 1].clone();
                let h0 = norm_chain(&prev, &self.rho)?;
                if h0.is_zero() {
                    return Err(Error::quasi(
                        raw.label(),
                        0,
                        format!("<rho^2 u^({}), 1> vanishes, so u^({j}) has no normalization", j - 1),
                    ));
                }
                raw.with_h0(h0)
            };
            let mut cache = self.lock();
            if cache.ladder.len() == j {
                cache.ladder.push(fam);
            }
        }
        Ok(self.lock().ladder[m].clone())
    }

    /// `P_{n,m}` expanded in monomials.
    pub fn expand_p(&self, n: usize, m: usize) -> Result<Arc<SparsePoly2<F>>> {
        if m > n {
            return Err(Error::Range(format!("P_(n,m) needs m <= n, got ({n}, {m})")));
        }
        if let Some(p) = self.lock().polys.get(&(n, m)) {
            return Ok(p.clone());
        }
        let p = Arc::new(self.expand_with(n, m, |k| self.rho.power(k))?);
        self.lock().polys.insert((n, m), p.clone());
        Ok(p)
    }

    /// `P_{n,m}(x, y)` for `m = 0..=n` without expanding in monomials:
    /// `p^{(m)}_{n-m}(x)` by its recurrence and `rho^m q_m(y / rho)` by
    /// the homogenized recurrence
    /// `y Q_j = a_j Q_{j+1} + b_j rho Q_j + c_j rho^2 Q_{j-1}`, which in
    /// Case II (`b_j = 0`) only involves `rho^2`. Coefficients are mapped
    /// into `G` by `conv`.
    pub fn eval_degree_with<G: Field>(
        &self,
        n: usize,
        x: &G,
        y: &G,
        conv: impl Fn(&F) -> G,
    ) -> Result<Vec<G>> {
        let rho2 = conv(&self.rho.s2) * x.clone() * x.clone()
            + conv(&self.rho.s1) * x.clone()
            + conv(&self.rho.s0);
        let rho = self
            .rho
            .linear_coeffs()
            .map(|(r1, r0)| conv(r1) * x.clone() + conv(r0));
        let mut qs = vec![G::one()];
        let mut prev = G::zero();
        for j in 0..n {
            let r = self.q.recurrence(j)?;
            let mid = match &rho {
                Some(rho) => y.clone() - conv(&r.b) * rho.clone(),
                None if r.b.is_zero() => y.clone(),
                None => {
                    return Err(Error::Domain(format!(
                        "{}: case II needs b_{j} = 0 in the y family",
                        self.label
                    )))
                }
            };
            let cur = qs[j].clone();
            let next = (mid * cur.clone() - conv(&r.c) * rho2.clone() * prev) / conv(&r.a);
            prev = cur;
            qs.push(next);
        }
        (0..=n)
            .map(|m| {
                let fam = self.ladder(m)?;
                let (mut before, mut p) = (G::zero(), G::one());
                for j in 0..n - m {
                    let r = fam.recurrence(j)?;
                    let next = ((x.clone() - conv(&r.b)) * p.clone() - conv(&r.c) * before) / conv(&r.a);
                    before = p;
                    p = next;
                }
                Ok(p * qs[m].clone())
            })
            .collect()
    }

    /// `P_{n,m}(x, y)` by [`Self::eval_degree_with`].
    pub fn eval_p(&self, n: usize, m: usize, x: &F, y: &F) -> Result<F> {
        if m > n {
            return Err(Error::Range(format!("P_(n,m) needs m <= n, got ({n}, {m})")));
        }
        Ok(self.eval_degree_with(n, x, y, F::clone)?.swap_remove(m))
    }

    /// `P_{n,m}` with even powers of `rho` always formed from `rho^2`;
    /// uncached, for consistency checks.
    pub fn expand_p_via_square(&self, n: usize, m: usize) -> Result<SparsePoly2<F>> {
        if m > n {
            return Err(Error::Range(format!("P_(n,m) needs m <= n, got ({n}, {m})")));
        }
        self.expand_with(n, m, |k| self.rho.power_via_square(k))
    }

    fn expand_with(
        &self,
        n: usize,
        m: usize,
        power: impl Fn(usize) -> Option<Vec<F>>,
    ) -> Result<SparsePoly2<F>> {
        let px = SparsePoly2::from_x_coeffs(&self.ladder(m)?.coeffs(n - m)?);
        let qc = self.q.coeffs(m)?;
        let mut inner = SparsePoly2::zero();
        for (j, cj) in qc.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let rp = power(m - j).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "{}: q_{m} has a nonzero y^{j} coefficient, but rho^{} is not a polynomial",
                    self.label,
                    m - j
                ))
            })?;
            for (i, r) in rp.iter().enumerate() {
                inner.add_term((i as u32, j as u32), r.clone() * cj.clone());
            }
        }
        Ok(px.mul_poly(&inner))
    }

    /// `<w, x^h y^k> = <u^{(0)}, x^h rho^k> <v, y^k>`.
    pub fn w_moment(&self, h: usize, k: usize) -> Result<F> {
        self.w_table(h + k).map(|t| t[h][k].clone())
    }

    fn w_table(&self, reach: usize) -> Result<Arc<Vec<Vec<F>>>> {
        {
            let cache = self.lock();
            if cache.w_reach.is_some_and(|r| r >= reach) {
                return Ok(cache.w_table.clone());
            }
        }
        let mu = self.ladder(0)?.moments(reach)?;
        let nu = self.q.moments(reach)?;
        let mut table = Vec::with_capacity(reach + 1);
        for h in 0..=reach {
            let mut row = Vec::with_capacity(reach - h + 1);
            for k in 0..=reach - h {
                let v = match self.rho.power(k) {
                    Some(rp) if !nu[k].is_zero() => {
                        let xpart = rp
                            .iter()
                            .enumerate()
                            .fold(F::zero(), |acc, (i, r)| acc + r.clone() * mu[h + i].clone());
                        xpart * nu[k].clone()
                    }
                    _ => F::zero(),
                };
                row.push(v);
            }
            table.push(row);
        }
        let table = Arc::new(table);
        let mut cache = self.lock();
        if cache.w_reach.is_none_or(|r| r < reach) {
            cache.w_table = table.clone();
            cache.w_reach = Some(reach);
        }
        Ok(table)
    }

    /// `<w, p>` for an arbitrary polynomial.
    pub fn apply_w(&self, p: &SparsePoly2<F>) -> Result<F> {
        let Some(d) = p.degree() else {
            return Ok(F::zero());
        };
        let t = self.w_table(d as usize)?;
        Ok(p.terms().fold(F::zero(), |acc, ((i, j), v)| {
            acc + v.clone() * t[*i as usize][*j as usize].clone()
        }))
    }

    /// `<w, p q>` by direct double summation over the terms.
    pub fn pairing(&self, p: &SparsePoly2<F>, q: &SparsePoly2<F>) -> Result<F> {
        let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
            return Ok(F::zero());
        };
        let t = self.w_table((dp + dq) as usize)?;
        let mut acc = F::zero();
        for ((a, b), u) in p.terms() {
            for ((c, d), v) in q.terms() {
                acc = acc
                    + u.clone() * v.clone() * t[(a + c) as usize][(b + d) as usize].clone();
            }
        }
        Ok(acc)
    }

    /// Table of `<w, x^a y^b P_{n,m}>` for `a + b <= reach`.
    fn contraction(&self, n: usize, m: usize, reach: usize) -> Result<Contraction<F>> {
        if let Some((r, c)) = self.lock().contractions.get(&(n, m)) {
            if *r >= reach {
                return Ok(c.clone());
            }
        }
        let p = self.expand_p(n, m)?;
        let t = self.w_table(n + reach)?;
        let mut out = Vec::with_capacity(reach + 1);
        for a in 0..=reach {
            let mut row = Vec::with_capacity(reach - a + 1);
            for b in 0..=reach - a {
                let v = p.terms().fold(F::zero(), |acc, ((i, j), c)| {
                    acc + c.clone() * t[*i as usize + a][*j as usize + b].clone()
                });
                row.push(v);
            }
            out.push(row);
        }
        let out = Arc::new(out);
        self.lock().contractions.insert((n, m), (reach, out.clone()));
        Ok(out)
    }

    /// `<w, t P_{n,m} P_{h,j}>` with `t` one of `1`, `x`, `y`.
    pub fn weighted_pairing(
        &self,
        n: usize,
        m: usize,
        h: usize,
        j: usize,
        weight: Option<Axis>,
    ) -> Result<F> {
        let (sa, sb) = weight.map_or((0, 0), Axis::shift);
        let reach = h + 1;
        let lp = self.contraction(n, m, reach)?;
        let q = self.expand_p(h, j)?;
        Ok(q.terms().fold(F::zero(), |acc, ((a, b), c)| {
            acc + c.clone() * lp[*a as usize + sa][*b as usize + sb].clone()
        }))
    }

    /// Dense block `<w, t P_n P_h^t>`.
    pub fn weighted_block(&self, n: usize, h: usize, weight: Option<Axis>) -> Result<Vec<Vec<F>>> {
        (0..=n)
            .map(|m| (0..=h).map(|j| self.weighted_pairing(n, m, h, j, weight)).collect())
            .collect()
    }

    /// `<w, P_n P_h^t>`; for `n = h` a zero diagonal entry is a
    /// quasi-definiteness error.
    pub fn gram_block(&self, n: usize, h: usize) -> Result<GramBlock<F>> {
        let entries = self.weighted_block(n, h, None)?;
        if n == h {
            for (m, row) in entries.iter().enumerate() {
                if row[m].is_zero() {
                    return Err(Error::quasi(
                        &self.label,
                        n,
                        format!("<w, P_(n,{m})^2> vanishes"),
                    ));
                }
            }
        }
        Ok(GramBlock { n, h, entries })
    }

    /// `h^{(m)}_{n-m} h~_m` from the univariate norms.
    pub fn norm_product(&self, n: usize, m: usize) -> Result<F> {
        Ok(self.ladder(m)?.norm(n - m)? * self.q.norm(m)?)
    }
}

/// `<rho^2 u, 1> = s2 mu_2 + s1 mu_1 + s0 mu_0` for the functional `u` of
/// `fam`: the normalization of the next ladder family.
pub fn norm_chain<F: Field>(fam: &RecurrenceFamily<F>, rho: &RhoSpec<F>) -> Result<F> {
    let mu = fam.moments(2)?;
    Ok(rho.s2.clone() * mu[2].clone() + rho.s1.clone() * mu[1].clone() + rho.s0.clone() * mu[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_evaluation_matches_expansion() {
        let sys = disk(rat(1, 2));
        let (x, y) = (rat(1, 3), rat(-2, 7));
        for n in 0..5 {
            for m in 0..=n {
                assert_eq!(sys.eval_p(n, m, &x, &y).unwrap(), sys.expand_p(n, m).unwrap().eval(&x, &y));
            }
        }
    }
    use crate::numerics::{rat, Rational};
    use crate::univariate::{jacobi_std, laguerre};

    fn disk(mu: Rational) -> BivariateSystem<Rational> {
        let h = rat(1, 2);
        let m0 = mu.clone();
        assemble(
            "disk",
            RhoSpec::sqrt_quadratic(rat(-1, 1), rat(0, 1), rat(1, 1)).unwrap(),
            move |m| Ok(jacobi_std(m0.clone() + rat(m as i64, 1), m0.clone() + rat(m as i64, 1))),
            jacobi_std(mu.clone() - h.clone(), mu - h),
            4,
        )
        .unwrap()
    }

    #[test]
    fn rho_validation() {
        assert!(RhoSpec::<Rational>::linear(rat(0, 1), rat(0, 1)).is_err());
        assert!(RhoSpec::<Rational>::sqrt_quadratic(rat(0, 1), rat(0, 1), rat(0, 1)).is_err());
        let r = RhoSpec::linear(rat(-1, 1), rat(1, 1)).unwrap();
        assert_eq!(r.s1().clone() * r.s1().clone(), rat(4, 1) * r.s2().clone() * r.s0().clone());
        assert_eq!(r.power(2), Some(vec![rat(1, 1), rat(-2, 1), rat(1, 1)]));
        let d = RhoSpec::sqrt_quadratic(rat(-1, 1), rat(0, 1), rat(1, 1)).unwrap();
        assert_eq!(d.power(1), None);
    }

    #[test]
    fn disk_basics() {
        let s = disk(rat(1, 2));
        assert_eq!(*s.expand_p(0, 0).unwrap(), SparsePoly2::one());
        assert_eq!(*s.expand_p(1, 1).unwrap(), SparsePoly2::y());
        assert_eq!(s.w_moment(0, 0).unwrap(), rat(1, 1));
        assert_eq!(s.w_moment(3, 1).unwrap(), rat(0, 1));
        assert_eq!(s.w_moment(0, 1).unwrap(), rat(0, 1));
        let g = s.gram_block(1, 1).unwrap();
        assert!(g.is_diagonal());
        assert_eq!(g.entries[0][0], s.norm_product(1, 0).unwrap());
        assert_eq!(g.entries[1][1], s.norm_product(1, 1).unwrap());
        assert!(s.gram_block(2, 1).unwrap().is_zero());
    }

    #[test]
    fn case_two_requires_symmetric_q() {
        let r = assemble(
            "bad",
            RhoSpec::sqrt_quadratic(rat(-1, 1), rat(0, 1), rat(1, 1)).unwrap(),
            |_| Ok(jacobi_std(rat(0, 1), rat(0, 1))),
            jacobi_std(rat(1, 1), rat(0, 1)),
            3,
        );
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn vanishing_chain_is_reported() {
        // rho^2 = x over a symmetric functional: <x u, 1> = 0.
        let r = assemble(
            "odd",
            RhoSpec::sqrt_quadratic(rat(0, 1), rat(1, 1), rat(0, 1)).unwrap(),
            |_| Ok(jacobi_std(rat(0, 1), rat(0, 1))),
            jacobi_std(rat(0, 1), rat(0, 1)),
            2,
        );
        assert!(r.unwrap_err().is_quasi_definite());
    }

    #[test]
    fn pairing_agrees_with_contraction() {
        let s = assemble(
            "lj",
            RhoSpec::linear(rat(1, 1), rat(0, 1)).unwrap(),
            |m| Ok(laguerre(rat(2 * m as i64 + 2, 1))),
            jacobi_std(rat(1, 2), rat(0, 1)),
            3,
        )
        .unwrap();
        let p = s.expand_p(3, 1).unwrap();
        let q = s.expand_p(2, 2).unwrap();
        let direct = s.pairing(&p.shift(0, 1), &q).unwrap();
        assert_eq!(direct, s.weighted_pairing(3, 1, 2, 2, Some(Axis::Y)).unwrap());
        assert_eq!(s.pairing(&p, &q).unwrap(), rat(0, 1));
    }
}
