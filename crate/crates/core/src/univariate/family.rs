use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::numerics::Field;

/// Coefficients of `x p_n = a p_{n+1} + b p_n + c p_{n-1}` at one index.
#[derive(Debug, Clone, PartialEq)]
pub struct Recurrence<F> {
    pub a: F,
    pub b: F,
    pub c: F,
}

/// Leading and subleading monomial coefficients of `p_n`:
/// `p_n(x) = k x^n + l x^{n-1} + ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadingPair<F> {
    pub k: F,
    pub l: F,
}

/// Closure producing the recurrence coefficients at index `n`. A returned
/// `Err(reason)` marks an undefined coefficient (zero denominator).
pub type CoefFn<F> = dyn Fn(usize) -> std::result::Result<Recurrence<F>, String> + Send + Sync;

#[derive(Debug)]
struct Cache<F> {
    recurrence: Vec<Recurrence<F>>,
    leading: Vec<LeadingPair<F>>,
    norms: Vec<F>,
    coeffs: Vec<Vec<F>>,
    // Expansion of x^j in the p basis for the last j reached.
    moment_state: Vec<F>,
    moments: Vec<F>,
}

impl<F> Default for Cache<F> {
    fn default() -> Self {
        Cache {
            recurrence: Vec::new(),
            leading: Vec::new(),
            norms: Vec::new(),
            coeffs: Vec::new(),
            moment_state: Vec::new(),
            moments: Vec::new(),
        }
    }
}

/// A univariate orthogonal polynomial sequence given by its three-term
/// recurrence and the value `h0 = <u, 1>` of its moment functional.
///
/// Everything else (leading coefficients, norms, moments, monomial
/// coefficients) is derived on demand and memoized. Clones share the
/// memo table, which is guarded by a mutex so a family can be used from
/// several threads.
#[derive(Clone)]
pub struct RecurrenceFamily<F: Field> {
    label: Arc<str>,
    coef: Arc<CoefFn<F>>,
    h0: F,
    cache: Arc<Mutex<Cache<F>>>,
}

impl<F: Field> fmt::Debug for RecurrenceFamily<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RecurrenceFamily")
            .field("label", &self.label)
            .field("h0", &self.h0)
            .finish()
    }
}

impl<F: Field> RecurrenceFamily<F> {
    pub fn new(
        label: impl Into<String>,
        h0: F,
        coef: impl Fn(usize) -> std::result::Result<Recurrence<F>, String> + Send + Sync + 'static,
    ) -> Self {
        RecurrenceFamily {
            label: label.into().into(),
            coef: Arc::new(coef),
            h0,
            cache: Arc::default(),
        }
    }

    /// Family built from three coefficient closures that cannot fail.
    pub fn from_fns(
        label: impl Into<String>,
        h0: F,
        a: impl Fn(usize) -> F + Send + Sync + 'static,
        b: impl Fn(usize) -> F + Send + Sync + 'static,
        c: impl Fn(usize) -> F + Send + Sync + 'static,
    ) -> Self {
        Self::new(label, h0, move |n| {
            Ok(Recurrence {
                a: a(n),
                b: b(n),
                c: c(n),
            })
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn h0(&self) -> &F {
        &self.h0
    }

    /// Same recurrence with a different normalization `<u, 1>`. The result
    /// has its own memo table.
    pub fn with_h0(&self, h0: F) -> Self {
        RecurrenceFamily {
            label: self.label.clone(),
            coef: self.coef.clone(),
            h0,
            cache: Arc::default(),
        }
    }

    /// Same family with a new label.
    pub fn relabel(&self, label: impl Into<String>) -> Self {
        RecurrenceFamily {
            label: label.into().into(),
            coef: self.coef.clone(),
            h0: self.h0.clone(),
            cache: self.cache.clone(),
        }
    }

    /// Family of `p_n(g x)`: every recurrence coefficient is divided by `g`.
    pub fn scaled_argument(&self, g: F) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::Domain(format!("{}: argument scale must be nonzero", self.label)));
        }
        let inner = self.coef.clone();
        let label = format!("{} scaled by {g}", self.label);
        Ok(Self::new(label, self.h0.clone(), move |n| {
            let r = inner(n)?;
            Ok(Recurrence {
                a: r.a / g.clone(),
                b: r.b / g.clone(),
                c: r.c / g.clone(),
            })
        }))
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, Cache<F>> {
        self.cache.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// Recurrence coefficients at `n`, with `c(0)` forced to zero.
    ///
    /// Fails when a coefficient is undefined, when `a(n) = 0`, or when
    /// `c(n) = 0` for `n >= 1` (the norm ratio would vanish).
    pub fn recurrence(&self, n: usize) -> Result<Recurrence<F>> {
        if let Some(r) = self.lock().recurrence.get(n) {
            return Ok(r.clone());
        }
        let start = self.lock().recurrence.len();
        for j in start..=n {
            let mut r = (self.coef)(j).map_err(|reason| Error::quasi(&self.label, j, reason))?;
            if j == 0 {
                r.c = F::zero();
            }
            if r.a.is_zero() {
                return Err(Error::quasi(&self.label, j, "leading coefficient a_n vanishes"));
            }
            if j > 0 && r.c.is_zero() {
                return Err(Error::quasi(&self.label, j, "c_n vanishes (zero norm ratio)"));
            }
            let mut cache = self.lock();
            if cache.recurrence.len() == j {
                cache.recurrence.push(r);
            }
        }
        Ok(self.lock().recurrence[n].clone())
    }

    pub fn a(&self, n: usize) -> Result<F> {
        self.recurrence(n).map(|r| r.a)
    }

    pub fn b(&self, n: usize) -> Result<F> {
        self.recurrence(n).map(|r| r.b)
    }

    pub fn c(&self, n: usize) -> Result<F> {
        self.recurrence(n).map(|r| r.c)
    }

    /// `k_n` and `l_n` from `k_{n+1} = k_n / a_n`,
    /// `l_{n+1} = (l_n - b_n k_n) / a_n`, starting at `(1, 0)`.
    pub fn leading(&self, n: usize) -> Result<LeadingPair<F>> {
        if let Some(p) = self.lock().leading.get(n) {
            return Ok(p.clone());
        }
        let start = self.lock().leading.len();
        for j in start..=n {
            let next = if j == 0 {
                LeadingPair {
                    k: F::one(),
                    l: F::zero(),
                }
            } else {
                let prev = self.lock().leading[j - 1].clone();
                let r = self.recurrence(j - 1)?;
                LeadingPair {
                    k: prev.k.clone() / r.a.clone(),
                    l: (prev.l - r.b * prev.k) / r.a,
                }
            };
            let mut cache = self.lock();
            if cache.leading.len() == j {
                cache.leading.push(next);
            }
        }
        Ok(self.lock().leading[n].clone())
    }

    /// `h_n = <u, p_n^2> = h0 * prod_{j=1..n} c(j)/a(j-1)`.
    pub fn norm(&self, n: usize) -> Result<F> {
        if let Some(h) = self.lock().norms.get(n) {
            return Ok(h.clone());
        }
        let start = self.lock().norms.len();
        for j in start..=n {
            let h = if j == 0 {
                self.h0.clone()
            } else {
                let prev = self.lock().norms[j - 1].clone();
                prev * self.c(j)? / self.a(j - 1)?
            };
            if h.is_zero() {
                return Err(Error::quasi(&self.label, j, "norm h_n vanishes"));
            }
            let mut cache = self.lock();
            if cache.norms.len() == j {
                cache.norms.push(h);
            }
        }
        Ok(self.lock().norms[n].clone())
    }

    /// Moments `mu_0 .. mu_n` of the functional. `x^j` is expanded in the
    /// `p` basis by repeated multiplication by `x`; the `p_0` coefficient
    /// times `h0` is `mu_j`.
    pub fn moments(&self, n: usize) -> Result<Vec<F>> {
        {
            let cache = self.lock();
            if cache.moments.len() > n {
                return Ok(cache.moments[..=n].to_vec());
            }
        }
        let (mut state, mut out) = {
            let cache = self.lock();
            if cache.moments.is_empty() {
                (vec![F::one()], vec![self.h0.clone()])
            } else {
                (cache.moment_state.clone(), cache.moments.clone())
            }
        };
        while out.len() <= n {
            let mut next = vec![F::zero(); state.len() + 1];
            for (i, v) in state.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let r = self.recurrence(i)?;
                next[i + 1] = next[i + 1].clone() + r.a * v.clone();
                next[i] = next[i].clone() + r.b * v.clone();
                if i > 0 {
                    next[i - 1] = next[i - 1].clone() + r.c * v.clone();
                }
            }
            state = next;
            out.push(state[0].clone() * self.h0.clone());
        }
        let mut cache = self.lock();
        if cache.moments.len() < out.len() {
            cache.moment_state = state;
            cache.moments = out.clone();
        }
        Ok(out[..=n].to_vec())
    }

    /// `p_n(x)` by the forward recurrence.
    pub fn eval(&self, n: usize, x: &F) -> Result<F> {
        let mut prev = F::zero();
        let mut cur = F::one();
        for j in 0..n {
            let r = self.recurrence(j)?;
            let next = ((x.clone() - r.b) * cur.clone() - r.c * prev) / r.a;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// Monomial coefficients of `p_n`, lowest degree first.
    pub fn coeffs(&self, n: usize) -> Result<Vec<F>> {
        if let Some(c) = self.lock().coeffs.get(n) {
            return Ok(c.clone());
        }
        let start = self.lock().coeffs.len();
        for j in start..=n {
            let next = if j == 0 {
                vec![F::one()]
            } else {
                let (cur, prev) = {
                    let cache = self.lock();
                    let prev = if j >= 2 {
                        cache.coeffs[j - 2].clone()
                    } else {
                        Vec::new()
                    };
                    (cache.coeffs[j - 1].clone(), prev)
                };
                let r = self.recurrence(j - 1)?;
                let mut out = vec![F::zero(); j + 1];
                for (i, v) in cur.iter().enumerate() {
                    out[i + 1] = out[i + 1].clone() + v.clone();
                    out[i] = out[i].clone() - r.b.clone() * v.clone();
                }
                for (i, v) in prev.iter().enumerate() {
                    out[i] = out[i].clone() - r.c.clone() * v.clone();
                }
                out.into_iter().map(|v| v / r.a.clone()).collect()
            };
            let mut cache = self.lock();
            if cache.coeffs.len() == j {
                cache.coeffs.push(next);
            }
        }
        Ok(self.lock().coeffs[n].clone())
    }

    /// True when `b(j) = 0` for every `j <= n`.
    pub fn is_symmetric_through(&self, n: usize) -> Result<bool> {
        for j in 0..=n {
            if !self.b(j)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
