//! Published closed forms for the band entries of the six catalog
//! families, plus corrected variants for the entries whose published
//! expressions disagree with the relation they describe.
//!
//! Entry names follow [`crate::ttr::band_entries`]: `a`, `b`, `c` for the
//! diagonal `x`-relation matrices, `a1..c3` for the tridiagonal
//! `y`-relation matrices (column `m - 1`, `m`, `m + 1` of row `m`).

use super::{CatalogId, Family};
use crate::construction::Axis;
use crate::error::{Error, Result};
use crate::numerics::{pochhammer, Field};
use crate::ttr::{band_entries, TTRSet};
use crate::univariate::classical::jacobi_coefficients;
use crate::univariate::tabulated::Erratum;

/// Which version of the published expressions to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Forms {
    /// The expressions as printed.
    Printed,
    /// The printed expressions with [`SECTION_ERRATA`] applied.
    Corrected,
}

/// `(entry name, value)` for the band positions of one row.
pub type RowForms<F> = Vec<(&'static str, F)>;

pub const SECTION_ERRATA: &[Erratum] = &[
    Erratum {
        location: "simplex y-relation",
        entry: "a2",
        printed: "lambda (n-m+1)(n+m+alpha+beta+2)/(2n+alpha+beta+2)_2",
        corrected: "lambda (n-m+1)(n+m+alpha+beta+gamma+2)/(2n+alpha+beta+gamma+2)_2",
        note: "gamma missing from both factors",
    },
    Erratum {
        location: "simplex y-relation",
        entry: "a3",
        printed: "(m+1)(m+beta+gamma+1)(n+m+alpha+beta+2)_2/((2m+beta+gamma+1)_2 (2n+alpha+beta+2)_2)",
        corrected: "(m+1)(m+beta+gamma+1)(n+m+alpha+beta+gamma+2)_2/((2m+beta+gamma+1)_2 (2n+alpha+beta+gamma+2)_2)",
        note: "gamma missing from both Pochhammer symbols in n",
    },
    Erratum {
        location: "simplex y-relation",
        entry: "b2",
        printed: "-lambda (1 - (n-m+alpha+1)(n-m+1)/(2n+alpha+beta+3) + (n-m+alpha)(n-m)/(2n+alpha+beta+1))",
        corrected: "-lambda (1 - (n-m+alpha+1)(n-m+1)/(2n+alpha+beta+gamma+3) + (n-m+alpha)(n-m)/(2n+alpha+beta+gamma+1))",
        note: "gamma missing from both denominators; the bracket is 1 - b for the ladder, \
               whose printed form includes gamma",
    },
    Erratum {
        location: "simplex y-relation",
        entry: "c3",
        printed: "(m+1)(m+beta+gamma+1)(n-m+alpha)_2/((2m+beta+gamma+1)_2 (2n+alpha+beta+gamma+1)_2)",
        corrected: "(m+1)(m+beta+gamma+1)(n-m+alpha-1)_2/((2m+beta+gamma+1)_2 (2n+alpha+beta+gamma+1)_2)",
        note: "Pochhammer base shifted by one",
    },
    Erratum {
        location: "bessel-laguerre x-relation",
        entry: "b",
        printed: "(2m+g-2)(-g)/((2n+g-2)(2n+g))",
        corrected: "(2m+g-2)g/((2n+g-2)(2n+g))",
        note: "sign; the Bessel recurrence gives -(a-2)b/((2k+a-2)(2k+a)) with a = g+2m, b = -g, \
               and the printed b2 already uses the positive value",
    },
    Erratum {
        location: "bessel-laguerre y-relation",
        entry: "a1",
        printed: "-(m+g gamma-1) g^2/(2n+g-1)_2",
        corrected: "-(m+g gamma-1) g/(2n+g-1)_2",
        note: "extra factor g: the scaled y family has c~_m = -(m+g gamma-1)/g",
    },
    Erratum {
        location: "bessel-laguerre y-relation",
        entry: "a3",
        printed: "-(m+1)(n+m+g-1)_2/(2n+g-1)_2",
        corrected: "-(m+1)(n+m+g-1)_2/(g (2n+g-1)_2)",
        note: "extra factor g: the scaled y family has a~_m = -(m+1)/g",
    },
    Erratum {
        location: "bessel-laguerre y-relation",
        entry: "b1",
        printed: "2(m+g gamma-1)(g+2m-2)_2/((2n+g-2)(2n+g))",
        corrected: "2(m+g gamma-1) g/((2n+g-2)(2n+g))",
        note: "factor g (g+2m-2)_2/g^2: unscaled c~_m combined with the Bessel theta misprint",
    },
    Erratum {
        location: "bessel-laguerre y-relation",
        entry: "b3",
        printed: "-2(m+1)(n-m)(n+m+g-1)/((2n+g-2)(2n+g))",
        corrected: "-2(m+1)(n-m)(n+m+g-1)/(g (2n+g-2)(2n+g))",
        note: "extra factor g: unscaled a~_m",
    },
    Erratum {
        location: "bessel-laguerre y-relation",
        entry: "c1",
        printed: "-(m+g gamma-1)(g+2m-2)_2/(2n+g-2)_2",
        corrected: "-(m+g gamma-1) g/(2n+g-2)_2",
        note: "factor g (g+2m-2)_2/g^2: unscaled c~_m combined with the Bessel vartheta misprint",
    },
    Erratum {
        location: "bessel-laguerre y-relation",
        entry: "c3",
        printed: "-(m+1)(n-m-1)_2 g^2/((2n+g-2)_2 (g+2m)_2)",
        corrected: "-(m+1)(n-m-1)_2/(g (2n+g-2)_2)",
        note: "factor g^3/(g+2m)_2: unscaled a~_m combined with the Bessel zeta misprint",
    },
];

/// The erratum covering `entry` of the given family and relation, if any.
pub fn errata_for(family: Family, axis: Axis, entry: &str) -> Option<&'static Erratum> {
    let location = format!("{} {}-relation", family.name(), axis.name());
    SECTION_ERRATA
        .iter()
        .find(|e| e.location == location && e.entry == entry)
}

const FIRST_NAMES: [&str; 3] = ["a", "b", "c"];
const SECOND_NAMES: [&str; 9] = ["a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3"];

/// Names of the band entries in row `m` at degree `n` for one relation.
pub(crate) fn row_names(axis: Axis, n: usize, m: usize) -> Vec<&'static str> {
    match axis {
        Axis::X => FIRST_NAMES
            .iter()
            .copied()
            .filter(|&name| name != "c" || m < n)
            .collect(),
        Axis::Y => SECOND_NAMES
            .iter()
            .copied()
            .filter(|name| {
                let cols = match &name[..1] {
                    "a" => n + 2,
                    "b" => n + 1,
                    _ => n,
                };
                let offset: usize = name[1..].parse().expect("entry digit");
                m + offset >= 2 && m + offset - 2 < cols
            })
            .collect(),
    }
}

fn q<F: Field>(num: F, den: F) -> Option<F> {
    num.checked_div(&den)
}

fn poch<F: Field>(v: F, k: usize) -> F {
    pochhammer(&v, k)
}

struct Ctx<F> {
    n: F,
    m: F,
    corrected: bool,
}

impl<F: Field> Ctx<F> {
    fn k(&self) -> F {
        self.n.clone() - self.m.clone()
    }
}

fn c<F: Field>(v: i64) -> F {
    F::from_i64(v)
}

fn half<F: Field>(v: i64) -> F {
    F::ratio(v, 2)
}

fn disk<F: Field>(mu: &F, x: &Ctx<F>, name: &str) -> Option<F> {
    let (n, m, mu) = (x.n.clone(), x.m.clone(), mu.clone());
    let two = c::<F>(2);
    let d = two.clone() * n.clone() + two.clone() * mu.clone() + c(1);
    match name {
        "a" => q(
            (x.k() + c(1)) * (n.clone() + m + two * mu.clone() + c(1)),
            (n + mu + c(1)) * d,
        ),
        "b" => Some(F::zero()),
        "c" => q(n + mu, d),
        "a1" => q(
            -(m.clone() + mu.clone() - half(1)) * poch(x.k() + c(1), 2),
            (m + mu.clone()) * (n + mu + c(1)) * d,
        ),
        "a3" => q(
            (m.clone() + c(1))
                * (m.clone() + two.clone() * mu.clone())
                * poch(n.clone() + m.clone() + two.clone() * mu.clone() + c(1), 2),
            poch(two.clone() * m + two * mu.clone(), 2) * d * (n + mu + c(1)),
        ),
        "c1" => q(
            (m.clone() + mu.clone() - half(1)) * (n + mu.clone()),
            (m + mu) * d,
        ),
        "c3" => q(
            -(m.clone() + c(1)) * (m.clone() + two.clone() * mu.clone()) * (n + mu.clone()),
            poch(two.clone() * m + two * mu, 2) * d,
        ),
        _ => Some(F::zero()),
    }
}

fn biangle<F: Field>(al: &F, be: &F, x: &Ctx<F>, name: &str) -> Option<F> {
    let (n, m) = (x.n.clone(), x.m.clone());
    let (al, be) = (al.clone(), be.clone());
    let two = c::<F>(2);
    let u = two.clone() * n.clone() - m.clone() + al.clone() + be.clone();
    let d = u.clone() + half(3);
    let e = two.clone() * m.clone() + two.clone() * be.clone() + c(1);
    match name {
        "a" => q(
            (x.k() + c(1)) * (n + al + be + half(3)),
            poch(d, 2),
        ),
        "b" => Some(
            q((n.clone() + be.clone() + half(3)) * (x.k() + c(1)), u.clone() + half(5))?
                - q((n + be + half(1)) * x.k(), u + half(1))?,
        ),
        "c" => q((x.k() + al) * (n + be + half(1)), poch(u + half(1), 2)),
        "a3" => q(
            two.clone() * (m.clone() + c(1)) * (m + two.clone() * be.clone() + c(1)) * (n + al + be + half(3)),
            poch(e, 2) * d,
        ),
        "b1" => q((m + be) * (x.k() + c(1)), e * d),
        "b3" => q(
            two.clone() * (m.clone() + c(1)) * (m + two * be + c(1)) * (x.k() + al),
            poch(e, 2) * d,
        ),
        "c1" => q((m + be.clone()) * (n + be + half(1)), e * d),
        _ => Some(F::zero()),
    }
}

fn simplex<F: Field>(al: &F, be: &F, ga: &F, x: &Ctx<F>, name: &str) -> Option<F> {
    let (n, m) = (x.n.clone(), x.m.clone());
    let (al, be, ga) = (al.clone(), be.clone(), ga.clone());
    let two = c::<F>(2);
    let s = al.clone() + be.clone() + ga.clone();
    // the printed a2, a3 and b2 use alpha + beta where the other entries
    // use alpha + beta + gamma
    let s_short = if x.corrected { s.clone() } else { al.clone() + be.clone() };
    let bg = be.clone() + ga.clone();
    let tn = two.clone() * n.clone();
    let lambda = || -> Option<F> {
        let first = if m.is_zero() {
            F::zero()
        } else {
            q((m.clone() + be.clone()) * m.clone(), two.clone() * m.clone() + bg.clone())?
        };
        Some(
            first
                - q(
                    (m.clone() + be.clone() + c(1)) * (m.clone() + c(1)),
                    two.clone() * m.clone() + bg.clone() + two.clone(),
                )?,
        )
    };
    let lo = poch(two.clone() * m.clone() + bg.clone(), 2);
    let hi = poch(two.clone() * m.clone() + bg.clone() + c(1), 2);
    match name {
        "a" => q(
            (x.k() + c(1)) * (n + m + s.clone() + two),
            poch(tn + s + c(2), 2),
        ),
        "b" => Some(
            q((x.k() + al.clone() + c(1)) * (x.k() + c(1)), tn.clone() + s.clone() + c(3))?
                - q((x.k() + al) * x.k(), tn + s + c(1))?,
        ),
        "c" => q(
            (n + m + bg + c(1)) * (x.k() + al),
            poch(tn + s + c(1), 2),
        ),
        "a1" => q(
            (m.clone() + be) * (m + ga) * poch(x.k() + c(1), 2),
            lo * poch(tn + s + c(2), 2),
        ),
        "a2" => Some(
            lambda()?
                * q(
                    (x.k() + c(1)) * (n + m + s_short.clone() + c(2)),
                    poch(tn + s_short + c(2), 2),
                )?,
        ),
        "a3" => q(
            (m.clone() + c(1)) * (m.clone() + bg + c(1)) * poch(n + m + s_short.clone() + c(2), 2),
            hi * poch(tn + s_short + c(2), 2),
        ),
        "b1" => q(
            c::<F>(-2) * (m.clone() + be) * (m.clone() + ga) * (x.k() + c(1)) * (n + m + bg + c(1)),
            lo * (tn.clone() + s.clone() + c(1)) * (tn + s + c(3)),
        ),
        "b2" => Some(
            -lambda()?
                * (F::one()
                    - q(
                        (x.k() + al.clone() + c(1)) * (x.k() + c(1)),
                        tn.clone() + s_short.clone() + c(3),
                    )?
                    + q((x.k() + al) * x.k(), tn + s_short + c(1))?),
        ),
        "b3" => q(
            c::<F>(-2)
                * (m.clone() + c(1))
                * (m.clone() + bg + c(1))
                * (x.k() + al)
                * (n + m + s.clone() + c(2)),
            hi * (tn.clone() + s.clone() + c(1)) * (tn + s + c(3)),
        ),
        "c1" => q(
            (m.clone() + be) * (m.clone() + ga) * poch(n + m + bg, 2),
            lo * poch(tn + s + c(1), 2),
        ),
        "c2" => Some(
            lambda()? * q((x.k() + al) * (n + m + bg + c(1)), poch(tn + s + c(1), 2))?,
        ),
        "c3" => {
            let base = if x.corrected { x.k() + al - c(1) } else { x.k() + al };
            q(
                (m.clone() + c(1)) * (m + bg + c(1)) * poch(base, 2),
                hi * poch(tn + s + c(1), 2),
            )
        }
        _ => None,
    }
}

fn square<F: Field>(ids: [&F; 4], n: usize, m: usize, name: &str) -> Option<F> {
    let [al, be, ga, de] = ids;
    let x = jacobi_coefficients(al, be, n - m).ok()?;
    let y = jacobi_coefficients(ga, de, m).ok()?;
    Some(match name {
        "a" => x.a,
        "b" => x.b,
        "c" => x.c,
        "a3" => y.a,
        "b2" => y.b,
        "c1" => y.c,
        _ => F::zero(),
    })
}

fn laguerre_jacobi<F: Field>(al: &F, be: &F, x: &Ctx<F>, name: &str) -> Option<F> {
    let (n, m) = (x.n.clone(), x.m.clone());
    let (al, be) = (al.clone(), be.clone());
    let two = c::<F>(2);
    let tm = two.clone() * m.clone();
    let d = (tm.clone() + be.clone()) * (tm.clone() + be.clone() + two.clone());
    let lo = poch(tm.clone() + be.clone(), 2);
    let hi = poch(tm.clone() + be.clone() + c(1), 2);
    let bb = be.clone() * be.clone();
    match name {
        "a" => Some(-(x.k() + c(1))),
        "b" => Some(two * n + al + c(2)),
        "c" => Some(-(n + m + al + c(1))),
        "a1" => q(tm * (m + be) * poch(x.k() + c(1), 2), lo),
        "a2" => q(bb * (x.k() + c(1)), d),
        "a3" => q(two * (m.clone() + c(1)) * (m + be + c(1)), hi),
        "b1" => q(
            c::<F>(-4) * m.clone() * (m.clone() + be) * (n + m + al + c(1)) * (x.k() + c(1)),
            lo,
        ),
        "b2" => q(-bb * (two * n + al + c(2)), d),
        "b3" => q(c::<F>(-4) * (m.clone() + c(1)) * (m + be + c(1)), hi),
        "c1" => q(tm * (m.clone() + be) * poch(n + m + al, 2), lo),
        "c2" => q(bb * (n + m + al + c(1)), d),
        "c3" => q(two * (m.clone() + c(1)) * (m + be + c(1)), hi),
        _ => None,
    }
}

fn bessel_laguerre<F: Field>(g: &F, ga: &F, x: &Ctx<F>, name: &str) -> Option<F> {
    let (n, m) = (x.n.clone(), x.m.clone());
    let (g, ga) = (g.clone(), ga.clone());
    let two = c::<F>(2);
    let tn = two.clone() * n.clone();
    let tm = two.clone() * m.clone();
    let gg = g.clone() * ga;
    let gsq = g.clone() * g.clone();
    let p1 = poch(tn.clone() + g.clone() - c(1), 2);
    let p2 = poch(tn.clone() + g.clone() - c(2), 2);
    let d2 = (tn.clone() + g.clone() - c(2)) * (tn.clone() + g.clone());
    let fix = x.corrected;
    match name {
        "a" => q(
            (n + m + g.clone() - c(1)) * (-g.clone()),
            (tn.clone() + g.clone() - c(1)) * (tn + g),
        ),
        "b" => {
            let sg = if fix { g.clone() } else { -g.clone() };
            q((tm + g - c(2)) * sg, d2)
        }
        "c" => q(
            x.k() * g.clone(),
            (tn.clone() + g.clone() - c(2)) * (tn + g - c(1)),
        ),
        "a1" => {
            let f = if fix { g } else { gsq };
            q(-(m + gg - c(1)) * f, p1)
        }
        "a2" => q(-(tm + gg) * (n + m + g - c(1)), p1),
        "a3" => {
            let den = if fix { g.clone() * p1 } else { p1 };
            q(-(m.clone() + c(1)) * poch(n + m + g - c(1), 2), den)
        }
        "b1" => {
            let f = if fix { g } else { poch(g + tm - c(2), 2) };
            q(two * (m + gg - c(1)) * f, d2)
        }
        "b2" => q((tm + gg) * (g + two * m - c(2)), d2),
        "b3" => {
            let den = if fix { g.clone() * d2 } else { d2 };
            q(
                c::<F>(-2) * (m.clone() + c(1)) * x.k() * (n + m + g - c(1)),
                den,
            )
        }
        "c1" => {
            let f = if fix { g } else { poch(g + tm - c(2), 2) };
            q(-(m + gg - c(1)) * f, p2)
        }
        "c2" => q((tm + gg) * x.k(), p2),
        "c3" => {
            let (num_g, den) = if fix {
                (F::one(), g * p2)
            } else {
                (gsq, p2 * poch(g + tm, 2))
            };
            q(-(m + c(1)) * poch(x.k() - c(1), 2) * num_g, den)
        }
        _ => None,
    }
}

fn evaluate<F: Field>(id: &CatalogId<F>, n: usize, m: usize, name: &str, forms: Forms) -> Option<F> {
    let x = Ctx {
        n: F::from_usize(n),
        m: F::from_usize(m),
        corrected: forms == Forms::Corrected,
    };
    match id {
        CatalogId::Disk { mu } => disk(mu, &x, name),
        CatalogId::Biangle { alpha, beta } => biangle(alpha, beta, &x, name),
        CatalogId::Simplex { alpha, beta, gamma } => simplex(alpha, beta, gamma, &x, name),
        CatalogId::Square {
            alpha,
            beta,
            gamma,
            delta,
        } => square([alpha, beta, gamma, delta], n, m, name),
        CatalogId::LaguerreJacobi { alpha, beta } => laguerre_jacobi(alpha, beta, &x, name),
        CatalogId::BesselLaguerre { g, gamma } => bessel_laguerre(g, gamma, &x, name),
    }
}

/// Closed-form band entries of row `m` at degree `n` for the `x` (first)
/// or `y` (second) relation. Entries the published lists leave out
/// (identically zero ones) evaluate to zero. An expression with a
/// vanishing denominator at this `(n, m)` is a `DivisionByZero` error.
pub fn closed_form<F: Field>(
    id: &CatalogId<F>,
    n: usize,
    m: usize,
    axis: Axis,
    forms: Forms,
) -> Result<RowForms<F>> {
    if m > n {
        return Err(Error::Range(format!("row m = {m} exceeds degree n = {n}")));
    }
    row_names(axis, n, m)
        .into_iter()
        .map(|name| {
            evaluate(id, n, m, name, forms)
                .map(|v| (name, v))
                .ok_or_else(|| {
                    Error::DivisionByZero(format!("{id} closed form {name} at (n, m) = ({n}, {m})"))
                })
        })
        .collect()
}

/// All six degree-`n` matrices filled from the closed forms.
pub fn closed_form_ttr<F: Field>(id: &CatalogId<F>, n: usize, forms: Forms) -> Result<TTRSet<F>> {
    let mut t = TTRSet::zeros(n);
    let entries = band_entries(n);
    for axis in [Axis::X, Axis::Y] {
        for m in 0..=n {
            for (name, v) in closed_form(id, n, m, axis, forms)? {
                let e = entries
                    .iter()
                    .find(|e| e.row == m && e.name == name && e.matrix.axis() == axis)
                    .expect("closed-form names are band entries");
                t.get_mut(e.matrix).set(e.row, e.col, v)?;
            }
        }
    }
    Ok(t)
}

/// Printed `(a, b, c)` of row `m` at degree `n` (`c` only for `m < n`).
pub fn closed_form_first<F: Field>(id: &CatalogId<F>, n: usize, m: usize) -> Result<RowForms<F>> {
    closed_form(id, n, m, Axis::X, Forms::Printed)
}

/// Printed `a1..c3` of row `m` at degree `n`, restricted to the band.
pub fn closed_form_second<F: Field>(id: &CatalogId<F>, n: usize, m: usize) -> Result<RowForms<F>> {
    closed_form(id, n, m, Axis::Y, Forms::Printed)
}
