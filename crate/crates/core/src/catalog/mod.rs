//! The six worked families: Koornwinder's disk, parabolic biangle,
//! simplex and square, the Laguerre–Jacobi family and the (not positive
//! definite) Bessel–Laguerre family, with their published closed forms.

mod check;
mod forms;

pub use check::{cross_check, cross_check_with, CrossCheckReport, Mismatch};
pub use forms::{
    closed_form, closed_form_first, closed_form_ttr, closed_form_second, errata_for, Forms, RowForms,
    SECTION_ERRATA,
};

use std::fmt;
use std::str::FromStr;

use crate::construction::{assemble, BivariateSystem, RhoSpec};
use crate::error::{Error, Result};
use crate::numerics::{Field, Scalar};
use crate::univariate::{bessel, jacobi_shift, jacobi_std, laguerre};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Disk,
    Biangle,
    Simplex,
    Square,
    LaguerreJacobi,
    BesselLaguerre,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Disk,
        Family::Biangle,
        Family::Simplex,
        Family::Square,
        Family::LaguerreJacobi,
        Family::BesselLaguerre,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Family::Disk => "disk",
            Family::Biangle => "biangle",
            Family::Simplex => "simplex",
            Family::Square => "square",
            Family::LaguerreJacobi => "laguerre-jacobi",
            Family::BesselLaguerre => "bessel-laguerre",
        }
    }

    /// Parameter names in positional order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Disk => &["mu"],
            Family::Biangle => &["alpha", "beta"],
            Family::Simplex => &["alpha", "beta", "gamma"],
            Family::Square => &["alpha", "beta", "gamma", "delta"],
            Family::LaguerreJacobi => &["alpha", "beta"],
            Family::BesselLaguerre => &["g", "gamma"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let known: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                Error::Domain(format!("unknown family {s:?}; expected one of {}", known.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    /// Positive-definite functional: norms are positive and the
    /// orthonormal (float) checks apply.
    Positive,
    /// Only quasi-definiteness can be expected; exact checks only.
    QuasiOnly,
}

/// A catalog family together with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum CatalogId<F> {
    Disk { mu: F },
    Biangle { alpha: F, beta: F },
    Simplex { alpha: F, beta: F, gamma: F },
    Square { alpha: F, beta: F, gamma: F, delta: F },
    LaguerreJacobi { alpha: F, beta: F },
    BesselLaguerre { g: F, gamma: F },
}

impl<F: Field> CatalogId<F> {
    pub fn family(&self) -> Family {
        match self {
            CatalogId::Disk { .. } => Family::Disk,
            CatalogId::Biangle { .. } => Family::Biangle,
            CatalogId::Simplex { .. } => Family::Simplex,
            CatalogId::Square { .. } => Family::Square,
            CatalogId::LaguerreJacobi { .. } => Family::LaguerreJacobi,
            CatalogId::BesselLaguerre { .. } => Family::BesselLaguerre,
        }
    }

    /// Builds an id from positional parameters in [`Family::param_names`] order.
    pub fn new(family: Family, params: &[F]) -> Result<Self> {
        let names = family.param_names();
        if params.len() != names.len() {
            return Err(Error::Domain(format!(
                "{family} takes {} parameter(s) ({}), got {}",
                names.len(),
                names.join(", "),
                params.len()
            )));
        }
        let p = |i: usize| params[i].clone();
        let id = match family {
            Family::Disk => CatalogId::Disk { mu: p(0) },
            Family::Biangle => CatalogId::Biangle { alpha: p(0), beta: p(1) },
            Family::Simplex => CatalogId::Simplex { alpha: p(0), beta: p(1), gamma: p(2) },
            Family::Square => CatalogId::Square {
                alpha: p(0),
                beta: p(1),
                gamma: p(2),
                delta: p(3),
            },
            Family::LaguerreJacobi => CatalogId::LaguerreJacobi { alpha: p(0), beta: p(1) },
            Family::BesselLaguerre => CatalogId::BesselLaguerre { g: p(0), gamma: p(1) },
        };
        id.validate()?;
        Ok(id)
    }

    /// Builds an id from tagged scalars, e.g. parsed command-line values.
    pub fn from_scalars(family: Family, params: &[Scalar]) -> Result<Self> {
        let values = params
            .iter()
            .map(F::try_from_scalar)
            .collect::<Result<Vec<_>>>()?;
        Self::new(family, &values)
    }

    /// `(name, value)` pairs in positional order.
    pub fn params(&self) -> Vec<(&'static str, F)> {
        let values = match self {
            CatalogId::Disk { mu } => vec![mu.clone()],
            CatalogId::Biangle { alpha, beta } | CatalogId::LaguerreJacobi { alpha, beta } => {
                vec![alpha.clone(), beta.clone()]
            }
            CatalogId::Simplex { alpha, beta, gamma } => {
                vec![alpha.clone(), beta.clone(), gamma.clone()]
            }
            CatalogId::Square {
                alpha,
                beta,
                gamma,
                delta,
            } => vec![alpha.clone(), beta.clone(), gamma.clone(), delta.clone()],
            CatalogId::BesselLaguerre { g, gamma } => vec![g.clone(), gamma.clone()],
        };
        self.family().param_names().iter().copied().zip(values).collect()
    }

    pub fn label(&self) -> String {
        let ps: Vec<_> = self.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.family(), ps.join(", "))
    }

    /// Parameters for which the construction is meaningless at every degree.
    /// Other breakdowns are detected lazily as quasi-definiteness errors.
    pub fn validate(&self) -> Result<()> {
        if let CatalogId::BesselLaguerre { g, .. } = self {
            if g.is_zero() {
                return Err(Error::Domain("bessel-laguerre: g must be nonzero".into()));
            }
        }
        Ok(())
    }

    /// Classification by the parameter ranges of the classical weights.
    pub fn definiteness(&self) -> Definiteness {
        let gt = |x: &F, n: i64, d: i64| *x > F::ratio(n, d);
        let positive = match self {
            CatalogId::Disk { mu } => gt(mu, -1, 2),
            CatalogId::Biangle { alpha, beta } | CatalogId::LaguerreJacobi { alpha, beta } => {
                gt(alpha, -1, 1) && gt(beta, -1, 1)
            }
            CatalogId::Simplex { alpha, beta, gamma } => {
                gt(alpha, -1, 1) && gt(beta, -1, 1) && gt(gamma, -1, 1)
            }
            CatalogId::Square {
                alpha,
                beta,
                gamma,
                delta,
            } => [alpha, beta, gamma, delta].iter().all(|v| gt(v, -1, 1)),
            CatalogId::BesselLaguerre { .. } => false,
        };
        if positive {
            Definiteness::Positive
        } else {
            Definiteness::QuasiOnly
        }
    }
}

impl<F: Field> fmt::Display for CatalogId<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The bivariate system of a catalog family, valid through degree
/// `max_degree` (the ladder is chained through `max_degree + 1`).
pub fn make_system<F: Field>(id: &CatalogId<F>, max_degree: usize) -> Result<BivariateSystem<F>> {
    id.validate()?;
    let int = |v: i64| F::from_i64(v);
    let half = F::ratio(1, 2);
    let max_m = max_degree + 1;
    let label = id.label();
    match id.clone() {
        CatalogId::Disk { mu } => {
            let q = jacobi_std(mu.clone() - half.clone(), mu.clone() - half);
            assemble(
                label,
                RhoSpec::sqrt_quadratic(int(-1), int(0), int(1))?,
                move |m| {
                    let p = mu.clone() + F::from_usize(m);
                    Ok(jacobi_std(p.clone(), p))
                },
                q,
                max_m,
            )
        }
        CatalogId::Biangle { alpha, beta } => assemble(
            label,
            RhoSpec::sqrt_quadratic(int(0), int(1), int(0))?,
            {
                let beta = beta.clone();
                move |m| {
                    Ok(jacobi_shift(
                        alpha.clone(),
                        beta.clone() + F::from_usize(m) + half.clone(),
                    ))
                }
            },
            jacobi_std(beta.clone(), beta),
            max_m,
        ),
        CatalogId::Simplex { alpha, beta, gamma } => assemble(
            label,
            RhoSpec::linear(int(-1), int(1))?,
            {
                let (beta, gamma) = (beta.clone(), gamma.clone());
                move |m| {
                    Ok(jacobi_shift(
                        beta.clone() + gamma.clone() + F::from_usize(2 * m + 1),
                        alpha.clone(),
                    ))
                }
            },
            jacobi_shift(gamma, beta),
            max_m,
        ),
        CatalogId::Square {
            alpha,
            beta,
            gamma,
            delta,
        } => {
            let x = jacobi_std(alpha, beta);
            assemble(
                label,
                RhoSpec::linear(int(0), int(1))?,
                move |_| Ok(x.clone()),
                jacobi_std(gamma, delta),
                max_m,
            )
        }
        CatalogId::LaguerreJacobi { alpha, beta } => assemble(
            label,
            RhoSpec::linear(int(1), int(0))?,
            move |m| Ok(laguerre(alpha.clone() + F::from_usize(2 * m + 1))),
            jacobi_std(beta, F::zero()),
            max_m,
        ),
        CatalogId::BesselLaguerre { g, gamma } => {
            let q = laguerre(g.clone() * gamma - F::one()).scaled_argument(g.clone())?;
            assemble(
                label,
                RhoSpec::linear(int(1), int(0))?,
                move |m| bessel(g.clone() + F::from_usize(2 * m), -g.clone()),
                q,
                max_m,
            )
        }
    }
}

/// The parameter sets used throughout the test suites, in exact form.
pub fn reference_ids() -> Vec<CatalogId<crate::numerics::Rational>> {
    use crate::numerics::rat;
    vec![
        CatalogId::Disk { mu: rat(1, 2) },
        CatalogId::Disk { mu: rat(3, 2) },
        CatalogId::Biangle { alpha: rat(0, 1), beta: rat(0, 1) },
        CatalogId::Biangle { alpha: rat(1, 1), beta: rat(1, 2) },
        CatalogId::Simplex { alpha: rat(1, 2), beta: rat(1, 2), gamma: rat(1, 2) },
        CatalogId::Simplex { alpha: rat(0, 1), beta: rat(1, 1), gamma: rat(2, 1) },
        CatalogId::Square {
            alpha: rat(0, 1),
            beta: rat(0, 1),
            gamma: rat(0, 1),
            delta: rat(0, 1),
        },
        CatalogId::Square {
            alpha: rat(1, 1),
            beta: rat(2, 1),
            gamma: rat(0, 1),
            delta: rat(1, 2),
        },
        CatalogId::LaguerreJacobi { alpha: rat(1, 1), beta: rat(1, 2) },
        CatalogId::BesselLaguerre { g: rat(5, 1), gamma: rat(2, 5) },
    ]
}
