//! Python bindings for `ortho2d`.
//!
//! Exact values cross the boundary as `fractions.Fraction` (inputs may be
//! `int`, `Fraction` or strings such as `"3/2"`); float values as `float`.

use std::str::FromStr;

use ortho2d::catalog::{
    closed_form_ttr, cross_check_with, make_system, CatalogId, CrossCheckReport, Definiteness,
    Family, Forms,
};
use ortho2d::construction::BivariateSystem;
use ortho2d::numerics::{DynPoly, Field, Mode, Rational, Scalar};
use ortho2d::ttr::{rank_conditions, theorem_ttr, ttr_from_gram, MatrixId, TTRSet};
use ortho2d::univariate::tabulated::{corrected_down, corrected_up, ladder_pair, printed_down, printed_up};
use ortho2d::univariate::{adjacent_down, adjacent_up, AdjacentDown, AdjacentUp, Ladder};
use ortho2d::verify::{run_suite, SuiteOptions, VerifyReport};
use ortho2d::Error;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyFloat, PyList, PyString, PyTuple};

create_exception!(pyortho2d, Ortho2dError, PyException, "Base class for ortho2d errors.");
create_exception!(pyortho2d, DomainError, Ortho2dError, "Invalid parameters, arguments or modes.");
create_exception!(pyortho2d, QuasiDefiniteError, Ortho2dError, "A functional is not quasi-definite.");
create_exception!(pyortho2d, InconsistentError, Ortho2dError, "An internal consistency check failed.");

fn py_err(e: Error) -> PyErr {
    let text = e.to_string();
    match e {
        Error::QuasiDefinite { .. } => QuasiDefiniteError::new_err(text),
        Error::Inconsistent(_) => InconsistentError::new_err(text),
        _ => DomainError::new_err(text),
    }
}

fn parse_mode(text: &str) -> PyResult<Mode> {
    Mode::from_str(text).map_err(py_err)
}

fn to_scalar(obj: &Bound<'_, PyAny>, mode: Mode) -> PyResult<Scalar> {
    match mode {
        Mode::Exact => {
            if obj.is_instance_of::<PyFloat>() {
                return Err(DomainError::new_err(
                    "floats are not accepted in exact mode; pass an int, Fraction or string",
                ));
            }
            Scalar::parse(obj.str()?.to_str()?.trim(), Mode::Exact).map_err(py_err)
        }
        Mode::Float => {
            if obj.is_instance_of::<PyString>() {
                Scalar::parse(obj.str()?.to_str()?.trim(), Mode::Float).map_err(py_err)
            } else {
                Ok(Scalar::Float(obj.extract::<f64>()?))
            }
        }
    }
}

fn to_field<F: Field>(obj: &Bound<'_, PyAny>) -> PyResult<F> {
    F::try_from_scalar(&to_scalar(obj, F::MODE)?).map_err(py_err)
}

fn scalar_to_py(py: Python<'_>, s: &Scalar) -> PyResult<Py<PyAny>> {
    match s {
        Scalar::Exact(r) => {
            let fraction = py.import("fractions")?.getattr("Fraction")?;
            Ok(fraction.call1((r.to_string(),))?.unbind())
        }
        Scalar::Float(v) => Ok(PyFloat::new(py, *v).into_any().unbind()),
    }
}

fn value<F: Field>(py: Python<'_>, v: &F) -> PyResult<Py<PyAny>> {
    scalar_to_py(py, &v.to_scalar())
}

fn opt_value<F: Field>(py: Python<'_>, v: Option<&F>) -> PyResult<Py<PyAny>> {
    match v {
        Some(v) => value(py, v),
        None => Ok(py.None()),
    }
}

fn to_dyn<F: Field>(p: &ortho2d::numerics::SparsePoly2<F>) -> PyResult<DynPoly> {
    let terms: Vec<_> = p.terms().map(|(e, v)| (*e, v.to_scalar())).collect();
    DynPoly::from_terms(F::MODE, &terms).map_err(py_err)
}

fn parse_forms(text: &str) -> PyResult<Forms> {
    match text {
        "printed" => Ok(Forms::Printed),
        "corrected" => Ok(Forms::Corrected),
        other => Err(DomainError::new_err(format!(
            "unknown forms {other:?}; expected printed or corrected"
        ))),
    }
}

fn parse_ladder(text: &str) -> PyResult<Ladder> {
    match text {
        "jacobi" => Ok(Ladder::Jacobi),
        "jacobi01" => Ok(Ladder::Jacobi01),
        "jacobi01-square" => Ok(Ladder::Jacobi01Square),
        "laguerre" => Ok(Ladder::Laguerre),
        "bessel" => Ok(Ladder::Bessel),
        other => Err(DomainError::new_err(format!(
            "unknown ladder {other:?}; expected jacobi, jacobi01, jacobi01-square, laguerre or bessel"
        ))),
    }
}

fn matrices<F: Field>(py: Python<'_>, set: &TTRSet<F>) -> PyResult<Py<PyDict>> {
    let out = PyDict::new(py);
    for id in MatrixId::ALL {
        let rows = PyList::empty(py);
        for row in set.get(id).to_dense() {
            let vals = row.iter().map(|v| value(py, v)).collect::<PyResult<Vec<_>>>()?;
            rows.append(PyList::new(py, vals)?)?;
        }
        out.set_item(id.name(), rows)?;
    }
    Ok(out.unbind())
}

fn report_dict(py: Python<'_>, report: &VerifyReport) -> PyResult<Py<PyDict>> {
    let out = PyDict::new(py);
    out.set_item("passed", report.passed())?;
    let checks = PyList::empty(py);
    for c in &report.checks {
        let d = PyDict::new(py);
        d.set_item("name", &c.name)?;
        d.set_item("status", if c.passed { "pass" } else { "fail" })?;
        d.set_item("witness", c.witness.as_deref())?;
        d.set_item("detail", c.detail.as_deref())?;
        checks.append(d)?;
    }
    out.set_item("checks", checks)?;
    Ok(out.unbind())
}

fn cross_check_dict(py: Python<'_>, report: &CrossCheckReport) -> PyResult<Py<PyDict>> {
    let out = PyDict::new(py);
    out.set_item("passed", report.passed())?;
    out.set_item("compared", report.compared)?;
    out.set_item("unexplained", report.unexplained().count())?;
    let list = PyList::empty(py);
    for m in &report.mismatches {
        let d = PyDict::new(py);
        d.set_item("n", m.n)?;
        d.set_item("m", m.m)?;
        d.set_item("matrix", m.matrix.name())?;
        d.set_item("entry", m.entry)?;
        d.set_item("row", m.row)?;
        d.set_item("col", m.col)?;
        d.set_item("closed_form", m.closed_form.as_deref())?;
        d.set_item("builder", &m.builder)?;
        d.set_item("gram", &m.gram)?;
        d.set_item("erratum", m.erratum.map(|e| e.note))?;
        list.append(d)?;
    }
    out.set_item("mismatches", list)?;
    Ok(out.unbind())
}

#[allow(clippy::large_enum_variant)]
enum Inner {
    Exact(CatalogId<Rational>, BivariateSystem<Rational>),
    Float(CatalogId<f64>, BivariateSystem<f64>),
}

macro_rules! with_system {
    ($self:expr, |$id:ident, $sys:ident| $body:expr) => {
        match &$self.inner {
            Inner::Exact($id, $sys) => $body,
            Inner::Float($id, $sys) => $body,
        }
    };
}

fn build<F: Field>(
    family: Family,
    params: &Bound<'_, PyDict>,
    max_degree: usize,
) -> PyResult<(CatalogId<F>, BivariateSystem<F>)> {
    let names = family.param_names();
    for key in params.keys() {
        let key: String = key.extract()?;
        if !names.contains(&key.as_str()) {
            return Err(DomainError::new_err(format!(
                "{family} takes parameters {names:?}, not {key:?}"
            )));
        }
    }
    let mut values = Vec::with_capacity(names.len());
    for name in names {
        let v = params
            .get_item(name)?
            .ok_or_else(|| DomainError::new_err(format!("{family} needs parameter {name:?}")))?;
        values.push(to_field::<F>(&v)?);
    }
    let id = CatalogId::new(family, &values).map_err(py_err)?;
    let sys = make_system(&id, max_degree).map_err(py_err)?;
    Ok((id, sys))
}

/// A catalog family with fixed parameters, built up to `max_degree`.
#[pyclass(name = "System", module = "pyortho2d", frozen)]
struct PySystem {
    inner: Inner,
    max_degree: usize,
}

#[pymethods]
impl PySystem {
    #[new]
    #[pyo3(signature = (family, params, max_degree, mode = "exact"))]
    fn new(family: &str, params: &Bound<'_, PyDict>, max_degree: usize, mode: &str) -> PyResult<Self> {
        let family = Family::from_str(family).map_err(py_err)?;
        let inner = match parse_mode(mode)? {
            Mode::Exact => {
                let (id, sys) = build::<Rational>(family, params, max_degree)?;
                Inner::Exact(id, sys)
            }
            Mode::Float => {
                let (id, sys) = build::<f64>(family, params, max_degree)?;
                Inner::Float(id, sys)
            }
        };
        Ok(PySystem { inner, max_degree })
    }

    #[getter]
    fn family(&self) -> &'static str {
        with_system!(self, |id, _s| id.family().name())
    }

    #[getter]
    fn mode(&self) -> &'static str {
        match self.inner {
            Inner::Exact(..) => Mode::Exact.as_str(),
            Inner::Float(..) => Mode::Float.as_str(),
        }
    }

    #[getter]
    fn max_degree(&self) -> usize {
        self.max_degree
    }

    #[getter]
    fn params(&self, py: Python<'_>) -> PyResult<Py<PyDict>> {
        let out = PyDict::new(py);
        with_system!(self, |id, _s| {
            for (name, v) in id.params() {
                out.set_item(name, value(py, &v)?)?;
            }
        });
        Ok(out.unbind())
    }

    /// `"positive"` or `"quasi"`.
    #[getter]
    fn definiteness(&self) -> &'static str {
        match with_system!(self, |id, _s| id.definiteness()) {
            Definiteness::Positive => "positive",
            Definiteness::QuasiOnly => "quasi",
        }
    }

    /// The six degree-`n` relation matrices as dense nested lists, from
    /// `source` in `theorem`, `gram`, `printed` or `corrected`.
    #[pyo3(signature = (n, source = "theorem"))]
    fn ttr(&self, py: Python<'_>, n: usize, source: &str) -> PyResult<Py<PyDict>> {
        with_system!(self, |id, sys| {
            let set = match source {
                "theorem" => theorem_ttr(sys, n),
                "gram" => ttr_from_gram(sys, n),
                "printed" => closed_form_ttr(id, n, Forms::Printed),
                "corrected" => closed_form_ttr(id, n, Forms::Corrected),
                other => {
                    return Err(DomainError::new_err(format!(
                        "unknown source {other:?}; expected theorem, gram, printed or corrected"
                    )))
                }
            }
            .map_err(py_err)?;
            matrices(py, &set)
        })
    }

    /// `P_{n,m}(x, y)`.
    fn eval(&self, py: Python<'_>, n: usize, m: usize, x: &Bound<'_, PyAny>, y: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        with_system!(self, |_id, sys| {
            let v = sys.eval_p(n, m, &to_field(x)?, &to_field(y)?).map_err(py_err)?;
            value(py, &v)
        })
    }

    /// The moment `<w, x^h y^k>`.
    fn moment(&self, py: Python<'_>, h: usize, k: usize) -> PyResult<Py<PyAny>> {
        with_system!(self, |_id, sys| value(py, &sys.w_moment(h, k).map_err(py_err)?))
    }

    /// `P_{n,m}` expanded in monomials.
    fn poly(&self, n: usize, m: usize) -> PyResult<Poly> {
        with_system!(self, |_id, sys| {
            let p = sys.expand_p(n, m).map_err(py_err)?;
            Ok(Poly { inner: to_dyn(&p)? })
        })
    }

    /// `(a, b, c)` of the ladder family `p^{(m)}` at index `k`.
    fn ladder_recurrence(&self, py: Python<'_>, m: usize, k: usize) -> PyResult<Py<PyTuple>> {
        with_system!(self, |_id, sys| {
            let r = sys.ladder(m).and_then(|f| f.recurrence(k)).map_err(py_err)?;
            let vals = [value(py, &r.a)?, value(py, &r.b)?, value(py, &r.c)?];
            Ok(PyTuple::new(py, vals)?.unbind())
        })
    }

    /// Compares the closed forms with the builder and Gram matrices for
    /// degrees up to `max_n`.
    #[pyo3(signature = (max_n, forms = "printed"))]
    fn cross_check(&self, py: Python<'_>, max_n: usize, forms: &str) -> PyResult<Py<PyDict>> {
        let forms = parse_forms(forms)?;
        let report = with_system!(self, |id, _s| cross_check_with(id, max_n, forms)).map_err(py_err)?;
        cross_check_dict(py, &report)
    }

    /// The full verification suite for degrees up to `max_n`.
    #[pyo3(signature = (max_n, points = 100, seed = 0))]
    fn verify(&self, py: Python<'_>, max_n: usize, points: usize, seed: u64) -> PyResult<Py<PyDict>> {
        let options = SuiteOptions { fault: None, float_points: points, seed };
        let report = with_system!(self, |id, _s| run_suite(id, max_n, &options)).map_err(py_err)?;
        report_dict(py, &report)
    }

    /// Whether every rank condition holds at degree `n` (exact mode).
    fn rank_conditions(&self, n: usize) -> PyResult<bool> {
        with_system!(self, |_id, sys| rank_conditions(sys, n).map(|r| r.all_hold()).map_err(py_err))
    }

    fn __repr__(&self) -> String {
        let label = with_system!(self, |id, _s| id.label());
        format!("System({label}, max_degree={}, mode={})", self.max_degree, self.mode())
    }
}

/// A bivariate polynomial with exact or float coefficients.
#[pyclass(module = "pyortho2d", frozen)]
struct Poly {
    inner: DynPoly,
}

#[pymethods]
impl Poly {
    /// Builds a polynomial from `{(i, j): coefficient}` for `x^i y^j`.
    #[new]
    #[pyo3(signature = (terms, mode = "exact"))]
    fn new(terms: &Bound<'_, PyDict>, mode: &str) -> PyResult<Self> {
        let mode = parse_mode(mode)?;
        let mut list = Vec::with_capacity(terms.len());
        for (k, v) in terms.iter() {
            let exp: (u32, u32) = k.extract()?;
            list.push((exp, to_scalar(&v, mode)?));
        }
        Ok(Poly { inner: DynPoly::from_terms(mode, &list).map_err(py_err)? })
    }

    #[getter]
    fn mode(&self) -> &'static str {
        self.inner.mode().as_str()
    }

    /// `{(i, j): coefficient}` of the nonzero terms.
    fn terms(&self, py: Python<'_>) -> PyResult<Py<PyDict>> {
        let out = PyDict::new(py);
        for (exp, c) in self.inner.terms() {
            out.set_item(exp, scalar_to_py(py, &c)?)?;
        }
        Ok(out.unbind())
    }

    /// Total degree, `None` for the zero polynomial.
    fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    fn eval(&self, py: Python<'_>, x: &Bound<'_, PyAny>, y: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        let mode = self.inner.mode();
        let v = self.inner.eval(&to_scalar(x, mode)?, &to_scalar(y, mode)?).map_err(py_err)?;
        scalar_to_py(py, &v)
    }

    fn __add__(&self, other: &Poly) -> PyResult<Poly> {
        Ok(Poly { inner: self.inner.try_add(&other.inner).map_err(py_err)? })
    }

    fn __sub__(&self, other: &Poly) -> PyResult<Poly> {
        Ok(Poly { inner: self.inner.try_sub(&other.inner).map_err(py_err)? })
    }

    fn __mul__(&self, other: &Poly) -> PyResult<Poly> {
        Ok(Poly { inner: self.inner.try_mul(&other.inner).map_err(py_err)? })
    }

    fn __eq__(&self, other: &Poly) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        let terms: Vec<String> = self
            .inner
            .terms()
            .iter()
            .map(|((i, j), c)| {
                let c = match c {
                    Scalar::Exact(r) => r.to_string(),
                    Scalar::Float(v) => v.to_string(),
                };
                format!("({i}, {j}): {c}")
            })
            .collect();
        format!("Poly({{{}}}, mode={})", terms.join(", "), self.mode())
    }
}

fn adjacent_dict<F: Field>(py: Python<'_>, down: &AdjacentDown<F>, up: &AdjacentUp<F>) -> PyResult<Py<PyDict>> {
    let out = PyDict::new(py);
    out.set_item("delta", value(py, &down.delta)?)?;
    out.set_item("epsilon", opt_value(py, down.epsilon.as_ref())?)?;
    out.set_item("zeta", opt_value(py, down.zeta.as_ref())?)?;
    out.set_item("eta", value(py, &up.eta)?)?;
    out.set_item("theta", value(py, &up.theta)?)?;
    out.set_item("vartheta", value(py, &up.vartheta)?)?;
    Ok(out.unbind())
}

fn adjacent_in<F: Field>(
    py: Python<'_>,
    ladder: Ladder,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    n: usize,
    source: &str,
) -> PyResult<Py<PyDict>> {
    let (a, b): (F, F) = (to_field(a)?, to_field(b)?);
    let undefined = || DomainError::new_err(format!("{} coefficients undefined at n = {n}", ladder.name()));
    let (down, up) = match source {
        "generic" => {
            let (lo, hi, s2) = ladder_pair(ladder, &a, &b).map_err(py_err)?;
            (
                adjacent_down(&lo, &hi, &s2, n).map_err(py_err)?,
                adjacent_up(&lo, &hi, &s2, n).map_err(py_err)?,
            )
        }
        "printed" => (
            printed_down(ladder, &a, &b, n).ok_or_else(undefined)?,
            printed_up(ladder, &a, &b, n).ok_or_else(undefined)?,
        ),
        "corrected" => (
            corrected_down(ladder, &a, &b, n).ok_or_else(undefined)?,
            corrected_up(ladder, &a, &b, n).ok_or_else(undefined)?,
        ),
        other => {
            return Err(DomainError::new_err(format!(
                "unknown source {other:?}; expected generic, printed or corrected"
            )))
        }
    };
    adjacent_dict(py, &down, &up)
}

/// Connection coefficients between a classical family with parameters
/// `(a, b)` and its adjacent family, at index `n`: `delta`, `epsilon`,
/// `zeta` (down) and `eta`, `theta`, `vartheta` (up).
#[pyfunction]
#[pyo3(signature = (ladder, a, b, n, source = "generic", mode = "exact"))]
fn adjacent(
    py: Python<'_>,
    ladder: &str,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
    n: usize,
    source: &str,
    mode: &str,
) -> PyResult<Py<PyDict>> {
    let ladder = parse_ladder(ladder)?;
    match parse_mode(mode)? {
        Mode::Exact => adjacent_in::<Rational>(py, ladder, a, b, n, source),
        Mode::Float => adjacent_in::<f64>(py, ladder, a, b, n, source),
    }
}

/// `{family name: [parameter names]}` for the catalog.
#[pyfunction]
fn families(py: Python<'_>) -> PyResult<Py<PyDict>> {
    let out = PyDict::new(py);
    for f in Family::ALL {
        out.set_item(f.name(), f.param_names().to_vec())?;
    }
    Ok(out.unbind())
}

#[pymodule]
fn pyortho2d(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PySystem>()?;
    m.add_class::<Poly>()?;
    m.add_function(wrap_pyfunction!(adjacent, m)?)?;
    m.add_function(wrap_pyfunction!(families, m)?)?;
    m.add("Ortho2dError", py.get_type::<Ortho2dError>())?;
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add("QuasiDefiniteError", py.get_type::<QuasiDefiniteError>())?;
    m.add("InconsistentError", py.get_type::<InconsistentError>())?;
    Ok(())
}
