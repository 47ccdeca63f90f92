//! Three-way comparison of closed forms, theorem builders and the Gram
//! oracle.

use std::fmt;

use super::forms::{closed_form, errata_for, row_names, Forms};
use super::{make_system, CatalogId};
use crate::construction::Axis;
use crate::error::Result;
use crate::numerics::{approx_eq, negligible, Field};
use crate::ttr::{theorem_ttr, ttr_from_gram, MatrixId, TTRSet};
use crate::univariate::tabulated::Erratum;

/// One disagreement, with enough context to locate it in the tables.
#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub n: usize,
    pub m: usize,
    pub matrix: MatrixId,
    /// Band entry name, or `"off-band"` for a nonzero Gram entry outside
    /// the band.
    pub entry: &'static str,
    pub row: usize,
    pub col: usize,
    /// `None` when the closed form is undefined at this position.
    pub closed_form: Option<String>,
    pub builder: String,
    pub gram: String,
    pub erratum: Option<&'static Erratum>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} m={} {}[{},{}] {}: closed form {}, builder {}, gram {}",
            self.n,
            self.m,
            self.matrix,
            self.row,
            self.col,
            self.entry,
            self.closed_form.as_deref().unwrap_or("undefined"),
            self.builder,
            self.gram
        )?;
        if let Some(e) = self.erratum {
            write!(f, " (known erratum: {})", e.note)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheckReport {
    pub family: String,
    pub max_degree: usize,
    pub forms: Forms,
    /// Number of band positions compared.
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Mismatches not explained by a known erratum.
    pub fn unexplained(&self) -> impl Iterator<Item = &Mismatch> {
        self.mismatches.iter().filter(|m| m.erratum.is_none())
    }
}

fn matrix_for(axis: Axis, name: &str) -> MatrixId {
    match (axis, &name[..1]) {
        (Axis::X, "a") => MatrixId::A1,
        (Axis::X, "b") => MatrixId::B1,
        (Axis::X, _) => MatrixId::C1,
        (Axis::Y, "a") => MatrixId::A2,
        (Axis::Y, "b") => MatrixId::B2,
        (Axis::Y, _) => MatrixId::C2,
    }
}

fn column(axis: Axis, name: &str, m: usize) -> usize {
    match axis {
        Axis::X => m,
        Axis::Y => m + name[1..].parse::<usize>().expect("entry digit") - 2,
    }
}

/// [`cross_check_with`] using the printed closed forms.
pub fn cross_check<F: Field>(id: &CatalogId<F>, max_degree: usize) -> Result<CrossCheckReport> {
    cross_check_with(id, max_degree, Forms::Printed)
}

/// Compares, for every `n <= max_degree` and every band position, the
/// closed form, the theorem builders and the Gram oracle. Gram entries
/// outside the band must vanish. Exact mode compares for equality, float
/// mode to `1e-10` relative.
pub fn cross_check_with<F: Field>(
    id: &CatalogId<F>,
    max_degree: usize,
    forms: Forms,
) -> Result<CrossCheckReport> {
    let sys = make_system(id, max_degree)?;
    let mut report = CrossCheckReport {
        family: id.label(),
        max_degree,
        forms,
        compared: 0,
        mismatches: Vec::new(),
    };
    for n in 0..=max_degree {
        let built = theorem_ttr(&sys, n)?;
        let gram = ttr_from_gram(&sys, n)?;
        compare_degree(id, n, forms, &built, &gram, &mut report)?;
    }
    Ok(report)
}

fn compare_degree<F: Field>(
    id: &CatalogId<F>,
    n: usize,
    forms: Forms,
    built: &TTRSet<F>,
    gram: &TTRSet<F>,
    report: &mut CrossCheckReport,
) -> Result<()> {
    let family = id.family();
    for axis in [Axis::X, Axis::Y] {
        for m in 0..=n {
            let closed = closed_form(id, n, m, axis, forms).ok();
            for name in row_names(axis, n, m) {
                let matrix = matrix_for(axis, name);
                let col = column(axis, name, m);
                let b = built.get(matrix).get(m, col);
                let g = gram.get(matrix).get(m, col);
                let cf = closed.as_ref().and_then(|row| {
                    row.iter().find(|(k, _)| *k == name).map(|(_, v)| v.clone())
                });
                report.compared += 1;
                let ok = approx_eq(&b, &g) && cf.as_ref().is_some_and(|v| approx_eq(v, &b));
                if !ok {
                    report.mismatches.push(Mismatch {
                        n,
                        m,
                        matrix,
                        entry: name,
                        row: m,
                        col,
                        closed_form: cf.map(|v| v.to_string()),
                        builder: b.to_string(),
                        gram: g.to_string(),
                        erratum: errata_for(family, axis, name),
                    });
                }
            }
        }
    }
    for id_m in MatrixId::ALL {
        let g = gram.get(id_m);
        let b = built.get(id_m);
        for r in 0..g.rows() {
            let scale = (0..g.cols())
                .filter(|&c| b.in_band(r, c))
                .map(|c| g.get(r, c).abs().to_f64())
                .fold(0.0, f64::max);
            for c in 0..g.cols() {
                if b.in_band(r, c) {
                    continue;
                }
                let v = g.get(r, c);
                if !negligible(&v, scale) {
                    report.mismatches.push(Mismatch {
                        n,
                        m: r,
                        matrix: id_m,
                        entry: "off-band",
                        row: r,
                        col: c,
                        closed_form: Some("0".into()),
                        builder: "0".into(),
                        gram: v.to_string(),
                        erratum: None,
                    });
                }
            }
        }
    }
    Ok(())
}
