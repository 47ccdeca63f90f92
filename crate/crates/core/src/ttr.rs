//! The matrices of the vector three-term relations
//!
//! ```text
//! x P_n = A_{n,1} P_{n+1} + B_{n,1} P_n + C_{n,1} P_{n-1}
//! y P_n = A_{n,2} P_{n+1} + B_{n,2} P_n + C_{n,2} P_{n-1}
//! ```
//!
//! built in two independent ways: from the univariate recurrences and
//! connection coefficients ([`first_ttr`], [`second_ttr`]), and from the
//! moment functional ([`ttr_from_gram`]).

use std::fmt;

use crate::construction::{Axis, BivariateSystem, RhoCase};
use crate::error::{Error, Result};
use crate::numerics::{rank_rational, BandMatrix, Field, Mode, Rational};
use crate::univariate::{adjacent_down, adjacent_up};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixId {
    A1,
    B1,
    C1,
    A2,
    B2,
    C2,
}

impl MatrixId {
    pub const ALL: [MatrixId; 6] = [
        MatrixId::A1,
        MatrixId::B1,
        MatrixId::C1,
        MatrixId::A2,
        MatrixId::B2,
        MatrixId::C2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MatrixId::A1 => "A1",
            MatrixId::B1 => "B1",
            MatrixId::C1 => "C1",
            MatrixId::A2 => "A2",
            MatrixId::B2 => "B2",
            MatrixId::C2 => "C2",
        }
    }

    pub fn axis(self) -> Axis {
        match self {
            MatrixId::A1 | MatrixId::B1 | MatrixId::C1 => Axis::X,
            _ => Axis::Y,
        }
    }

    /// Shape of the matrix at degree `n`.
    pub fn shape(self, n: usize) -> (usize, usize) {
        match self {
            MatrixId::A1 | MatrixId::A2 => (n + 1, n + 2),
            MatrixId::B1 | MatrixId::B2 => (n + 1, n + 1),
            MatrixId::C1 | MatrixId::C2 => (n + 1, n),
        }
    }

    /// Half-bandwidth of the structured form: diagonal for `x`,
    /// tridiagonal for `y`.
    pub fn bandwidth(self) -> usize {
        match self.axis() {
            Axis::X => 0,
            Axis::Y => 1,
        }
    }
}

impl fmt::Display for MatrixId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A named band position: row `m` of a matrix at degree `n`.
///
/// First-relation entries are named `a`, `b`, `c` (the diagonal);
/// second-relation entries `a1, a2, a3` (row `m`, columns `m-1, m, m+1`
/// of `A2`) and likewise for `b` and `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Entry {
    pub name: &'static str,
    pub matrix: MatrixId,
    pub row: usize,
    pub col: usize,
}

const SECOND_NAMES: [[&str; 3]; 3] = [["a1", "a2", "a3"], ["b1", "b2", "b3"], ["c1", "c2", "c3"]];

/// All band positions of the six matrices at degree `n`, row by row.
pub fn band_entries(n: usize) -> Vec<Entry> {
    let mut out = Vec::new();
    for id in MatrixId::ALL {
        let (rows, cols) = id.shape(n);
        let letter = match id {
            MatrixId::A1 | MatrixId::A2 => 0,
            MatrixId::B1 | MatrixId::B2 => 1,
            MatrixId::C1 | MatrixId::C2 => 2,
        };
        for m in 0..rows {
            if id.axis() == Axis::X {
                if m < cols {
                    out.push(Entry {
                        name: ["a", "b", "c"][letter],
                        matrix: id,
                        row: m,
                        col: m,
                    });
                }
                continue;
            }
            for (k, name) in SECOND_NAMES[letter].iter().enumerate() {
                if m + k < 1 || m + k > cols {
                    continue;
                }
                out.push(Entry {
                    name,
                    matrix: id,
                    row: m,
                    col: m + k - 1,
                });
            }
        }
    }
    out
}

/// The six relation matrices at degree `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TTRSet<F> {
    pub n: usize,
    pub a1: BandMatrix<F>,
    pub b1: BandMatrix<F>,
    pub c1: BandMatrix<F>,
    pub a2: BandMatrix<F>,
    pub b2: BandMatrix<F>,
    pub c2: BandMatrix<F>,
}

impl<F: Field> TTRSet<F> {
    pub fn get(&self, id: MatrixId) -> &BandMatrix<F> {
        match id {
            MatrixId::A1 => &self.a1,
            MatrixId::B1 => &self.b1,
            MatrixId::C1 => &self.c1,
            MatrixId::A2 => &self.a2,
            MatrixId::B2 => &self.b2,
            MatrixId::C2 => &self.c2,
        }
    }

    pub fn get_mut(&mut self, id: MatrixId) -> &mut BandMatrix<F> {
        match id {
            MatrixId::A1 => &mut self.a1,
            MatrixId::B1 => &mut self.b1,
            MatrixId::C1 => &mut self.c1,
            MatrixId::A2 => &mut self.a2,
            MatrixId::B2 => &mut self.b2,
            MatrixId::C2 => &mut self.c2,
        }
    }

    /// `(A, B, C)` for one axis.
    pub fn axis(&self, axis: Axis) -> (&BandMatrix<F>, &BandMatrix<F>, &BandMatrix<F>) {
        match axis {
            Axis::X => (&self.a1, &self.b1, &self.c1),
            Axis::Y => (&self.a2, &self.b2, &self.c2),
        }
    }

    pub fn entry(&self, e: &Entry) -> F {
        self.get(e.matrix).get(e.row, e.col)
    }

    /// All-zero matrices of the degree-`n` shapes and band structure.
    pub fn zeros(n: usize) -> Self {
        let mk = |id: MatrixId| {
            let (r, c) = id.shape(n);
            BandMatrix::new(r, c, id.bandwidth(), id.bandwidth())
        };
        TTRSet {
            n,
            a1: mk(MatrixId::A1),
            b1: mk(MatrixId::B1),
            c1: mk(MatrixId::C1),
            a2: mk(MatrixId::A2),
            b2: mk(MatrixId::B2),
            c2: mk(MatrixId::C2),
        }
    }
}

/// Diagonal `x`-relation matrices: entry `m` is the recurrence
/// coefficient of the ladder family `p^{(m)}` at index `n - m`.
pub fn first_ttr<F: Field>(
    sys: &BivariateSystem<F>,
    n: usize,
) -> Result<(BandMatrix<F>, BandMatrix<F>, BandMatrix<F>)> {
    let mut t = TTRSet::<F>::zeros(n);
    for m in 0..=n {
        let r = sys.ladder(m)?.recurrence(n - m)?;
        t.a1.set(m, m, r.a)?;
        t.b1.set(m, m, r.b)?;
        if m < n {
            t.c1.set(m, m, r.c)?;
        }
    }
    Ok((t.a1, t.b1, t.c1))
}

/// Tridiagonal `y`-relation matrices from the `q` recurrence and the
/// connection coefficients of the ladder. Positions are filled wherever
/// the tridiagonal band fits inside the matrix shape.
pub fn second_ttr<F: Field>(
    sys: &BivariateSystem<F>,
    n: usize,
) -> Result<(BandMatrix<F>, BandMatrix<F>, BandMatrix<F>)> {
    let mut t = TTRSet::<F>::zeros(n);
    let s2 = sys.rho().s2().clone();
    for m in 0..=n {
        let k = n - m;
        let qr = sys.q().recurrence(m)?;
        let here = sys.ladder(m)?;
        if m >= 1 {
            let up = adjacent_up(&sys.ladder(m - 1)?, &here, &s2, k)?;
            t.a2.set(m, m - 1, qr.c.clone() * up.eta)?;
            t.b2.set(m, m - 1, qr.c.clone() * up.theta)?;
            t.c2.set(m, m - 1, qr.c.clone() * up.vartheta)?;
        }
        let down = adjacent_down(&here, &sys.ladder(m + 1)?, &s2, k)?;
        t.a2.set(m, m + 1, qr.a.clone() * down.delta)?;
        if m < n {
            let eps = down.epsilon.expect("epsilon exists for n - m >= 1");
            t.b2.set(m, m + 1, qr.a.clone() * eps)?;
        }
        if m + 1 < n {
            let zeta = down.zeta.expect("zeta exists for n - m >= 2");
            t.c2.set(m, m + 1, qr.a.clone() * zeta)?;
        }
        if let (RhoCase::I, Some((r1, r0))) = (sys.rho().case(), sys.rho().linear_coeffs()) {
            let r = here.recurrence(k)?;
            t.a2.set(m, m, qr.b.clone() * r1.clone() * r.a)?;
            t.b2.set(m, m, qr.b.clone() * (r1.clone() * r.b + r0.clone()))?;
            if m < n {
                t.c2.set(m, m, qr.b.clone() * r1.clone() * r.c)?;
            }
        }
    }
    Ok((t.a2, t.b2, t.c2))
}

/// Both relations from the builders above.
pub fn theorem_ttr<F: Field>(sys: &BivariateSystem<F>, n: usize) -> Result<TTRSet<F>> {
    let (a1, b1, c1) = first_ttr(sys, n)?;
    let (a2, b2, c2) = second_ttr(sys, n)?;
    Ok(TTRSet {
        n,
        a1,
        b1,
        c1,
        a2,
        b2,
        c2,
    })
}

/// Diagonal of `H_n = <w, P_n P_n^t>`, checking that the block is
/// diagonal with nonzero diagonal.
pub fn gram_diagonal<F: Field>(sys: &BivariateSystem<F>, n: usize) -> Result<Vec<F>> {
    let g = sys.gram_block(n, n)?;
    if !g.is_diagonal() {
        return Err(Error::Inconsistent(format!(
            "{}: H_{n} is not diagonal",
            sys.label()
        )));
    }
    Ok(g.entries.into_iter().enumerate().map(|(m, row)| row[m].clone()).collect())
}

fn gram_a<F: Field>(
    sys: &BivariateSystem<F>,
    n: usize,
    axis: Axis,
    h_next: &[F],
) -> Result<BandMatrix<F>> {
    let raw = sys.weighted_block(n, n + 1, Some(axis))?;
    let mut a = BandMatrix::dense(n + 1, n + 2);
    for (m, row) in raw.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            a.set(m, j, v / h_next[j].clone())?;
        }
    }
    Ok(a)
}

/// The relation matrices as dense matrices computed from the moment
/// functional alone:
///
/// ```text
/// A_{n,i} = <w, t_i P_n P_{n+1}^t> H_{n+1}^{-1}
/// B_{n,i} = <w, t_i P_n P_n^t> H_n^{-1}
/// C_{n,i} = H_n A_{n-1,i}^t H_{n-1}^{-1}
/// ```
pub fn ttr_from_gram<F: Field>(sys: &BivariateSystem<F>, n: usize) -> Result<TTRSet<F>> {
    let h_n = gram_diagonal(sys, n)?;
    let h_next = gram_diagonal(sys, n + 1)?;
    let mut out = TTRSet {
        n,
        a1: gram_a(sys, n, Axis::X, &h_next)?,
        a2: gram_a(sys, n, Axis::Y, &h_next)?,
        b1: BandMatrix::dense(n + 1, n + 1),
        b2: BandMatrix::dense(n + 1, n + 1),
        c1: BandMatrix::dense(n + 1, n),
        c2: BandMatrix::dense(n + 1, n),
    };
    for (axis, bid) in [(Axis::X, MatrixId::B1), (Axis::Y, MatrixId::B2)] {
        let raw = sys.weighted_block(n, n, Some(axis))?;
        let b = out.get_mut(bid);
        for (m, row) in raw.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                b.set(m, j, v / h_n[j].clone())?;
            }
        }
    }
    if n >= 1 {
        let h_prev = gram_diagonal(sys, n - 1)?;
        for (axis, cid) in [(Axis::X, MatrixId::C1), (Axis::Y, MatrixId::C2)] {
            let a_prev = gram_a(sys, n - 1, axis, &h_n)?;
            let c = out.get_mut(cid);
            for m in 0..=n {
                for j in 0..n {
                    let v = h_n[m].clone() * a_prev.get(j, m) / h_prev[j].clone();
                    c.set(m, j, v)?;
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCondition {
    pub name: String,
    pub rank: usize,
    pub expected: usize,
}

impl RankCondition {
    pub fn holds(&self) -> bool {
        self.rank == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub n: usize,
    pub conditions: Vec<RankCondition>,
}

impl RankReport {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(RankCondition::holds)
    }
}

fn rows_of(m: &BandMatrix<Rational>) -> Vec<Vec<Rational>> {
    m.to_dense()
}

fn transpose(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Exact rank checks at degree `n`:
/// `rank A_{n,i} = rank C_{n+1,i} = n + 1` and
/// `rank [A_{n,1}; A_{n,2}] = rank [C_{n+1,1}, C_{n+1,2}]^t = n + 2`.
/// Floating systems are rejected.
pub fn rank_conditions<F: Field>(sys: &BivariateSystem<F>, n: usize) -> Result<RankReport> {
    if F::MODE != Mode::Exact {
        return Err(Error::ExactRequired("rank_conditions"));
    }
    let to_exact = |m: BandMatrix<F>| -> Result<BandMatrix<Rational>> {
        let mut out = BandMatrix::dense(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.set(r, c, Rational::try_from_scalar(&m.get(r, c).to_scalar())?)?;
            }
        }
        Ok(out)
    };
    let now = theorem_ttr(sys, n)?;
    let next = theorem_ttr(sys, n + 1)?;
    let a1 = rows_of(&to_exact(now.a1)?);
    let a2 = rows_of(&to_exact(now.a2)?);
    let c1 = rows_of(&to_exact(next.c1)?);
    let c2 = rows_of(&to_exact(next.c2)?);
    let joint_a: Vec<_> = a1.iter().chain(a2.iter()).cloned().collect();
    let joint_c_t: Vec<_> = transpose(&c1, n + 1)
        .into_iter()
        .chain(transpose(&c2, n + 1))
        .collect();
    let cond = |name: String, m: &[Vec<Rational>], expected: usize| RankCondition {
        name,
        rank: rank_rational(m),
        expected,
    };
    Ok(RankReport {
        n,
        conditions: vec![
            cond(format!("rank A_({n},1)"), &a1, n + 1),
            cond(format!("rank A_({n},2)"), &a2, n + 1),
            cond(format!("rank C_({},1)", n + 1), &c1, n + 1),
            cond(format!("rank C_({},2)", n + 1), &c2, n + 1),
            cond(format!("rank A_{n} (joint)"), &joint_a, n + 2),
            cond(format!("rank C_{}^t (joint)", n + 1), &joint_c_t, n + 2),
        ],
    })
}
