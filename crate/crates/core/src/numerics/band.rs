use super::field::Field;
use crate::error::{Error, Result};

/// Rectangular matrix with entries confined to a band around the main
/// diagonal: entry `(r, c)` may be nonzero only when
/// `-lower <= c - r <= upper`. Storage is indexed by row and offset.
#[derive(Debug, Clone, PartialEq)]
pub struct BandMatrix<F> {
    rows: usize,
    cols: usize,
    lower: usize,
    upper: usize,
    data: Vec<F>,
}

impl<F: Field> BandMatrix<F> {
    pub fn new(rows: usize, cols: usize, lower: usize, upper: usize) -> Self {
        // Clamping the band to the shape turns an over-wide band into plain
        // dense storage.
        let lower = lower.min(rows.saturating_sub(1));
        let upper = upper.min(cols.saturating_sub(1));
        let width = lower + upper + 1;
        BandMatrix {
            rows,
            cols,
            lower,
            upper,
            data: vec![F::zero(); rows * width],
        }
    }

    pub fn dense(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, rows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn lower_bandwidth(&self) -> usize {
        self.lower
    }

    pub fn upper_bandwidth(&self) -> usize {
        self.upper
    }

    pub fn in_band(&self, row: usize, col: usize) -> bool {
        row < self.rows && col < self.cols && col + self.lower >= row && col <= row + self.upper
    }

    fn slot(&self, row: usize, col: usize) -> usize {
        row * (self.lower + self.upper + 1) + (col + self.lower - row)
    }

    /// Entry at `(row, col)`; exact zero outside the band.
    ///
    /// Panics when the position lies outside the matrix shape.
    pub fn get(&self, row: usize, col: usize) -> F {
        assert!(
            row < self.rows && col < self.cols,
            "({row}, {col}) outside {}x{} matrix",
            self.rows,
            self.cols
        );
        if self.in_band(row, col) {
            self.data[self.slot(row, col)].clone()
        } else {
            F::zero()
        }
    }

    pub fn set(&mut self, row: usize, col: usize, value: F) -> Result<()> {
        if !self.in_band(row, col) {
            return Err(Error::OutsideBand {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let slot = self.slot(row, col);
        self.data[slot] = value;
        Ok(())
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c)).collect())
            .collect()
    }

    /// Positions with a nonzero entry, in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, F)> + '_ {
        (0..self.rows).flat_map(move |r| {
            let lo = r.saturating_sub(self.lower);
            let hi = (r + self.upper + 1).min(self.cols);
            (lo..hi).filter_map(move |c| {
                let v = self.get(r, c);
                (!v.is_zero()).then_some((r, c, v))
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }
}
