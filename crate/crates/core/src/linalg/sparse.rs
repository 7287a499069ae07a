use rayon::prelude::*;

use crate::error::{Error, Result};

/// Rows per parallel work item in [`SparseMatrix::matvec_into`].
const ROW_CHUNK: usize = 4096;

/// Symmetric sparse matrix in compressed sparse row form.
///
/// Construction verifies symmetry to 1e-14 relative, finiteness of every
/// entry and sorted column indices within each row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    n: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Assembles from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(n: usize, mut triplets: Vec<(usize, usize, f64)>) -> Result<Self> {
        if let Some(&(r, c, _)) = triplets.iter().find(|(r, c, _)| *r >= n || *c >= n) {
            return Err(Error::InvalidArgument(format!("entry ({r}, {c}) outside a {n}x{n} matrix")));
        }
        triplets.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut row_offsets = vec![0usize; n + 1];
        let mut col_indices = Vec::with_capacity(triplets.len());
        let mut values: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                *values.last_mut().expect("duplicate follows an entry") += v;
            } else {
                col_indices.push(c);
                values.push(v);
                row_offsets[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for i in 0..n {
            row_offsets[i + 1] += row_offsets[i];
        }
        Self::from_csr(n, row_offsets, col_indices, values)
    }

    pub fn from_csr(
        n: usize,
        row_offsets: Vec<usize>,
        col_indices: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if row_offsets.len() != n + 1
            || row_offsets[0] != 0
            || row_offsets[n] != col_indices.len()
            || col_indices.len() != values.len()
            || row_offsets.windows(2).any(|w| w[0] > w[1])
        {
            return Err(Error::InvalidArgument("inconsistent CSR arrays".into()));
        }
        let m = SparseMatrix { n, row_offsets, col_indices, values };
        m.validate()?;
        Ok(m)
    }

    /// `n x n` diagonal matrix.
    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        Self::from_csr(n, (0..=n).collect(), (0..n).collect(), diag.to_vec())
    }

    fn validate(&self) -> Result<()> {
        let scale = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for row in 0..self.n {
            let cols = self.row_cols(row);
            if cols.windows(2).any(|w| w[0] >= w[1]) || cols.iter().any(|&c| c >= self.n) {
                return Err(Error::InvalidArgument(format!("row {row} columns unsorted or out of range")));
            }
            for (&col, &v) in cols.iter().zip(self.row_values(row)) {
                if !v.is_finite() {
                    return Err(Error::NonFinite { row, col });
                }
                let diff = (v - self.get(col, row)).abs();
                if diff > 1e-14 * scale {
                    return Err(Error::NotSymmetric { row, col, diff });
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn row_cols(&self, row: usize) -> &[usize] {
        &self.col_indices[self.row_offsets[row]..self.row_offsets[row + 1]]
    }

    fn row_values(&self, row: usize) -> &[f64] {
        &self.values[self.row_offsets[row]..self.row_offsets[row + 1]]
    }

    /// Entry `(row, col)`, zero if not stored.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        let cols = self.row_cols(row);
        match cols.binary_search(&col) {
            Ok(k) => self.row_values(row)[k],
            Err(_) => 0.0,
        }
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// Gershgorin lower bound on the spectrum: `min_i (a_ii - sum_{j != i} |a_ij|)`.
    pub fn gershgorin_lower(&self) -> f64 {
        (0..self.n)
            .map(|i| {
                let mut center = 0.0;
                let mut radius = 0.0;
                for (&c, &v) in self.row_cols(i).iter().zip(self.row_values(i)) {
                    if c == i {
                        center = v;
                    } else {
                        radius += v.abs();
                    }
                }
                center - radius
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// `A + shift * I`.
    pub fn shifted(&self, shift: f64) -> Result<Self> {
        let mut triplets: Vec<(usize, usize, f64)> = Vec::with_capacity(self.nnz() + self.n);
        for row in 0..self.n {
            for (&c, &v) in self.row_cols(row).iter().zip(self.row_values(row)) {
                triplets.push((row, c, v));
            }
            triplets.push((row, row, shift));
        }
        Self::from_triplets(self.n, triplets)
    }

    /// `y = A x`. Each row is reduced in a fixed order, so the result does not
    /// depend on the number of worker threads.
    pub fn matvec_into(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(y.len(), self.n);
        let row = |(i, out): (usize, &mut f64)| {
            let mut s = 0.0;
            for k in self.row_offsets[i]..self.row_offsets[i + 1] {
                s += self.values[k] * x[self.col_indices[k]];
            }
            *out = s;
        };
        if self.n >= 2 * ROW_CHUNK {
            y.par_chunks_mut(ROW_CHUNK).enumerate().for_each(|(chunk, ys)| {
                let base = chunk * ROW_CHUNK;
                ys.iter_mut().enumerate().for_each(|(i, out)| row((base + i, out)));
            });
        } else {
            y.iter_mut().enumerate().for_each(row);
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        self.matvec_into(x, &mut y);
        y
    }
}
