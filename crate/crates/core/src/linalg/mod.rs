//! Sparse symmetric linear algebra: CSR storage, conjugate gradients and
//! inverse power iteration for the smallest eigenvalue.

mod cg;
mod eig;
mod sparse;

pub use cg::{cg_solve, cg_solve_from, CgOutcome};
pub use eig::{smallest_eig, EigResult};
pub use sparse::SparseMatrix;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
