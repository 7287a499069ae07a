//! Discrete Dirichlet operators `-Delta_h + V`, torsion functions, ground
//! state energies and the ratio `q = E_0 * |u_D|_inf`.
//!
//! The discrete resolvent of `-Delta_h + V` (with `V >= 0`) is an M-matrix
//! inverse and hence positivity preserving, so `|H^{-1}|_{inf->inf}` equals
//! the sup norm of the torsion function `H^{-1} 1`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bounds::torsion_constant;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::grid::{discretize, Grid, GridField};
use crate::linalg::{cg_solve, smallest_eig, SparseMatrix};
use crate::potential::Potential;

/// Relative residual for torsion solves.
pub const TORSION_TOL: f64 = 1e-10;
/// Relative eigen-residual for ground state computations.
pub const EIG_TOL: f64 = 1e-9;
const EIG_MAX_ITER: usize = 2000;

/// Standard `(2d+1)`-point discrete `-Delta` with the Dirichlet mask, plus
/// the potential on the diagonal.
pub fn build_operator(grid: &Grid, potential: Option<&GridField>) -> Result<SparseMatrix> {
    let n = grid.n_interior();
    let d = grid.dim();
    if let Some(v) = potential {
        if v.values().len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.values().len() });
        }
        if let Some((node, &value)) = v.values().iter().enumerate().find(|(_, x)| !(**x >= 0.0)) {
            return Err(Error::NegativePotential { node, value });
        }
    }
    let inv_h2 = 1.0 / (grid.h() * grid.h());
    let mut row_offsets = Vec::with_capacity(n + 1);
    let mut col_indices = Vec::with_capacity(n * (2 * d + 1));
    let mut values = Vec::with_capacity(n * (2 * d + 1));
    row_offsets.push(0);
    let mut row: Vec<(usize, f64)> = Vec::with_capacity(2 * d + 1);
    for i in 0..n {
        row.clear();
        let diag = 2.0 * d as f64 * inv_h2 + potential.map_or(0.0, |v| v.values()[i]);
        row.push((i, diag));
        for axis in 0..d {
            for forward in [false, true] {
                if let Some(j) = grid.neighbor(i, axis, forward) {
                    row.push((j, -inv_h2));
                }
            }
        }
        row.sort_by_key(|&(c, _)| c);
        for &(c, v) in &row {
            col_indices.push(c);
            values.push(v);
        }
        row_offsets.push(col_indices.len());
    }
    SparseMatrix::from_csr(n, row_offsets, col_indices, values)
}

/// Torsion function `u = (-Delta_h + V)^{-1} 1`.
pub fn solve_torsion(grid: &Arc<Grid>, potential: Option<&GridField>) -> Result<GridField> {
    let op = build_operator(grid, potential)?;
    torsion_from_operator(grid, &op)
}

fn torsion_from_operator(grid: &Arc<Grid>, op: &SparseMatrix) -> Result<GridField> {
    let n = op.n();
    let u = cg_solve(op, &vec![1.0; n], TORSION_TOL, 20 * n + 1000)
        .map_err(|e| e.context("torsion solve"))?;
    GridField::new(grid.clone(), u)
}

/// Ground state energy `E_0` of the discrete operator.
pub fn ground_state_energy(op: &SparseMatrix) -> Result<f64> {
    let r = smallest_eig(op, EIG_TOL, EIG_MAX_ITER).map_err(|e| e.context("ground state"))?;
    Ok(r.lambda_min)
}

/// `(2^order * fine - coarse) / (2^order - 1)` for spacings `2h` and `h`.
pub fn richardson(coarse: f64, fine: f64, order: u32) -> f64 {
    let f = 2f64.powi(order as i32);
    (f * fine - coarse) / (f - 1.0)
}

/// Raw discrete values at one spacing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelResult {
    pub h: f64,
    pub n_interior: usize,
    pub e0: f64,
    pub torsion_sup: f64,
    pub q: f64,
}

/// Discrete `E_0`, `|u|_inf` and `q` of `domain` at spacing `h`.
pub fn q_level(domain: &Domain, h: f64, potential: Option<&Potential>) -> Result<LevelResult> {
    let grid = discretize(domain, h)?;
    let v = potential.map(|p| p.sample(&grid)).transpose()?;
    let op = build_operator(&grid, v.as_ref())?;
    let u = torsion_from_operator(&grid, &op)?;
    let e0 = ground_state_energy(&op)?;
    if !(e0 > 0.0) {
        return Err(Error::InvalidArgument(format!("ground state energy {e0} is not positive")));
    }
    let torsion_sup = u.sup_norm();
    Ok(LevelResult { h, n_interior: grid.n_interior(), e0, torsion_sup, q: e0 * torsion_sup })
}

/// Result of a two-level `q` computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QReport {
    pub d: usize,
    pub e0: f64,
    pub torsion_sup: f64,
    /// `e0 * torsion_sup`.
    pub q: f64,
    /// Spacings used, coarse to fine.
    pub h_sequence: Vec<f64>,
    pub extrapolated: bool,
    pub order: u32,
    /// `d/8 + c sqrt(d) + 1`.
    pub bound_cd: f64,
    /// `bound_cd - q`.
    pub margin: f64,
    /// Raw values per level, coarse to fine.
    pub levels: Vec<LevelResult>,
}

impl QReport {
    pub const CSV_HEADER: &'static str = "d,h,e0,torsion_sup,q,extrapolated,bound_cd,margin";

    /// One CSV row matching [`Self::CSV_HEADER`]; `h` is the finest spacing.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.d,
            self.h_sequence.last().copied().unwrap_or(f64::NAN),
            self.e0,
            self.torsion_sup,
            self.q,
            self.extrapolated,
            self.bound_cd,
            self.margin
        )
    }

    /// `1 - tol <= q <= C_d`.
    pub fn within_bounds(&self, lower_tol: f64) -> bool {
        self.q >= 1.0 - lower_tol && self.q <= self.bound_cd
    }
}

/// [`q_ratio`] with first-order extrapolation.
pub fn q_ratio(domain: &Domain, h_finest: f64, potential: Option<&Potential>) -> Result<QReport> {
    q_ratio_with_order(domain, h_finest, potential, 1)
}

/// Computes `q` at spacings `2h` and `h` and Richardson-extrapolates `E_0`
/// and `|u|_inf` separately with the given order; `q` is their product.
///
/// When the pair of levels is not in the asymptotic regime (see
/// [`refinement_is_regular`]) no extrapolation is done, `extrapolated` is
/// false and the finest raw values are reported.
pub fn q_ratio_with_order(
    domain: &Domain,
    h_finest: f64,
    potential: Option<&Potential>,
    order: u32,
) -> Result<QReport> {
    if order == 0 {
        return Err(Error::InvalidArgument("Richardson order must be at least 1".into()));
    }
    let coarse = q_level(domain, 2.0 * h_finest, potential)?;
    let fine = q_level(domain, h_finest, potential)?;
    let d = domain.dim();
    let bound_cd = torsion_constant(d);
    let (e0, torsion_sup, extrapolated) = if refinement_is_regular(&coarse, &fine) {
        (
            richardson(coarse.e0, fine.e0, order),
            richardson(coarse.torsion_sup, fine.torsion_sup, order),
            true,
        )
    } else {
        (fine.e0, fine.torsion_sup, false)
    };
    let q = e0 * torsion_sup;
    Ok(QReport {
        d,
        e0,
        torsion_sup,
        q,
        h_sequence: vec![coarse.h, fine.h],
        extrapolated,
        order,
        bound_cd,
        margin: bound_cd - q,
        levels: vec![coarse, fine],
    })
}

/// Largest relative change of `E_0` or `|u|_inf` between the two levels for
/// which extrapolation is trusted.
pub const MAX_LEVEL_CHANGE: f64 = 0.25;

/// True when both quantities change by at most [`MAX_LEVEL_CHANGE`]
/// (relative) between spacings `2h` and `h` and their first-order
/// extrapolations stay positive.
pub fn refinement_is_regular(coarse: &LevelResult, fine: &LevelResult) -> bool {
    let ok = |c: f64, f: f64| (f - c).abs() <= MAX_LEVEL_CHANGE * f.abs() && richardson(c, f, 1) > 0.0;
    ok(coarse.e0, fine.e0) && ok(coarse.torsion_sup, fine.torsion_sup)
}
