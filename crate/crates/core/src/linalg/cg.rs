use super::{dot, norm2, SparseMatrix};
use crate::error::{Error, Result};

/// Result of a conjugate-gradient solve.
#[derive(Debug, Clone)]
pub struct CgOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    /// Relative true residual `|b - Ax| / |b|`.
    pub residual: f64,
    /// False when the iteration stopped on `max_iter` or stagnated at the
    /// rounding floor before reaching `tol`.
    pub converged: bool,
}

/// Solves `A x = b` for SPD `A` to relative residual `tol`, starting from zero.
pub fn cg_solve(a: &SparseMatrix, b: &[f64], tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    cg_solve_from(a, b, vec![0.0; b.len()], tol, max_iter).map(|o| o.x)
}

/// Jacobi-preconditioned conjugate gradients from the initial guess `x0`.
///
/// Convergence is declared on the true residual `|b - Ax| <= tol |b|`; the
/// recursive residual is only used to decide when to check it.
pub fn cg_solve_from(
    a: &SparseMatrix,
    b: &[f64],
    x0: Vec<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<CgOutcome> {
    let out = cg_iterate(a, b, x0, tol, max_iter)?;
    if out.converged {
        Ok(out)
    } else {
        Err(Error::CgNoConvergence { iterations: out.iterations, residual: out.residual })
    }
}

/// Like [`cg_solve_from`], but returns the best iterate instead of an error
/// when `tol` is not reached.
pub(crate) fn cg_iterate(
    a: &SparseMatrix,
    b: &[f64],
    x0: Vec<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<CgOutcome> {
    let n = a.n();
    if b.len() != n || x0.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: b.len().min(x0.len()) });
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidArgument(format!("CG tolerance {tol} not in (0, 1)")));
    }
    let b_norm = norm2(b);
    if b_norm == 0.0 {
        return Ok(CgOutcome { x: vec![0.0; n], iterations: 0, residual: 0.0, converged: true });
    }
    let inv_diag: Vec<f64> = a
        .diag()
        .iter()
        .map(|&d| if d > 0.0 { 1.0 / d } else { 1.0 })
        .collect();

    let mut x = x0;
    let mut ax = vec![0.0; n];
    let mut r = vec![0.0; n];
    let mut z = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut ap = vec![0.0; n];

    let true_residual = |x: &[f64], ax: &mut [f64], r: &mut [f64]| {
        a.matvec_into(x, ax);
        for i in 0..n {
            r[i] = b[i] - ax[i];
        }
        norm2(r)
    };

    let mut res = true_residual(&x, &mut ax, &mut r);
    if res <= tol * b_norm {
        return Ok(CgOutcome { x, iterations: 0, residual: res / b_norm, converged: true });
    }
    let mut restart = true;
    let mut last_restart_res = f64::INFINITY;
    let mut rz = 0.0;
    for it in 1..=max_iter {
        if restart {
            for i in 0..n {
                z[i] = inv_diag[i] * r[i];
            }
            p.copy_from_slice(&z);
            rz = dot(&r, &z);
            restart = false;
        }
        a.matvec_into(&p, &mut ap);
        let curvature = dot(&p, &ap);
        if curvature <= 0.0 || !curvature.is_finite() {
            return Err(Error::Indefinite { iteration: it });
        }
        let alpha = rz / curvature;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        if norm2(&r) <= tol * b_norm {
            res = true_residual(&x, &mut ax, &mut r);
            if res <= tol * b_norm {
                return Ok(CgOutcome { x, iterations: it, residual: res / b_norm, converged: true });
            }
            // Recursive residual drifted from the true one; restart from it,
            // unless the previous restart did not buy at least a factor of two.
            if res > 0.5 * last_restart_res {
                return Ok(CgOutcome { x, iterations: it, residual: res / b_norm, converged: false });
            }
            last_restart_res = res;
            restart = true;
            continue;
        }
        for i in 0..n {
            z[i] = inv_diag[i] * r[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    let res = true_residual(&x, &mut ax, &mut r);
    Ok(CgOutcome { x, iterations: max_iter, residual: res / b_norm, converged: res <= tol * b_norm })
}
