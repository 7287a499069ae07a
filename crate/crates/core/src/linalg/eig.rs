use super::cg::cg_iterate;
use super::{dot, norm2, SparseMatrix};
use crate::error::{Error, Result};

/// Smallest eigenpair of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct EigResult {
    pub lambda_min: f64,
    /// Unit 2-norm, first significant component positive.
    pub eigvec: Vec<f64>,
    /// `|A v - lambda v|_2`.
    pub residual: f64,
    pub iterations: usize,
}

/// Smallest eigenvalue by inverse power iteration with CG inner solves.
///
/// The iteration runs on `A - sigma I`, where `sigma = 0` when the Gershgorin
/// lower bound is nonnegative and `sigma = 2 * gershgorin` otherwise, so the
/// shifted matrix is positive definite. Convergence is declared when
/// `|A v - lambda v| <= tol * |lambda|` with `lambda` the Rayleigh quotient.
///
/// The start vector is all ones. If that vector is itself an eigenvector the
/// iteration cannot leave it, so a second run starts from `e_1` projected
/// orthogonally to it and the smaller of the two eigenvalues is returned.
pub fn smallest_eig(a: &SparseMatrix, tol: f64, max_iter: usize) -> Result<EigResult> {
    let n = a.n();
    if n == 0 {
        return Err(Error::InvalidArgument("eigenproblem of order 0".into()));
    }
    let gersh = a.gershgorin_lower();
    let sigma = if gersh >= 0.0 { 0.0 } else { 2.0 * gersh };
    let shifted;
    let b = if sigma == 0.0 {
        a
    } else {
        shifted = a.shifted(-sigma)?;
        &shifted
    };

    let ones = vec![1.0 / (n as f64).sqrt(); n];
    let av = a.matvec(&ones);
    let mu = dot(&ones, &av);
    let ones_residual = av.iter().zip(&ones).map(|(p, q)| (p - mu * q).powi(2)).sum::<f64>().sqrt();
    let ones_is_eigvec = ones_residual <= 1e-12 * av.iter().fold(1e-300f64, |m, x| m.max(x.abs()));
    if !ones_is_eigvec || n == 1 {
        return inverse_iteration(a, b, sigma, ones, tol, max_iter);
    }
    let mut start = ones.iter().map(|x| -x * ones[0]).collect::<Vec<_>>();
    start[0] += 1.0;
    let norm = norm2(&start);
    start.iter_mut().for_each(|x| *x /= norm);
    let other = inverse_iteration(a, b, sigma, start, tol, max_iter)?;
    if other.lambda_min < mu {
        Ok(other)
    } else {
        let mut eigvec = ones;
        normalize_sign(&mut eigvec);
        Ok(EigResult { lambda_min: mu, eigvec, residual: ones_residual, iterations: 0 })
    }
}

fn inverse_iteration(
    a: &SparseMatrix,
    b: &SparseMatrix,
    sigma: f64,
    mut v: Vec<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<EigResult> {
    let n = a.n();
    let inner_tol = (tol * 1e-2).clamp(1e-13, 1e-2);
    let inner_max = 20 * n + 1000;
    let mut lambda = f64::NAN;
    let mut residual = f64::INFINITY;
    let mut av = vec![0.0; n];
    for it in 1..=max_iter {
        let guess = if lambda.is_finite() && lambda - sigma > 0.0 {
            v.iter().map(|x| x / (lambda - sigma)).collect()
        } else {
            vec![0.0; n]
        };
        let solve = cg_iterate(b, &v, guess, inner_tol, inner_max)
            .map_err(|e| e.context("inverse iteration inner solve"))?;
        // Inverse iteration tolerates inexact solves; only a gross failure stops it.
        if !solve.converged && solve.residual > 1e-6 {
            return Err(Error::CgNoConvergence { iterations: solve.iterations, residual: solve.residual }
                .context("inverse iteration inner solve"));
        }
        let y = solve.x;
        let norm = norm2(&y);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::EigNoConvergence { iterations: it, residual });
        }
        v = y.into_iter().map(|x| x / norm).collect();
        a.matvec_into(&v, &mut av);
        lambda = dot(&v, &av);
        residual = av.iter().zip(&v).map(|(p, q)| (p - lambda * q).powi(2)).sum::<f64>().sqrt();
        let scale = if lambda != 0.0 { lambda.abs() } else { 1.0 };
        if residual <= tol * scale {
            normalize_sign(&mut v);
            return Ok(EigResult { lambda_min: lambda, eigvec: v, residual, iterations: it });
        }
    }
    Err(Error::EigNoConvergence { iterations: max_iter, residual })
}

fn normalize_sign(v: &mut [f64]) {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-12 * max) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn laplacian_1d(n: usize) -> (SparseMatrix, f64) {
        let h = 1.0 / (n as f64 + 1.0);
        let c = 1.0 / (h * h);
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 2.0 * c));
            if i + 1 < n {
                t.push((i, i + 1, -c));
                t.push((i + 1, i, -c));
            }
        }
        (SparseMatrix::from_triplets(n, t).unwrap(), h)
    }

    #[test]
    fn diagonal_smallest() {
        let a = SparseMatrix::diagonal(&[3.0, 1.0, 2.0]).unwrap();
        let r = smallest_eig(&a, 1e-10, 200).unwrap();
        assert!((r.lambda_min - 1.0).abs() < 1e-10);
        assert!(r.eigvec[1] > 0.999);
    }

    #[test]
    fn tridiagonal_closed_form() {
        for n in [7usize, 31, 127] {
            let (a, h) = laplacian_1d(n);
            let exact = 4.0 / (h * h) * (PI * h / 2.0).sin().powi(2);
            let r = smallest_eig(&a, 1e-10, 500).unwrap();
            assert!((r.lambda_min - exact).abs() <= 1e-9 * exact, "n={n}");
            assert!(r.residual <= 1e-10 * r.lambda_min);
            assert!(r.eigvec.iter().all(|&x| x > 0.0), "ground state changes sign");
        }
        let (a, _) = laplacian_1d(1023);
        let r = smallest_eig(&a, 1e-9, 500).unwrap();
        assert!((r.lambda_min - PI * PI).abs() < 1e-4);
    }

    #[test]
    fn indefinite_matrix_uses_shift() {
        let a = SparseMatrix::from_triplets(
            2,
            vec![(0, 0, 0.0), (0, 1, 2.0), (1, 0, 2.0), (1, 1, 0.0)],
        )
        .unwrap();
        let r = smallest_eig(&a, 1e-10, 200).unwrap();
        assert!((r.lambda_min + 2.0).abs() < 1e-9);
        assert!(r.eigvec[0] > 0.0 && r.eigvec[1] < 0.0);
    }

    #[test]
    fn empty_matrix_is_an_error() {
        let a = SparseMatrix::diagonal(&[]).unwrap();
        assert!(smallest_eig(&a, 1e-8, 10).is_err());
    }
}
