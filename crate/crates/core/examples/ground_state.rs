//! Smallest Dirichlet eigenvalue on a few domains, and its growth under
//! shrinking the domain.

use std::f64::consts::PI;

use torsion::domain::Domain;
use torsion::grid::discretize;
use torsion::linalg::smallest_eig;
use torsion::spectral::build_operator;

fn e0(domain: &Domain, h: f64) -> torsion::Result<f64> {
    let grid = discretize(domain, h)?;
    let a = build_operator(&grid, None)?;
    Ok(smallest_eig(&a, 1e-10, 1000)?.lambda_min)
}

fn main() -> torsion::Result<()> {
    let h = 1.0 / 64.0;
    println!("interval (0,1): {:.6}  (pi^2 = {:.6})", e0(&Domain::interval(0.0, 1.0)?, h)?, PI * PI);
    println!("unit square:    {:.6}  (2 pi^2 = {:.6})", e0(&Domain::cuboid(vec![0.0, 0.0], vec![1.0, 1.0])?, h)?, 2.0 * PI * PI);
    for w in [1.0, 0.75, 0.5] {
        let rect = Domain::cuboid(vec![0.0, 0.0], vec![w, 1.0])?;
        println!("rectangle {w} x 1: {:.4}", e0(&rect, h)?);
    }
    Ok(())
}
