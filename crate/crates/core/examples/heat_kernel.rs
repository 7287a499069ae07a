//! Discrete Dirichlet heat kernel on (0,1) against the free Gaussian.

use torsion::analytic::free_heat_kernel;
use torsion::domain::Domain;
use torsion::grid::discretize;
use torsion::semigroup::{check_domination, heat_kernel_column};

fn main() -> torsion::Result<()> {
    let interval = Domain::interval(0.0, 1.0)?;
    let grid = discretize(&interval, 1.0 / 200.0)?;
    let y = grid.nearest_node(&[0.5]).unwrap();
    let t = 0.02;
    let col = heat_kernel_column(&grid, None, t, y)?;
    for x in [0.5, 0.6, 0.7, 0.8, 0.9] {
        let p = col.interpolate(&[x]);
        let k = free_heat_kernel(1, t, (x - 0.5f64).abs());
        println!("x = {x}: p_t = {p:.6}, k_t = {k:.6}, ratio {:.4}", p / k);
    }
    for t in [0.01, 0.05, 0.2] {
        let r = check_domination(&grid, None, t, 21)?;
        println!("t = {t}: max p_t/k_t = {:.6} at x = {:.3}, y = {:.3}", r.max_ratio, r.x[0], r.y[0]);
    }
    Ok(())
}
