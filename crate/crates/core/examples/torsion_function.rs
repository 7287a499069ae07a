//! Torsion function of the unit disc against (1 - |x|^2)/4, along a diameter.

use torsion::analytic::ball_torsion;
use torsion::domain::Domain;
use torsion::grid::discretize;
use torsion::spectral::solve_torsion;

fn main() -> torsion::Result<()> {
    let disc = Domain::unit_ball(2)?;
    let grid = discretize(&disc, 1.0 / 64.0)?;
    let u = solve_torsion(&grid, None)?;
    println!("{} interior nodes, sup u = {:.6} (exact 0.25)", grid.n_interior(), u.sup_norm());
    println!("{:>6} {:>10} {:>10}", "x", "u_h", "exact");
    for k in -4..=4 {
        let x = [k as f64 * 0.2, 0.0];
        println!("{:>6.2} {:>10.6} {:>10.6}", x[0], u.interpolate(&x), ball_torsion(&x));
    }
    Ok(())
}
