//! Brownian exit times from the disc (generator Delta, so steps have
//! variance 2 dt per axis) compared with the torsion function.

use torsion::domain::Domain;
use torsion::grid::discretize;
use torsion::mc::mc_exit_time;
use torsion::spectral::solve_torsion;

fn main() -> torsion::Result<()> {
    let disc = Domain::unit_ball(2)?;
    let u = solve_torsion(&discretize(&disc, 1.0 / 128.0)?, None)?;
    for x0 in [[0.0, 0.0], [0.5, 0.0], [0.3, -0.4], [0.0, 0.8]] {
        let e = mc_exit_time(&disc, &x0, 20_000, 1e-4, 1)?;
        let pde = u.interpolate(&x0);
        println!(
            "x0 = {x0:?}: {:.4} +- {:.4}   torsion {pde:.4}   z = {:+.2}",
            e.mean_exit,
            e.stderr,
            (e.mean_exit - pde) / e.stderr
        );
    }
    Ok(())
}
