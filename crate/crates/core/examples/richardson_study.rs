// Convergence of raw and extrapolated q on the disc as h halves.

use torsion::analytic::ball_data;
use torsion::domain::Domain;
use torsion::spectral::{q_level, richardson};

fn main() -> torsion::Result<()> {
    let disc = Domain::unit_ball(2)?;
    let exact = ball_data(2)?.q;
    let mut prev = None;
    println!("{:>8} {:>10} {:>10} {:>12}", "1/h", "raw q", "extrap q", "extrap err");
    for n in [16, 32, 64, 128] {
        let l = q_level(&disc, 1.0 / n as f64, None)?;
        match prev {
            None => println!("{n:>8} {:>10.6}", l.q),
            Some((e0, u)) => {
                let q = richardson(e0, l.e0, 1) * richardson(u, l.torsion_sup, 1);
                println!("{n:>8} {:>10.6} {:>10.6} {:>12.2e}", l.q, q, q - exact);
            }
        }
        prev = Some((l.e0, l.torsion_sup));
    }
    Ok(())
}
