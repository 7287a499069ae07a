//! e^{E0 t} |e^{-tH} 1|_inf on the square with a barrier in the left half,
//! against the growth bound. Prints CSV.

use torsion::bounds::GaussianBoundParams;
use torsion::domain::Domain;
use torsion::grid::discretize;
use torsion::potential::Potential;
use torsion::semigroup::growth_vs_bound;
use torsion::spectral::{build_operator, ground_state_energy};

fn main() -> torsion::Result<()> {
    let square = Domain::cuboid(vec![0.0, 0.0], vec![1.0, 1.0])?;
    let grid = discretize(&square, 1.0 / 64.0)?;
    let v = Potential::BoxIndicator { lo: vec![0.0, 0.0], hi: vec![0.5, 1.0], value: 10.0 }.sample(&grid)?;
    let e0 = ground_state_energy(&build_operator(&grid, Some(&v))?)?;
    let r = growth_vs_bound(&grid, Some(&v), &GaussianBoundParams::free_heat(2), 8.0 / e0)?;
    print!("{}", r.csv());
    eprintln!("E0 = {e0:.4}, worst relative margin {:.4} at t = {:.4}", r.worst_margin, r.worst_time);
    Ok(())
}
