//! Bessel zeros and log-gamma values.

use torsion::analytic::{bessel_first_zero, bessel_j, log_gamma};

fn main() {
    for nu in [-0.5, 0.0, 0.5, 1.0, 2.5, 10.0, 49.0] {
        let j = bessel_first_zero(nu).unwrap();
        let at_zero = bessel_j(nu, j).unwrap();
        println!("nu = {nu:>5}: j_nu,1 = {j:.12}  J_nu(j) = {at_zero:+.1e}");
    }
    for x in [0.5, 1.0, 6.0, 10.5, 100.0] {
        println!("ln Gamma({x}) = {:.15}", log_gamma(x).unwrap());
    }
}
