//! Closed-form q for unit balls next to the universal upper bound C_d.
//!
//!     cargo run --example ball_table -- 12

use torsion::analytic::ball_data;
use torsion::bounds::torsion_constant;

fn main() {
    let d_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    println!("{:>3} {:>12} {:>10} {:>8} {:>8} {:>7}", "d", "j_(d/2-1),1", "E0", "q_d", "C_d", "C/q");
    for d in 1..=d_max {
        let b = ball_data(d).expect("d in 1..=100");
        let c = torsion_constant(d);
        println!("{d:>3} {:>12.8} {:>10.4} {:>8.4} {:>8.4} {:>7.4}", b.j_nu_1, b.e0, b.q, c, c / b.q);
    }
}
