//! q = E0 * |u|_inf with two-level extrapolation.
//!
//!     cargo run --release --example q_ratio
//!     cargo run --release --example q_ratio -- examples/data/l_shape.json 0.0078125

use torsion::domain::Domain;
use torsion::spectral::q_ratio;

fn report(name: &str, domain: &Domain, h: f64) -> torsion::Result<()> {
    let r = q_ratio(domain, h, None)?;
    let raw: Vec<String> = r.levels.iter().map(|l| format!("h={:.5}: {:.5}", l.h, l.q)).collect();
    println!("{name:<10} q = {:.5}  C_d = {:.4}  [{}]", r.q, r.bound_cd, raw.join(", "));
    Ok(())
}

fn main() -> torsion::Result<()> {
    let mut args = std::env::args().skip(1);
    if let Some(path) = args.next() {
        let text = std::fs::read_to_string(&path).expect("readable domain file");
        let h = args.next().and_then(|s| s.parse().ok()).unwrap_or(1.0 / 64.0);
        return report(&path, &Domain::from_json(&text)?, h);
    }
    report("interval", &Domain::interval(-1.0, 1.0)?, 1.0 / 128.0)?;
    report("disc", &Domain::unit_ball(2)?, 1.0 / 128.0)?;
    report("triangle", &Domain::equilateral_triangle(1.0)?, 1.0 / 256.0)?;
    report("square", &Domain::cuboid(vec![0.0, 0.0], vec![1.0, 1.0])?, 1.0 / 128.0)
}
