//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test --test acceptance`; tolerances and time limits are
//! fixed below.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use torsion::analytic::{ball_data, free_heat_mass};
use torsion::bounds::{
    aim_grid, check_aim, check_free_heat_weighted, free_heat_linf_envelope, optimize_epsilon_main,
    torsion_constant, verification_suite, SuiteOptions, TorsionProofConstants,
};
use torsion::cli::{ball_table, cmd_ball_table, fmt4, Format};
use torsion::domain::Domain;
use torsion::grid::{discretize, GridField};
use torsion::mc::mc_exit_time;
use torsion::potential::Potential;
use torsion::semigroup::{check_domination, evolve_ones_sampled, growth_vs_bound};
use torsion::spectral::{q_ratio, solve_torsion, QReport};
use torsion::bounds::GaussianBoundParams;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn left_half_potential() -> Potential {
    Potential::BoxIndicator { lo: vec![0.0, 0.0], hi: vec![0.5, 1.0], value: 10.0 }
}

fn unit_square() -> Domain {
    Domain::cuboid(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap()
}

fn ball_table_reproduction() -> Outcome {
    let q_published = ["1.2337", "1.4458", "1.6449", "1.8352", "2.0191"];
    let c_published = ["1.7305", "2.1063", "2.4238", "2.7110", "2.9790"];
    let rows = ball_table(5).unwrap();
    let out = cmd_ball_table(5, Format::Csv).unwrap();
    let mut worst = 0.0f64;
    let mut ok = out.pass;
    for (r, (q, c)) in rows.iter().zip(q_published.iter().zip(c_published)) {
        worst = worst.max((r.q - q.parse::<f64>().unwrap()).abs()).max((r.c - c.parse::<f64>().unwrap()).abs());
        ok &= fmt4(r.q) == *q && fmt4(r.c) == c;
    }
    ok &= worst <= 5e-5;
    outcome(ok, format!("max |value - table| = {worst:.2e}, printed decimals match = {ok}"))
}

fn fd_vs_closed_form() -> Outcome {
    let cases = [(1usize, 1.0 / 128.0), (2, 1.0 / 128.0), (3, 1.0 / 48.0)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (d, h) in cases {
        let r = q_ratio(&Domain::unit_ball(d).unwrap(), h, None).unwrap();
        let exact = ball_data(d).unwrap().q;
        let rel = (r.q - exact).abs() / exact;
        ok &= rel <= 0.01 && r.extrapolated;
        parts.push(format!("d={d}: q={:.5} vs {:.5} (rel {:.1e})", r.q, exact, rel));
    }
    outcome(ok, parts.join("; "))
}

fn triangle() -> Outcome {
    let r = q_ratio(&Domain::equilateral_triangle(1.0).unwrap(), 1.0 / 256.0, None).unwrap();
    let rel = (r.q - 1.462).abs() / 1.462;
    outcome(
        rel <= 0.01 && r.q > 1.4458,
        format!("q = {:.5}, rel dev from 1.462 = {rel:.1e}, exceeds disc 1.4458: {}", r.q, r.q > 1.4458),
    )
}

fn universal_bounds() -> Outcome {
    let l_shape = Domain::polygon(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 0.5], [0.5, 0.5], [0.5, 1.0], [0.0, 1.0]]).unwrap();
    let corpus: Vec<(&str, Domain, f64, Option<Potential>)> = vec![
        ("interval", Domain::interval(0.0, 1.0).unwrap(), 1.0 / 128.0, None),
        ("square", unit_square(), 1.0 / 128.0, None),
        ("L-shape", l_shape, 1.0 / 128.0, None),
        ("disc", Domain::unit_ball(2).unwrap(), 1.0 / 128.0, None),
        ("3-ball", Domain::unit_ball(3).unwrap(), 1.0 / 32.0, None),
        ("slab", Domain::cuboid(vec![0.0, 0.0, 0.0], vec![0.2, 1.0, 1.0]).unwrap(), 1.0 / 80.0, None),
        ("square+V", unit_square(), 1.0 / 128.0, Some(left_half_potential())),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, domain, h, v) in corpus {
        let r: QReport = q_ratio(&domain, h, v.as_ref()).unwrap();
        let inside = r.q >= 1.0 - 0.005 && r.q <= torsion_constant(r.d);
        ok &= inside;
        parts.push(format!("{name} {:.4}<={:.4}{}", r.q, r.bound_cd, if inside { "" } else { " FAIL" }));
    }
    outcome(ok, parts.join(", "))
}

fn inequality_suite() -> Outcome {
    let verdicts = verification_suite(&SuiteOptions::default()).unwrap();
    let failed: Vec<&str> = verdicts.iter().filter(|v| !v.pass).map(|v| v.name.as_str()).collect();
    let k = TorsionProofConstants::get();
    let s1 = ((4.0 * 0.14f64).exp() - 1.0) / 0.14;
    let s2 = 1.0 / (k.tau * 0.14);
    let envelope = aim_grid().len() == 500
        && aim_grid().iter().all(|&x| check_aim(x, optimize_epsilon_main(x)) >= 0.0);
    let ok = failed.is_empty() && s1 < 5.4 && s2 < 5.56 && envelope;
    outcome(
        ok,
        format!("{} verdicts, failed {failed:?}; (e^0.56-1)/0.14 = {s1:.4} < 5.4, 1/(0.14 tau) = {s2:.4} < 5.56", verdicts.len()),
    )
}

fn weighted_sharpness() -> Outcome {
    let mut worst = 0.0f64;
    for d in 1..=50 {
        for t in [0.05, 1.0, 7.0] {
            worst = worst.max((free_heat_linf_envelope(d, t).unwrap() - 2f64.powf(0.25)).abs());
        }
    }
    let mut mass_dev = 0.0f64;
    for d in 1..=3 {
        for t in [0.01f64, 0.5] {
            mass_dev = mass_dev.max((free_heat_mass(d, t, t.sqrt() / 10.0) - 1.0).abs());
        }
    }
    let w = check_free_heat_weighted(1, 1.0, 1.0, 1.0, 6.0, 0.1).unwrap();
    let ok = worst <= 1e-12 && mass_dev <= 1e-6 && 1.0 + mass_dev <= 2f64.powf(0.25) && w.max_ratio() <= 1.0 + 1e-8;
    outcome(
        ok,
        format!("max |envelope - 2^(1/4)| = {worst:.1e}, |free heat norm - 1| = {mass_dev:.1e}, weighted ratio = {:.6}", w.max_ratio()),
    )
}

fn semigroup_dominance() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let cases: Vec<(&str, Domain, f64, Option<Potential>)> = vec![
        ("interval", Domain::interval(0.0, 1.0).unwrap(), 1.0 / 128.0, None),
        ("interval+V", Domain::interval(0.0, 1.0).unwrap(), 1.0 / 128.0, Some(Potential::BoxIndicator { lo: vec![0.0], hi: vec![0.5], value: 10.0 })),
        ("square", unit_square(), 1.0 / 64.0, None),
        ("square+V", unit_square(), 1.0 / 64.0, Some(left_half_potential())),
    ];
    for (name, domain, h, v) in cases {
        let grid = discretize(&domain, h).unwrap();
        let field: Option<GridField> = v.map(|p| p.sample(&grid).unwrap());
        let e0 = torsion::spectral::ground_state_energy(&torsion::spectral::build_operator(&grid, field.as_ref()).unwrap()).unwrap();
        let r = growth_vs_bound(&grid, field.as_ref(), &GaussianBoundParams::free_heat(domain.dim()), 8.0 / e0).unwrap();
        ok &= r.pass && r.curve.times.len() == 101;
        let last = *r.curve.scaled.last().unwrap();
        let mut part = format!("{name}: margin {:.3} final {:.4}", r.worst_margin, last);
        if name == "interval" {
            let rel = (last - 4.0 / PI).abs() / (4.0 / PI);
            ok &= rel <= 0.01;
            part.push_str(&format!(" (4/pi rel {rel:.1e})"));
        }
        parts.push(part);
    }
    outcome(ok, parts.join("; "))
}

fn gaussian_domination() -> Outcome {
    let domain = Domain::interval(0.0, 1.0).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for t in [0.01, 0.05, 0.2] {
        let mut prev = f64::INFINITY;
        let mut ratios = Vec::new();
        for n in [100usize, 200, 400] {
            let h = 1.0 / n as f64;
            let r = check_domination(&discretize(&domain, h).unwrap(), None, t, 21).unwrap();
            ok &= r.max_ratio <= 1.0 + 3.0 * h && r.max_ratio < prev;
            prev = r.max_ratio;
            ratios.push(format!("{:.6}", r.max_ratio));
        }
        parts.push(format!("t={t}: {}", ratios.join(" > ")));
    }
    outcome(ok, parts.join("; "))
}

fn monte_carlo_exit() -> Outcome {
    let seed = 20261016;
    let cases = [(2usize, 0.25), (3, 1.0 / 6.0)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (d, exact) in cases {
        let domain = Domain::unit_ball(d).unwrap();
        let x0 = vec![0.0; d];
        let a = mc_exit_time(&domain, &x0, 200_000, 1e-4, seed).unwrap();
        let b = mc_exit_time(&domain, &x0, 200_000, 1e-4, seed).unwrap();
        let z = (a.mean_exit - exact).abs() / a.stderr;
        ok &= z <= 3.0 && a == b;
        parts.push(format!("d={d}: {:.5} +- {:.5} (z {:.2}), repeat identical {}", a.mean_exit, a.stderr, z, a == b));
    }
    outcome(ok, parts.join("; "))
}

fn resolvent_identity() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, domain, h) in [
        ("interval", Domain::interval(0.0, 1.0).unwrap(), 1.0 / 128.0),
        ("disc", Domain::unit_ball(2).unwrap(), 1.0 / 64.0),
    ] {
        let grid = discretize(&domain, h).unwrap();
        let u = solve_torsion(&grid, None).unwrap().sup_norm();
        let e0 = torsion::spectral::ground_state_energy(&torsion::spectral::build_operator(&grid, None).unwrap()).unwrap();
        let t_end = 8.0 / e0;
        let curve = evolve_ones_sampled(&grid, None, t_end, t_end / 1000.0, 1).unwrap();
        let integral = curve.time_integral();
        let rel = (integral - u).abs() / u;
        ok &= rel <= 0.02;
        parts.push(format!("{name}: integral {integral:.5} vs |u| {u:.5} (rel {rel:.1e})"));
    }
    outcome(ok, parts.join("; "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 ball table reproduction", Some(Duration::from_secs(1)), ball_table_reproduction),
        ("2 finite differences vs closed form", Some(Duration::from_secs(120)), fd_vs_closed_form),
        ("3 equilateral triangle", None, triangle),
        ("4 universal bounds on corpus", None, universal_bounds),
        ("5 inequality suite", Some(Duration::from_secs(10)), inequality_suite),
        ("6 weighted-estimate sharpness", None, weighted_sharpness),
        ("7 semigroup dominance", Some(Duration::from_secs(120)), semigroup_dominance),
        ("8 Gaussian domination", None, gaussian_domination),
        ("9 Monte Carlo exit times", Some(Duration::from_secs(60)), monte_carlo_exit),
        ("10 resolvent identity", None, resolvent_identity),
    ];
    let mut failures = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = limit.map_or(true, |l| elapsed <= l);
        let pass = o.pass && in_time;
        if !pass {
            failures += 1;
        }
        let limit_text = limit.map_or(String::new(), |l| format!(" / limit {:.0?}", l));
        println!(
            "[{}] {name}: {} ({:.2?}{limit_text}{})",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed,
            if in_time { "" } else { ", over time limit" }
        );
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
