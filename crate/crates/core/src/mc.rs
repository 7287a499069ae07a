//! Expected Brownian exit times by Monte Carlo.
//!
//! Convention: the generator is `Delta`, not `Delta / 2`, so the process has
//! covariance `2t I` and each step adds `sqrt(2 dt)` times a standard normal
//! per coordinate. With this convention the expected exit time from `D`
//! started at `x` is the torsion function `u_D(x) = (-Delta_D)^{-1} 1 (x)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::Domain;
use crate::error::{Error, Result};

/// Steps after which a single path is abandoned.
pub const PATH_STEP_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExitEstimate {
    pub x0: Vec<f64>,
    pub n_paths: usize,
    pub dt: f64,
    pub mean_exit: f64,
    /// Sample standard deviation over `sqrt(n_paths)`.
    pub stderr: f64,
    pub seed: u64,
    /// Whether the Brownian-bridge crossing test was applied.
    pub bridge_corrected: bool,
}

/// Simulates one path from `x0`; returns its exit time.
///
/// Between two inside positions the path may still have left the domain.
/// Where the domain provides a distance to the boundary `a` and `b` at the
/// two ends, such an excursion is detected with probability
/// `exp(-a b / dt)`, the crossing probability of a Brownian bridge for a
/// half-space at those distances. Exits are credited at the middle of the step.
fn exit_time(domain: &Domain, x0: &[f64], dt: f64, bridge: bool, rng: &mut ChaCha8Rng) -> Result<f64> {
    let sigma = (2.0 * dt).sqrt();
    let mut x = x0.to_vec();
    let mut a = if bridge { domain.boundary_distance(&x) } else { None };
    for k in 1..=PATH_STEP_CAP {
        for xi in x.iter_mut() {
            let z: f64 = rng.sample(StandardNormal);
            *xi += sigma * z;
        }
        let exit_time = (k as f64 - 0.5) * dt;
        if !domain.contains_unchecked(&x) {
            return Ok(exit_time);
        }
        let b = if bridge { domain.boundary_distance(&x) } else { None };
        if let (Some(a), Some(b)) = (a, b) {
            // Below e^{-37} the probability is under the resolution of a uniform draw.
            let s = a * b / dt;
            if s < 37.0 && rng.gen::<f64>() < (-s).exp() {
                return Ok(exit_time);
            }
        }
        a = b;
    }
    Err(Error::PathCapExceeded { cap: PATH_STEP_CAP })
}

/// Mean exit time from `domain` of `n_paths` Brownian paths started at `x0`.
///
/// Path `i` draws from ChaCha8 stream `i` seeded with `seed`, and the sum is
/// taken in path order, so the result does not depend on the thread count.
pub fn mc_exit_time(domain: &Domain, x0: &[f64], n_paths: usize, dt: f64, seed: u64) -> Result<ExitEstimate> {
    mc_exit_time_with(domain, x0, n_paths, dt, seed, true)
}

/// [`mc_exit_time`] with the crossing test switched on or off. Without it an
/// exit is only seen when a step lands outside, which overestimates exit
/// times by `O(sqrt(dt))`.
pub fn mc_exit_time_with(
    domain: &Domain,
    x0: &[f64],
    n_paths: usize,
    dt: f64,
    seed: u64,
    bridge: bool,
) -> Result<ExitEstimate> {
    if !domain.contains(x0)? {
        return Err(Error::InvalidArgument(format!("start point {x0:?} is not inside the domain")));
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidArgument(format!("time step {dt} must be positive")));
    }
    if n_paths < 2 {
        return Err(Error::InvalidArgument("need at least two paths for a standard error".into()));
    }
    let times = (0..n_paths)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            exit_time(domain, x0, dt, bridge, &mut rng)
        })
        .collect::<Result<Vec<f64>>>()?;
    let n = n_paths as f64;
    let mean = times.iter().sum::<f64>() / n;
    let var = times.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / (n - 1.0);
    Ok(ExitEstimate {
        x0: x0.to_vec(),
        n_paths,
        dt,
        mean_exit: mean,
        stderr: (var / n).sqrt(),
        seed,
        bridge_corrected: bridge && domain.boundary_distance(x0).is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_midpoint() {
        let d = Domain::interval(0.0, 1.0).unwrap();
        let e = mc_exit_time(&d, &[0.5], 20_000, 1e-4, 7).unwrap();
        assert!((e.mean_exit - 0.125).abs() < 3.0 * e.stderr, "{e:?}");
        assert!(e.bridge_corrected);
    }

    #[test]
    fn deterministic_and_seed_dependent() {
        let d = Domain::unit_ball(2).unwrap();
        let a = mc_exit_time(&d, &[0.3, 0.1], 500, 1e-3, 11).unwrap();
        let b = mc_exit_time(&d, &[0.3, 0.1], 500, 1e-3, 11).unwrap();
        let c = mc_exit_time(&d, &[0.3, 0.1], 500, 1e-3, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.mean_exit, c.mean_exit);
    }

    #[test]
    fn near_boundary_exits_fast() {
        let d = Domain::interval(0.0, 1.0).unwrap();
        let e = mc_exit_time(&d, &[0.005], 2000, 1e-5, 3).unwrap();
        assert!(e.mean_exit < 0.01);
    }

    #[test]
    fn bad_inputs() {
        let d = Domain::interval(0.0, 1.0).unwrap();
        assert!(mc_exit_time(&d, &[1.5], 10, 1e-3, 0).is_err());
        assert!(mc_exit_time(&d, &[0.5, 0.5], 10, 1e-3, 0).is_err());
        assert!(mc_exit_time(&d, &[0.5], 10, 0.0, 0).is_err());
        assert!(mc_exit_time(&d, &[0.5], 1, 1e-3, 0).is_err());
    }
}
