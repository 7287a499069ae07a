//! Time evolution `u' = -(-Delta_h + V) u` on a grid: sup-norm curves of
//! `e^{-tH} 1`, discrete heat kernels and comparisons with the free Gaussian.
//!
//! Time stepping is Crank–Nicolson started with four backward-Euler half
//! steps (Rannacher), so nonsmooth data such as `1` or a discrete delta do
//! not leave undamped stiff modes. Both schemes share the matrix
//! `I + (dt/2) A`.

use std::sync::Arc;

use serde::Serialize;

use crate::analytic::free_heat_kernel;
use crate::bounds::{thm_main_bound, GaussianBoundParams};
use crate::error::{Error, Result};
use crate::grid::{Grid, GridField};
use crate::linalg::{cg_solve_from, SparseMatrix};
use crate::spectral::{build_operator, ground_state_energy};

const STEP_TOL: f64 = 1e-12;

/// Fixed-step propagator for `u' = -A u`.
pub struct HeatStepper {
    a: SparseMatrix,
    implicit: SparseMatrix,
    dt: f64,
}

impl HeatStepper {
    pub fn new(a: SparseMatrix, dt: f64) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidArgument(format!("time step {dt} must be positive")));
        }
        let n = a.n();
        let scaled = SparseMatrix::from_csr(
            n,
            a.row_offsets().to_vec(),
            a.col_indices().to_vec(),
            a.values().iter().map(|v| 0.5 * dt * v).collect(),
        )?;
        let implicit = scaled.shifted(1.0)?;
        Ok(Self { a, implicit, dt })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn operator(&self) -> &SparseMatrix {
        &self.a
    }

    fn solve(&self, rhs: &[f64], guess: Vec<f64>) -> Result<Vec<f64>> {
        let n = rhs.len();
        cg_solve_from(&self.implicit, rhs, guess, STEP_TOL, 10 * n + 100)
            .map(|o| o.x)
            .map_err(|e| e.context("implicit time step"))
    }

    /// One backward-Euler step of length `dt/2`.
    pub fn half_step_implicit(&self, u: &[f64]) -> Result<Vec<f64>> {
        self.solve(u, u.to_vec())
    }

    /// One Crank–Nicolson step of length `dt`.
    pub fn step(&self, u: &[f64]) -> Result<Vec<f64>> {
        let au = self.a.matvec(u);
        let rhs: Vec<f64> = u.iter().zip(&au).map(|(x, y)| x - 0.5 * self.dt * y).collect();
        self.solve(&rhs, u.to_vec())
    }

    /// Four implicit half steps, covering `2 dt`.
    pub fn start(&self, u: &[f64]) -> Result<Vec<f64>> {
        let mut v = u.to_vec();
        for _ in 0..4 {
            v = self.half_step_implicit(&v)?;
        }
        Ok(v)
    }

    /// Advances `steps` steps, with the smoothing start when `smooth_start`.
    /// The callback sees the state after every step together with its index.
    pub fn run(
        &self,
        u0: &[f64],
        steps: usize,
        smooth_start: bool,
        mut observe: impl FnMut(usize, &[f64]),
    ) -> Result<Vec<f64>> {
        let mut u = u0.to_vec();
        let mut k = 0;
        if smooth_start && steps >= 2 {
            u = self.start(&u)?;
            k = 2;
            observe(1, &u);
            observe(2, &u);
        }
        while k < steps {
            u = self.step(&u)?;
            k += 1;
            observe(k, &u);
        }
        Ok(u)
    }
}

/// Samples of `|e^{-tH} 1|_inf`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvolutionCurve {
    pub times: Vec<f64>,
    pub sup_norm: Vec<f64>,
    /// `e^{E0 t} sup_norm`.
    pub scaled: Vec<f64>,
    /// Ground state energy of the discrete operator.
    pub e0: f64,
}

impl EvolutionCurve {
    /// `int_0^inf |e^{-tH} 1|_inf dt`: trapezoid rule on the samples plus the
    /// exponential tail `sup_norm(T) / E0`.
    pub fn time_integral(&self) -> f64 {
        let n = self.times.len();
        let body: f64 = (1..n)
            .map(|i| 0.5 * (self.sup_norm[i] + self.sup_norm[i - 1]) * (self.times[i] - self.times[i - 1]))
            .sum();
        body + self.sup_norm[n - 1] / self.e0
    }
}

fn sampled_potential(grid: &Arc<Grid>, potential: Option<&GridField>) -> Result<SparseMatrix> {
    if let Some(v) = potential {
        if !Arc::ptr_eq(v.grid(), grid) {
            return Err(Error::InvalidArgument("potential sampled on a different grid".into()));
        }
    }
    build_operator(grid, potential)
}

/// Evolves `1` to `t_end` with step `dt` and records every `sample_every`-th
/// step; `t = 0` is always included.
pub fn evolve_ones_sampled(
    grid: &Arc<Grid>,
    potential: Option<&GridField>,
    t_end: f64,
    dt: f64,
    sample_every: usize,
) -> Result<EvolutionCurve> {
    if !(t_end > 0.0) || !(dt > 0.0) || sample_every == 0 {
        return Err(Error::InvalidArgument(format!("need T > 0, dt > 0 and a sampling stride, got T={t_end}, dt={dt}")));
    }
    let a = sampled_potential(grid, potential)?;
    let e0 = ground_state_energy(&a)?;
    let steps = (t_end / dt).round().max(1.0) as usize;
    let dt = t_end / steps as f64;
    let stepper = HeatStepper::new(a, dt)?;
    let mut times = vec![0.0];
    let mut sup_norm = vec![1.0];
    stepper.run(&vec![1.0; grid.n_interior()], steps, true, |k, u| {
        if k % sample_every == 0 || k == steps {
            times.push(k as f64 * dt);
            sup_norm.push(u.iter().fold(0.0f64, |m, x| m.max(x.abs())));
        }
    })?;
    let scaled = times.iter().zip(&sup_norm).map(|(t, s)| (e0 * t).exp() * s).collect();
    Ok(EvolutionCurve { times, sup_norm, scaled, e0 })
}

/// [`evolve_ones_sampled`] recording every step.
pub fn evolve_ones(grid: &Arc<Grid>, potential: Option<&GridField>, t_end: f64, dt: f64) -> Result<EvolutionCurve> {
    evolve_ones_sampled(grid, potential, t_end, dt, 1)
}

/// Evolves an arbitrary field; `smooth_start` applies the implicit start.
pub fn evolve(
    u0: &GridField,
    potential: Option<&GridField>,
    t: f64,
    dt: f64,
    smooth_start: bool,
) -> Result<GridField> {
    let grid = u0.grid();
    let a = sampled_potential(grid, potential)?;
    let steps = (t / dt).round().max(1.0) as usize;
    let stepper = HeatStepper::new(a, t / steps as f64)?;
    let u = stepper.run(u0.values(), steps, smooth_start, |_, _| {})?;
    GridField::new(grid.clone(), u)
}

/// Number of steps used for kernel columns: `dt <= 4h^2` and at least 400 steps.
fn kernel_steps(t: f64, h: f64) -> usize {
    ((t / (4.0 * h * h)).ceil() as usize).max(400)
}

/// Discrete kernel column `p_t(., y)`, obtained by evolving `delta_y / h^d`.
pub fn heat_kernel_column(
    grid: &Arc<Grid>,
    potential: Option<&GridField>,
    t: f64,
    y_index: usize,
) -> Result<GridField> {
    let h = grid.h();
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("t = {t} must be positive")));
    }
    if t < h * h {
        return Err(Error::UnderResolved(format!("t = {t} is below h^2 = {}", h * h)));
    }
    if y_index >= grid.n_interior() {
        return Err(Error::OutOfRange(format!("node {y_index} >= {}", grid.n_interior())));
    }
    let mut delta = vec![0.0; grid.n_interior()];
    delta[y_index] = 1.0 / grid.cell_volume();
    let a = sampled_potential(grid, potential)?;
    let steps = kernel_steps(t, h);
    let stepper = HeatStepper::new(a, t / steps as f64)?;
    let u = stepper.run(&delta, steps, true, |_, _| {})?;
    GridField::new(grid.clone(), u)
}

/// Largest ratio `p_t(x,y) / k_t(|x-y|)` found by [`check_domination`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominationReport {
    pub t: f64,
    pub h: f64,
    pub max_ratio: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub columns: usize,
}

/// Compares discrete kernel columns at `samples` evenly spaced source nodes
/// with the free heat kernel `k_t`.
///
/// Only pairs with `|x - y| <= 3 sqrt(2t)` are compared, where `k_t` is at
/// least `e^{-4.5} k_t(0)`. Farther out the lattice and time-stepping tails
/// exceed the Gaussian by a factor growing like `exp(c |x-y|^4 h^2 / t^3)`,
/// which says nothing about the continuum inequality.
pub fn check_domination(
    grid: &Arc<Grid>,
    potential: Option<&GridField>,
    t: f64,
    samples: usize,
) -> Result<DominationReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample column".into()));
    }
    let n = grid.n_interior();
    let d = grid.dim();
    let window = 3.0 * (2.0 * t).sqrt();
    let mut best = DominationReport { t, h: grid.h(), max_ratio: f64::NEG_INFINITY, x: vec![], y: vec![], columns: 0 };
    let picks: Vec<usize> = if samples >= n {
        (0..n).collect()
    } else {
        (0..samples).map(|k| ((2 * k + 1) * n) / (2 * samples)).collect()
    };
    for &j in &picks {
        let col = heat_kernel_column(grid, potential, t, j)?;
        let y = grid.point(j);
        for (i, &p) in col.values().iter().enumerate() {
            let x = grid.point(i);
            let r = x.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            if r > window {
                continue;
            }
            let ratio = p / free_heat_kernel(d, t, r);
            if ratio > best.max_ratio {
                best.max_ratio = ratio;
                best.x = x;
                best.y = y.clone();
            }
        }
        best.columns += 1;
    }
    Ok(best)
}

/// Comparison of `e^{E0 t} |e^{-tH} 1|_inf` with the growth bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub curve: EvolutionCurve,
    /// `e^{E0 t}` times the growth bound at each sample time.
    pub bound: Vec<f64>,
    /// `min (bound - scaled) / bound` over the samples.
    pub worst_margin: f64,
    pub worst_time: f64,
    pub pass: bool,
}

impl GrowthReport {
    pub const CSV_HEADER: &'static str = "t,sup_norm,scaled,bound";

    pub fn csv(&self) -> String {
        let mut s = String::from(Self::CSV_HEADER);
        s.push('\n');
        for i in 0..self.curve.times.len() {
            s.push_str(&format!(
                "{},{},{},{}\n",
                self.curve.times[i], self.curve.sup_norm[i], self.curve.scaled[i], self.bound[i]
            ));
        }
        s
    }
}

/// Evolves `1` over `[0, t_end]` in 1000 steps, samples it at 100 evenly
/// spaced times (plus `t = 0`) and checks each sample against the growth bound.
pub fn growth_vs_bound(
    grid: &Arc<Grid>,
    potential: Option<&GridField>,
    params: &GaussianBoundParams,
    t_end: f64,
) -> Result<GrowthReport> {
    if params.d != grid.dim() {
        return Err(Error::DimensionMismatch { expected: grid.dim(), got: params.d });
    }
    let curve = evolve_ones_sampled(grid, potential, t_end, t_end / 1000.0, 10)?;
    let mut bound = Vec::with_capacity(curve.times.len());
    let mut worst_margin = f64::INFINITY;
    let mut worst_time = 0.0;
    for (&t, &s) in curve.times.iter().zip(&curve.scaled) {
        // Multiply by e^{E0 t} in log space to keep the bound finite for large t.
        let b = thm_main_bound(params, curve.e0, t)?.ln() + curve.e0 * t;
        let b = b.exp();
        let margin = (b - s) / b;
        if margin < worst_margin {
            worst_margin = margin;
            worst_time = t;
        }
        bound.push(b);
    }
    Ok(GrowthReport { curve, bound, pass: worst_margin >= 0.0, worst_margin, worst_time })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::grid::discretize;
    use crate::spectral::solve_torsion;
    use std::f64::consts::PI;

    fn unit_interval(h: f64) -> Arc<Grid> {
        discretize(&Domain::interval(0.0, 1.0).unwrap(), h).unwrap()
    }

    #[test]
    fn interval_curve_properties() {
        let g = unit_interval(1.0 / 128.0);
        let e0 = PI * PI;
        let c = evolve_ones_sampled(&g, None, 8.0 / e0, 8.0 / e0 / 1000.0, 10).unwrap();
        assert_eq!(c.times[0], 0.0);
        assert_eq!(c.sup_norm[0], 1.0);
        assert_eq!(c.times.len(), 101);
        assert!(c.sup_norm.iter().all(|&s| s <= 1.0 + 1e-12));
        assert!(c.sup_norm.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        let last = *c.scaled.last().unwrap();
        assert!((last - 4.0 / PI).abs() < 0.01 * 4.0 / PI, "{last}");
    }

    #[test]
    fn semigroup_property() {
        let g = unit_interval(1.0 / 64.0);
        let ones = GridField::constant(g.clone(), 1.0);
        let dt = 1e-4;
        let half = evolve(&ones, None, 0.02, dt, true).unwrap();
        let split = evolve(&half, None, 0.03, dt, false).unwrap();
        let whole = evolve(&ones, None, 0.05, dt, true).unwrap();
        let scale = whole.sup_norm();
        for (a, b) in split.values().iter().zip(whole.values()) {
            assert!((a - b).abs() <= 1e-6 * scale);
        }
    }

    #[test]
    fn time_integral_matches_torsion() {
        let g = unit_interval(1.0 / 128.0);
        let c = evolve_ones_sampled(&g, None, 8.0 / (PI * PI), 8e-4, 1).unwrap();
        let u = solve_torsion(&g, None).unwrap().sup_norm();
        assert!((c.time_integral() - u).abs() < 0.02 * u);
    }

    #[test]
    fn kernel_column_properties() {
        let g = unit_interval(1.0 / 100.0);
        let t = 0.01;
        let a = 30;
        let b = 60;
        let ca = heat_kernel_column(&g, None, t, a).unwrap();
        let cb = heat_kernel_column(&g, None, t, b).unwrap();
        assert!((ca.values()[b] - cb.values()[a]).abs() < 1e-8 * ca.sup_norm());
        let mass: f64 = ca.values().iter().sum::<f64>() * g.h();
        assert!(mass <= 1.0 && mass > 0.9);
        let mid = g.nearest_node(&[0.5]).unwrap();
        let center = heat_kernel_column(&g, None, 0.002, mid).unwrap().values()[mid];
        let free = free_heat_kernel(1, 0.002, 0.0);
        assert!((center - free).abs() < 0.05 * free);
        assert!(matches!(heat_kernel_column(&g, None, 1e-5, mid), Err(Error::UnderResolved(_))));
    }

    #[test]
    fn potential_lowers_kernel() {
        let g = unit_interval(1.0 / 100.0);
        let v = GridField::constant(g.clone(), 10.0);
        let free = check_domination(&g, None, 0.05, 5).unwrap();
        let damped = check_domination(&g, Some(&v), 0.05, 5).unwrap();
        assert!(damped.max_ratio < free.max_ratio);
        assert!(free.max_ratio <= 1.0 + 3.0 * g.h());
    }

    #[test]
    fn growth_bound_interval() {
        let g = unit_interval(1.0 / 64.0);
        let r = growth_vs_bound(&g, None, &GaussianBoundParams::free_heat(1), 5.0 / (PI * PI)).unwrap();
        assert!(r.pass, "{}", r.worst_margin);
        assert!((r.bound[0] - 2f64.powf(0.25)).abs() < 1e-15);
        assert!(r.csv().starts_with("t,sup_norm,scaled,bound\n0,1,1,"));
    }
}
