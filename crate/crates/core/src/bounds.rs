//! Explicit semigroup and torsion bounds, and grid-sweep checks of the
//! scalar inequalities behind them.
//!
//! Every check returns a residual that is nonnegative exactly when the
//! inequality holds at that point, or a ratio that must not exceed one.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::analytic::{exp_weight_integral_exact, free_heat_kernel, free_heat_mass, log_gamma_unchecked};
use crate::error::{Error, Result};

/// Growth constant of the `L^inf` semigroup bound.
pub const GROWTH_CONSTANT: f64 = 5.56;
/// Case split point of the growth bound.
pub const CASE_SPLIT: f64 = 0.14;
/// Case-1 slope bound `(e^{4 alpha} - 1) / alpha < 5.4`.
pub const CASE1_SLOPE_BOUND: f64 = 5.4;
/// Rational stand-in for `8 / gamma^2` in the torsion estimate.
pub const G_QUADRATIC_COEFF: f64 = 8.5;

/// `M`, `omega`, `a` and `d` of a Gaussian kernel bound
/// `|p_t(x,y)| <= M e^{omega t} (a pi t)^{-d/2} exp(-|x-y|^2 / (a t))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianBoundParams {
    pub m: f64,
    pub omega: f64,
    pub a: f64,
    pub d: usize,
}

impl GaussianBoundParams {
    pub fn new(m: f64, omega: f64, a: f64, d: usize) -> Result<Self> {
        if !(m >= 1.0) || !(a > 0.0) || !omega.is_finite() || d == 0 {
            return Err(Error::InvalidArgument(format!(
                "need M >= 1, a > 0, finite omega and d >= 1; got M={m}, a={a}, omega={omega}, d={d}"
            )));
        }
        Ok(Self { m, omega, a, d })
    }

    /// Domination by the free heat semigroup: `M = 1`, `omega = 0`, `a = 4`.
    pub fn free_heat(d: usize) -> Self {
        Self { m: 1.0, omega: 0.0, a: 4.0, d }
    }
}

/// Free parameters of the weighted estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TunableScalars {
    pub eps: f64,
    pub beta: f64,
    pub alpha: f64,
}

impl TunableScalars {
    pub fn new(eps: f64, beta: f64, alpha: f64) -> Result<Self> {
        check_eps(eps)?;
        if !(beta > 0.0) || !(alpha > 0.0) {
            return Err(Error::InvalidArgument(format!("need beta > 0 and alpha > 0, got {beta}, {alpha}")));
        }
        Ok(Self { eps, beta, alpha })
    }
}

/// Constants of the torsion and growth estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorsionProofConstants {
    /// `sqrt(5 (1 + ln2 / 4)) / 4`.
    pub c: f64,
    /// `8c / 5`.
    pub gamma: f64,
    pub alpha0: f64,
    /// `4 e^{-4 alpha0} - 1`.
    pub tau: f64,
}

impl TorsionProofConstants {
    pub fn get() -> Self {
        let c = 0.25 * (5.0 * (1.0 + 0.25 * LN_2)).sqrt();
        Self { c, gamma: 1.6 * c, alpha0: CASE_SPLIT, tau: 4.0 * (-4.0 * CASE_SPLIT).exp() - 1.0 }
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("eps = {eps} not in (0, 1]")))
    }
}

/// `ln((1 + 1/sqrt(eps)) / 2)`.
fn log_eps_factor(eps: f64) -> f64 {
    (0.5 * (1.0 + 1.0 / eps.sqrt())).ln()
}

/// `2^{1/4} M (1 + (5.56/d)(E0 + omega) t)^{d/4} e^{-E0 t}`.
pub fn thm_main_bound(p: &GaussianBoundParams, e0: f64, t: f64) -> Result<f64> {
    let growth = (e0 + p.omega) * t;
    if !(t >= 0.0) || !(growth >= 0.0) {
        return Err(Error::OutOfRange(format!("need t >= 0 and (E0 + omega) t >= 0, got t={t}, {growth}")));
    }
    let d = p.d as f64;
    Ok(2f64.powf(0.25) * p.m * (1.0 + GROWTH_CONSTANT / d * growth).powf(d / 4.0) * (-e0 * t).exp())
}

/// `2^{1/4} M ((1 + 1/sqrt(eps))/2)^{d/2} e^{eps (E0 + omega) t - E0 t}`.
pub fn thm_linfty_bound(p: &GaussianBoundParams, e0: f64, eps: f64, t: f64) -> Result<f64> {
    check_eps(eps)?;
    if !(t >= 0.0) {
        return Err(Error::OutOfRange(format!("t = {t} is negative")));
    }
    let d = p.d as f64;
    let log = 0.25 * LN_2 + 0.5 * d * log_eps_factor(eps) + eps * (e0 + p.omega) * t - e0 * t;
    Ok(p.m * log.exp())
}

/// `eps = 1` for `x <= 0.14`, `eps = 0.14 / x` otherwise.
pub fn optimize_epsilon_main(x: f64) -> f64 {
    if x <= CASE_SPLIT {
        1.0
    } else {
        CASE_SPLIT / x
    }
}

/// `(1 + 5.56 x) - ((1 + 1/sqrt(eps))/2)^2 e^{4 eps x}`.
pub fn check_aim(x: f64, eps: f64) -> f64 {
    check_aim_with(x, eps, GROWTH_CONSTANT)
}

/// [`check_aim`] with `constant` in place of 5.56.
pub fn check_aim_with(x: f64, eps: f64, constant: f64) -> f64 {
    let f = 0.5 * (1.0 + 1.0 / eps.sqrt());
    (1.0 + constant * x) - f * f * (4.0 * eps * x).exp()
}

/// `C_d = d/8 + c sqrt(d) + 1`.
pub fn torsion_constant(d: usize) -> f64 {
    let d = d as f64;
    d / 8.0 + TorsionProofConstants::get().c * d.sqrt() + 1.0
}

fn check_open_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("eps = {eps} not in (0, 1)")))
    }
}

/// Time `t0` at which `2^{1/4} ((1+1/sqrt(eps))/2)^{d/2} e^{-(1-eps) E0 t0} = 1`.
pub fn t0_from_eps(d: usize, e0: f64, eps: f64) -> Result<f64> {
    check_open_eps(eps)?;
    if !(e0 > 0.0) {
        return Err(Error::InvalidArgument(format!("E0 = {e0} must be positive")));
    }
    Ok((0.25 * LN_2 + 0.5 * d as f64 * log_eps_factor(eps)) / ((1.0 - eps) * e0))
}

/// `E0 t0 + 1/(1 - eps)`.
pub fn q_upper_via_eps(d: usize, e0: f64, eps: f64) -> Result<f64> {
    Ok(e0 * t0_from_eps(d, e0, eps)? + 1.0 / (1.0 - eps))
}

/// `eps = 1 / (1 + 2 gamma / sqrt(d))^2`.
pub fn torsion_proof_eps(d: usize) -> f64 {
    let x = TorsionProofConstants::get().gamma / (d as f64).sqrt();
    1.0 / ((1.0 + 2.0 * x) * (1.0 + 2.0 * x))
}

/// `inf_{eps in (0,1]} (d/2) ln((1 + 1/sqrt(eps))/2) + (eps - 1) s`.
///
/// Golden-section search in `ln eps` on `[-40, 0]`, compared with the
/// endpoint `eps = 1` where the expression is exactly zero.
pub fn min_log_factor(d: usize, s: f64) -> f64 {
    let d = d as f64;
    let f = |l: f64| {
        let eps = l.exp();
        0.5 * d * log_eps_factor(eps) + (eps - 1.0) * s
    };
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (-40.0f64, 0.0f64);
    let mut c = b - r * (b - a);
    let mut e = a + r * (b - a);
    let (mut fc, mut fe) = (f(c), f(e));
    while b - a > 1e-10 {
        if fc < fe {
            b = e;
            e = c;
            fe = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + r * (b - a);
            fe = f(e);
        }
    }
    f(0.5 * (a + b)).min(0.0)
}

/// `x ln x - x + ln sqrt(2 pi) - ln Gamma(x + 1/2)`, nonnegative when
/// `Gamma(x + 1/2) <= (x/e)^x sqrt(2 pi)`.
///
/// For `x >= 20` the Stirling series of `ln Gamma(x + 1/2)` is used, since
/// the direct difference cancels to below the accuracy of `ln Gamma`.
pub fn check_gamma_ineq(x: f64) -> f64 {
    if x >= 20.0 {
        let y = 1.0 / x;
        let y2 = y * y;
        y * (1.0 / 24.0 - y2 * (7.0 / 2880.0 - y2 * (31.0 / 40320.0 - y2 * 127.0 / 215040.0)))
    } else {
        x * x.ln() - x + 0.5 * (2.0 * PI).ln() - log_gamma_unchecked(x + 0.5)
    }
}

/// `(1/t)(1/t - 1/(2 sinh(t/2)))`, the Laplace density of [`check_gamma_ineq`].
pub fn gamma_ineq_integrand(t: f64) -> f64 {
    if t < 1e-2 {
        let t2 = t * t;
        1.0 / 24.0 - 7.0 * t2 / 5760.0 + 31.0 * t2 * t2 / 967680.0
    } else {
        (1.0 / t - 1.0 / (2.0 * (0.5 * t).sinh())) / t
    }
}

/// Exact `int exp(-alpha |y|) dy` over `sqrt(2) (2 pi d / e)^{d/2} alpha^{-d}`.
pub fn check_int_bound(d: usize, alpha: f64) -> Result<f64> {
    let exact = exp_weight_integral_exact(d, alpha)?;
    let df = d as f64;
    let log_bound = 0.5 * LN_2 + 0.5 * df * (2.0 * PI * df).ln() - 0.5 * df - df * alpha.ln();
    Ok((exact.ln() - log_bound).exp())
}

/// `2^{1/4} (pi d / (2e))^{d/4} alpha^{-d/2}`.
pub fn prop_weighted_linf_bound(d: usize, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || d == 0 {
        return Err(Error::InvalidArgument(format!("need d >= 1 and alpha > 0, got d={d}, alpha={alpha}")));
    }
    let df = d as f64;
    Ok((0.25 * LN_2 + 0.25 * df * (PI * df / (2.0 * std::f64::consts::E)).ln() - 0.5 * df * alpha.ln()).exp())
}

/// The weighted `inf -> inf` bound for `e^{t Delta}` at `alpha^2 = d/(8t)`:
/// `2^{1/4} (pi d/(2e))^{d/4} alpha^{-d/2} (4 pi t)^{-d/4} e^{2 alpha^2 t}`.
pub fn free_heat_linf_envelope(d: usize, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("t = {t} must be positive")));
    }
    let df = d as f64;
    let alpha = (df / (8.0 * t)).sqrt();
    let log = prop_weighted_linf_bound(d, alpha)?.ln() - 0.25 * df * (4.0 * PI * t).ln() + 2.0 * alpha * alpha * t;
    Ok(log.exp())
}

/// Worst ratios found by [`check_free_heat_weighted`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightedHeatCheck {
    /// `max lhs/rhs` of the pointwise kernel domination over sampled triples.
    pub pointwise: f64,
    /// Quadrature `2 -> inf` norm of the weighted kernel over the stated bound.
    pub two_to_inf: f64,
    /// Discrete `2 -> 2` norm over `e^{alpha^2 t}`; computed for `d = 1` only.
    pub two_to_two: Option<f64>,
}

impl WeightedHeatCheck {
    pub fn max_ratio(&self) -> f64 {
        self.pointwise.max(self.two_to_inf).max(self.two_to_two.unwrap_or(f64::NEG_INFINITY))
    }
}

fn lattice_points(d: usize, radius: f64, h: f64) -> Vec<Vec<f64>> {
    let n = (radius / h).round() as i64;
    let axis: Vec<f64> = (-n..=n).map(|k| k as f64 * h).collect();
    let mut pts: Vec<Vec<f64>> = vec![vec![]];
    for _ in 0..d {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    pts
}

fn dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// Checks the weighted free heat kernel estimates on a lattice of spacing
/// `h` in `[-grid_radius, grid_radius]^d`:
///
/// * pointwise `e^{-alpha|x-w|} k_t(x-y) e^{alpha|y-w|} <= ((1+beta)/beta)^{d/2} e^{(1+beta) alpha^2 t} k_s(x-y)`
///   with `s = (1+beta) t / beta`,
/// * `|e^{-alpha rho_w} e^{t Delta} e^{alpha rho_w}|_{2->inf} <= (1+1/beta)^{d/4} (8 pi t)^{-d/4} e^{(1+beta) alpha^2 t}`,
/// * for `d = 1`, `|e^{-alpha rho_w} e^{t Delta} e^{alpha rho_w}|_{2->2} <= e^{alpha^2 t}`.
pub fn check_free_heat_weighted(
    d: usize,
    t: f64,
    alpha: f64,
    beta: f64,
    grid_radius: f64,
    h: f64,
) -> Result<WeightedHeatCheck> {
    if !(d == 1 || d == 2) {
        return Err(Error::InvalidArgument(format!("weighted heat check supports d in {{1, 2}}, got {d}")));
    }
    if !(t > 0.0) || !(alpha >= 0.0) || !(beta > 0.0) || !(grid_radius > 0.0) || !(h > 0.0) {
        return Err(Error::InvalidArgument("need t, beta, radius, h > 0 and alpha >= 0".into()));
    }
    if h > t.sqrt() / 10.0 {
        return Err(Error::UnderResolved(format!("h = {h} exceeds sqrt(t)/10 = {}", t.sqrt() / 10.0)));
    }
    let df = d as f64;
    let s = (1.0 + beta) * t / beta;
    let log_c = 0.5 * df * ((1.0 + beta) / beta).ln() + (1.0 + beta) * alpha * alpha * t;
    let log_ratio = |x: &[f64], y: &[f64], w: &[f64]| {
        let r = dist(x, y);
        let lhs = -alpha * dist(x, w) + alpha * dist(y, w) - 0.5 * df * (4.0 * PI * t).ln() - r * r / (4.0 * t);
        let rhs = log_c - 0.5 * df * (4.0 * PI * s).ln() - r * r / (4.0 * s);
        lhs - rhs
    };

    // Pointwise: sampled lattice for x and y, a few weight centers w.
    let sample_h = if d == 1 { h } else { h.max(grid_radius / 10.0) };
    let samples = lattice_points(d, grid_radius, sample_h);
    let centers = lattice_points(d, grid_radius, grid_radius / if d == 1 { 3.0 } else { 1.0 });
    let mut pointwise = f64::NEG_INFINITY;
    for w in &centers {
        for x in &samples {
            for y in &samples {
                pointwise = pointwise.max(log_ratio(x, y, w));
            }
        }
    }
    let pointwise = pointwise.exp();

    // 2 -> inf: quadrature of the squared weighted kernel column around x.
    let half_width = 2.0 * alpha * t + 10.0 * t.sqrt();
    let offsets = lattice_points(d, half_width, h);
    let log_bound = 0.25 * df * (1.0 + 1.0 / beta).ln() - 0.25 * df * (8.0 * PI * t).ln() + (1.0 + beta) * alpha * alpha * t;
    let mut two_to_inf = 0.0f64;
    let origin = vec![0.0; d];
    for x in &centers {
        let mut sum = 0.0;
        for z in &offsets {
            let y: Vec<f64> = x.iter().zip(z).map(|(a, b)| a + b).collect();
            let k = (-alpha * dist(x, &origin) + alpha * dist(&y, &origin)).exp() * free_heat_kernel(d, t, dist(x, &y));
            sum += k * k;
        }
        let norm = (sum * h.powi(d as i32)).sqrt();
        two_to_inf = two_to_inf.max(norm / log_bound.exp());
    }

    let two_to_two = if d == 1 { Some(weighted_two_to_two_1d(t, alpha, grid_radius, h) / (alpha * alpha * t).exp()) } else { None };
    Ok(WeightedHeatCheck { pointwise, two_to_inf, two_to_two })
}

/// Largest singular value of the lattice matrix `h e^{-alpha|x_i|} k_t(x_i - x_j) e^{alpha|x_j|}`.
fn weighted_two_to_two_1d(t: f64, alpha: f64, radius: f64, h: f64) -> f64 {
    let xs: Vec<f64> = lattice_points(1, radius, h).into_iter().map(|p| p[0]).collect();
    let n = xs.len();
    let k: Vec<f64> = (0..n * n)
        .map(|ij| {
            let (i, j) = (ij / n, ij % n);
            h * (-alpha * xs[i].abs() + alpha * xs[j].abs()).exp() * free_heat_kernel(1, t, xs[i] - xs[j])
        })
        .collect();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut sigma = 0.0;
    for _ in 0..2000 {
        let kv: Vec<f64> = (0..n).map(|i| (0..n).map(|j| k[i * n + j] * v[j]).sum()).collect();
        let mut ktkv: Vec<f64> = (0..n).map(|j| (0..n).map(|i| k[i * n + j] * kv[i]).sum()).collect();
        let norm = ktkv.iter().map(|x| x * x).sum::<f64>().sqrt();
        ktkv.iter_mut().for_each(|x| *x /= norm);
        let next = norm.sqrt();
        v = ktkv;
        if (next - sigma).abs() <= 1e-14 * next {
            return next;
        }
        sigma = next;
    }
    sigma
}

/// Values of the auxiliary functions in the torsion estimate at `x in [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorsionProofCheck {
    /// `f(x) = x - x^2/2 + (x^3/2)(4/5)/(1+x) - ln(1+x)`, must be `>= 0`.
    pub f: f64,
    /// Central difference of `f` minus `(x^2 - x^3) / (5 (1+x)^2)`.
    pub fprime_residual: f64,
    /// `g(x) - (5/2) x^2 - [x - x^2/2 + (x^3/2)(3+x)/(1+2x)^2]`, zero up to rounding.
    pub g_residual: f64,
    /// `11 + 4x - 11x^2`, must be `>= 0`.
    pub support: f64,
}

fn proof_f(x: f64) -> f64 {
    x - 0.5 * x * x + 0.5 * x * x * x * 0.8 / (1.0 + x) - x.ln_1p()
}

pub fn check_torsion_proof_fg(x: f64) -> TorsionProofCheck {
    let f = proof_f(x);
    let step = 1e-5;
    let fd = (proof_f(x + step) - proof_f(x - step)) / (2.0 * step);
    let stated = (x * x - x * x * x) / (5.0 * (1.0 + x) * (1.0 + x));
    let q = (1.0 + 2.0 * x) * (1.0 + 2.0 * x);
    let g = (x + x * x) / q * (1.0 + 5.0 * x + G_QUADRATIC_COEFF * x * x);
    let g_residual = g - 2.5 * x * x - (x - 0.5 * x * x + 0.5 * x * x * x * (3.0 + x) / q);
    TorsionProofCheck { f, fprime_residual: fd - stated, g_residual, support: 11.0 + 4.0 * x - 11.0 * x * x }
}

/// Sup over `xs` of `(((1+1/sqrt(eps))/2)^2 e^{4 eps x} - 1) / x` with the
/// case-split choice of `eps`; the smallest growth constant that choice admits.
pub fn empirical_aim_constant(xs: &[f64]) -> f64 {
    xs.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| (GROWTH_CONSTANT * x - check_aim(x, optimize_epsilon_main(x))) / x)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Outcome of one named inequality sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    /// Description of the sample grid.
    pub grid: String,
    /// Smallest margin over the grid; the check passes iff it is nonnegative.
    pub worst_residual: f64,
    pub pass: bool,
}

impl Verdict {
    fn new(name: &str, grid: impl Into<String>, worst_residual: f64) -> Self {
        Self { name: name.into(), grid: grid.into(), worst_residual, pass: worst_residual >= 0.0 }
    }
}

/// Settings for [`verification_suite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    /// Growth constant tested in the aim envelope; 5.56 by default.
    pub aim_constant: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { aim_constant: GROWTH_CONSTANT }
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

fn min_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(f64::INFINITY, f64::min)
}

/// Grid for the aim envelope: 0, the case split, and a log grid up to 100.
pub fn aim_grid() -> Vec<f64> {
    let mut xs = vec![0.0, CASE_SPLIT];
    xs.extend(log_grid(1e-6, 100.0, 498));
    xs.sort_by(f64::total_cmp);
    xs
}

/// Runs every inequality sweep and returns one verdict per check.
pub fn verification_suite(opts: &SuiteOptions) -> Result<Vec<Verdict>> {
    let k = TorsionProofConstants::get();
    let mut out = Vec::new();

    let xs = aim_grid();
    out.push(Verdict::new(
        "aim_envelope",
        format!("x in {{0, 0.14}} + 498 log points on [1e-6, 100], constant {}", opts.aim_constant),
        min_of(xs.iter().map(|&x| check_aim_with(x, optimize_epsilon_main(x), opts.aim_constant))),
    ));
    out.push(Verdict::new(
        "case1_slope",
        "(e^{4*0.14} - 1)/0.14 < 5.4",
        CASE1_SLOPE_BOUND - ((4.0 * k.alpha0).exp() - 1.0) / k.alpha0,
    ));
    out.push(Verdict::new(
        "case2_slope",
        format!("1/(tau*0.14) < {}", opts.aim_constant),
        opts.aim_constant - 1.0 / (k.tau * k.alpha0),
    ));
    out.push(Verdict::new(
        "proof_constants",
        "c < 0.61, gamma < 1, tau > 0",
        (0.61 - k.c).min(1.0 - k.gamma).min(k.tau),
    ));

    let gx = log_grid(1e-6, 1e4, 2000);
    let gv: Vec<f64> = gx.iter().map(|&x| check_gamma_ineq(x)).collect();
    out.push(Verdict::new("gamma_ineq", "2000 log points on [1e-6, 1e4]", min_of(gv.iter().copied())));
    out.push(Verdict::new(
        "gamma_ineq_decreasing",
        "consecutive points of the same grid with x >= 1",
        min_of(gx.windows(2).zip(gv.windows(2)).filter(|(x, _)| x[0] >= 1.0).map(|(_, v)| v[0] - v[1])),
    ));
    out.push(Verdict::new(
        "gamma_integrand_positive",
        "2000 log points on [1e-6, 50]",
        min_of(log_grid(1e-6, 50.0, 2000).into_iter().map(gamma_ineq_integrand)),
    ));

    let mut worst = f64::INFINITY;
    for d in 1..=60 {
        worst = worst.min(1.0 - check_int_bound(d, 1.0)?);
    }
    out.push(Verdict::new("exp_integral_bound", "d = 1..60, alpha = 1", worst));

    let fg: Vec<TorsionProofCheck> = (0..1000).map(|i| check_torsion_proof_fg(i as f64 / 999.0)).collect();
    out.push(Verdict::new("torsion_f_nonnegative", "1000 points on [0, 1]", min_of(fg.iter().map(|c| c.f))));
    out.push(Verdict::new(
        "torsion_f_derivative",
        "1000 points on [0, 1], tolerance 1e-6",
        min_of(fg.iter().map(|c| 1e-6 - c.fprime_residual.abs())),
    ));
    out.push(Verdict::new(
        "torsion_g_identity",
        "1000 points on [0, 1], tolerance 1e-12",
        min_of(fg.iter().map(|c| 1e-12 - c.g_residual.abs())),
    ));
    out.push(Verdict::new("torsion_support", "1000 points on [0, 1]", min_of(fg.iter().map(|c| c.support))));

    let mut worst = f64::INFINITY;
    for d in 1..=200 {
        worst = worst.min(torsion_constant(d) - q_upper_via_eps(d, 1.0, torsion_proof_eps(d))?);
    }
    out.push(Verdict::new("q_upper_below_cd", "d = 1..200 with eps = 1/(1+2 gamma/sqrt d)^2", worst));

    let mut worst = f64::INFINITY;
    for d in 1..=20 {
        let th = d as f64 / 8.0;
        for rel in [-0.9, -0.5, -0.1, -0.01, 0.01, 0.1, 0.5, 2.0, 10.0] {
            let s = th * (1.0 + rel);
            let v = min_log_factor(d, s);
            // s > d/8 needs a strictly negative infimum, s < d/8 a zero one.
            worst = worst.min(if rel > 0.0 { if v < 0.0 { -v } else { -1.0 } } else { v });
        }
    }
    out.push(Verdict::new("min_log_threshold", "d = 1..20, s/(d/8) - 1 in +-{0.01, 0.1, 0.5, ...}", worst));

    out.push(dominance_verdict()?);

    let mut worst = f64::INFINITY;
    for d in 1..=50 {
        for t in [0.01, 1.0, 30.0] {
            worst = worst.min(1e-12 - (free_heat_linf_envelope(d, t)? - 2f64.powf(0.25)).abs());
        }
    }
    out.push(Verdict::new("weighted_sharpness", "d = 1..50, t in {0.01, 1, 30}, tolerance 1e-12", worst));

    let mut worst = f64::INFINITY;
    for d in 1..=3 {
        for t in [0.01f64, 1.0] {
            worst = worst.min(1e-6 - (free_heat_mass(d, t, t.sqrt() / 10.0) - 1.0).abs());
        }
    }
    out.push(Verdict::new("free_heat_linf_norm", "d = 1..3, t in {0.01, 1}, h = sqrt(t)/10", worst));

    let mut worst = f64::INFINITY;
    for d in [1usize, 2] {
        for (alpha, beta) in [(1.0, 1.0), (0.0, 1.0), (2.0, 0.5)] {
            let c = check_free_heat_weighted(d, 1.0, alpha, beta, 6.0, 0.1)?;
            let mut slack = 1e-8 - (c.pointwise.max(c.two_to_inf) - 1.0);
            if let Some(r) = c.two_to_two {
                slack = slack.min(1e-6 - (r - 1.0));
            }
            worst = worst.min(slack);
        }
    }
    out.push(Verdict::new(
        "free_heat_weighted",
        "d in {1, 2}, t = 1, (alpha, beta) in {(1,1), (0,1), (2,0.5)}, [-6, 6]^d, h = 0.1",
        worst,
    ));
    Ok(out)
}

/// The growth bound dominates the best `eps`-bound on an `eps` grid that
/// includes the case-split choice, for 200 `(d, t)` pairs.
fn dominance_verdict() -> Result<Verdict> {
    let mut eps_grid = log_grid(1e-4, 1.0, 200);
    let mut worst = f64::INFINITY;
    for d in 1..=20usize {
        let p = GaussianBoundParams::new(1.0, 0.5, 4.0, d)?;
        let e0 = 2.0;
        for t in log_grid(1e-3, 50.0, 10) {
            let x = (e0 + p.omega) * t / d as f64;
            eps_grid.push(optimize_epsilon_main(x));
            let mut best = f64::INFINITY;
            for &eps in &eps_grid {
                best = best.min(thm_linfty_bound(&p, e0, eps, t)?);
            }
            eps_grid.pop();
            let main = thm_main_bound(&p, e0, t)?;
            worst = worst.min((main - best) / main);
        }
    }
    Ok(Verdict::new("growth_dominates_eps_bound", "d = 1..20 x 10 log t on [1e-3, 50], M=1, omega=0.5, E0=2", worst))
}
