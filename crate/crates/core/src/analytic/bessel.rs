//! Bessel functions of the first kind and their first positive zero.
//!
//! `J_nu(x) = (x/2)^nu / Gamma(nu+1) * S(x^2/4)` with
//! `S(z) = sum_k (-z)^k / (k! (nu+1)_k)`. The prefactor is formed in log
//! space and `S` is summed in double-double arithmetic, because near the
//! first zero of high orders the alternating terms cancel by up to 14
//! decimal digits.

use super::gamma::log_gamma_unchecked;
use crate::error::{Error, Result};

pub const MAX_ARGUMENT: f64 = 60.0;
const SCAN_STEP: f64 = 0.5;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    const ZERO: Self = DoubleDouble { hi: 0.0, lo: 0.0 };

    fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        DoubleDouble { hi: s, lo: err }
    }

    fn quick_two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        DoubleDouble { hi: s, lo: b - (s - a) }
    }

    fn two_prod(a: f64, b: f64) -> Self {
        let p = a * b;
        DoubleDouble { hi: p, lo: a.mul_add(b, -p) }
    }

    fn add(self, other: Self) -> Self {
        let s = Self::two_sum(self.hi, other.hi);
        let t = Self::two_sum(self.lo, other.lo);
        let v = Self::quick_two_sum(s.hi, s.lo + t.hi);
        Self::quick_two_sum(v.hi, v.lo + t.lo)
    }

    fn mul(self, other: Self) -> Self {
        let p = Self::two_prod(self.hi, other.hi);
        let lo = p.lo + (self.hi * other.lo + self.lo * other.hi);
        Self::quick_two_sum(p.hi, lo)
    }

    fn div(self, other: Self) -> Self {
        let q1 = self.hi / other.hi;
        let r = self.add(other.mul(Self::from_f64(-q1)));
        let q2 = r.hi / other.hi;
        let r = r.add(other.mul(Self::from_f64(-q2)));
        let q3 = r.hi / other.hi;
        Self::quick_two_sum(q1, q2).add(Self::from_f64(q3))
    }

    fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

fn check_order(nu: f64) -> Result<()> {
    if !(nu >= -0.5) || !nu.is_finite() {
        return Err(Error::OutOfRange(format!("Bessel order {nu} must be >= -1/2")));
    }
    Ok(())
}

/// `J_nu(x)` for `nu >= -1/2` and `0 <= x <= 60`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check_order(nu)?;
    if !(0.0..=MAX_ARGUMENT).contains(&x) {
        return Err(Error::OutOfRange(format!("Bessel argument {x} outside [0, {MAX_ARGUMENT}]")));
    }
    if x == 0.0 {
        return Ok(match nu {
            n if n == 0.0 => 1.0,
            n if n > 0.0 => 0.0,
            _ => f64::INFINITY,
        });
    }
    let prefactor = (nu * (0.5 * x).ln() - log_gamma_unchecked(nu + 1.0)).exp();
    Ok(prefactor * reduced_series(nu, x))
}

/// `S(x^2/4)` in double-double arithmetic.
fn reduced_series(nu: f64, x: f64) -> f64 {
    let z = DoubleDouble::two_prod(x, x).mul(DoubleDouble::from_f64(0.25)).neg();
    let mut term = DoubleDouble::from_f64(1.0);
    let mut sum = DoubleDouble::ZERO;
    let z_abs = -z.hi;
    for k in 0..2000 {
        sum = sum.add(term);
        let kk = k as f64 + 1.0;
        let denom = DoubleDouble::two_prod(kk, kk + nu);
        term = term.mul(z).div(denom);
        // Past the peak the terms decrease geometrically.
        if kk * (kk + nu) > z_abs && term.hi.abs() <= 1e-34 * sum.hi.abs().max(1e-300) {
            break;
        }
    }
    sum.to_f64()
}

/// First positive zero `j_{nu,1}` of `J_nu`, to about 1e-13 absolute.
///
/// Scans upward from `max(nu, 1)/2` in steps of 1/2 until `J_nu` changes
/// sign, then bisects. `J_nu > 0` on `(0, j_{nu,1})`, so the first sign
/// change brackets the first zero.
pub fn bessel_first_zero(nu: f64) -> Result<f64> {
    check_order(nu)?;
    let mut a = nu.max(1.0) / 2.0;
    let mut fa = bessel_j(nu, a)?;
    loop {
        let b = a + SCAN_STEP;
        if b > MAX_ARGUMENT {
            return Err(Error::BracketFailure { nu });
        }
        let fb = bessel_j(nu, b)?;
        if fa > 0.0 && fb <= 0.0 {
            return bisect(nu, a, b);
        }
        a = b;
        fa = fb;
    }
}

fn bisect(nu: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if bessel_j(nu, mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
