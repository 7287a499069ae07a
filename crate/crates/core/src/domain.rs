//! Euclidean domains with computable membership.
//!
//! A [`Domain`] is an open set in `R^d` described either by a closed-form
//! shape or by a black-box membership test with an explicit bounding box.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Membership predicate for [`Shape::Indicator`] domains.
pub type MembershipFn = Arc<dyn Fn(&[f64]) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum Shape {
    Interval { a: f64, b: f64 },
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
    Indicator { test: MembershipFn, lo: Vec<f64>, hi: Vec<f64> },
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Interval { a, b } => write!(f, "Interval({a}, {b})"),
            Shape::Box { lo, hi } => write!(f, "Box({lo:?}, {hi:?})"),
            Shape::Ball { center, radius } => write!(f, "Ball({center:?}, {radius})"),
            Shape::Polygon { vertices } => write!(f, "Polygon({vertices:?})"),
            Shape::Indicator { lo, hi, .. } => write!(f, "Indicator(<fn>, {lo:?}, {hi:?})"),
        }
    }
}

/// An open region in `R^d`.
#[derive(Clone, Debug)]
pub struct Domain {
    shape: Shape,
    dim: usize,
}

/// JSON form of a domain, tagged by `"shape"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase", deny_unknown_fields)]
pub enum DomainSpec {
    Interval { a: f64, b: f64 },
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
}

impl Domain {
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidDomain(format!("interval ({a}, {b}) is empty")));
        }
        Ok(Domain { shape: Shape::Interval { a, b }, dim: 1 })
    }

    pub fn cuboid(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        check_box(&lo, &hi)?;
        let dim = lo.len();
        Ok(Domain { shape: Shape::Box { lo, hi }, dim })
    }

    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::InvalidDomain("ball center has no coordinates".into()));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidDomain(format!("ball radius {radius} must be positive")));
        }
        if center.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidDomain("ball center is not finite".into()));
        }
        let dim = center.len();
        Ok(Domain { shape: Shape::Ball { center, radius }, dim })
    }

    /// Unit ball centered at the origin of `R^d`.
    pub fn unit_ball(d: usize) -> Result<Self> {
        Self::ball(vec![0.0; d], 1.0)
    }

    pub fn polygon(vertices: Vec<[f64; 2]>) -> Result<Self> {
        check_polygon(&vertices)?;
        Ok(Domain { shape: Shape::Polygon { vertices }, dim: 2 })
    }

    /// Equilateral triangle with one side on the x-axis from `(0,0)` to `(side,0)`.
    pub fn equilateral_triangle(side: f64) -> Result<Self> {
        Self::polygon(vec![[0.0, 0.0], [side, 0.0], [0.5 * side, 0.5 * 3f64.sqrt() * side]])
    }

    /// Black-box domain. The bounding box must contain the region.
    pub fn indicator<F>(test: F, lo: Vec<f64>, hi: Vec<f64>) -> Result<Self>
    where
        F: Fn(&[f64]) -> bool + Send + Sync + 'static,
    {
        check_box(&lo, &hi)?;
        let dim = lo.len();
        Ok(Domain { shape: Shape::Indicator { test: Arc::new(test), lo, hi }, dim })
    }

    pub fn from_spec(spec: DomainSpec) -> Result<Self> {
        match spec {
            DomainSpec::Interval { a, b } => Self::interval(a, b),
            DomainSpec::Box { lo, hi } => Self::cuboid(lo, hi),
            DomainSpec::Ball { center, radius } => Self::ball(center, radius),
            DomainSpec::Polygon { vertices } => Self::polygon(vertices),
        }
    }

    /// The JSON form, or `None` for indicator domains.
    pub fn to_spec(&self) -> Option<DomainSpec> {
        Some(match &self.shape {
            Shape::Interval { a, b } => DomainSpec::Interval { a: *a, b: *b },
            Shape::Box { lo, hi } => DomainSpec::Box { lo: lo.clone(), hi: hi.clone() },
            Shape::Ball { center, radius } => {
                DomainSpec::Ball { center: center.clone(), radius: *radius }
            }
            Shape::Polygon { vertices } => DomainSpec::Polygon { vertices: vertices.clone() },
            Shape::Indicator { .. } => return None,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: DomainSpec = serde_json::from_str(text)
            .map_err(|e| Error::InvalidDomain(format!("domain JSON: {e}")))?;
        Self::from_spec(spec)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Axis-aligned bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        match &self.shape {
            Shape::Interval { a, b } => (vec![*a], vec![*b]),
            Shape::Box { lo, hi } | Shape::Indicator { lo, hi, .. } => (lo.clone(), hi.clone()),
            Shape::Ball { center, radius } => (
                center.iter().map(|c| c - radius).collect(),
                center.iter().map(|c| c + radius).collect(),
            ),
            Shape::Polygon { vertices } => {
                let mut lo = [f64::INFINITY; 2];
                let mut hi = [f64::NEG_INFINITY; 2];
                for v in vertices {
                    for k in 0..2 {
                        lo[k] = lo[k].min(v[k]);
                        hi[k] = hi[k].max(v[k]);
                    }
                }
                (lo.to_vec(), hi.to_vec())
            }
        }
    }

    /// Lebesgue measure, when it has a closed form.
    pub fn volume(&self) -> Option<f64> {
        match &self.shape {
            Shape::Interval { a, b } => Some(b - a),
            Shape::Box { lo, hi } => Some(lo.iter().zip(hi).map(|(l, h)| h - l).product()),
            Shape::Ball { radius, .. } => Some(unit_ball_volume(self.dim) * radius.powi(self.dim as i32)),
            Shape::Polygon { vertices } => Some(signed_area(vertices).abs()),
            Shape::Indicator { .. } => None,
        }
    }

    /// True iff `x` lies in the open region.
    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        self.check_point(x)?;
        Ok(self.contains_unchecked(x))
    }

    pub(crate) fn contains_unchecked(&self, x: &[f64]) -> bool {
        match &self.shape {
            Shape::Interval { a, b } => *a < x[0] && x[0] < *b,
            Shape::Box { lo, hi } => x.iter().zip(lo.iter().zip(hi)).all(|(x, (l, h))| l < x && x < h),
            Shape::Ball { center, radius } => dist2(x, center) < radius * radius,
            Shape::Polygon { vertices } => {
                let p = [x[0], x[1]];
                let scale = self.scale();
                polygon_edge_distance(vertices, p) > 1e-14 * scale && winding_inside(vertices, p)
            }
            Shape::Indicator { test, .. } => test(x),
        }
    }

    /// Distance from an interior point to the boundary. `None` for indicator
    /// domains, whose boundary is unknown.
    pub fn boundary_distance(&self, x: &[f64]) -> Option<f64> {
        match &self.shape {
            Shape::Interval { a, b } => Some((x[0] - a).min(b - x[0])),
            Shape::Box { lo, hi } => Some(
                x.iter()
                    .zip(lo.iter().zip(hi))
                    .map(|(x, (l, h))| (x - l).min(h - x))
                    .fold(f64::INFINITY, f64::min),
            ),
            Shape::Ball { center, radius } => Some(radius - dist2(x, center).sqrt()),
            Shape::Polygon { vertices } => Some(polygon_edge_distance(vertices, [x[0], x[1]])),
            Shape::Indicator { .. } => None,
        }
    }

    /// Largest bounding-box side; used to scale geometric tolerances.
    pub fn scale(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        lo.iter().zip(&hi).map(|(l, h)| h - l).fold(0.0, f64::max)
    }

    pub(crate) fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(())
    }
}

fn check_box(lo: &[f64], hi: &[f64]) -> Result<()> {
    if lo.is_empty() || lo.len() != hi.len() {
        return Err(Error::InvalidDomain(format!(
            "box corners have lengths {} and {}",
            lo.len(),
            hi.len()
        )));
    }
    for (l, h) in lo.iter().zip(hi) {
        if !(l.is_finite() && h.is_finite() && l < h) {
            return Err(Error::InvalidDomain(format!("box side [{l}, {h}] has no positive length")));
        }
    }
    Ok(())
}

fn check_polygon(v: &[[f64; 2]]) -> Result<()> {
    let n = v.len();
    if n < 3 {
        return Err(Error::InvalidDomain(format!("polygon needs at least 3 vertices, got {n}")));
    }
    if v.iter().flatten().any(|c| !c.is_finite()) {
        return Err(Error::InvalidDomain("polygon vertex is not finite".into()));
    }
    if signed_area(v).abs() == 0.0 {
        return Err(Error::InvalidDomain("polygon has zero area".into()));
    }
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        if a == b {
            return Err(Error::InvalidDomain(format!("polygon edge {i} is degenerate")));
        }
        for j in i + 1..n {
            let (c, d) = (v[j], v[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Adjacent edges share one vertex; they may not fold back onto each other.
                let shared = if j == i + 1 { b } else { a };
                let (p, q) = if j == i + 1 { (a, d) } else { (b, c) };
                if cross(shared, p, q) == 0.0 && dot_sub(shared, p, q) > 0.0 {
                    return Err(Error::InvalidDomain(format!("polygon edges {i} and {j} overlap")));
                }
            } else if segments_intersect(a, b, c, d) {
                return Err(Error::InvalidDomain(format!("polygon edges {i} and {j} intersect")));
            }
        }
    }
    Ok(())
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn dot_sub(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[0] - o[0]) + (a[1] - o[1]) * (b[1] - o[1])
}

fn on_segment(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

fn segments_intersect(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

fn signed_area(v: &[[f64; 2]]) -> f64 {
    let n = v.len();
    0.5 * (0..n).map(|i| {
        let (a, b) = (v[i], v[(i + 1) % n]);
        a[0] * b[1] - b[0] * a[1]
    })
    .sum::<f64>()
}

fn winding_inside(v: &[[f64; 2]], p: [f64; 2]) -> bool {
    let n = v.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if p[0] < x {
                inside = !inside;
            }
        }
    }
    inside
}

fn point_segment_distance(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let s = ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0);
    let dx = ap[0] - s * ab[0];
    let dy = ap[1] - s * ab[1];
    (dx * dx + dy * dy).sqrt()
}

fn polygon_edge_distance(v: &[[f64; 2]], p: [f64; 2]) -> f64 {
    let n = v.len();
    (0..n)
        .map(|i| point_segment_distance(v[i], v[(i + 1) % n], p))
        .fold(f64::INFINITY, f64::min)
}

fn dist2(x: &[f64], c: &[f64]) -> f64 {
    x.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// Volume of the unit ball in `R^d`: `pi^{d/2} / Gamma(d/2 + 1)`.
pub fn unit_ball_volume(d: usize) -> f64 {
    let half = d as f64 / 2.0;
    (half * std::f64::consts::PI.ln() - crate::analytic::log_gamma_unchecked(half + 1.0)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_membership_is_strict() {
        let disc = Domain::unit_ball(2).unwrap();
        assert!(disc.contains(&[0.0, 0.0]).unwrap());
        assert!(!disc.contains(&[1.0, 0.0]).unwrap());
        assert!(disc.contains(&[0.5, 0.5]).unwrap());
    }

    #[test]
    fn interval_membership() {
        let d = Domain::interval(0.0, 1.0).unwrap();
        assert!(d.contains(&[0.5]).unwrap());
        assert!(!d.contains(&[0.0]).unwrap());
        assert!(!d.contains(&[1.0]).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let disc = Domain::unit_ball(2).unwrap();
        assert!(matches!(
            disc.contains(&[0.0]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn invalid_shapes_rejected() {
        assert!(Domain::ball(vec![0.0, 0.0], 0.0).is_err());
        assert!(Domain::interval(1.0, 1.0).is_err());
        assert!(Domain::cuboid(vec![0.0, 0.0], vec![1.0]).is_err());
        // bow-tie
        let bow = vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]];
        assert!(Domain::polygon(bow).is_err());
        assert!(Domain::polygon(vec![[0.0, 0.0], [1.0, 0.0]]).is_err());
    }

    #[test]
    fn l_shape_is_simple_and_excludes_the_notch() {
        let l = Domain::polygon(vec![
            [0.0, 0.0],
            [1.0, 0.0],
            [1.0, 0.5],
            [0.5, 0.5],
            [0.5, 1.0],
            [0.0, 1.0],
        ])
        .unwrap();
        assert!(l.contains(&[0.25, 0.75]).unwrap());
        assert!(!l.contains(&[0.75, 0.75]).unwrap());
        assert!(!l.contains(&[0.5, 0.75]).unwrap());
        assert!((l.volume().unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn triangle_boundary_distance_at_centroid_is_inradius() {
        let t = Domain::equilateral_triangle(1.0).unwrap();
        let c = [0.5, 3f64.sqrt() / 6.0];
        assert!(t.contains(&c).unwrap());
        assert!((t.boundary_distance(&c).unwrap() - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"shape": "ball", "center": [0.0, 0.0], "radius": 2.0}"#;
        let d = Domain::from_json(text).unwrap();
        assert_eq!(d.dim(), 2);
        let back = serde_json::to_string(&d.to_spec().unwrap()).unwrap();
        assert_eq!(Domain::from_json(&back).unwrap().to_spec(), d.to_spec());
        assert!(Domain::from_json(r#"{"shape": "torus"}"#).is_err());
    }

    #[test]
    fn unit_ball_volumes() {
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-14);
        assert!((unit_ball_volume(2) - std::f64::consts::PI).abs() < 1e-14);
        assert!((unit_ball_volume(3) - 4.0 / 3.0 * std::f64::consts::PI).abs() < 1e-13);
    }
}
