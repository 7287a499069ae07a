//! Uniform Cartesian lattices with a Dirichlet mask.
//!
//! The lattice is anchored at the lower corner of the domain's bounding box
//! and has the same spacing `h` along every axis. A node is interior iff its
//! center lies strictly inside the domain; every other node carries an
//! implicit zero value.

use std::sync::Arc;

use crate::domain::Domain;
use crate::error::{Error, Result};

const NOT_INTERIOR: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct Grid {
    domain: Domain,
    h: f64,
    origin: Vec<f64>,
    dims: Vec<usize>,
    strides: Vec<usize>,
    lattice_to_interior: Vec<u32>,
    interior_to_lattice: Vec<usize>,
}

/// Builds the masked lattice of spacing `h` over `domain`.
pub fn discretize(domain: &Domain, h: f64) -> Result<Arc<Grid>> {
    Grid::new(domain, h).map(Arc::new)
}

impl Grid {
    pub fn new(domain: &Domain, h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidArgument(format!("grid spacing {h} must be positive")));
        }
        let (lo, hi) = domain.bounding_box();
        let d = domain.dim();
        let dims: Vec<usize> = lo
            .iter()
            .zip(&hi)
            .map(|(l, u)| ((u - l) / h - 1e-9).ceil().max(0.0) as usize + 1)
            .collect();
        let mut strides = vec![1usize; d];
        for k in 1..d {
            strides[k] = strides[k - 1] * dims[k - 1];
        }
        let total = strides[d - 1] * dims[d - 1];
        if total >= NOT_INTERIOR as usize {
            return Err(Error::InvalidArgument(format!("lattice with {total} nodes is too large")));
        }

        let margin = 1e-9 * h;
        let mut lattice_to_interior = vec![NOT_INTERIOR; total];
        let mut interior_to_lattice = Vec::new();
        let mut x = vec![0.0; d];
        let mut idx = vec![0usize; d];
        for lin in 0..total {
            let mut rem = lin;
            for k in 0..d {
                idx[k] = rem % dims[k];
                rem /= dims[k];
                x[k] = lo[k] + idx[k] as f64 * h;
            }
            let inside = domain.contains_unchecked(&x)
                && domain.boundary_distance(&x).map_or(true, |dist| dist > margin);
            if inside {
                lattice_to_interior[lin] = interior_to_lattice.len() as u32;
                interior_to_lattice.push(lin);
            }
        }
        if interior_to_lattice.is_empty() {
            return Err(Error::EmptyInterior { h });
        }
        Ok(Grid {
            domain: domain.clone(),
            h,
            origin: lo,
            dims,
            strides,
            lattice_to_interior,
            interior_to_lattice,
        })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    /// Lattice node counts per axis, including exterior nodes.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn n_interior(&self) -> usize {
        self.interior_to_lattice.len()
    }

    /// Cell volume `h^d`.
    pub fn cell_volume(&self) -> f64 {
        self.h.powi(self.dim() as i32)
    }

    pub fn lattice_coords(&self, node: usize) -> Vec<usize> {
        let mut rem = self.interior_to_lattice[node];
        self.dims
            .iter()
            .map(|&n| {
                let i = rem % n;
                rem /= n;
                i
            })
            .collect()
    }

    /// Physical coordinates of interior node `node`.
    pub fn point(&self, node: usize) -> Vec<f64> {
        self.lattice_coords(node)
            .iter()
            .zip(&self.origin)
            .map(|(&i, o)| o + i as f64 * self.h)
            .collect()
    }

    /// Interior index of the lattice point with multi-index `idx`, if interior.
    pub fn interior_index(&self, idx: &[usize]) -> Option<usize> {
        let mut lin = 0;
        for ((&i, &n), &s) in idx.iter().zip(&self.dims).zip(&self.strides) {
            if i >= n {
                return None;
            }
            lin += i * s;
        }
        match self.lattice_to_interior[lin] {
            NOT_INTERIOR => None,
            k => Some(k as usize),
        }
    }

    /// Interior neighbor of `node` one step along `axis` (forward if `forward`).
    /// `None` means the neighbor carries the Dirichlet zero.
    pub fn neighbor(&self, node: usize, axis: usize, forward: bool) -> Option<usize> {
        let lin = self.interior_to_lattice[node];
        let i = (lin / self.strides[axis]) % self.dims[axis];
        let target = if forward {
            if i + 1 >= self.dims[axis] {
                return None;
            }
            lin + self.strides[axis]
        } else {
            if i == 0 {
                return None;
            }
            lin - self.strides[axis]
        };
        match self.lattice_to_interior[target] {
            NOT_INTERIOR => None,
            k => Some(k as usize),
        }
    }

    /// Interior node closest to `x`, if the closest lattice point is interior.
    pub fn nearest_node(&self, x: &[f64]) -> Option<usize> {
        let idx: Option<Vec<usize>> = x
            .iter()
            .zip(&self.origin)
            .map(|(x, o)| {
                let r = ((x - o) / self.h).round();
                (r >= 0.0).then_some(r as usize)
            })
            .collect();
        self.interior_index(&idx?)
    }

    /// Multilinear interpolation of nodal `values` at `x`, with zero at
    /// non-interior nodes.
    pub fn interpolate(&self, values: &[f64], x: &[f64]) -> f64 {
        let d = self.dim();
        let mut base = Vec::with_capacity(d);
        let mut frac = Vec::with_capacity(d);
        for (x, o) in x.iter().zip(&self.origin) {
            let s = (x - o) / self.h;
            if s < 0.0 {
                return 0.0;
            }
            let f = s.floor();
            base.push(f as usize);
            frac.push(s - f);
        }
        let mut total = 0.0;
        let mut idx = vec![0usize; d];
        for corner in 0..(1usize << d) {
            let mut w = 1.0;
            for k in 0..d {
                let up = (corner >> k) & 1 == 1;
                idx[k] = base[k] + up as usize;
                w *= if up { frac[k] } else { 1.0 - frac[k] };
            }
            if w == 0.0 {
                continue;
            }
            if let Some(node) = self.interior_index(&idx) {
                total += w * values[node];
            }
        }
        total
    }
}

/// Scalar field on the interior nodes of a grid.
#[derive(Debug, Clone)]
pub struct GridField {
    grid: Arc<Grid>,
    values: Vec<f64>,
}

impl GridField {
    pub fn new(grid: Arc<Grid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_interior() {
            return Err(Error::DimensionMismatch { expected: grid.n_interior(), got: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("field value at node {i} is not finite")));
        }
        Ok(GridField { grid, values })
    }

    pub fn constant(grid: Arc<Grid>, value: f64) -> Self {
        let n = grid.n_interior();
        GridField { grid, values: vec![value; n] }
    }

    /// Samples `f` at every interior node.
    pub fn from_fn(grid: Arc<Grid>, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        let values = (0..grid.n_interior()).map(|i| f(&grid.point(i))).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Index and value of the largest entry.
    pub fn argmax(&self) -> (usize, f64) {
        self.values
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best })
    }

    pub fn interpolate(&self, x: &[f64]) -> f64 {
        self.grid.interpolate(&self.values, x)
    }
}
