//! Bounded nonnegative potentials built from named primitives.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Grid, GridField};

/// A potential `V(x)`, sampled at grid nodes without averaging.
///
/// JSON form: `{"kind": "constant", "value": 5}`,
/// `{"kind": "box_indicator", "lo": [0, 0], "hi": [0.5, 1], "value": 10}`,
/// `{"kind": "radial", "center": [0, 0], "scale": 2, "power": 2}` or
/// `{"kind": "sum", "terms": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Potential {
    Constant { value: f64 },
    /// `value` on the closed box `[lo, hi]`, zero elsewhere.
    BoxIndicator { lo: Vec<f64>, hi: Vec<f64>, value: f64 },
    /// `scale * |x - center|^power`.
    Radial { center: Vec<f64>, scale: f64, power: f64 },
    Sum { terms: Vec<Potential> },
}

impl Potential {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("potential JSON: {e}")))
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Potential::Constant { value } => *value,
            Potential::BoxIndicator { lo, hi, value } => {
                let inside = x.iter().zip(lo.iter().zip(hi)).all(|(x, (l, h))| l <= x && x <= h);
                if inside {
                    *value
                } else {
                    0.0
                }
            }
            Potential::Radial { center, scale, power } => {
                let r = x.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
                scale * r.powf(*power)
            }
            Potential::Sum { terms } => terms.iter().map(|t| t.eval(x)).sum(),
        }
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        let mismatch = |got: usize| Err(Error::DimensionMismatch { expected: d, got });
        match self {
            Potential::Constant { .. } => Ok(()),
            Potential::BoxIndicator { lo, hi, .. } => {
                if lo.len() != d {
                    mismatch(lo.len())
                } else if hi.len() != d {
                    mismatch(hi.len())
                } else {
                    Ok(())
                }
            }
            Potential::Radial { center, .. } if center.len() != d => mismatch(center.len()),
            Potential::Radial { .. } => Ok(()),
            Potential::Sum { terms } => terms.iter().try_for_each(|t| t.check_dim(d)),
        }
    }

    /// Samples the potential at the interior nodes of `grid`.
    pub fn sample(&self, grid: &Arc<Grid>) -> Result<GridField> {
        self.check_dim(grid.dim())?;
        let field = GridField::from_fn(grid.clone(), |x| self.eval(x))?;
        if let Some((node, &value)) = field.values().iter().enumerate().find(|(_, v)| **v < 0.0) {
            return Err(Error::NegativePotential { node, value });
        }
        Ok(field)
    }
}
