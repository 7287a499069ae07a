pub mod analytic;
pub mod bounds;
pub mod cli;
pub mod domain;
pub mod error;
pub mod grid;
pub mod linalg;
pub mod mc;
pub mod potential;
pub mod semigroup;
pub mod spectral;

pub use error::{Error, Result};
