use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("grid spacing {h} leaves no interior lattice point")]
    EmptyInterior { h: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not symmetric: entry ({row}, {col}) differs from its transpose by {diff:e}")]
    NotSymmetric { row: usize, col: usize, diff: f64 },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("conjugate gradient did not converge in {iterations} iterations (relative residual {residual:e})")]
    CgNoConvergence { iterations: usize, residual: f64 },

    #[error("negative curvature detected at CG iteration {iteration}: matrix is not positive definite")]
    Indefinite { iteration: usize },

    #[error("eigen iteration did not converge in {iterations} iterations (residual {residual:e})")]
    EigNoConvergence { iterations: usize, residual: f64 },

    #[error("negative potential value {value} at node {node}")]
    NegativePotential { node: usize, value: f64 },

    #[error("no sign change found while bracketing the first zero of J_{nu}")]
    BracketFailure { nu: f64 },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("under-resolved discretization: {0}")]
    UnderResolved(String),

    #[error("Monte Carlo path exceeded {cap} steps without leaving the domain")]
    PathCapExceeded { cap: u64 },

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
