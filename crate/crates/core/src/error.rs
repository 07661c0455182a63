use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by constructions and evaluations in this crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The point lies inside (or on) the compact set, or outside the
    /// lemniscatic domain, depending on which side of the map was called.
    #[error("point {0} is outside the domain of definition")]
    OutsideDomain(Complex64),

    #[error("evaluation at {0} is too close to a pole")]
    NearPole(Complex64),

    #[error("argument {0} lies on the branch cut of the principal root")]
    BranchCut(Complex64),

    #[error("{what} failed to converge after {iterations} iterations")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("operation `{0}` is not supported for this map family")]
    Unsupported(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
