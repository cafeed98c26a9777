use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix determinant {det} is not 1 (tolerance {tol})")]
    NotUnimodular { det: f64, tol: f64 },
    #[error("non-finite matrix entry")]
    NonFinite,
    #[error("gamma function pole at z = {0}")]
    GammaPole(f64),
    #[error("c-function pole at j = {j}, mu = 0")]
    CFunctionPole { j: i32 },
    #[error("point at the origin is not in the plane model")]
    Origin,
    #[error("element is not diagonal")]
    NotDiagonal,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("spectral grids do not match")]
    GridMismatch,
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("bump support overflows the quadrature box: {0}")]
    SupportOverflow(String),
    #[error("wave-packet hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
