use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 2, got {0}")]
    Dimension(usize),

    #[error("gamma = {gamma} outside the open interval ({lower}, 1) for N = {dim}; the lower bound is -1/(N-1)")]
    Gamma { dim: usize, gamma: f64, lower: f64 },

    #[error(
        "shape s = {shape} outside [{lower}, 0] for N = {dim}; the axis weight would be negative"
    )]
    Shape { dim: usize, shape: f64, lower: f64 },

    #[error("dimension mismatch: ensemble has N = {ensemble}, measurement has N = {measurement}")]
    DimensionMismatch { ensemble: usize, measurement: usize },

    #[error("every restart drew a numerically singular frame operator ({attempts} attempts)")]
    SingularStart { attempts: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
