use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("representation failed its consistency check: {0}")]
    Construction(String),

    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("CFL violation: c*dt/dx = {courant} exceeds limit {limit}")]
    Cfl { courant: f64, limit: f64 },

    #[error("non-finite value at site {site} after step at t = {time}")]
    NonFinite { site: usize, time: f64 },

    #[error("grid shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch([usize; 3], [usize; 3]),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("bad snapshot: {0}")]
    Snapshot(String),

    #[error("config parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
