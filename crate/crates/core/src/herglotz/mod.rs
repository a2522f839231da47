//! Discretization of Herglotz integrals: cap covers of the sphere with
//! density sampling (plane-wave sums) and bump extension followed by ball
//! covers in Fourier space (Bessel sums).

mod ball;
mod cover;
mod discretize;

use thiserror::Error;

pub use ball::{ball_volume, BallCell, BallCellCover};
pub use cover::{
    build_cap_cover, sphere_area, CapCell, CellAnchor, CoverOptions, SphericalCapCover,
    DEFAULT_MAX_CELLS,
};
pub use discretize::{
    discretize_density, discretize_fourier, discretize_transform, extend_and_transform,
    BumpProfile, FourierDiscretization, FourierOptions, FourierTransform,
};

use crate::waves::WaveError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HerglotzError {
    #[error("dimension n = {n} is not supported here")]
    UnsupportedDimension { n: usize },
    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0}")]
    InvalidParameter(String),
    #[error("cover needs more than {limit} cells")]
    TooManyCells { limit: usize },
    #[error("tail mass {tail:e} exceeds the requested bound {requested:e}")]
    TailUnreachable { tail: f64, requested: f64 },
    #[error(transparent)]
    Wave(#[from] WaveError),
}
