//! Special functions: gamma, Bessel functions of the first kind, symmetric
//! Jacobi polynomials, the normalized ultraspherical kernel and real
//! spherical harmonics on `S^1`/`S^2`.

mod bessel;
mod gamma;
mod harmonics;
mod jacobi;

use thiserror::Error;

pub use bessel::{bessel_j, bessel_kernel, hyperspherical_bessel, BesselOrder};
pub use gamma::{gamma, gamma_ratio, ln_gamma};
pub use harmonics::{
    harmonic_basis, harmonic_count, harmonic_offset, multiplicity, sph_harmonic,
};
pub use jacobi::{gegenbauer_norm, jacobi_poly, mehler_heine_pair, GegenbauerKernel, COMPENSATED_DEGREE};

pub(crate) use bessel::{hyperspherical_unchecked, kernel_unchecked};
pub(crate) use harmonics::basis_unchecked;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    #[error("argument must be non-negative, got {value}")]
    NegativeArgument { value: f64 },
    #[error("argument {value} lies outside [-1, 1]")]
    OutOfDomain { value: f64 },
    #[error("{0}")]
    InvalidParameter(String),
    #[error("vector has norm {norm}, expected a unit vector")]
    NotUnitVector { norm: f64 },
    #[error("dimension {n} is not supported here")]
    UnsupportedDimension { n: usize },
    #[error("basis index {index} outside 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },
}
