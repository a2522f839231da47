//! Verification layer: derivative norms of approximation errors, nodal
//! sets and their structural stability.

pub mod error;
pub mod export;
pub mod fd;
pub mod nodal;

use thiserror::Error;

pub use error::{cr_error, cr_error_fields};
pub use nodal::{
    hausdorff, localized_nodal_check, match_components, nodal_extract, stability_margin, ComponentKind, ComponentSummary, NodalCheckOptions,
    NodalComponent, NodalMatch, NodalReport, TIE_BREAK,
};

use crate::grid::GridError;
use crate::waves::WaveError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("derivative order {order} is not supported (at most 2)")]
    OrderTooHigh { order: usize },
    #[error("grid has no interior nodes for derivatives of order {order}")]
    NoInteriorNodes { order: usize },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Wave(#[from] WaveError),
}
