#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod grid;
pub mod herglotz;
pub mod quadrature;
pub mod sphere;
pub mod torus;
pub mod specfun;
pub mod waves;
pub mod pipeline;
