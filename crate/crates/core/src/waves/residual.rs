//! Finite-difference Helmholtz residual.

use serde::{Deserialize, Serialize};

use super::{Parts, WaveError, WaveSpec, DEFAULT_TOLERANCE};
use crate::analysis::fd::laplacian;
use crate::grid::{EvaluationGrid, GridSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HelmholtzResidual {
    /// `sup |Δ_h φ + φ|` over interior (masked) nodes, real and imaginary
    /// parts alike.
    pub sup: f64,
    /// `n h² sup|φ| / 12`, the size of the stencil error for a unit
    /// frequency wave.
    pub expected_scale: f64,
    pub step: f64,
    pub nodes: usize,
}

pub fn helmholtz_residual(spec: &WaveSpec, grid: &GridSpec) -> Result<HelmholtzResidual, WaveError> {
    if grid.n != spec.n() {
        return Err(WaveError::DimensionMismatch {
            expected: spec.n(),
            got: grid.n,
        });
    }
    grid.require_nodes(5)?;
    let radius = grid.corner_radius();
    let ev = spec
        .evaluator(radius, DEFAULT_TOLERANCE)?
        .with_parts(Parts::Both);
    let samples = EvaluationGrid::sample(grid, &ev)?;
    let strides = grid.strides();
    let nodes = grid.interior(1);
    let mut sup = 0.0f64;
    let mut amp = 0.0f64;
    for &idx in &nodes {
        for c in 0..samples.components {
            let u = samples.value(idx, c);
            amp = amp.max(u.abs());
            sup = sup.max((laplacian(&samples, &strides, idx, c) + u).abs());
        }
    }
    let h = grid.step;
    Ok(HelmholtzResidual {
        sup,
        expected_scale: grid.n as f64 * h * h * amp / 12.0,
        step: h,
        nodes: nodes.len(),
    })
}
