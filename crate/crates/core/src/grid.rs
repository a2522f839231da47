//! Uniform evaluation grids and the `Field` abstraction used to sample
//! waves and rescaled eigenfunctions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("grid step must be positive, got {0}")]
    BadStep(f64),
    #[error("grid has {nodes} nodes along an axis, need at least {needed}")]
    TooCoarse { nodes: usize, needed: usize },
    #[error("field has dimension {field}, grid has dimension {grid}")]
    DimensionMismatch { field: usize, grid: usize },
    #[error("grid would hold {nodes} nodes, above the limit {limit}")]
    TooLarge { nodes: usize, limit: usize },
}

/// Upper bound on sampled nodes.
pub const MAX_GRID_NODES: usize = 50_000_000;

/// A real `R^m`-valued function on `R^n`.
pub trait Field: Sync {
    fn dim(&self) -> usize;
    fn components(&self) -> usize;
    fn eval_into(&self, x: &[f64], out: &mut [f64]);

    fn eval(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.components()];
        self.eval_into(x, &mut out);
        out
    }
}

impl<T: Field + ?Sized> Field for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn components(&self) -> usize {
        (**self).components()
    }
    fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        (**self).eval_into(x, out)
    }
}

/// A [`Field`] backed by a closure.
pub struct FnField<F> {
    dim: usize,
    components: usize,
    f: F,
}

impl<F> FnField<F>
where
    F: Fn(&[f64], &mut [f64]) + Sync,
{
    pub fn new(dim: usize, components: usize, f: F) -> Self {
        Self { dim, components, f }
    }
}

impl<F> Field for FnField<F>
where
    F: Fn(&[f64], &mut [f64]) + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }
    fn components(&self) -> usize {
        self.components
    }
    fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        (self.f)(x, out)
    }
}

/// Scalar field from a closure `R^n -> R`.
pub fn scalar_field<F>(dim: usize, f: F) -> FnField<impl Fn(&[f64], &mut [f64]) + Sync>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    FnField::new(dim, 1, move |x: &[f64], out: &mut [f64]| out[0] = f(x))
}

/// Stack the components of several fields on the same domain.
pub struct Stacked<'a> {
    parts: Vec<&'a dyn Field>,
}

impl<'a> Stacked<'a> {
    pub fn new(parts: Vec<&'a dyn Field>) -> Self {
        Self { parts }
    }
}

impl Field for Stacked<'_> {
    fn dim(&self) -> usize {
        self.parts[0].dim()
    }
    fn components(&self) -> usize {
        self.parts.iter().map(|p| p.components()).sum()
    }
    fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        let mut at = 0;
        for p in &self.parts {
            let m = p.components();
            p.eval_into(x, &mut out[at..at + m]);
            at += m;
        }
    }
}

/// Geometry of a uniform grid: node `i` along axis `d` sits at
/// `lo[d] + i * step`. An optional ball mask flags the nodes with
/// `|x| <= mask_radius`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    pub lo: Vec<f64>,
    pub step: f64,
    pub counts: Vec<usize>,
    pub mask_radius: Option<f64>,
}

impl GridSpec {
    /// Cube `[-half_width, half_width]^n` with the origin on a node.
    pub fn cube(n: usize, half_width: f64, step: f64) -> Result<Self, GridError> {
        if !(step > 0.0) {
            return Err(GridError::BadStep(step));
        }
        let k = (half_width / step + 1e-9).floor() as usize;
        let count = 2 * k + 1;
        let total = count.checked_pow(n as u32).unwrap_or(usize::MAX);
        if total > MAX_GRID_NODES {
            return Err(GridError::TooLarge {
                nodes: total,
                limit: MAX_GRID_NODES,
            });
        }
        Ok(Self {
            n,
            lo: vec![-(k as f64) * step; n],
            step,
            counts: vec![count; n],
            mask_radius: None,
        })
    }

    /// Cube around the ball `B_radius`, padded by `pad` nodes so that
    /// stencils centred on masked nodes stay inside the grid.
    pub fn ball(n: usize, radius: f64, step: f64, pad: usize) -> Result<Self, GridError> {
        let mut g = Self::cube(n, radius + pad as f64 * step, step)?;
        g.mask_radius = Some(radius);
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.n];
        for d in (0..self.n.saturating_sub(1)).rev() {
            s[d] = s[d + 1] * self.counts[d + 1];
        }
        s
    }

    /// Multi-index of flat index `idx` (last axis fastest).
    pub fn multi_index(&self, mut idx: usize, out: &mut [usize]) {
        for d in (0..self.n).rev() {
            out[d] = idx % self.counts[d];
            idx /= self.counts[d];
        }
    }

    pub fn node_into(&self, idx: usize, out: &mut [f64]) {
        let mut rest = idx;
        for d in (0..self.n).rev() {
            let i = rest % self.counts[d];
            rest /= self.counts[d];
            out[d] = self.lo[d] + i as f64 * self.step;
        }
    }

    pub fn node(&self, idx: usize) -> Vec<f64> {
        let mut x = vec![0.0; self.n];
        self.node_into(idx, &mut x);
        x
    }

    pub fn in_mask(&self, idx: usize) -> bool {
        match self.mask_radius {
            None => true,
            Some(r) => {
                let mut x = vec![0.0; self.n];
                self.node_into(idx, &mut x);
                x.iter().map(|v| v * v).sum::<f64>() <= r * r * (1.0 + 1e-12)
            }
        }
    }

    /// Flat indices of masked nodes whose `reach`-neighbourhood along every
    /// axis lies inside the grid.
    pub fn interior(&self, reach: usize) -> Vec<usize> {
        let mut mi = vec![0; self.n];
        (0..self.len())
            .filter(|&idx| {
                self.multi_index(idx, &mut mi);
                mi.iter()
                    .zip(&self.counts)
                    .all(|(&i, &c)| i >= reach && i + reach < c)
                    && self.in_mask(idx)
            })
            .collect()
    }

    /// Largest node norm, i.e. the distance from the origin to the farthest corner.
    pub fn corner_radius(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.counts)
            .map(|(lo, c)| {
                let hi = lo + (*c as f64 - 1.0) * self.step;
                lo.abs().max(hi.abs()).powi(2)
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn require_nodes(&self, needed: usize) -> Result<(), GridError> {
        let nodes = self.counts.iter().copied().min().unwrap_or(0);
        if nodes < needed {
            return Err(GridError::TooCoarse { nodes, needed });
        }
        Ok(())
    }
}

/// Samples of an `R^m`-valued field on a [`GridSpec`], node-major.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationGrid {
    pub spec: GridSpec,
    pub components: usize,
    pub values: Vec<f64>,
}

impl EvaluationGrid {
    /// Samples `field` at every node. With a ball mask of radius `R`, nodes
    /// farther than `R + 2h` from the origin are skipped and hold NaN; they
    /// lie outside every stencil centred on a masked node.
    pub fn sample(spec: &GridSpec, field: &dyn Field) -> Result<Self, GridError> {
        if field.dim() != spec.n {
            return Err(GridError::DimensionMismatch {
                field: field.dim(),
                grid: spec.n,
            });
        }
        let m = field.components();
        let cutoff = spec.mask_radius.map(|r| (r + 2.0 * spec.step).powi(2));
        let mut values = vec![0.0; spec.len() * m];
        values
            .par_chunks_mut(m.max(1) * 256)
            .enumerate()
            .for_each(|(chunk, out)| {
                let mut x = vec![0.0; spec.n];
                for (j, v) in out.chunks_mut(m).enumerate() {
                    spec.node_into(chunk * 256 + j, &mut x);
                    match cutoff {
                        Some(c) if x.iter().map(|t| t * t).sum::<f64>() > c => v.fill(f64::NAN),
                        _ => field.eval_into(&x, v),
                    }
                }
            });
        Ok(Self {
            spec: spec.clone(),
            components: m,
            values,
        })
    }

    #[inline]
    pub fn value(&self, idx: usize, component: usize) -> f64 {
        self.values[idx * self.components + component]
    }

    /// Component `c` as its own single-component grid.
    pub fn component(&self, c: usize) -> EvaluationGrid {
        EvaluationGrid {
            spec: self.spec.clone(),
            components: 1,
            values: self
                .values
                .chunks(self.components)
                .map(|v| v[c])
                .collect(),
        }
    }

    /// Node-wise `self - other`.
    pub fn difference(&self, other: &EvaluationGrid) -> EvaluationGrid {
        assert_eq!(self.spec, other.spec);
        assert_eq!(self.components, other.components);
        EvaluationGrid {
            spec: self.spec.clone(),
            components: self.components,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Largest finite `|value|`.
    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .filter(|v| v.is_finite())
            .fold(0.0, |m, v| m.max(v.abs()))
    }
}
