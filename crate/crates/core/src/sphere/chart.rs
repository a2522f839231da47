//! Normal geodesic coordinates on `S^n`.

use serde::{Deserialize, Serialize};

use super::SphereError;

/// Points closer than this to the antipode of the base point (or to each
/// other, for multi-point synthesis) are rejected.
pub const ANTIPODAL_TOLERANCE: f64 = 1e-6;

/// Exponential map at `p₀ ∈ S^n`: `x ↦ cos|x| p₀ + sin|x| (E x)/|x|` for an
/// orthonormal tangent frame `E`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeodesicChart {
    n: usize,
    base: Vec<f64>,
    frame: Vec<Vec<f64>>,
}

impl GeodesicChart {
    /// Chart at `base ∈ S^n ⊂ R^{n+1}`; the frame comes from Gram–Schmidt on
    /// the coordinate vectors.
    pub fn new(base: &[f64]) -> Result<Self, SphereError> {
        let dim = base.len();
        if dim < 2 {
            return Err(SphereError::InvalidParameter("base point needs n + 1 >= 2 coordinates".into()));
        }
        let norm = base.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(SphereError::NotUnitVector { norm });
        }
        let base: Vec<f64> = base.iter().map(|v| v / norm).collect();
        let mut basis: Vec<Vec<f64>> = vec![base.clone()];
        for i in 0..dim {
            let mut v = vec![0.0; dim];
            v[i] = 1.0;
            for _ in 0..2 {
                for b in &basis {
                    let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                    v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
                }
            }
            let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if len > 1e-8 {
                v.iter_mut().for_each(|x| *x /= len);
                basis.push(v);
            }
            if basis.len() == dim {
                break;
            }
        }
        let frame = basis.split_off(1);
        Ok(Self {
            n: dim - 1,
            base,
            frame,
        })
    }

    /// Chart at the last coordinate vector `e_{n+1}`.
    pub fn north(n: usize) -> Self {
        let mut p = vec![0.0; n + 1];
        p[n] = 1.0;
        Self::new(&p).expect("unit vector")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &[f64] {
        &self.base
    }

    pub fn frame(&self) -> &[Vec<f64>] {
        &self.frame
    }

    /// Radius of the ball on which the chart is a diffeomorphism.
    pub fn radius(&self) -> f64 {
        std::f64::consts::PI
    }

    pub fn map(&self, x: &[f64]) -> Result<Vec<f64>, SphereError> {
        if x.len() != self.n {
            return Err(SphereError::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if r >= self.radius() {
            return Err(SphereError::OutsideChart { norm: r });
        }
        Ok(self.map_unchecked(x))
    }

    pub(crate) fn map_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if r == 0.0 {
            return self.base.clone();
        }
        let (s, c) = r.sin_cos();
        let mut p: Vec<f64> = self.base.iter().map(|b| c * b).collect();
        for (xi, e) in x.iter().zip(&self.frame) {
            let w = s * xi / r;
            p.iter_mut().zip(e).for_each(|(pi, ei)| *pi += w * ei);
        }
        p
    }

    pub fn inverse(&self, p: &[f64]) -> Result<Vec<f64>, SphereError> {
        if p.len() != self.n + 1 {
            return Err(SphereError::DimensionMismatch {
                expected: self.n + 1,
                got: p.len(),
            });
        }
        let norm = p.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(SphereError::NotUnitVector { norm });
        }
        let anti: f64 = p.iter().zip(&self.base).map(|(a, b)| (a + b) * (a + b)).sum::<f64>().sqrt();
        if anti < ANTIPODAL_TOLERANCE {
            return Err(SphereError::AntipodalInverse);
        }
        let cos = p.iter().zip(&self.base).map(|(a, b)| a * b).sum::<f64>();
        let tangent: Vec<f64> = self
            .frame
            .iter()
            .map(|e| e.iter().zip(p).map(|(a, b)| a * b).sum())
            .collect();
        let sin = tangent.iter().map(|v| v * v).sum::<f64>().sqrt();
        if sin == 0.0 {
            return Ok(vec![0.0; self.n]);
        }
        let theta = sin.atan2(cos);
        Ok(tangent.iter().map(|v| theta * v / sin).collect())
    }
}

/// Forward map of a chart point, or (with `inverse`) chart coordinates of
/// a sphere point.
pub fn chart_map(chart: &GeodesicChart, x: &[f64], inverse: bool) -> Result<Vec<f64>, SphereError> {
    if inverse {
        chart.inverse(x)
    } else {
        chart.map(x)
    }
}
