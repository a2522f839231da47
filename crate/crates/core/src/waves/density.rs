//! Herglotz densities `f: S^{n-1} -> C^m`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::{check_unit, BesselSum, WaveError};
use crate::quadrature::SphereQuadrature;
use crate::specfun::basis_unchecked;

pub type DensityFn = Arc<dyn Fn(&[f64]) -> Vec<Complex64> + Send + Sync>;

#[derive(Clone)]
pub enum DensitySource {
    /// The same value everywhere.
    Constant(Vec<Complex64>),
    /// `Σ a_lk Y_lk` with coefficients laid out by `harmonic_offset`.
    Harmonics { degree: u32, coeffs: Vec<Vec<Complex64>> },
    /// Values at the nodes of `SphereQuadrature::new(n, degree)`.
    Grid {
        quad: Arc<SphereQuadrature>,
        values: Vec<Vec<Complex64>>,
    },
    /// `(2π)^{-n/2} Σ c_j e^{-i x_j·ξ}`, the density of a Bessel sum.
    Shifts(BesselSum),
    Function(DensityFn),
}

impl fmt::Debug for DensitySource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(v) => f.debug_tuple("Constant").field(v).finish(),
            Self::Harmonics { degree, .. } => {
                f.debug_struct("Harmonics").field("degree", degree).finish()
            }
            Self::Grid { quad, .. } => f
                .debug_struct("Grid")
                .field("degree", &quad.degree())
                .finish(),
            Self::Shifts(bs) => f.debug_tuple("Shifts").field(&bs.len()).finish(),
            Self::Function(_) => f.write_str("Function"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HerglotzDensity {
    n: usize,
    m: usize,
    real: bool,
    source: DensitySource,
}

impl HerglotzDensity {
    pub fn constant(n: usize, value: Vec<Complex64>) -> Result<Self, WaveError> {
        check_dim(n)?;
        let real = value.iter().all(|v| v.im == 0.0);
        Ok(Self {
            n,
            m: value.len(),
            real,
            source: DensitySource::Constant(value),
        })
    }

    /// Harmonic density on `S^1` or `S^2`; `coeffs[i]` is the `m`-vector of
    /// the `i`-th basis function.
    pub fn from_harmonics(
        n: usize,
        degree: u32,
        coeffs: Vec<Vec<Complex64>>,
        real: bool,
    ) -> Result<Self, WaveError> {
        if n != 2 && n != 3 {
            return Err(WaveError::UnsupportedDimension { n });
        }
        let count = crate::specfun::harmonic_offset(degree + 1, n);
        if coeffs.len() != count {
            return Err(WaveError::Invalid(format!(
                "expected {count} harmonic coefficients, got {}",
                coeffs.len()
            )));
        }
        let m = uniform_len(&coeffs)?;
        Ok(Self {
            n,
            m,
            real,
            source: DensitySource::Harmonics { degree, coeffs },
        })
    }

    pub fn from_grid(
        n: usize,
        degree: usize,
        values: Vec<Vec<Complex64>>,
        real: bool,
    ) -> Result<Self, WaveError> {
        let quad = SphereQuadrature::new(n, degree).map_err(|_| WaveError::UnsupportedDimension { n })?;
        if values.len() != quad.len() {
            return Err(WaveError::Invalid(format!(
                "grid of degree {degree} has {} nodes, got {} values",
                quad.len(),
                values.len()
            )));
        }
        let m = uniform_len(&values)?;
        Ok(Self {
            n,
            m,
            real,
            source: DensitySource::Grid {
                quad: Arc::new(quad),
                values,
            },
        })
    }

    pub fn from_fn<F>(n: usize, m: usize, real: bool, f: F) -> Result<Self, WaveError>
    where
        F: Fn(&[f64]) -> Vec<Complex64> + Send + Sync + 'static,
    {
        check_dim(n)?;
        Ok(Self {
            n,
            m,
            real,
            source: DensitySource::Function(Arc::new(f)),
        })
    }

    /// Density whose Herglotz wave is the given Bessel sum.
    pub fn from_bessel_sum(bs: &BesselSum) -> Self {
        Self {
            n: bs.n(),
            m: bs.m(),
            real: true,
            source: DensitySource::Shifts(bs.clone()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Whether `f(ξ) = conj f(-ξ)` is declared, making the wave real.
    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn source(&self) -> &DensitySource {
        &self.source
    }

    /// Angular degree beyond which the density has no content, when known.
    pub fn bandwidth(&self) -> Option<usize> {
        match &self.source {
            DensitySource::Constant(_) => Some(0),
            DensitySource::Harmonics { degree, .. } => Some(*degree as usize),
            DensitySource::Shifts(bs) => Some(plane_wave_degree(bs.max_center_norm())),
            DensitySource::Grid { .. } | DensitySource::Function(_) => None,
        }
    }

    pub fn eval(&self, xi: &[f64]) -> Result<Vec<Complex64>, WaveError> {
        if xi.len() != self.n {
            return Err(WaveError::DimensionMismatch {
                expected: self.n,
                got: xi.len(),
            });
        }
        check_unit(xi, 1e-10)?;
        Ok(self.eval_unchecked(xi))
    }

    pub(crate) fn eval_unchecked(&self, xi: &[f64]) -> Vec<Complex64> {
        match &self.source {
            DensitySource::Constant(v) => v.clone(),
            DensitySource::Harmonics { degree, coeffs } => {
                let basis = basis_unchecked(*degree, xi);
                let mut out = vec![Complex64::new(0.0, 0.0); self.m];
                for (y, c) in basis.iter().zip(coeffs) {
                    for (o, v) in out.iter_mut().zip(c) {
                        *o += v * y;
                    }
                }
                out
            }
            DensitySource::Grid { quad, values } => self.interpolate(quad, values, xi),
            DensitySource::Shifts(bs) => {
                let scale = (2.0 * PI).powf(-(self.n as f64) / 2.0);
                let mut out = vec![Complex64::new(0.0, 0.0); self.m];
                for t in bs.terms() {
                    let phase: f64 = -t.center.iter().zip(xi).map(|(a, b)| a * b).sum::<f64>();
                    let e = Complex64::from_polar(scale, phase);
                    for (o, c) in out.iter_mut().zip(&t.coeff) {
                        *o += e * c;
                    }
                }
                out
            }
            DensitySource::Function(f) => f(xi),
        }
    }

    fn interpolate(
        &self,
        quad: &SphereQuadrature,
        values: &[Vec<Complex64>],
        xi: &[f64],
    ) -> Vec<Complex64> {
        let az = quad.azimuth_nodes();
        let ma = az.len();
        let phi = xi[1].atan2(xi[0]).rem_euclid(2.0 * PI);
        let s = phi / (2.0 * PI) * ma as f64;
        let j0 = (s.floor() as usize) % ma;
        let j1 = (j0 + 1) % ma;
        let ta = s - s.floor();
        let blend = |row: usize| -> Vec<Complex64> {
            let a = &values[row * ma + j0];
            let b = &values[row * ma + j1];
            a.iter().zip(b).map(|(a, b)| a * (1.0 - ta) + b * ta).collect()
        };
        if self.n == 2 {
            return blend(0);
        }
        let zs = quad.polar_nodes();
        let z = xi[2];
        let i1 = zs.partition_point(|&v| v < z);
        if i1 == 0 {
            return blend(0);
        }
        if i1 == zs.len() {
            return blend(zs.len() - 1);
        }
        let tz = (z - zs[i1 - 1]) / (zs[i1] - zs[i1 - 1]);
        let lo = blend(i1 - 1);
        let hi = blend(i1);
        lo.iter().zip(&hi).map(|(a, b)| a * (1.0 - tz) + b * tz).collect()
    }

    /// Samples at the nodes of `SphereQuadrature::new(n, degree)`.
    pub fn to_grid(&self, degree: usize) -> Result<HerglotzDensity, WaveError> {
        if let DensitySource::Grid { quad, .. } = &self.source {
            if quad.degree() == degree {
                return Ok(self.clone());
            }
        }
        let quad = SphereQuadrature::new(self.n, degree)
            .map_err(|_| WaveError::UnsupportedDimension { n: self.n })?;
        let values = quad.points().map(|p| self.eval_unchecked(p)).collect();
        HerglotzDensity::from_grid(self.n, degree, values, self.real)
    }

    /// `sup |f(ξ) - conj f(-ξ)|` over the nodes of a degree-`degree` rule.
    pub fn reality_defect(&self, degree: usize) -> Result<f64, WaveError> {
        let quad = SphereQuadrature::new(self.n, degree)
            .map_err(|_| WaveError::UnsupportedDimension { n: self.n })?;
        let mut worst = 0.0f64;
        let mut neg = vec![0.0; self.n];
        for p in quad.points() {
            for (a, b) in neg.iter_mut().zip(p) {
                *a = -b;
            }
            let f = self.eval_unchecked(p);
            let g = self.eval_unchecked(&neg);
            for (a, b) in f.iter().zip(&g) {
                worst = worst.max((a - b.conj()).norm());
            }
        }
        Ok(worst)
    }
}

/// Angular degree at which the harmonic content of `e^{i x·ξ}` with
/// `|x| <= radius` drops below double precision.
pub fn plane_wave_degree(radius: f64) -> usize {
    (radius + 10.0 * radius.cbrt() + 16.0).ceil() as usize
}

fn check_dim(n: usize) -> Result<(), WaveError> {
    if n < 2 {
        return Err(WaveError::UnsupportedDimension { n });
    }
    Ok(())
}

fn uniform_len(rows: &[Vec<Complex64>]) -> Result<usize, WaveError> {
    let m = rows.first().map_or(0, |r| r.len());
    if m == 0 || rows.iter().any(|r| r.len() != m) {
        return Err(WaveError::Invalid(
            "coefficient vectors must share a positive length".into(),
        ));
    }
    Ok(m)
}
