//! Eigenfunctions of the Laplace–Beltrami operator on `S^n` that localize
//! a prescribed Bessel sum near one or several points.

mod chart;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use chart::{chart_map, GeodesicChart, ANTIPODAL_TOLERANCE};

use crate::grid::Field;
use crate::specfun::{bessel_kernel, GegenbauerKernel, SpecFunError};
use crate::waves::BesselSum;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SphereError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point has norm {norm}, expected a unit vector")]
    NotUnitVector { norm: f64 },
    #[error("chart point of norm {norm} lies outside the ball of radius π")]
    OutsideChart { norm: f64 },
    #[error("point is antipodal to the chart base point")]
    AntipodalInverse,
    #[error("degree N = {degree} must exceed the Bessel-sum radius {radius}")]
    DegreeTooSmall { degree: usize, radius: f64 },
    #[error("base points {a} and {b} are antipodal")]
    AntipodalBasePoints { a: usize, b: usize },
    #[error("base points {a} and {b} coincide")]
    CoincidentBasePoints { a: usize, b: usize },
    #[error("{0}")]
    InvalidParameter(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereTerm {
    /// Coefficient already multiplied by the normalization `1/(2^{n/2-1} Γ(n/2))`.
    pub coeff: Vec<f64>,
    pub point: Vec<f64>,
}

/// `ψ(p) = Σ_j a_j C^n_N(p·p_j)` on `S^n ⊂ R^{n+1}`, an eigenfunction with
/// eigenvalue `N(N+n-1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SphereDoc", into = "SphereDoc")]
pub struct SphereEigenfunction {
    degree: usize,
    n: usize,
    m: usize,
    terms: Vec<SphereTerm>,
    kernel: GegenbauerKernel,
}

#[derive(Serialize, Deserialize)]
struct SphereDoc {
    degree: usize,
    n: usize,
    m: usize,
    terms: Vec<SphereTerm>,
}

impl From<SphereEigenfunction> for SphereDoc {
    fn from(s: SphereEigenfunction) -> Self {
        Self {
            degree: s.degree,
            n: s.n,
            m: s.m,
            terms: s.terms,
        }
    }
}

impl TryFrom<SphereDoc> for SphereEigenfunction {
    type Error = SphereError;

    fn try_from(d: SphereDoc) -> Result<Self, SphereError> {
        SphereEigenfunction::new(d.degree, d.n, d.m, d.terms)
    }
}

/// `1/(2^{n/2-1} Γ(n/2))`, the value at the origin of `bessel_kernel(n, ·)`.
pub fn kernel_normalization(n: usize) -> Result<f64, SphereError> {
    Ok(bessel_kernel(n, 0.0)?)
}

/// `p·q` written as `(|p+q|² - |p-q|²)/4`, which flips sign exactly when
/// `p` does.
#[inline]
pub fn parity_dot(p: &[f64], q: &[f64]) -> f64 {
    let mut plus = 0.0;
    let mut minus = 0.0;
    for (a, b) in p.iter().zip(q) {
        plus += (a + b) * (a + b);
        minus += (a - b) * (a - b);
    }
    0.25 * (plus - minus)
}

impl SphereEigenfunction {
    pub fn new(degree: usize, n: usize, m: usize, terms: Vec<SphereTerm>) -> Result<Self, SphereError> {
        if m == 0 {
            return Err(SphereError::InvalidParameter("m must be positive".into()));
        }
        for t in &terms {
            if t.coeff.len() != m {
                return Err(SphereError::DimensionMismatch {
                    expected: m,
                    got: t.coeff.len(),
                });
            }
            if t.point.len() != n + 1 {
                return Err(SphereError::DimensionMismatch {
                    expected: n + 1,
                    got: t.point.len(),
                });
            }
            check_unit(&t.point)?;
        }
        Ok(Self {
            degree,
            n,
            m,
            terms,
            kernel: GegenbauerKernel::new(degree, n)?,
        })
    }

    pub fn zero(degree: usize, n: usize, m: usize) -> Result<Self, SphereError> {
        Self::new(degree, n, m, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimension of the sphere `S^n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &[SphereTerm] {
        &self.terms
    }

    /// `N(N+n-1)`.
    pub fn eigenvalue(&self) -> f64 {
        let d = self.degree as f64;
        d * (d + self.n as f64 - 1.0)
    }

    pub fn eval(&self, p: &[f64]) -> Result<Vec<f64>, SphereError> {
        if p.len() != self.n + 1 {
            return Err(SphereError::DimensionMismatch {
                expected: self.n + 1,
                got: p.len(),
            });
        }
        check_unit(p)?;
        let mut out = vec![0.0; self.m];
        self.eval_into(p, &mut out);
        Ok(out)
    }

    pub(crate) fn eval_into(&self, p: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        for t in &self.terms {
            let k = self.kernel.eval(parity_dot(p, &t.point));
            for (o, c) in out.iter_mut().zip(&t.coeff) {
                *o += c * k;
            }
        }
    }

    /// Sum of two eigenfunctions of the same degree.
    pub fn plus(&self, other: &SphereEigenfunction) -> Result<Self, SphereError> {
        if other.degree != self.degree || other.n != self.n || other.m != self.m {
            return Err(SphereError::InvalidParameter(
                "summands must share degree, dimension and m".into(),
            ));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(self.degree, self.n, self.m, terms)
    }

    /// `|Δ_S ψ + N(N+n-1) ψ| / (N(N+n-1) max|ψ|)` at the given points, with
    /// `Δ_S` obtained from the flat Laplacian of the degree-zero extension
    /// `ψ(y/|y|)` by centred differences of step `h`.
    pub fn laplace_beltrami_residual(&self, points: &[Vec<f64>], h: f64) -> Result<f64, SphereError> {
        let lambda = self.eigenvalue();
        let dim = self.n + 1;
        let ext = |y: &[f64], out: &mut [f64]| {
            let r = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            let p: Vec<f64> = y.iter().map(|v| v / r).collect();
            self.eval_into(&p, out);
        };
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        let (mut up, mut um, mut c) = (vec![0.0; self.m], vec![0.0; self.m], vec![0.0; self.m]);
        for p in points {
            check_unit(p)?;
            ext(p, &mut c);
            let mut lap = vec![0.0; self.m];
            let mut y = p.clone();
            for d in 0..dim {
                y[d] = p[d] + h;
                ext(&y, &mut up);
                y[d] = p[d] - h;
                ext(&y, &mut um);
                y[d] = p[d];
                for i in 0..self.m {
                    lap[i] += (up[i] - 2.0 * c[i] + um[i]) / (h * h);
                }
            }
            for i in 0..self.m {
                worst = worst.max((lap[i] + lambda * c[i]).abs());
                scale = scale.max(c[i].abs());
            }
        }
        if lambda == 0.0 || scale == 0.0 {
            return Ok(worst);
        }
        Ok(worst / (lambda * scale))
    }
}

fn check_unit(p: &[f64]) -> Result<(), SphereError> {
    let norm = p.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(SphereError::NotUnitVector { norm });
    }
    Ok(())
}

/// Σ_j (c_j / (2^{n/2-1} Γ(n/2))) C^n_N(p·p_j) with `p_j = Ψ(x_j/N)`.
pub fn synthesize_sphere(
    bs: &BesselSum,
    degree: usize,
    chart: &GeodesicChart,
) -> Result<SphereEigenfunction, SphereError> {
    if bs.n() != chart.n() {
        return Err(SphereError::DimensionMismatch {
            expected: chart.n(),
            got: bs.n(),
        });
    }
    if !(degree as f64 > bs.radius()) {
        return Err(SphereError::DegreeTooSmall {
            degree,
            radius: bs.radius(),
        });
    }
    let norm = kernel_normalization(bs.n())?;
    let scale = 1.0 / degree as f64;
    let terms = bs
        .terms()
        .iter()
        .map(|t| {
            let x: Vec<f64> = t.center.iter().map(|v| v * scale).collect();
            Ok(SphereTerm {
                coeff: t.coeff.iter().map(|c| c * norm).collect(),
                point: chart.map(&x)?,
            })
        })
        .collect::<Result<Vec<_>, SphereError>>()?;
    SphereEigenfunction::new(degree, bs.n(), bs.m(), terms)
}

pub fn eval_sphere(psi: &SphereEigenfunction, p: &[f64]) -> Result<Vec<f64>, SphereError> {
    psi.eval(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiReport {
    /// `½ min_{α≠β} min(dist(p_α, p_β), π - dist(p_α, p_β))`.
    pub rho: f64,
    /// `decay_profile(N, n, ρ)`: bound on `|C^n_N|` between distinct targets.
    pub decay: f64,
    /// `(N' - 1) · decay · max_α Σ_j |c_j|`, the cross-interference budget.
    pub interference_bound: f64,
}

/// Sum of the single-target eigenfunctions of degree `N`.
pub fn multi_synthesize(
    targets: &[(GeodesicChart, BesselSum)],
    degree: usize,
) -> Result<(SphereEigenfunction, MultiReport), SphereError> {
    let first = targets
        .first()
        .ok_or_else(|| SphereError::InvalidParameter("need at least one target".into()))?;
    let n = first.0.n();
    for (a, (ca, _)) in targets.iter().enumerate() {
        for (b, (cb, _)) in targets.iter().enumerate().skip(a + 1) {
            let pa = ca.base();
            let pb = cb.base();
            let sum: f64 = pa.iter().zip(pb).map(|(x, y)| (x + y) * (x + y)).sum::<f64>().sqrt();
            let diff: f64 = pa.iter().zip(pb).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
            if sum < ANTIPODAL_TOLERANCE {
                return Err(SphereError::AntipodalBasePoints { a, b });
            }
            if diff < ANTIPODAL_TOLERANCE {
                return Err(SphereError::CoincidentBasePoints { a, b });
            }
        }
    }
    let mut psi = SphereEigenfunction::zero(degree, n, first.1.m())?;
    for (chart, bs) in targets {
        psi = psi.plus(&synthesize_sphere(bs, degree, chart)?)?;
    }
    let mut rho = PI / 4.0;
    for (a, (ca, _)) in targets.iter().enumerate() {
        for (cb, _) in targets.iter().skip(a + 1) {
            let d = geodesic_distance(ca.base(), cb.base());
            rho = rho.min(0.5 * d.min(PI - d));
        }
    }
    let decay = if targets.len() > 1 { decay_profile(degree, n, rho)? } else { 0.0 };
    let norm = kernel_normalization(n)?;
    let mass = targets
        .iter()
        .map(|(_, bs)| {
            bs.terms()
                .iter()
                .map(|t| t.coeff.iter().fold(0.0f64, |m, c| m.max(c.abs())))
                .sum::<f64>()
        })
        .fold(0.0, f64::max);
    Ok((
        psi,
        MultiReport {
            rho,
            decay,
            interference_bound: (targets.len() - 1) as f64 * decay * mass * norm,
        },
    ))
}

pub fn geodesic_distance(p: &[f64], q: &[f64]) -> f64 {
    let plus: f64 = p.iter().zip(q).map(|(a, b)| (a + b) * (a + b)).sum::<f64>().sqrt();
    let minus: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    2.0 * minus.atan2(plus)
}

/// `sup_{θ ∈ [ρ, π-ρ]} |C^n_N(cos θ)|` on a grid of `max(2000, 40N)` points.
pub fn decay_profile(degree: usize, n: usize, rho: f64) -> Result<f64, SphereError> {
    if !(rho > 0.0 && rho < 0.5 * PI) {
        return Err(SphereError::InvalidParameter(format!("rho must lie in (0, π/2), got {rho}")));
    }
    let kernel = GegenbauerKernel::new(degree, n)?;
    let count = 2000.max(40 * degree);
    let span = PI - 2.0 * rho;
    Ok((0..=count)
        .into_par_iter()
        .map(|i| kernel.eval((rho + span * i as f64 / count as f64).cos()).abs())
        .reduce(|| 0.0, f64::max))
}

/// `x ↦ ψ(Ψ(x/N))` on the chart ball, as a [`Field`] on `R^n`.
pub struct RescaledSphere<'a> {
    psi: &'a SphereEigenfunction,
    chart: &'a GeodesicChart,
    scale: f64,
}

impl<'a> RescaledSphere<'a> {
    pub fn new(psi: &'a SphereEigenfunction, chart: &'a GeodesicChart) -> Self {
        Self {
            psi,
            chart,
            scale: 1.0 / psi.degree().max(1) as f64,
        }
    }
}

impl Field for RescaledSphere<'_> {
    fn dim(&self) -> usize {
        self.psi.n()
    }

    fn components(&self) -> usize {
        self.psi.m()
    }

    fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        let y: Vec<f64> = x.iter().map(|v| v * self.scale).collect();
        let p = self.chart.map_unchecked(&y);
        self.psi.eval_into(&p, out);
    }
}

#[cfg(test)]
mod tests;
