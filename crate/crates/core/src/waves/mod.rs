//! Monochromatic waves `Δφ + φ = 0` in `R^n` and their representations:
//! shifted Bessel sums, plane-wave sums, Herglotz densities and truncated
//! harmonic expansions.

mod density;
mod expansion;
mod residual;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use density::{plane_wave_degree, DensityFn, DensitySource, HerglotzDensity};
pub use expansion::{
    expand_spec, expand_wave, expansion_to_density, ExpansionOptions, ExpansionReport,
};
pub use residual::{helmholtz_residual, HelmholtzResidual};

use crate::grid::{Field, GridError};
use crate::quadrature::SphereQuadrature;
use crate::specfun::{
    basis_unchecked, harmonic_offset, hyperspherical_unchecked, kernel_unchecked, multiplicity,
    BesselOrder, SpecFunError,
};

/// Default relative tolerance for Herglotz quadrature.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Largest sphere-quadrature degree tried before giving up.
pub const MAX_QUADRATURE_DEGREE: usize = 640;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WaveError {
    #[error("expected a point of dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension n = {n} is not supported by this operation")]
    UnsupportedDimension { n: usize },
    #[error("vector has norm {norm}, expected a unit vector")]
    NotUnitVector { norm: f64 },
    #[error("quadrature of degree {degree} misses the tolerance (discrepancy {discrepancy:e})")]
    QuadratureInsufficient { degree: usize, discrepancy: f64 },
    #[error("radial fit for degree l = {l} is ill-conditioned: j_l is negligible at every sample radius")]
    IllConditionedRadialFit { l: u32 },
    #[error("invalid wave: {0}")]
    Invalid(String),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Dimension `d` of the eigenspace of degree `N` on `S^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicity {
    pub degree: u64,
    pub n: u64,
    pub d: u64,
}

impl Multiplicity {
    pub fn new(degree: u64, n: u64) -> Self {
        Self {
            degree,
            n,
            d: multiplicity(degree, n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BesselTerm {
    pub coeff: Vec<f64>,
    pub center: Vec<f64>,
}

/// `φ(x) = Σ_j c_j K(|x - x_j|)` with `K = bessel_kernel(n, ·)` and all
/// centres in the closed ball of radius `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselSum {
    n: usize,
    m: usize,
    radius: f64,
    terms: Vec<BesselTerm>,
}

impl BesselSum {
    pub fn new(n: usize, m: usize, radius: f64, terms: Vec<BesselTerm>) -> Result<Self, WaveError> {
        if n < 2 {
            return Err(WaveError::UnsupportedDimension { n });
        }
        if m == 0 || !(radius >= 0.0) {
            return Err(WaveError::Invalid("need m >= 1 and R >= 0".into()));
        }
        for t in &terms {
            if t.coeff.len() != m || t.center.len() != n {
                return Err(WaveError::Invalid("term has the wrong shape".into()));
            }
            let r = norm(&t.center);
            if r > radius * (1.0 + 1e-12) + 1e-15 {
                return Err(WaveError::Invalid(format!(
                    "centre at distance {r} outside the ball of radius {radius}"
                )));
            }
        }
        Ok(Self { n, m, radius, terms })
    }

    pub fn empty(n: usize, m: usize, radius: f64) -> Result<Self, WaveError> {
        Self::new(n, m, radius, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn terms(&self) -> &[BesselTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_center_norm(&self) -> f64 {
        self.terms.iter().map(|t| norm(&t.center)).fold(0.0, f64::max)
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>, WaveError> {
        check_len(x, self.n)?;
        let mut out = vec![0.0; self.m];
        self.eval_into(x, &mut out);
        Ok(out)
    }

    pub(crate) fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        let order = BesselOrder::for_dimension(self.n).expect("n >= 2");
        out.iter_mut().for_each(|v| *v = 0.0);
        for t in &self.terms {
            let d = t
                .center
                .iter()
                .zip(x)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let k = kernel_unchecked(order, d);
            for (o, c) in out.iter_mut().zip(&t.coeff) {
                *o += c * k;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneWaveTerm {
    pub coeff: Vec<Complex64>,
    pub direction: Vec<f64>,
}

/// `φ(x) = Σ_k c_k e^{i ξ_k·x}` with unit directions `ξ_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWaveSum {
    n: usize,
    m: usize,
    terms: Vec<PlaneWaveTerm>,
}

impl PlaneWaveSum {
    pub fn new(n: usize, m: usize, terms: Vec<PlaneWaveTerm>) -> Result<Self, WaveError> {
        if n < 1 || m == 0 {
            return Err(WaveError::Invalid("need n >= 1 and m >= 1".into()));
        }
        for t in &terms {
            if t.coeff.len() != m || t.direction.len() != n {
                return Err(WaveError::Invalid("term has the wrong shape".into()));
            }
            check_unit(&t.direction, 1e-10)?;
        }
        Ok(Self { n, m, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &[PlaneWaveTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Re φ` written as a plane-wave sum: every term `(ξ, c)` becomes
    /// `(ξ, c/2)` and `(-ξ, conj(c)/2)`.
    pub fn real_part(&self) -> PlaneWaveSum {
        let mut terms = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            terms.push(PlaneWaveTerm {
                coeff: t.coeff.iter().map(|c| c * 0.5).collect(),
                direction: t.direction.clone(),
            });
            terms.push(PlaneWaveTerm {
                coeff: t.coeff.iter().map(|c| c.conj() * 0.5).collect(),
                direction: t.direction.iter().map(|v| -v).collect(),
            });
        }
        PlaneWaveSum {
            n: self.n,
            m: self.m,
            terms,
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<Complex64>, WaveError> {
        check_len(x, self.n)?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.m];
        self.eval_into(x, &mut out);
        Ok(out)
    }

    pub(crate) fn eval_into(&self, x: &[f64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for t in &self.terms {
            let phase: f64 = t.direction.iter().zip(x).map(|(a, b)| a * b).sum();
            let e = Complex64::from_polar(1.0, phase);
            for (o, c) in out.iter_mut().zip(&t.coeff) {
                *o += c * e;
            }
        }
    }
}

/// `φ(x) = Σ_{l <= L} Σ_k b_lk j_l(|x|) Y_lk(x/|x|)` on `R^2` or `R^3`,
/// coefficients laid out by `harmonic_offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicExpansion {
    n: usize,
    m: usize,
    degree: u32,
    coeffs: Vec<Vec<Complex64>>,
}

impl HarmonicExpansion {
    pub fn new(n: usize, degree: u32, coeffs: Vec<Vec<Complex64>>) -> Result<Self, WaveError> {
        if n != 2 && n != 3 {
            return Err(WaveError::UnsupportedDimension { n });
        }
        let count = harmonic_offset(degree + 1, n);
        if coeffs.len() != count {
            return Err(WaveError::Invalid(format!(
                "expected {count} coefficients for degree {degree}, got {}",
                coeffs.len()
            )));
        }
        let m = coeffs[0].len();
        if m == 0 || coeffs.iter().any(|c| c.len() != m) {
            return Err(WaveError::Invalid("coefficient vectors must share a positive length".into()));
        }
        Ok(Self {
            n,
            m,
            degree,
            coeffs,
        })
    }

    pub fn zeros(n: usize, m: usize, degree: u32) -> Result<Self, WaveError> {
        if n != 2 && n != 3 {
            return Err(WaveError::UnsupportedDimension { n });
        }
        let count = harmonic_offset(degree + 1, n);
        Self::new(n, degree, vec![vec![Complex64::new(0.0, 0.0); m]; count])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Vec<Complex64>] {
        &self.coeffs
    }

    /// Coefficient `b_lk` (`k` 1-based).
    pub fn coeff(&self, l: u32, k: usize) -> &[Complex64] {
        &self.coeffs[harmonic_offset(l, self.n) + k - 1]
    }

    pub fn coeff_mut(&mut self, l: u32, k: usize) -> &mut Vec<Complex64> {
        let i = harmonic_offset(l, self.n) + k - 1;
        &mut self.coeffs[i]
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<Complex64>, WaveError> {
        check_len(x, self.n)?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.m];
        self.eval_into(x, &mut out);
        Ok(out)
    }

    pub(crate) fn eval_into(&self, x: &[f64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        let r = norm(x);
        let omega: Vec<f64> = if r > 0.0 {
            x.iter().map(|v| v / r).collect()
        } else {
            let mut e = vec![0.0; self.n];
            e[0] = 1.0;
            e
        };
        let basis = basis_unchecked(self.degree, &omega);
        let base = BesselOrder::for_dimension(self.n).expect("n >= 2");
        for l in 0..=self.degree {
            let j = hyperspherical_unchecked(l, base, r);
            if j == 0.0 {
                continue;
            }
            let lo = harmonic_offset(l, self.n);
            let hi = harmonic_offset(l + 1, self.n);
            for i in lo..hi {
                let y = basis[i] * j;
                for (o, c) in out.iter_mut().zip(&self.coeffs[i]) {
                    *o += c * y;
                }
            }
        }
    }
}

/// Any of the supported wave representations.
#[derive(Debug, Clone)]
pub enum WaveSpec {
    BesselSum(BesselSum),
    PlaneWaveSum(PlaneWaveSum),
    Herglotz(HerglotzDensity),
    Harmonic(HarmonicExpansion),
}

impl WaveSpec {
    pub fn n(&self) -> usize {
        match self {
            Self::BesselSum(w) => w.n(),
            Self::PlaneWaveSum(w) => w.n(),
            Self::Herglotz(w) => w.n(),
            Self::Harmonic(w) => w.n(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Self::BesselSum(w) => w.m(),
            Self::PlaneWaveSum(w) => w.m(),
            Self::Herglotz(w) => w.m(),
            Self::Harmonic(w) => w.m(),
        }
    }

    /// Value at `x`; Herglotz integrals use an adaptively chosen sphere
    /// quadrature with relative tolerance [`DEFAULT_TOLERANCE`].
    pub fn eval(&self, x: &[f64]) -> Result<Vec<Complex64>, WaveError> {
        check_len(x, self.n())?;
        let ev = self.evaluator(norm(x), DEFAULT_TOLERANCE)?;
        Ok(ev.eval_complex(x))
    }

    /// Evaluator valid on the ball of radius `radius`.
    pub fn evaluator(&self, radius: f64, tol: f64) -> Result<WaveEvaluator, WaveError> {
        let kind = match self {
            Self::BesselSum(w) => EvalKind::Bessel(w.clone()),
            Self::PlaneWaveSum(w) => EvalKind::Plane(w.clone()),
            Self::Harmonic(w) => EvalKind::Harmonic(w.clone()),
            Self::Herglotz(f) => herglotz_rule(f, radius, tol)?,
        };
        Ok(WaveEvaluator {
            n: self.n(),
            m: self.m(),
            parts: Parts::Real,
            kind,
        })
    }

    /// A density whose Herglotz wave is this wave, when one exists.
    pub fn herglotz_density(&self) -> Option<HerglotzDensity> {
        match self {
            Self::BesselSum(bs) => Some(HerglotzDensity::from_bessel_sum(bs)),
            Self::Herglotz(f) => Some(f.clone()),
            Self::Harmonic(h) => expansion_to_density(h).ok(),
            Self::PlaneWaveSum(_) => None,
        }
    }
}

/// Pointwise value of a wave.
pub fn eval_wave(spec: &WaveSpec, x: &[f64]) -> Result<Vec<Complex64>, WaveError> {
    spec.eval(x)
}

/// Which real components a [`WaveEvaluator`] exposes as a [`Field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parts {
    /// `m` components: `Re φ`.
    Real,
    /// `2m` components: `Re φ` followed by `Im φ`.
    Both,
}

#[derive(Debug, Clone)]
enum EvalKind {
    Bessel(BesselSum),
    Plane(PlaneWaveSum),
    Harmonic(HarmonicExpansion),
    Quadrature {
        degree: usize,
        nodes: Vec<f64>,
        weighted: Vec<Complex64>,
    },
}

/// A wave prepared for repeated evaluation.
#[derive(Debug, Clone)]
pub struct WaveEvaluator {
    n: usize,
    m: usize,
    parts: Parts,
    kind: EvalKind,
}

impl WaveEvaluator {
    pub fn with_parts(mut self, parts: Parts) -> Self {
        self.parts = parts;
        self
    }

    /// Degree of the sphere quadrature used for a Herglotz integral.
    pub fn quadrature_degree(&self) -> Option<usize> {
        match &self.kind {
            EvalKind::Quadrature { degree, .. } => Some(*degree),
            _ => None,
        }
    }

    pub fn eval_complex(&self, x: &[f64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.m];
        self.eval_complex_into(x, &mut out);
        out
    }

    pub fn eval_complex_into(&self, x: &[f64], out: &mut [Complex64]) {
        match &self.kind {
            EvalKind::Bessel(bs) => {
                let mut re = vec![0.0; self.m];
                bs.eval_into(x, &mut re);
                for (o, r) in out.iter_mut().zip(re) {
                    *o = Complex64::new(r, 0.0);
                }
            }
            EvalKind::Plane(p) => p.eval_into(x, out),
            EvalKind::Harmonic(h) => h.eval_into(x, out),
            EvalKind::Quadrature {
                nodes, weighted, ..
            } => quadrature_sum(self.n, self.m, nodes, weighted, x, out),
        }
    }
}

impl Field for WaveEvaluator {
    fn dim(&self) -> usize {
        self.n
    }

    fn components(&self) -> usize {
        match self.parts {
            Parts::Real => self.m,
            Parts::Both => 2 * self.m,
        }
    }

    fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        if let (EvalKind::Bessel(bs), Parts::Real) = (&self.kind, self.parts) {
            bs.eval_into(x, out);
            return;
        }
        let v = self.eval_complex(x);
        for (i, c) in v.iter().enumerate() {
            out[i] = c.re;
            if self.parts == Parts::Both {
                out[self.m + i] = c.im;
            }
        }
    }
}

fn quadrature_sum(
    n: usize,
    m: usize,
    nodes: &[f64],
    weighted: &[Complex64],
    x: &[f64],
    out: &mut [Complex64],
) {
    out.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
    for (p, w) in nodes.chunks_exact(n).zip(weighted.chunks_exact(m)) {
        let phase: f64 = p.iter().zip(x).map(|(a, b)| a * b).sum();
        let e = Complex64::from_polar(1.0, phase);
        for (o, c) in out.iter_mut().zip(w) {
            *o += c * e;
        }
    }
}

fn prepared_rule(f: &HerglotzDensity, degree: usize) -> Result<(Vec<f64>, Vec<Complex64>), WaveError> {
    let n = f.n();
    let quad = match f.source() {
        DensitySource::Grid { quad, .. } => (**quad).clone(),
        _ => SphereQuadrature::new(n, degree).map_err(|_| WaveError::UnsupportedDimension { n })?,
    };
    let mut nodes = Vec::with_capacity(quad.len() * n);
    let mut weighted = Vec::with_capacity(quad.len() * f.m());
    for (i, (p, w)) in quad.points().zip(quad.weights()).enumerate() {
        nodes.extend_from_slice(p);
        let v = match f.source() {
            DensitySource::Grid { values, .. } => values[i].clone(),
            _ => f.eval_unchecked(p),
        };
        weighted.extend(v.into_iter().map(|c| c * w));
    }
    Ok((nodes, weighted))
}

fn herglotz_rule(f: &HerglotzDensity, radius: f64, tol: f64) -> Result<EvalKind, WaveError> {
    let n = f.n();
    if n != 2 && n != 3 {
        return Err(WaveError::UnsupportedDimension { n });
    }
    let needed = plane_wave_degree(radius);
    if let DensitySource::Grid { quad, .. } = f.source() {
        if quad.degree() < needed {
            return Err(WaveError::QuadratureInsufficient {
                degree: quad.degree(),
                discrepancy: f64::NAN,
            });
        }
        let (nodes, weighted) = prepared_rule(f, quad.degree())?;
        return Ok(EvalKind::Quadrature {
            degree: quad.degree(),
            nodes,
            weighted,
        });
    }
    let probe: Vec<f64> = {
        let raw = [0.6, 0.48, 0.64];
        raw[..n].iter().map(|v| v * radius / norm(&raw[..n])).collect()
    };
    let mut degree = needed + f.bandwidth().unwrap_or(16);
    let mut last = f64::NAN;
    while degree <= MAX_QUADRATURE_DEGREE {
        let (na, wa) = prepared_rule(f, degree)?;
        let (nb, wb) = prepared_rule(f, degree + 16)?;
        let mut va = vec![Complex64::new(0.0, 0.0); f.m()];
        let mut vb = va.clone();
        quadrature_sum(n, f.m(), &na, &wa, &probe, &mut va);
        quadrature_sum(n, f.m(), &nb, &wb, &probe, &mut vb);
        let scale = vb.iter().map(|c| c.norm()).fold(1.0, f64::max);
        let diff = va
            .iter()
            .zip(&vb)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        last = diff / scale;
        if last <= tol {
            return Ok(EvalKind::Quadrature {
                degree: degree + 16,
                nodes: nb,
                weighted: wb,
            });
        }
        degree *= 2;
    }
    Err(WaveError::QuadratureInsufficient {
        degree: MAX_QUADRATURE_DEGREE,
        discrepancy: last,
    })
}

/// `i^l`.
pub(crate) fn i_pow(l: u32) -> Complex64 {
    match l % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `(2π)^{n/2}`.
pub(crate) fn two_pi_pow(n: usize) -> f64 {
    (2.0 * PI).powf(n as f64 / 2.0)
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub(crate) fn check_len(x: &[f64], n: usize) -> Result<(), WaveError> {
    if x.len() != n {
        return Err(WaveError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    Ok(())
}

pub(crate) fn check_unit(x: &[f64], tol: f64) -> Result<(), WaveError> {
    let r = norm(x);
    if (r - 1.0).abs() > tol {
        return Err(WaveError::NotUnitVector { norm: r });
    }
    Ok(())
}

// JSON wire format.

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum WaveDoc {
    BesselSum {
        n: usize,
        m: usize,
        radius: f64,
        terms: Vec<BesselTerm>,
    },
    PlaneWaveSum {
        n: usize,
        m: usize,
        terms: Vec<PlaneWaveTerm>,
    },
    HerglotzGrid {
        n: usize,
        m: usize,
        real: bool,
        degree: usize,
        values: Vec<Vec<Complex64>>,
    },
    HarmonicExpansion {
        n: usize,
        m: usize,
        degree: u32,
        coefficients: Vec<Vec<Complex64>>,
    },
}

/// Degree used when a non-grid Herglotz density is written to JSON.
pub const SERIALIZED_DENSITY_DEGREE: usize = 64;

impl From<WaveSpec> for WaveDoc {
    fn from(w: WaveSpec) -> Self {
        match w {
            WaveSpec::BesselSum(b) => WaveDoc::BesselSum {
                n: b.n,
                m: b.m,
                radius: b.radius,
                terms: b.terms,
            },
            WaveSpec::PlaneWaveSum(p) => WaveDoc::PlaneWaveSum {
                n: p.n,
                m: p.m,
                terms: p.terms,
            },
            WaveSpec::Herglotz(f) => {
                let degree = match f.source() {
                    DensitySource::Grid { quad, .. } => quad.degree(),
                    _ => SERIALIZED_DENSITY_DEGREE.max(f.bandwidth().unwrap_or(0) + 16),
                };
                let g = f.to_grid(degree).expect("density dimension validated");
                let values = match g.source() {
                    DensitySource::Grid { values, .. } => values.clone(),
                    _ => unreachable!(),
                };
                WaveDoc::HerglotzGrid {
                    n: g.n(),
                    m: g.m(),
                    real: g.is_real(),
                    degree,
                    values,
                }
            }
            WaveSpec::Harmonic(h) => WaveDoc::HarmonicExpansion {
                n: h.n,
                m: h.m,
                degree: h.degree,
                coefficients: h.coeffs,
            },
        }
    }
}

impl TryFrom<WaveDoc> for WaveSpec {
    type Error = WaveError;

    fn try_from(doc: WaveDoc) -> Result<Self, WaveError> {
        Ok(match doc {
            WaveDoc::BesselSum {
                n,
                m,
                radius,
                terms,
            } => WaveSpec::BesselSum(BesselSum::new(n, m, radius, terms)?),
            WaveDoc::PlaneWaveSum { n, m, terms } => {
                WaveSpec::PlaneWaveSum(PlaneWaveSum::new(n, m, terms)?)
            }
            WaveDoc::HerglotzGrid {
                n,
                m,
                real,
                degree,
                values,
            } => {
                let f = HerglotzDensity::from_grid(n, degree, values, real)?;
                if f.m() != m {
                    return Err(WaveError::Invalid("m does not match the values".into()));
                }
                WaveSpec::Herglotz(f)
            }
            WaveDoc::HarmonicExpansion {
                n,
                m,
                degree,
                coefficients,
            } => {
                let h = HarmonicExpansion::new(n, degree, coefficients)?;
                if h.m() != m {
                    return Err(WaveError::Invalid("m does not match the coefficients".into()));
                }
                WaveSpec::Harmonic(h)
            }
        })
    }
}

impl Serialize for WaveSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WaveDoc::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for WaveSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = WaveDoc::deserialize(d)?;
        WaveSpec::try_from(doc).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests;
