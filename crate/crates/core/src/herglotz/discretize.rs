//! Discretizations of Herglotz integrals: cap sums of a density, and
//! Bessel sums from the Fourier transform of a bump extension.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ball::BallCellCover;
use super::cover::{CoverOptions, SphericalCapCover};
use super::HerglotzError;
use crate::quadrature::{gauss_legendre, SphereQuadrature};
use crate::waves::{
    plane_wave_degree, BesselSum, BesselTerm, HerglotzDensity, PlaneWaveSum, PlaneWaveTerm,
};

/// Radial cutoff `χ(s) = h((b - |s - 1|)/(b - a))` with the smooth step
/// `h(t) = e(t) / (e(t) + e(1 - t))`, `e(t) = exp(-1/t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BumpProfile {
    pub a: f64,
    pub b: f64,
}

impl Default for BumpProfile {
    fn default() -> Self {
        Self { a: 0.25, b: 0.5 }
    }
}

impl BumpProfile {
    pub fn new(a: f64, b: f64) -> Result<Self, HerglotzError> {
        if !(0.0 < a && a < b && b < 1.0) {
            return Err(HerglotzError::InvalidParameter(format!(
                "bump needs 0 < a < b < 1, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn eval(&self, s: f64) -> f64 {
        smooth_step((self.b - (s - 1.0).abs()) / (self.b - self.a))
    }
}

fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    let e0 = (-1.0 / t).exp();
    let e1 = (-1.0 / (1.0 - t)).exp();
    e0 / (e0 + e1)
}

/// `c_k = f(ξ_k) |U_k|` over the cells of `cover`.
pub fn discretize_density(
    f: &HerglotzDensity,
    cover: &SphericalCapCover,
) -> Result<PlaneWaveSum, HerglotzError> {
    if f.n() != cover.n() {
        return Err(HerglotzError::DimensionMismatch {
            expected: cover.n(),
            got: f.n(),
        });
    }
    let terms: Vec<PlaneWaveTerm> = cover
        .cells()
        .par_iter()
        .map(|cell| -> Result<PlaneWaveTerm, HerglotzError> {
            let v = f.eval(&cell.center)?;
            Ok(PlaneWaveTerm {
                coeff: v.into_iter().map(|c| c * cell.area).collect(),
                direction: cell.center.clone(),
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(PlaneWaveSum::new(f.n(), f.m(), terms)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierOptions {
    /// Radius `R` of the ball on which `ĝ` is kept.
    pub radius: f64,
    /// Degree of the angular rule; 0 picks one from `R`.
    pub angular_degree: usize,
    /// Spacing of the table of the radial transform.
    pub table_step: f64,
    /// Fail when the estimated tail mass exceeds this bound.
    pub tail_tolerance: Option<f64>,
}

impl Default for FourierOptions {
    fn default() -> Self {
        Self {
            radius: 12.0,
            angular_degree: 0,
            table_step: 0.02,
            tail_tolerance: None,
        }
    }
}

/// `ĝ(x) = (2π)^{-n} ∫ g(ξ) e^{i x·ξ} dξ` for `g(ξ) = χ(|ξ|) f(ξ/|ξ|)`,
/// computed as `(2π)^{-n} Σ_ω w_ω f(ω) H(x·ω)` with
/// `H(u) = ∫ χ(s) s^{n-1} e^{i s u} ds` tabulated.
#[derive(Debug, Clone)]
pub struct FourierTransform {
    n: usize,
    m: usize,
    radius: f64,
    bump: BumpProfile,
    nodes: Vec<f64>,
    weighted: Vec<Complex64>,
    table: RadialTable,
    tail: f64,
    l1: f64,
}

#[derive(Debug, Clone)]
struct RadialTable {
    step: f64,
    half: usize,
    values: Vec<Complex64>,
}

impl RadialTable {
    fn new(n: usize, bump: BumpProfile, umax: f64, step: f64) -> Self {
        let half = (umax / step).ceil() as usize + 3;
        let (s, w) = radial_rule(bump);
        let weights: Vec<f64> = s
            .iter()
            .zip(&w)
            .map(|(s, w)| w * bump.eval(*s) * s.powi(n as i32 - 1))
            .collect();
        let values = (0..=2 * half)
            .into_par_iter()
            .map(|i| {
                let u = (i as f64 - half as f64) * step;
                s.iter()
                    .zip(&weights)
                    .map(|(s, w)| Complex64::from_polar(*w, s * u))
                    .sum()
            })
            .collect();
        Self { step, half, values }
    }

    /// Six-point Lagrange interpolation.
    fn eval(&self, u: f64) -> Complex64 {
        let t = u / self.step + self.half as f64;
        let i0 = (t.floor() as isize - 2).clamp(0, self.values.len() as isize - 6) as usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..6 {
            let xj = (i0 + j) as f64;
            let mut l = 1.0;
            for k in 0..6 {
                if k != j {
                    let xk = (i0 + k) as f64;
                    l *= (t - xk) / (xj - xk);
                }
            }
            acc += self.values[i0 + j] * l;
        }
        acc
    }
}

/// Composite Gauss–Legendre rule on the support `[1 - b, 1 + b]` of `χ`,
/// with panels refined on the two transition zones.
fn radial_rule(bump: BumpProfile) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = gauss_legendre(16);
    let mut s = Vec::new();
    let mut w = Vec::new();
    let mut panel = |lo: f64, hi: f64, pieces: usize| {
        let h = (hi - lo) / pieces as f64;
        for p in 0..pieces {
            let a = lo + p as f64 * h;
            for (x, wx) in gx.iter().zip(&gw) {
                s.push(a + 0.5 * h * (x + 1.0));
                w.push(0.5 * h * wx);
            }
        }
    };
    let (a, b) = (bump.a, bump.b);
    panel(1.0 - b, 1.0 - a, 24);
    panel(1.0 - a, 1.0 + a, 16);
    panel(1.0 + a, 1.0 + b, 24);
    (s, w)
}

/// Tabulate `ĝ` for `g(ξ) = χ(|ξ|) f2(ξ/|ξ|)` and estimate its tail mass
/// `∫_{R < |x| < 3R} |ĝ|`.
pub fn extend_and_transform(
    f2: &HerglotzDensity,
    bump: BumpProfile,
    opts: FourierOptions,
) -> Result<FourierTransform, HerglotzError> {
    let n = f2.n();
    if n != 2 && n != 3 {
        return Err(HerglotzError::UnsupportedDimension { n });
    }
    if !(opts.radius > 0.0) || !(opts.table_step > 0.0) {
        return Err(HerglotzError::InvalidParameter(
            "radius and table step must be positive".into(),
        ));
    }
    let reach = 3.0 * opts.radius;
    let smax = 1.0 + bump.b;
    let degree = if opts.angular_degree == 0 {
        plane_wave_degree(smax * reach) + f2.bandwidth().unwrap_or(16)
    } else {
        opts.angular_degree
    };
    let quad = SphereQuadrature::new(n, degree).map_err(|_| HerglotzError::UnsupportedDimension { n })?;
    let scale = (2.0 * PI).powi(-(n as i32));
    let mut nodes = Vec::with_capacity(quad.len() * n);
    let mut weighted = Vec::with_capacity(quad.len() * f2.m());
    for (p, w) in quad.points().zip(quad.weights()) {
        nodes.extend_from_slice(p);
        weighted.extend(f2.eval(p)?.into_iter().map(|c| c * (w * scale)));
    }
    let table = RadialTable::new(n, bump, reach + 1.0, opts.table_step);
    let mut ft = FourierTransform {
        n,
        m: f2.m(),
        radius: opts.radius,
        bump,
        nodes,
        weighted,
        table,
        tail: 0.0,
        l1: 0.0,
    };
    ft.l1 = ft.shell_mass(0.0, opts.radius);
    ft.tail = ft.shell_mass(opts.radius, reach);
    if let Some(tol) = opts.tail_tolerance {
        if ft.tail > tol {
            return Err(HerglotzError::TailUnreachable {
                tail: ft.tail,
                requested: tol,
            });
        }
    }
    Ok(ft)
}

impl FourierTransform {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn bump(&self) -> BumpProfile {
        self.bump
    }

    /// Estimated `∫_{R < |x| < 3R} |ĝ|`, summed over components.
    pub fn tail_mass(&self) -> f64 {
        self.tail
    }

    /// `∫_{B_R} |ĝ|`, summed over components.
    pub fn l1_norm(&self) -> f64 {
        self.l1
    }

    pub fn eval(&self, x: &[f64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.m];
        for (p, w) in self.nodes.chunks_exact(self.n).zip(self.weighted.chunks_exact(self.m)) {
            let u: f64 = p.iter().zip(x).map(|(a, b)| a * b).sum();
            let h = self.table.eval(u);
            for (o, c) in out.iter_mut().zip(w) {
                *o += c * h;
            }
        }
        out
    }

    /// `∫_{r0 < |x| < r1} |ĝ|` by a product rule.
    pub fn shell_mass(&self, r0: f64, r1: f64) -> f64 {
        if r1 <= r0 {
            return 0.0;
        }
        let q = (2.0 * (r1 - r0)).ceil() as usize + 16;
        let (gx, gw) = gauss_legendre(q);
        let quad = SphereQuadrature::new(self.n, r1.ceil() as usize + 8).expect("n in {2, 3}");
        let half = 0.5 * (r1 - r0);
        (0..q)
            .into_par_iter()
            .map(|i| {
                let r = r0 + half * (gx[i] + 1.0);
                let jac = half * gw[i] * r.powi(self.n as i32 - 1);
                let mut x = vec![0.0; self.n];
                let mut acc = 0.0;
                for (p, w) in quad.points().zip(quad.weights()) {
                    for (xi, pi) in x.iter_mut().zip(p) {
                        *xi = r * pi;
                    }
                    acc += w * self.eval(&x).iter().map(|c| c.norm()).sum::<f64>();
                }
                jac * acc
            })
            .collect::<Vec<f64>>()
            .iter()
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierDiscretization {
    pub cells: usize,
    pub terms: usize,
    /// Largest `|Im c_j|` dropped when keeping real coefficients.
    pub dropped_imaginary: f64,
}

/// `c_j = (2π)^{n/2} ĝ(x_j) |U_j|` over a ball cover of `B_R` with cell
/// diameters `<= delta2`. The Bessel sum keeps `Re c_j` (for a density
/// with `f(ξ) = conj f(-ξ)` the coefficients are real); zero terms are
/// dropped.
pub fn discretize_fourier<G>(
    ghat: G,
    n: usize,
    m: usize,
    radius: f64,
    delta2: f64,
    opts: CoverOptions,
) -> Result<(BesselSum, FourierDiscretization), HerglotzError>
where
    G: Fn(&[f64]) -> Vec<Complex64> + Sync,
{
    let cover = BallCellCover::new(n, radius, delta2, opts)?;
    let scale = (2.0 * PI).powf(n as f64 / 2.0);
    let raw: Vec<(Vec<Complex64>, &[f64])> = cover
        .cells()
        .par_iter()
        .map(|c| {
            let v = ghat(&c.point);
            (v.into_iter().map(|g| g * (scale * c.volume)).collect(), c.point.as_slice())
        })
        .collect();
    let mut dropped = 0.0f64;
    let mut terms = Vec::new();
    for (c, x) in raw {
        if c.len() != m {
            return Err(HerglotzError::InvalidParameter(
                "ĝ returned the wrong number of components".into(),
            ));
        }
        dropped = c.iter().fold(dropped, |d, v| d.max(v.im.abs()));
        if c.iter().all(|v| v.re == 0.0) {
            continue;
        }
        terms.push(BesselTerm {
            coeff: c.iter().map(|v| v.re).collect(),
            center: x.to_vec(),
        });
    }
    let report = FourierDiscretization {
        cells: cover.len(),
        terms: terms.len(),
        dropped_imaginary: dropped,
    };
    Ok((BesselSum::new(n, m, radius, terms)?, report))
}

/// [`discretize_fourier`] applied to a tabulated transform.
pub fn discretize_transform(
    ft: &FourierTransform,
    delta2: f64,
    opts: CoverOptions,
) -> Result<(BesselSum, FourierDiscretization), HerglotzError> {
    discretize_fourier(|x| ft.eval(x), ft.n(), ft.m(), ft.radius(), delta2, opts)
}
