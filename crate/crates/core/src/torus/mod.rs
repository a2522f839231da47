//! Eigenfunctions of the flat torus `T^n = R^n / 2πZ^n` with eigenvalue
//! `N²` built from lattice plane waves.

mod lattice;

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lattice::{
    degree_cap, enumerate_lattice, enumerate_lattice_capped, exact_sqrt, LatticeSphere, DEFAULT_DEGREE_CAPS,
};

use crate::grid::Field;
use crate::herglotz::SphericalCapCover;
use crate::waves::{HerglotzDensity, Parts, PlaneWaveSum, PlaneWaveTerm, WaveError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TorusError {
    #[error("dimension {n} is not supported")]
    UnsupportedDimension { n: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("N = {degree} exceeds the enumeration cap {cap}")]
    DegreeOverCap { degree: u64, cap: u64 },
    #[error("{} of {} cells contain no lattice direction", report.empty.len(), report.cells.len())]
    EmptyCell { report: Box<CapAssignment> },
    #[error("N = {degree} is even; odd N is required in dimension {n}")]
    EvenDegree { degree: u64, n: usize },
    #[error("mode {k:?} does not lie on |k| = {degree}")]
    OffShell { k: Vec<i64>, degree: u64 },
    #[error("{0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Wave(#[from] WaveError),
}

/// Per-cell choice of a lattice direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapAssignment {
    pub degree: u64,
    /// Index into the lattice points for every cell, when one was found.
    pub cells: Vec<Option<usize>>,
    /// Cells without a lattice direction.
    pub empty: Vec<usize>,
    /// Number of lattice directions falling in each cell.
    pub counts: Vec<usize>,
}

impl CapAssignment {
    pub fn is_complete(&self) -> bool {
        self.empty.is_empty()
    }
}

/// Assignment of lattice directions to cells, with empty cells listed.
pub fn assign_caps_partial(cover: &SphericalCapCover, lattice: &LatticeSphere) -> Result<CapAssignment, TorusError> {
    if cover.n() != lattice.n() {
        return Err(TorusError::DimensionMismatch {
            expected: cover.n(),
            got: lattice.n(),
        });
    }
    let cells = cover.cells();
    let located: Vec<(usize, f64)> = (0..lattice.len())
        .into_par_iter()
        .map(|i| {
            let xi = lattice.direction(i);
            let c = cover.locate(&xi);
            let d = xi
                .iter()
                .zip(&cells[c].center)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>();
            (c, d)
        })
        .collect();
    let mut best: Vec<Option<(usize, f64)>> = vec![None; cells.len()];
    let mut counts = vec![0; cells.len()];
    for (i, &(c, d)) in located.iter().enumerate() {
        counts[c] += 1;
        match best[c] {
            Some((_, bd)) if bd <= d => {}
            _ => best[c] = Some((i, d)),
        }
    }
    let empty = (0..cells.len()).filter(|&c| best[c].is_none()).collect();
    Ok(CapAssignment {
        degree: lattice.degree(),
        cells: best.into_iter().map(|b| b.map(|(i, _)| i)).collect(),
        empty,
        counts,
    })
}

/// For every cell, the lattice direction closest to the cell's anchor
/// point; fails with [`TorusError::EmptyCell`] carrying the partial report.
pub fn assign_caps(cover: &SphericalCapCover, lattice: &LatticeSphere) -> Result<Vec<(usize, Vec<f64>)>, TorusError> {
    let report = assign_caps_partial(cover, lattice)?;
    if !report.is_complete() {
        return Err(TorusError::EmptyCell {
            report: Box::new(report),
        });
    }
    Ok(report
        .cells
        .iter()
        .enumerate()
        .map(|(c, k)| (c, lattice.direction(k.expect("complete assignment"))))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusMode {
    pub k: Vec<i64>,
    pub coeff: Vec<Complex64>,
}

/// `ψ(x) = Σ ĉ_k e^{i k·x}` over modes with `|k| = N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TorusDoc", into = "TorusDoc")]
pub struct TorusEigenfunction {
    degree: u64,
    n: usize,
    m: usize,
    real: bool,
    modes: Vec<TorusMode>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TorusDoc {
    degree: u64,
    n: usize,
    m: usize,
    real: bool,
    modes: Vec<TorusMode>,
}

impl From<TorusEigenfunction> for TorusDoc {
    fn from(t: TorusEigenfunction) -> Self {
        Self {
            degree: t.degree,
            n: t.n,
            m: t.m,
            real: t.real,
            modes: t.modes,
        }
    }
}

impl TryFrom<TorusDoc> for TorusEigenfunction {
    type Error = TorusError;

    fn try_from(d: TorusDoc) -> Result<Self, TorusError> {
        TorusEigenfunction::new(d.degree, d.n, d.m, d.real, d.modes)
    }
}

impl TorusEigenfunction {
    /// Modes are merged by wave vector; with `real` set they are replaced by
    /// their Hermitian part `(ĉ_k + conj ĉ_{-k})/2`.
    pub fn new(degree: u64, n: usize, m: usize, real: bool, modes: Vec<TorusMode>) -> Result<Self, TorusError> {
        let target = (degree as i64) * (degree as i64);
        let mut merged: BTreeMap<Vec<i64>, Vec<Complex64>> = BTreeMap::new();
        for mode in modes {
            if mode.k.len() != n {
                return Err(TorusError::DimensionMismatch {
                    expected: n,
                    got: mode.k.len(),
                });
            }
            if mode.coeff.len() != m {
                return Err(TorusError::DimensionMismatch {
                    expected: m,
                    got: mode.coeff.len(),
                });
            }
            if mode.k.iter().map(|v| v * v).sum::<i64>() != target {
                return Err(TorusError::OffShell { k: mode.k, degree });
            }
            let slot = merged
                .entry(mode.k)
                .or_insert_with(|| vec![Complex64::new(0.0, 0.0); m]);
            slot.iter_mut().zip(&mode.coeff).for_each(|(s, c)| *s += c);
        }
        if real {
            let keys: Vec<Vec<i64>> = merged.keys().cloned().collect();
            let mut sym = BTreeMap::new();
            for k in keys {
                let neg: Vec<i64> = k.iter().map(|v| -v).collect();
                let zero = vec![Complex64::new(0.0, 0.0); m];
                let a = merged.get(&k).unwrap_or(&zero);
                let b = merged.get(&neg).unwrap_or(&zero);
                let c: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| 0.5 * (x + y.conj())).collect();
                let cneg: Vec<Complex64> = c.iter().map(|v| v.conj()).collect();
                sym.insert(k, c);
                sym.insert(neg, cneg);
            }
            merged = sym;
        }
        Ok(Self {
            degree,
            n,
            m,
            real,
            modes: merged
                .into_iter()
                .filter(|(_, c)| c.iter().any(|v| *v != Complex64::new(0.0, 0.0)))
                .map(|(k, coeff)| TorusMode { k, coeff })
                .collect(),
        })
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Modes sorted by wave vector.
    pub fn modes(&self) -> &[TorusMode] {
        &self.modes
    }

    /// `N²`.
    pub fn eigenvalue(&self) -> f64 {
        (self.degree as f64).powi(2)
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<Complex64>, TorusError> {
        self.check(x)?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.m];
        self.eval_into(x, &mut out);
        Ok(out)
    }

    fn check(&self, x: &[f64]) -> Result<(), TorusError> {
        if x.len() != self.n {
            return Err(TorusError::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn eval_into(&self, x: &[f64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for mode in &self.modes {
            let phase: f64 = mode.k.iter().zip(x).map(|(&k, &v)| k as f64 * v).sum();
            let e = Complex64::from_polar(1.0, phase);
            out.iter_mut().zip(&mode.coeff).for_each(|(o, c)| *o += c * e);
        }
    }

    /// `Re ψ(x)`; for Hermitian modes each conjugate pair is summed once.
    pub(crate) fn eval_real_into(&self, x: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        for mode in &self.modes {
            let weight = if self.real {
                if mode.k.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
                    continue;
                }
                2.0
            } else {
                1.0
            };
            let phase: f64 = mode.k.iter().zip(x).map(|(&k, &v)| k as f64 * v).sum();
            let (s, c) = phase.sin_cos();
            out.iter_mut()
                .zip(&mode.coeff)
                .for_each(|(o, a)| *o += weight * (a.re * c - a.im * s));
        }
    }

    /// `Σ -|k|² ĉ_k e^{i k·x}`, computed mode by mode.
    pub fn laplacian(&self, x: &[f64]) -> Result<Vec<Complex64>, TorusError> {
        self.check(x)?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.m];
        for mode in &self.modes {
            let k2 = mode.k.iter().map(|&k| (k as f64) * (k as f64)).sum::<f64>();
            let phase: f64 = mode.k.iter().zip(x).map(|(&k, &v)| k as f64 * v).sum();
            let e = Complex64::from_polar(-k2, phase);
            out.iter_mut().zip(&mode.coeff).for_each(|(o, c)| *o += c * e);
        }
        Ok(out)
    }

    /// The plane-wave sum `Σ ĉ_k e^{i (k/N)·x}` equal to `ψ(x/N)`.
    pub fn rescaled_plane_waves(&self) -> Result<PlaneWaveSum, TorusError> {
        let d = self.degree as f64;
        let terms = self
            .modes
            .iter()
            .map(|mode| PlaneWaveTerm {
                coeff: mode.coeff.clone(),
                direction: mode.k.iter().map(|&k| k as f64 / d).collect(),
            })
            .collect();
        Ok(PlaneWaveSum::new(self.n, self.m, terms)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TorusOptions {
    /// Accept even `N` in dimension 3.
    pub allow_even: bool,
    /// Override of the lattice enumeration cap.
    pub degree_cap: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct TorusSynthesis {
    pub eigenfunction: TorusEigenfunction,
    /// `ψ(x/N)` written as a plane-wave sum on `R^n`.
    pub plane_waves: PlaneWaveSum,
    pub assignment: CapAssignment,
}

/// `ψ(x) = Σ_cells f(ξ_k)|U_k| e^{i N ξ_k·x}` with `ξ_k = k/N` the
/// lattice direction chosen in each cell.
pub fn synthesize_torus(
    density: &HerglotzDensity,
    cover: &SphericalCapCover,
    degree: u64,
    opts: TorusOptions,
) -> Result<TorusSynthesis, TorusError> {
    let n = cover.n();
    let cap = match opts.degree_cap {
        Some(c) => c,
        None => degree_cap(n).ok_or(TorusError::UnsupportedDimension { n })?,
    };
    let lattice = enumerate_lattice_capped(degree, n, cap)?;
    synthesize_on_lattice(density, cover, &lattice, opts)
}

/// As [`synthesize_torus`] with a precomputed lattice sphere.
pub fn synthesize_on_lattice(
    density: &HerglotzDensity,
    cover: &SphericalCapCover,
    lattice: &LatticeSphere,
    opts: TorusOptions,
) -> Result<TorusSynthesis, TorusError> {
    let n = cover.n();
    let degree = lattice.degree();
    if density.n() != n {
        return Err(TorusError::DimensionMismatch {
            expected: n,
            got: density.n(),
        });
    }
    check_parity(degree, n, opts)?;
    let assignment = assign_caps_partial(cover, lattice)?;
    if !assignment.is_complete() {
        return Err(TorusError::EmptyCell {
            report: Box::new(assignment),
        });
    }
    let modes = cover
        .cells()
        .par_iter()
        .zip(assignment.cells.par_iter())
        .map(|(cell, k)| -> Result<TorusMode, TorusError> {
            let k = k.expect("complete assignment");
            let xi = lattice.direction(k);
            let v = density.eval(&normalize(&xi))?;
            Ok(TorusMode {
                k: lattice.points()[k].clone(),
                coeff: v.into_iter().map(|c| c * cell.area).collect(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let eigenfunction = TorusEigenfunction::new(degree, n, density.m(), density.is_real(), modes)?;
    let plane_waves = eigenfunction.rescaled_plane_waves()?;
    Ok(TorusSynthesis {
        eigenfunction,
        plane_waves,
        assignment,
    })
}

fn check_parity(degree: u64, n: usize, opts: TorusOptions) -> Result<(), TorusError> {
    if degree % 2 == 0 {
        match n {
            3 if !opts.allow_even => return Err(TorusError::EvenDegree { degree, n }),
            4.. => log::warn!("even N = {degree} in dimension {n}"),
            _ => {}
        }
    }
    Ok(())
}

fn normalize(v: &[f64]) -> Vec<f64> {
    let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / r).collect()
}

pub fn eval_torus(psi: &TorusEigenfunction, x: &[f64]) -> Result<Vec<Complex64>, TorusError> {
    psi.eval(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusSearch {
    pub admissible: Vec<u64>,
    pub failing: Vec<u64>,
}

/// Splits the candidate `N` into those whose lattice circle meets every
/// cell of the `S^1` cover and those leaving a cell empty.
pub fn search_torus2(candidates: &[u64], cover: &SphericalCapCover) -> Result<TorusSearch, TorusError> {
    if cover.n() != 2 {
        return Err(TorusError::UnsupportedDimension { n: cover.n() });
    }
    let outcome = candidates
        .par_iter()
        .map(|&degree| -> Result<(u64, bool), TorusError> {
            let lattice = enumerate_lattice(degree, 2)?;
            Ok((degree, assign_caps_partial(cover, &lattice)?.is_complete()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut search = TorusSearch {
        admissible: Vec::new(),
        failing: Vec::new(),
    };
    for (degree, ok) in outcome {
        if ok {
            search.admissible.push(degree);
        } else {
            search.failing.push(degree);
        }
    }
    Ok(search)
}

/// `x ↦ ψ(x/N)` as a [`Field`] on `R^n`: real parts, optionally followed
/// by imaginary parts.
pub struct RescaledTorus<'a> {
    psi: &'a TorusEigenfunction,
    scale: f64,
    parts: Parts,
}

impl<'a> RescaledTorus<'a> {
    pub fn new(psi: &'a TorusEigenfunction) -> Self {
        Self {
            psi,
            scale: 1.0 / psi.degree() as f64,
            parts: Parts::Real,
        }
    }

    pub fn with_parts(mut self, parts: Parts) -> Self {
        self.parts = parts;
        self
    }
}

impl Field for RescaledTorus<'_> {
    fn dim(&self) -> usize {
        self.psi.n()
    }

    fn components(&self) -> usize {
        match self.parts {
            Parts::Real => self.psi.m(),
            Parts::Both => 2 * self.psi.m(),
        }
    }

    fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        let m = self.psi.m();
        let y: Vec<f64> = x.iter().map(|v| v * self.scale).collect();
        if self.parts == Parts::Real {
            self.psi.eval_real_into(&y, out);
            return;
        }
        let mut c = vec![Complex64::new(0.0, 0.0); m];
        self.psi.eval_into(&y, &mut c);
        for (i, v) in c.iter().enumerate() {
            out[i] = v.re;
            if self.parts == Parts::Both {
                out[m + i] = v.im;
            }
        }
    }
}

#[cfg(test)]
mod tests;
