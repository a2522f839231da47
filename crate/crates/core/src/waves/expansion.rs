//! Truncated harmonic expansions of sampled waves and their Herglotz
//! densities.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    i_pow, plane_wave_degree, two_pi_pow, HarmonicExpansion, HerglotzDensity, WaveError,
    WaveSpec, DEFAULT_TOLERANCE,
};
use crate::quadrature::{gauss_legendre, SphereQuadrature};
use crate::specfun::{basis_unchecked, harmonic_offset, hyperspherical_unchecked, BesselOrder};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionOptions {
    /// Radius of the ball the fit is made on.
    pub radius: f64,
    /// Number of radial Gauss–Legendre nodes; 0 picks `max(12, L + 8)`.
    pub radial_nodes: usize,
    /// Degree of the angular rule; 0 picks one from `L` and the radius.
    pub angular_degree: usize,
}

impl Default for ExpansionOptions {
    fn default() -> Self {
        Self {
            radius: 2.0,
            radial_nodes: 0,
            angular_degree: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionReport {
    /// `‖φ - φ_L‖` in `L²(B_radius)`, by quadrature.
    pub l2_truncation: f64,
    /// `‖φ‖` in `L²(B_radius)`.
    pub l2_norm: f64,
    /// Largest pointwise difference at the quadrature nodes.
    pub sup_sample_error: f64,
    pub radial_nodes: usize,
    pub angular_degree: usize,
}

/// Fit `b_lk` for `l <= degree` to samples of `φ` on the ball: project on
/// each harmonic at several radii, then least squares (in `L²` of the
/// ball) against `j_l(r)`.
pub fn expand_wave<F>(
    n: usize,
    m: usize,
    degree: u32,
    sampler: F,
    opts: ExpansionOptions,
) -> Result<(HarmonicExpansion, ExpansionReport), WaveError>
where
    F: Fn(&[f64]) -> Vec<Complex64> + Sync,
{
    if n != 2 && n != 3 {
        return Err(WaveError::UnsupportedDimension { n });
    }
    if !(opts.radius > 0.0) || m == 0 {
        return Err(WaveError::Invalid("need a positive radius and m >= 1".into()));
    }
    let big_r = opts.radius;
    let s_count = if opts.radial_nodes == 0 {
        12.max(degree as usize + 8)
    } else {
        opts.radial_nodes
    };
    let p = if opts.angular_degree == 0 {
        degree as usize + plane_wave_degree(big_r)
    } else {
        opts.angular_degree
    };
    let quad = SphereQuadrature::new(n, p).map_err(|_| WaveError::UnsupportedDimension { n })?;
    let (gx, gw) = gauss_legendre(s_count);
    let radii: Vec<f64> = gx.iter().map(|x| 0.5 * big_r * (x + 1.0)).collect();
    let rweights: Vec<f64> = gw
        .iter()
        .zip(&radii)
        .map(|(w, r)| 0.5 * big_r * w * r.powi(n as i32 - 1))
        .collect();
    let count = harmonic_offset(degree + 1, n);
    let basis: Vec<Vec<f64>> = quad.points().map(|p| basis_unchecked(degree, p)).collect();

    // samples[s][q][c]
    let samples: Vec<Vec<Vec<Complex64>>> = radii
        .par_iter()
        .map(|&r| {
            quad.points()
                .map(|w| {
                    let x: Vec<f64> = w.iter().map(|v| v * r).collect();
                    let v = sampler(&x);
                    assert_eq!(v.len(), m, "sampler returned the wrong number of components");
                    v
                })
                .collect()
        })
        .collect();

    // Angular projections a[s][i][c].
    let proj: Vec<Vec<Vec<Complex64>>> = samples
        .iter()
        .map(|row| {
            let mut a = vec![vec![Complex64::new(0.0, 0.0); m]; count];
            for ((v, y), w) in row.iter().zip(&basis).zip(quad.weights()) {
                for (ai, yi) in a.iter_mut().zip(y) {
                    let s = yi * w;
                    for (c, vc) in ai.iter_mut().zip(v) {
                        *c += vc * s;
                    }
                }
            }
            a
        })
        .collect();

    let base = BesselOrder::for_dimension(n).expect("n in {2, 3}");
    let volume: f64 = rweights.iter().sum();
    let mut jl = vec![vec![0.0; s_count]; degree as usize + 1];
    let mut coeffs = vec![vec![Complex64::new(0.0, 0.0); m]; count];
    for l in 0..=degree {
        for (s, &r) in radii.iter().enumerate() {
            jl[l as usize][s] = hyperspherical_unchecked(l, base, r);
        }
        let j = &jl[l as usize];
        let den: f64 = j.iter().zip(&rweights).map(|(a, w)| a * a * w).sum();
        if (den / volume).sqrt() < 1e-14 {
            return Err(WaveError::IllConditionedRadialFit { l });
        }
        for i in harmonic_offset(l, n)..harmonic_offset(l + 1, n) {
            for c in 0..m {
                let num: Complex64 = (0..s_count)
                    .map(|s| proj[s][i][c] * (j[s] * rweights[s]))
                    .sum();
                coeffs[i][c] = num / den;
            }
        }
    }

    let degree_of: Vec<usize> = (0..=degree)
        .flat_map(|l| std::iter::repeat(l as usize).take(harmonic_offset(l + 1, n) - harmonic_offset(l, n)))
        .collect();
    let mut err2 = 0.0;
    let mut norm2 = 0.0;
    let mut sup = 0.0f64;
    for s in 0..s_count {
        for (q, w) in quad.weights().iter().enumerate() {
            for c in 0..m {
                let mut fit = Complex64::new(0.0, 0.0);
                for i in 0..count {
                    fit += coeffs[i][c] * (jl[degree_of[i]][s] * basis[q][i]);
                }
                let v = samples[s][q][c];
                let d = (v - fit).norm();
                sup = sup.max(d);
                err2 += rweights[s] * w * d * d;
                norm2 += rweights[s] * w * v.norm_sqr();
            }
        }
    }
    let exp = HarmonicExpansion::new(n, degree, coeffs)?;
    Ok((
        exp,
        ExpansionReport {
            l2_truncation: err2.sqrt(),
            l2_norm: norm2.sqrt(),
            sup_sample_error: sup,
            radial_nodes: s_count,
            angular_degree: p,
        },
    ))
}

/// [`expand_wave`] applied to a wave given in any representation.
pub fn expand_spec(
    spec: &WaveSpec,
    degree: u32,
    opts: ExpansionOptions,
) -> Result<(HarmonicExpansion, ExpansionReport), WaveError> {
    let ev = spec.evaluator(opts.radius, DEFAULT_TOLERANCE)?;
    expand_wave(spec.n(), spec.m(), degree, |x| ev.eval_complex(x), opts)
}

/// The density `f_1 = Σ b_lk Y_lk / ((2π)^{n/2} i^l)` whose Herglotz wave
/// is the given expansion.
pub fn expansion_to_density(exp: &HarmonicExpansion) -> Result<HerglotzDensity, WaveError> {
    let n = exp.n();
    let scale = two_pi_pow(n);
    let mut coeffs = Vec::with_capacity(exp.coeffs().len());
    let biggest = exp
        .coeffs()
        .iter()
        .flatten()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    let mut real = true;
    for l in 0..=exp.degree() {
        let factor = 1.0 / (i_pow(l) * scale);
        for i in harmonic_offset(l, n)..harmonic_offset(l + 1, n) {
            let b = &exp.coeffs()[i];
            real &= b.iter().all(|c| c.im.abs() <= 1e-12 * biggest);
            coeffs.push(b.iter().map(|c| c * factor).collect());
        }
    }
    HerglotzDensity::from_harmonics(n, exp.degree(), coeffs, real)
}
