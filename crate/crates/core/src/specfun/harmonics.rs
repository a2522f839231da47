//! Real orthonormal spherical harmonics on `S^1` and `S^2`, and the
//! dimension of the degree-`N` eigenspace on `S^n`.

use std::f64::consts::PI;

use super::SpecFunError;

const UNIT_TOLERANCE: f64 = 1e-12;

/// `d(N, n) = binom(N+n-1, N) (2N+n-1)/(N+n-1)`, the multiplicity of the
/// eigenvalue `N(N+n-1)` on `S^n`. Also valid for `n = 1` (the circle).
pub fn multiplicity(degree: u64, n: u64) -> u64 {
    if degree == 0 {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    let top = (degree + n - 1) as u128;
    let binom = binomial(top, (n - 1) as u128);
    let num = binom * (2 * degree + n - 1) as u128;
    let den = (degree + n - 1) as u128;
    debug_assert_eq!(num % den, 0);
    (num / den) as u64
}

fn binomial(top: u128, k: u128) -> u128 {
    let k = k.min(top - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (top - i) / (i + 1);
    }
    acc
}

/// Number of basis harmonics of degree `l` on the unit sphere of `R^n`.
pub fn harmonic_count(l: u32, n: usize) -> usize {
    multiplicity(l as u64, n as u64 - 1) as usize
}

/// Offset of degree `l` in a flat `(l, k)` coefficient array.
pub fn harmonic_offset(l: u32, n: usize) -> usize {
    (0..l).map(|j| harmonic_count(j, n)).sum()
}

/// Value of the `k`-th (1-based) real orthonormal harmonic of degree `l` at
/// the unit vector `omega` of `R^n`, `n ∈ {2, 3}`.
///
/// On `S^1` the basis is `1/√(2π)`, then `cos(lθ)/√π, sin(lθ)/√π`. On `S^2`
/// index `k` stands for order `m = k - 1 - l`; negative orders carry
/// `sin(|m|φ)`, positive orders `cos(mφ)`.
pub fn sph_harmonic(l: u32, k: usize, omega: &[f64]) -> Result<f64, SpecFunError> {
    let n = omega.len();
    if n != 2 && n != 3 {
        return Err(SpecFunError::UnsupportedDimension { n });
    }
    let count = harmonic_count(l, n);
    if k == 0 || k > count {
        return Err(SpecFunError::IndexOutOfRange { index: k, count });
    }
    check_unit(omega)?;
    Ok(if n == 2 {
        circle_harmonic(l, k, omega[1].atan2(omega[0]))
    } else {
        let m = k as i64 - 1 - l as i64;
        sphere_harmonic(l, m, omega)
    })
}

/// All harmonics of degree `<= lmax` at `omega`, laid out by
/// [`harmonic_offset`].
pub fn harmonic_basis(lmax: u32, omega: &[f64]) -> Result<Vec<f64>, SpecFunError> {
    let n = omega.len();
    if n != 2 && n != 3 {
        return Err(SpecFunError::UnsupportedDimension { n });
    }
    check_unit(omega)?;
    Ok(basis_unchecked(lmax, omega))
}

pub(crate) fn basis_unchecked(lmax: u32, omega: &[f64]) -> Vec<f64> {
    if omega.len() == 2 {
        let theta = omega[1].atan2(omega[0]);
        let mut out = Vec::with_capacity(1 + 2 * lmax as usize);
        out.push(1.0 / (2.0 * PI).sqrt());
        let s = 1.0 / PI.sqrt();
        for l in 1..=lmax {
            let (sn, cs) = (l as f64 * theta).sin_cos();
            out.push(s * cs);
            out.push(s * sn);
        }
        return out;
    }
    let lm = lmax as usize;
    let mut out = vec![0.0; (lm + 1) * (lm + 1)];
    let z = omega[2].clamp(-1.0, 1.0);
    let sxy = omega[0].hypot(omega[1]);
    let phi = omega[1].atan2(omega[0]);
    for m in 0..=lm {
        let column = legendre_column(lmax, m as u32, z, sxy);
        let (sn, cs) = (m as f64 * phi).sin_cos();
        for l in m..=lm {
            let p = column[l - m];
            let base = l * l + l; // index of m = 0 within degree l
            if m == 0 {
                out[base] = p;
            } else {
                out[base + m] = std::f64::consts::SQRT_2 * p * cs;
                out[base - m] = std::f64::consts::SQRT_2 * p * sn;
            }
        }
    }
    out
}

fn check_unit(omega: &[f64]) -> Result<(), SpecFunError> {
    let norm = omega.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > UNIT_TOLERANCE {
        return Err(SpecFunError::NotUnitVector { norm });
    }
    Ok(())
}

fn circle_harmonic(l: u32, k: usize, theta: f64) -> f64 {
    if l == 0 {
        return 1.0 / (2.0 * PI).sqrt();
    }
    let arg = l as f64 * theta;
    let v = if k == 1 { arg.cos() } else { arg.sin() };
    v / PI.sqrt()
}

fn sphere_harmonic(l: u32, m: i64, omega: &[f64]) -> f64 {
    let am = m.unsigned_abs() as u32;
    let z = omega[2].clamp(-1.0, 1.0);
    let sxy = omega[0].hypot(omega[1]);
    let p = *legendre_column(l, am, z, sxy).last().unwrap();
    if m == 0 {
        return p;
    }
    let phi = omega[1].atan2(omega[0]);
    let arg = am as f64 * phi;
    let trig = if m > 0 { arg.cos() } else { arg.sin() };
    std::f64::consts::SQRT_2 * p * trig
}

/// Fully normalized associated Legendre values `P̄_l^m(z)` for
/// `l = m..=lmax` (no Condon–Shortley phase), normalized so that
/// `P̄_l^m(cos θ) e^{imφ}` has unit `L²(S²)` norm. `s = sqrt(1 - z²)`.
fn legendre_column(lmax: u32, m: u32, z: f64, s: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity((lmax - m + 1) as usize);
    let mut pmm = 1.0 / (4.0 * PI).sqrt();
    for i in 1..=m {
        let i = i as f64;
        pmm *= ((2.0 * i + 1.0) / (2.0 * i)).sqrt() * s;
    }
    out.push(pmm);
    if lmax == m {
        return out;
    }
    let mf = m as f64;
    let mut prev = pmm;
    let mut cur = z * (2.0 * mf + 3.0).sqrt() * pmm;
    out.push(cur);
    for l in (m + 2)..=lmax {
        let lf = l as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
        let next = a * (z * cur - b * prev);
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}
