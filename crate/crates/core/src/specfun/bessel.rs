//! Bessel functions of the first kind for the non-negative integer and
//! half-integer orders that show up as `n/2 - 1 + l`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::gamma::ln_gamma;
use super::SpecFunError;

/// Arguments at or below this use the power series regardless of order.
const SERIES_T_MAX: f64 = 6.0;
const RESCALE_ABOVE: f64 = 1e250;

/// Order `nu` of a Bessel function, stored as `2 nu` so that integer and
/// half-integer orders are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BesselOrder {
    twice: u32,
}

impl BesselOrder {
    /// The order `n/2 - 1` attached to ambient dimension `n >= 2`.
    pub fn for_dimension(n: usize) -> Result<Self, SpecFunError> {
        if n < 2 {
            return Err(SpecFunError::UnsupportedDimension { n });
        }
        Ok(Self {
            twice: (n - 2) as u32,
        })
    }

    pub fn from_twice(twice: u32) -> Self {
        Self { twice }
    }

    pub fn new(nu: f64) -> Result<Self, SpecFunError> {
        let twice = 2.0 * nu;
        if !(nu >= 0.0) || twice.fract() != 0.0 || twice > u32::MAX as f64 {
            return Err(SpecFunError::InvalidParameter(format!(
                "Bessel order must be a non-negative integer or half-integer, got {nu}"
            )));
        }
        Ok(Self {
            twice: twice as u32,
        })
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn twice(self) -> u32 {
        self.twice
    }

    pub fn is_half_integer(self) -> bool {
        self.twice % 2 == 1
    }

    /// `nu + l`.
    pub fn shifted(self, l: u32) -> Self {
        Self {
            twice: self.twice + 2 * l,
        }
    }
}

/// `J_nu(t)` for `t >= 0`.
pub fn bessel_j(order: BesselOrder, t: f64) -> Result<f64, SpecFunError> {
    check_argument(t)?;
    Ok(j_unchecked(order, t))
}

/// The radial kernel `J_{n/2-1}(r) / r^{n/2-1}`, continuous at `r = 0`
/// where it equals `1 / (2^{n/2-1} Γ(n/2))`.
pub fn bessel_kernel(n: usize, r: f64) -> Result<f64, SpecFunError> {
    let order = BesselOrder::for_dimension(n)?;
    check_argument(r)?;
    Ok(kernel_unchecked(order, r))
}

/// Radial part `j_l(r) = J_{l+n/2-1}(r) / r^{n/2-1}` of the degree-`l`
/// solutions `j_l(r) Y_l(ω)` of `Δu + u = 0` in `R^n`.
pub fn hyperspherical_bessel(l: u32, n: usize, r: f64) -> Result<f64, SpecFunError> {
    let order = BesselOrder::for_dimension(n)?;
    check_argument(r)?;
    Ok(hyperspherical_unchecked(l, order, r))
}

fn check_argument(t: f64) -> Result<(), SpecFunError> {
    if t.is_nan() || t < 0.0 {
        return Err(SpecFunError::NegativeArgument { value: t });
    }
    Ok(())
}

fn use_series(nu: f64, t: f64) -> bool {
    t <= SERIES_T_MAX || t * t <= 4.0 * (nu + 1.0)
}

pub(crate) fn j_unchecked(order: BesselOrder, t: f64) -> f64 {
    let nu = order.value();
    if t == 0.0 {
        return if order.twice == 0 { 1.0 } else { 0.0 };
    }
    if order.twice == 1 {
        return (2.0 / (PI * t)).sqrt() * t.sin();
    }
    if use_series(nu, t) {
        return series_scaled(nu, t) * (nu * (0.5 * t).ln()).exp();
    }
    miller(order, t)
}

pub(crate) fn kernel_unchecked(order: BesselOrder, r: f64) -> f64 {
    let nu = order.value();
    match order.twice {
        0 => j_unchecked(order, r),
        1 => {
            let c = (2.0 / PI).sqrt();
            if r < 1e-3 {
                let r2 = r * r;
                c * (1.0 - r2 / 6.0 * (1.0 - r2 / 20.0))
            } else {
                c * r.sin() / r
            }
        }
        _ if use_series(nu, r) => series_scaled(nu, r) * (-nu * std::f64::consts::LN_2).exp(),
        _ => miller(order, r) / r.powf(nu),
    }
}

pub(crate) fn hyperspherical_unchecked(l: u32, base: BesselOrder, r: f64) -> f64 {
    if l == 0 {
        return kernel_unchecked(base, r);
    }
    if r == 0.0 {
        return 0.0;
    }
    let nu = base.value();
    let order = base.shifted(l);
    let mu = order.value();
    if use_series(mu, r) {
        // (r/2)^l 2^{-nu} Σ (-r²/4)^k / (k! Γ(k + mu + 1))
        let log_prefactor = l as f64 * (0.5 * r).ln() - nu * std::f64::consts::LN_2;
        series_scaled(mu, r) * log_prefactor.exp()
    } else {
        j_unchecked(order, r) / r.powf(nu)
    }
}

/// `J_nu(t) / (t/2)^nu` by its power series.
pub(crate) fn series_scaled(nu: f64, t: f64) -> f64 {
    let q = -0.25 * t * t;
    let mut term = (-ln_gamma(nu + 1.0)).exp();
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= q / (k * (k + nu));
        sum += term;
        // terms grow until k(k + nu) exceeds t²/4
        if term.abs() <= 1e-17 * sum.abs() && k * (k + nu) > -q {
            break;
        }
        if k > 500.0 {
            break;
        }
        k += 1.0;
    }
    sum
}

/// Miller's backward recurrence, normalized by `1 = J_0 + 2 Σ J_{2k}` for
/// integer orders and by the closed forms of `J_{±1/2}` for half-integers.
fn miller(order: BesselOrder, t: f64) -> f64 {
    let nu = order.value();
    let half = order.is_half_integer();
    let base = if half { 0.5 } else { 0.0 };
    let target_k = (order.twice / 2) as usize;

    let big = nu.max(t);
    let mut start = (big + 20.0 + (50.0 * big).sqrt()).ceil() as usize;
    if !half && start % 2 == 1 {
        start += 1;
    }
    let start = start.max(target_k + 2);

    let mut above = 0.0;
    let mut cur = 1e-30;
    let mut target = if start == target_k { cur } else { 0.0 };
    let mut norm = if !half && start % 2 == 0 { 2.0 * cur } else { 0.0 };

    for k in (1..=start).rev() {
        let mu = base + k as f64;
        let below = 2.0 * mu / t * cur - above;
        above = cur;
        cur = below;
        let kk = k - 1;
        if kk == target_k {
            target = cur;
        }
        if !half {
            if kk == 0 {
                norm += cur;
            } else if kk % 2 == 0 {
                norm += 2.0 * cur;
            }
        }
        if cur.abs() > RESCALE_ABOVE {
            let s = 1.0 / RESCALE_ABOVE;
            cur *= s;
            above *= s;
            target *= s;
            norm *= s;
        }
    }

    if !half {
        return target / norm;
    }
    // cur = J_{1/2}, above = J_{3/2} (unnormalized)
    let minus_half = cur / t - above;
    let amp = (2.0 / (PI * t)).sqrt();
    let (s, c) = t.sin_cos();
    if s.abs() >= c.abs() {
        target * (amp * s) / cur
    } else {
        target * (amp * c) / minus_half
    }
}
