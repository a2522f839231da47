//! Symmetric Jacobi polynomials `P_N^{(α,α)}` and the ultraspherical kernel
//! normalized to one at `t = 1`.

use super::bessel::{kernel_unchecked, BesselOrder};
use super::gamma::ln_gamma;
use super::SpecFunError;

/// Above this degree the three-term recurrence runs in double-double.
pub const COMPENSATED_DEGREE: usize = 300;

/// `P_N^{(α,α)}(t)` for `α > -1` and `|t| <= 1`.
pub fn jacobi_poly(degree: usize, alpha: f64, t: f64) -> Result<f64, SpecFunError> {
    if !(alpha > -1.0) {
        return Err(SpecFunError::InvalidParameter(format!(
            "Jacobi parameter must exceed -1, got {alpha}"
        )));
    }
    check_unit_interval(t)?;
    Ok(jacobi_unchecked(degree, alpha, t))
}

fn check_unit_interval(t: f64) -> Result<(), SpecFunError> {
    if !(t.abs() <= 1.0) {
        return Err(SpecFunError::OutOfDomain { value: t });
    }
    Ok(())
}

pub(crate) fn jacobi_unchecked(degree: usize, alpha: f64, t: f64) -> f64 {
    match degree {
        0 => 1.0,
        1 => (alpha + 1.0) * t,
        _ if degree > COMPENSATED_DEGREE => jacobi_compensated(degree, alpha, t),
        _ => {
            let mut prev = 1.0;
            let mut cur = (alpha + 1.0) * t;
            for k in 2..=degree {
                let (a, b, c) = recurrence_coefficients(k, alpha);
                let next = (b * t * cur - c * prev) / a;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// `a_k P_k = b_k t P_{k-1} - c_k P_{k-2}` for `α = β`.
#[inline]
fn recurrence_coefficients(k: usize, alpha: f64) -> (f64, f64, f64) {
    let k = k as f64;
    let s = 2.0 * k + 2.0 * alpha;
    let a = 2.0 * k * (k + 2.0 * alpha) * (s - 2.0);
    let b = (s - 1.0) * s * (s - 2.0);
    let c = 2.0 * (k + alpha - 1.0) * (k + alpha - 1.0) * s;
    (a, b, c)
}

fn jacobi_compensated(degree: usize, alpha: f64, t: f64) -> f64 {
    let mut prev = DoubleDouble::from(1.0);
    let mut cur = DoubleDouble::from(alpha + 1.0).mul(t);
    for k in 2..=degree {
        let (a, b, c) = recurrence_coefficients(k, alpha);
        let next = cur.mul(b).mul(t).sub(prev.mul(c)).div(a);
        prev = cur;
        cur = next;
    }
    cur.hi + cur.lo
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl From<f64> for DoubleDouble {
    fn from(hi: f64) -> Self {
        Self { hi, lo: 0.0 }
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> DoubleDouble {
    let s = a + b;
    DoubleDouble {
        hi: s,
        lo: b - (s - a),
    }
}

impl DoubleDouble {
    #[inline]
    fn mul(self, b: f64) -> Self {
        let p = self.hi * b;
        let e = self.hi.mul_add(b, -p) + self.lo * b;
        quick_two_sum(p, e)
    }

    #[inline]
    fn sub(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, -other.hi);
        quick_two_sum(s, e + (self.lo - other.lo))
    }

    #[inline]
    fn div(self, b: f64) -> Self {
        let q = self.hi / b;
        let p = q * b;
        let e = q.mul_add(b, -p);
        let r = ((self.hi - p) - e + self.lo) / b;
        quick_two_sum(q, r)
    }
}

/// The ultraspherical kernel `C^n_N(t) = Γ(N+1)Γ(n/2)/Γ(N+n/2) · P_N^{(n/2-1, n/2-1)}(t)`
/// with the normalizing ratio precomputed, so that `C^n_N(1) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerKernel {
    degree: usize,
    n: usize,
    alpha: f64,
    scale: f64,
}

impl GegenbauerKernel {
    pub fn new(degree: usize, n: usize) -> Result<Self, SpecFunError> {
        if n < 2 {
            return Err(SpecFunError::UnsupportedDimension { n });
        }
        let half = n as f64 / 2.0;
        let scale = if n == 2 {
            1.0
        } else {
            let d = degree as f64;
            (ln_gamma(d + 1.0) + ln_gamma(half) - ln_gamma(d + half)).exp()
        };
        Ok(Self {
            degree,
            n,
            alpha: half - 1.0,
            scale,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Value at `t`; arguments are clamped into `[-1, 1]` to absorb rounding
    /// in inner products of unit vectors.
    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        self.scale * jacobi_unchecked(self.degree, self.alpha, t.clamp(-1.0, 1.0))
    }
}

/// `C^n_N(t)`, normalized so that `C^n_N(1) = 1`.
pub fn gegenbauer_norm(degree: usize, n: usize, t: f64) -> Result<f64, SpecFunError> {
    check_unit_interval(t)?;
    Ok(GegenbauerKernel::new(degree, n)?.eval(t))
}

/// Both sides of the Mehler–Heine limit,
/// `(N^{1-n/2} P_N^{(n/2-1,n/2-1)}(cos(t/N)), 2^{n/2-1} J_{n/2-1}(t)/t^{n/2-1})`.
pub fn mehler_heine_pair(degree: usize, n: usize, t: f64) -> Result<(f64, f64), SpecFunError> {
    if degree == 0 {
        return Err(SpecFunError::InvalidParameter(
            "Mehler-Heine comparison needs degree >= 1".into(),
        ));
    }
    let order = BesselOrder::for_dimension(n)?;
    if t.is_nan() || t < 0.0 {
        return Err(SpecFunError::NegativeArgument { value: t });
    }
    let nu = order.value();
    let d = degree as f64;
    let lhs = d.powf(-nu) * jacobi_unchecked(degree, nu, (t / d).cos());
    let rhs = 2f64.powf(nu) * kernel_unchecked(order, t);
    Ok((lhs, rhs))
}
