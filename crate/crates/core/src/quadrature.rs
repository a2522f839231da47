//! Gauss–Legendre rules and product quadrature on `S^1` and `S^2`.

use std::f64::consts::PI;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("sphere quadrature is only available on S^1 and S^2 (ambient n = {n})")]
    UnsupportedDimension { n: usize },
}

/// Nodes and weights of the `q`-point Gauss–Legendre rule on `[-1, 1]`,
/// nodes ascending.
pub fn gauss_legendre(q: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; q];
    let mut weights = vec![0.0; q];
    let qf = q as f64;
    for i in 0..q.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (qf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(q, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(q, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[q - 1 - i] = x;
        weights[i] = w;
        weights[q - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(q: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if q == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=q {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = q as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Product rule on the unit sphere of `R^n` (`n = 2`: uniform points on the
/// circle; `n = 3`: Gauss–Legendre in `z` times uniform azimuth), exact for
/// spherical polynomials of degree `<= degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereQuadrature {
    n: usize,
    degree: usize,
    polar: Vec<f64>,
    azimuth: Vec<f64>,
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl SphereQuadrature {
    pub fn new(n: usize, degree: usize) -> Result<Self, QuadratureError> {
        let m = degree + 2;
        let azimuth: Vec<f64> = (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).collect();
        match n {
            2 => {
                let w = 2.0 * PI / m as f64;
                let points = azimuth.iter().flat_map(|a| [a.cos(), a.sin()]).collect();
                Ok(Self {
                    n,
                    degree,
                    polar: Vec::new(),
                    weights: vec![w; m],
                    azimuth,
                    points,
                })
            }
            3 => {
                let q = degree / 2 + 2;
                let (zs, zw) = gauss_legendre(q);
                let mut points = Vec::with_capacity(3 * q * m);
                let mut weights = Vec::with_capacity(q * m);
                let wa = 2.0 * PI / m as f64;
                for (z, w) in zs.iter().zip(&zw) {
                    let s = (1.0 - z * z).sqrt();
                    for a in &azimuth {
                        points.extend_from_slice(&[s * a.cos(), s * a.sin(), *z]);
                        weights.push(w * wa);
                    }
                }
                Ok(Self {
                    n,
                    degree,
                    polar: zs,
                    azimuth,
                    points,
                    weights,
                })
            }
            _ => Err(QuadratureError::UnsupportedDimension { n }),
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.points.chunks_exact(self.n)
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.n..(i + 1) * self.n]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `z` nodes (empty on the circle).
    pub fn polar_nodes(&self) -> &[f64] {
        &self.polar
    }

    pub fn azimuth_nodes(&self) -> &[f64] {
        &self.azimuth
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for q in [1usize, 2, 5, 16, 64] {
            let (x, w) = gauss_legendre(q);
            for p in 0..(2 * q) {
                let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(p as i32)).sum();
                let want = if p % 2 == 1 { 0.0 } else { 2.0 / (p as f64 + 1.0) };
                assert!((got - want).abs() < 1e-13, "q={q} p={p}");
            }
        }
    }

    #[test]
    fn sphere_rules_have_the_right_total_measure() {
        let c = SphereQuadrature::new(2, 10).unwrap();
        assert!((c.weights().iter().sum::<f64>() - 2.0 * PI).abs() < 1e-13);
        let s = SphereQuadrature::new(3, 10).unwrap();
        assert!((s.weights().iter().sum::<f64>() - 4.0 * PI).abs() < 1e-13);
        for p in s.points() {
            assert!((p.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-14);
        }
        assert!(SphereQuadrature::new(4, 3).is_err());
    }

    #[test]
    fn second_moment_on_sphere() {
        // ∫ x_1^2 dσ over S^2 = 4π/3
        let s = SphereQuadrature::new(3, 4).unwrap();
        let got: f64 = s.points().zip(s.weights()).map(|(p, w)| w * p[0] * p[0]).sum();
        assert!((got - 4.0 * PI / 3.0).abs() < 1e-13);
    }
}
