//! Partitions of the ball `B_R ⊂ R^n` into cells of small diameter: a
//! central ball, then spherical shells split by cap covers.

use serde::Serialize;

use super::cover::{sphere_area, CellAnchor, CoverOptions, SphericalCapCover};
use super::HerglotzError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallCell {
    pub point: Vec<f64>,
    pub volume: f64,
    pub diameter: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallCellCover {
    n: usize,
    radius: f64,
    delta: f64,
    anchor: CellAnchor,
    cells: Vec<BallCell>,
}

/// Volume of the ball of radius `r` in `R^n`.
pub fn ball_volume(n: usize, r: f64) -> f64 {
    sphere_area(n) * r.powi(n as i32) / n as f64
}

impl BallCellCover {
    /// Cover of `B_radius` (`n ∈ {2, 3, 4}`) by cells of diameter `<= delta`.
    pub fn new(n: usize, radius: f64, delta: f64, opts: CoverOptions) -> Result<Self, HerglotzError> {
        if !(2..=4).contains(&n) {
            return Err(HerglotzError::UnsupportedDimension { n });
        }
        if !(radius > 0.0) || !(delta > 0.0) {
            return Err(HerglotzError::InvalidParameter(
                "ball radius and cell diameter must be positive".into(),
            ));
        }
        let r0 = (0.5 * delta).min(radius);
        let mut cells = vec![BallCell {
            point: vec![0.0; n],
            volume: ball_volume(n, r0),
            diameter: 2.0 * r0,
        }];
        if r0 < radius {
            let shells = ((radius - r0) / (0.5 * delta) - 1e-12).ceil().max(1.0) as usize;
            let t = (radius - r0) / shells as f64;
            for s in 0..shells {
                let r1 = r0 + s as f64 * t;
                let r2 = if s + 1 == shells { radius } else { r1 + t };
                let eps = (delta * delta - t * t).sqrt() / r2;
                let left = opts.max_cells.saturating_sub(cells.len());
                let caps = SphericalCapCover::new(
                    n,
                    eps,
                    CoverOptions {
                        anchor: opts.anchor,
                        max_cells: left,
                    },
                )
                .map_err(|_| HerglotzError::TooManyCells {
                    limit: opts.max_cells,
                })?;
                let shell = (r2.powi(n as i32) - r1.powi(n as i32)) / n as f64;
                let rho = match opts.anchor {
                    CellAnchor::Center => 0.5 * (r1 + r2),
                    CellAnchor::Corner => r1,
                };
                for c in caps.cells() {
                    cells.push(BallCell {
                        point: c.center.iter().map(|v| v * rho).collect(),
                        volume: shell * c.area,
                        diameter: (t * t + r2 * r2 * c.diameter * c.diameter)
                            .sqrt()
                            .min(2.0 * r2),
                    });
                }
            }
        }
        Ok(Self {
            n,
            radius,
            delta,
            anchor: opts.anchor,
            cells,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn anchor(&self) -> CellAnchor {
        self.anchor
    }

    pub fn cells(&self) -> &[BallCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn total_volume(&self) -> f64 {
        self.cells.iter().map(|c| c.volume).sum()
    }

    pub fn max_diameter(&self) -> f64 {
        self.cells.iter().map(|c| c.diameter).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volumes_add_up() {
        for (n, r, d) in [(2, 5.0, 0.3), (3, 3.0, 0.5), (4, 1.5, 0.7), (2, 1.0, 5.0)] {
            let c = BallCellCover::new(n, r, d, CoverOptions::default()).unwrap();
            assert!(
                (c.total_volume() - ball_volume(n, r)).abs() < 1e-8 * ball_volume(n, r).max(1.0),
                "n={n}"
            );
            assert!(c.max_diameter() <= d * (1.0 + 1e-12));
            for cell in c.cells() {
                let norm = cell.point.iter().map(|v| v * v).sum::<f64>().sqrt();
                assert!(norm <= r * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn large_delta_gives_a_single_cell() {
        let c = BallCellCover::new(3, 1.0, 2.5, CoverOptions::default()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.cells()[0].point, vec![0.0; 3]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BallCellCover::new(5, 1.0, 0.1, CoverOptions::default()).is_err());
        assert!(BallCellCover::new(3, -1.0, 0.1, CoverOptions::default()).is_err());
        let tight = CoverOptions {
            max_cells: 50,
            ..Default::default()
        };
        assert!(BallCellCover::new(3, 5.0, 0.1, tight).is_err());
    }
}
