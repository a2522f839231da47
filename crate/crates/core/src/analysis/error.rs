//! `C^r` distance between a target wave and an approximating field.

use super::fd::derivative_sup;
use super::AnalysisError;
use crate::grid::{EvaluationGrid, Field, GridSpec};
use crate::waves::{WaveSpec, DEFAULT_TOLERANCE};

/// `max_{|α| <= r} sup |∂^α (φ - ψ)|` over interior masked nodes, with
/// centred second-order differences.
pub fn cr_error(target: &WaveSpec, field: &dyn Field, grid: &GridSpec, r: usize) -> Result<f64, AnalysisError> {
    let ev = target.evaluator(grid.corner_radius(), DEFAULT_TOLERANCE)?;
    cr_error_fields(&ev, field, grid, r)
}

/// As [`cr_error`] for two arbitrary fields of equal shape.
pub fn cr_error_fields(target: &dyn Field, field: &dyn Field, grid: &GridSpec, r: usize) -> Result<f64, AnalysisError> {
    if r > 2 {
        return Err(AnalysisError::OrderTooHigh { order: r });
    }
    for f in [target, field] {
        if f.dim() != grid.n {
            return Err(AnalysisError::DimensionMismatch {
                expected: grid.n,
                got: f.dim(),
            });
        }
    }
    if target.components() != field.components() {
        return Err(AnalysisError::DimensionMismatch {
            expected: target.components(),
            got: field.components(),
        });
    }
    let reach = r.min(1);
    grid.require_nodes(2 * reach + 1)?;
    let nodes = grid.interior(reach);
    if nodes.is_empty() {
        return Err(AnalysisError::NoInteriorNodes { order: r });
    }
    let a = EvaluationGrid::sample(grid, target)?;
    let b = EvaluationGrid::sample(grid, field)?;
    Ok(derivative_sup(&a.difference(&b), &nodes, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::scalar_field;
    use crate::waves::{BesselSum, BesselTerm};

    fn target() -> WaveSpec {
        WaveSpec::BesselSum(
            BesselSum::new(
                3,
                1,
                1.0,
                vec![BesselTerm {
                    coeff: vec![1.0],
                    center: vec![0.0; 3],
                }],
            )
            .unwrap(),
        )
    }

    #[test]
    fn identical_fields_have_zero_error() {
        let grid = GridSpec::ball(3, 1.0, 0.1, 1).unwrap();
        let t = target();
        let ev = t.evaluator(2.0, 1e-12).unwrap();
        for r in 0..=2 {
            assert_eq!(cr_error(&t, &ev, &grid, r).unwrap(), 0.0);
        }
    }

    #[test]
    fn higher_order_norms_dominate() {
        let grid = GridSpec::ball(3, 1.0, 0.1, 1).unwrap();
        let t = target();
        let shifted = scalar_field(3, |x: &[f64]| {
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let r = r + 0.01;
            (2.0 / std::f64::consts::PI).sqrt() * r.sin() / r
        });
        let e0 = cr_error(&t, &shifted, &grid, 0).unwrap();
        let e1 = cr_error(&t, &shifted, &grid, 1).unwrap();
        let e2 = cr_error(&t, &shifted, &grid, 2).unwrap();
        assert!(e0 > 0.0 && e1 >= e0 && e2 >= e1);
    }

    #[test]
    fn shape_errors() {
        let grid = GridSpec::ball(3, 1.0, 0.1, 1).unwrap();
        let t = target();
        let f2 = scalar_field(2, |_| 0.0);
        assert!(matches!(cr_error(&t, &f2, &grid, 0), Err(AnalysisError::DimensionMismatch { .. })));
        let f3 = scalar_field(3, |_| 0.0);
        assert!(matches!(cr_error(&t, &f3, &grid, 3), Err(AnalysisError::OrderTooHigh { .. })));
    }
}
