//! Plane-wave sums from cap covers: the error against the exact Herglotz
//! wave drops by about half each time the cell diameter halves.

use eigenloc::analysis::cr_error_fields;
use eigenloc::grid::GridSpec;
use eigenloc::herglotz::{discretize_density, CellAnchor, CoverOptions, SphericalCapCover};
use eigenloc::waves::{HerglotzDensity, Parts, WaveSpec};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = HerglotzDensity::from_fn(3, 1, false, |xi: &[f64]| {
        vec![Complex64::new(1.0 + 0.4 * xi[2] * xi[2], 0.5 * xi[0])]
    })?;
    let target = WaveSpec::Herglotz(f.clone());
    let grid = GridSpec::ball(3, 1.0, 0.1, 1)?;
    let exact = target.evaluator(2.0, 1e-12)?.with_parts(Parts::Both);
    let opts = CoverOptions {
        anchor: CellAnchor::Corner,
        ..CoverOptions::default()
    };
    let mut prev: Option<f64> = None;
    for eps in [0.8, 0.4, 0.2, 0.1] {
        let cover = SphericalCapCover::new(3, eps, opts)?;
        let sum = WaveSpec::PlaneWaveSum(discretize_density(&f, &cover)?);
        let approx = sum.evaluator(2.0, 1e-12)?.with_parts(Parts::Both);
        let err = cr_error_fields(&exact, &approx, &grid, 0)?;
        let ratio = prev.map_or(String::new(), |p| format!("  ratio {:.2}", p / err));
        println!("eps = {eps:<4} cells = {:>6}  error = {err:.3e}{ratio}", cover.len());
        prev = Some(err);
    }
    Ok(())
}
