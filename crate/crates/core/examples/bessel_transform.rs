//! Bessel sums from a Herglotz density on the plane: extend radially with a
//! bump, Fourier transform, and discretize over a ball cover.

use eigenloc::analysis::cr_error;
use eigenloc::grid::GridSpec;
use eigenloc::herglotz::{
    discretize_transform, extend_and_transform, BumpProfile, CoverOptions, FourierOptions,
};
use eigenloc::waves::{HerglotzDensity, WaveSpec};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = HerglotzDensity::from_fn(2, 1, true, |xi: &[f64]| {
        vec![Complex64::new(1.0 + 0.3 * (2.0 * xi[0] * xi[1]), 0.0)]
    })?;
    let target = WaveSpec::Herglotz(f.clone());
    let grid = GridSpec::ball(2, 1.0, 0.05, 1)?;
    let bump = BumpProfile::new(0.05, 0.95)?;
    for (radius, delta) in [(4.0, 0.4), (8.0, 0.2), (12.0, 0.2)] {
        let ft = extend_and_transform(&f, bump, FourierOptions { radius, ..FourierOptions::default() })?;
        let (bs, report) = discretize_transform(&ft, delta, CoverOptions::default())?;
        let field = WaveSpec::BesselSum(bs).evaluator(grid.corner_radius(), 1e-10)?;
        let err = cr_error(&target, &field, &grid, 0)?;
        println!(
            "R = {radius:<4} delta = {delta:<4} terms = {:>6}  tail = {:.2e}  error = {err:.3e}",
            report.terms,
            ft.tail_mass()
        );
    }
    Ok(())
}
