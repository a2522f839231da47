//! A degree-N eigenfunction on S^3 whose rescaling near the north pole
//! reproduces a two-term Bessel sum; the C^0 error halves as N doubles.

use eigenloc::analysis::cr_error;
use eigenloc::grid::GridSpec;
use eigenloc::sphere::{synthesize_sphere, GeodesicChart, RescaledSphere};
use eigenloc::waves::{BesselSum, BesselTerm, WaveSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bs = BesselSum::new(
        3,
        1,
        1.0,
        vec![
            BesselTerm { coeff: vec![1.0], center: vec![0.0, 0.0, 0.0] },
            BesselTerm { coeff: vec![0.5], center: vec![0.6, 0.0, 0.0] },
        ],
    )?;
    let target = WaveSpec::BesselSum(bs.clone());
    let chart = GeodesicChart::north(3);
    let grid = GridSpec::ball(3, 1.0, 0.05, 1)?;
    let mut prev: Option<f64> = None;
    for degree in [25usize, 50, 100, 200] {
        let psi = synthesize_sphere(&bs, degree, &chart)?;
        let err = cr_error(&target, &RescaledSphere::new(&psi, &chart), &grid, 0)?;
        let ratio = prev.map_or(String::new(), |p| format!("  ratio {:.3}", p / err));
        println!("N = {degree:>3}  eigenvalue = {:>6}  error = {err:.4e}{ratio}", psi.eigenvalue());
        prev = Some(err);
    }
    Ok(())
}
