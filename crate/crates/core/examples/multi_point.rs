//! Two targets at different base points of S^3 in one eigenfunction; the
//! interference bound decays like 1/N.

use eigenloc::sphere::{decay_profile, multi_synthesize, GeodesicChart};
use eigenloc::waves::{BesselSum, BesselTerm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bs = BesselSum::new(3, 1, 0.0, vec![BesselTerm { coeff: vec![1.0], center: vec![0.0; 3] }])?;
    let a = GeodesicChart::north(3);
    let b = GeodesicChart::new(&[0.0, 0.8, 0.0, 0.6])?;
    for degree in [50usize, 100, 200, 400] {
        let (psi, report) = multi_synthesize(&[(a.clone(), bs.clone()), (b.clone(), bs.clone())], degree)?;
        println!(
            "N = {degree:>3}  terms {}  rho {:.4}  N*decay {:.4}  interference bound {:.3e}",
            psi.terms().len(),
            report.rho,
            degree as f64 * report.decay,
            report.interference_bound
        );
    }
    println!("N*decay at rho = 0.3, N = 1000: {:.4}", 1000.0 * decay_profile(1000, 3, 0.3)?);
    Ok(())
}
