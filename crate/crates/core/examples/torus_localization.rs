//! Eigenfunctions on T^3 built from lattice points on the sphere of radius
//! N, one per cell of a cap cover.

use eigenloc::analysis::cr_error;
use eigenloc::grid::GridSpec;
use eigenloc::herglotz::build_cap_cover;
use eigenloc::torus::{synthesize_torus, RescaledTorus, TorusError, TorusOptions};
use eigenloc::waves::{BesselSum, BesselTerm, HerglotzDensity, WaveSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bs = BesselSum::new(3, 1, 0.0, vec![BesselTerm { coeff: vec![1.0], center: vec![0.0; 3] }])?;
    let target = WaveSpec::BesselSum(bs.clone());
    let density = HerglotzDensity::from_bessel_sum(&bs);
    let grid = GridSpec::ball(3, 1.0, 0.1, 1)?;
    for eps in [0.7, 0.4] {
        let cover = build_cap_cover(3, eps)?;
        println!("eps = {eps}: {} cells", cover.len());
        for degree in (1..=201u64).step_by(2) {
            match synthesize_torus(&density, &cover, degree, TorusOptions::default()) {
                Ok(s) => {
                    let psi = &s.eigenfunction;
                    let err = cr_error(&target, &RescaledTorus::new(psi), &grid, 0)?;
                    println!(
                        "  first admissible odd N = {degree}: {} modes, eigenvalue {}, error {err:.3e}",
                        psi.modes().len(),
                        psi.eigenvalue()
                    );
                    break;
                }
                Err(TorusError::EmptyCell { .. }) => continue,
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(())
}
