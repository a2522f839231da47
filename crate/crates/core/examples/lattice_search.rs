//! Lattice points on circles: which odd N put a direction in every arc of
//! a fine cover of S^1.

use eigenloc::herglotz::build_cap_cover;
use eigenloc::torus::{enumerate_lattice, search_torus2};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for degree in [1u64, 5, 25, 65, 325] {
        println!("|k| = {degree:>3} in Z^2: {:>3} points", enumerate_lattice(degree, 2)?.len());
    }
    for degree in [3u64, 5] {
        println!("|k| = {degree} in Z^3: {} points", enumerate_lattice(degree, 3)?.len());
    }
    let cover = build_cap_cover(2, 0.1)?;
    let odd: Vec<u64> = (1..=1000).step_by(2).collect();
    let search = search_torus2(&odd, &cover)?;
    println!(
        "eps = 0.1 ({} arcs): {} admissible, {} failing odd N <= 1000",
        cover.len(),
        search.admissible.len(),
        search.failing.len()
    );
    println!("  admissible: {:?}", search.admissible);
    Ok(())
}
