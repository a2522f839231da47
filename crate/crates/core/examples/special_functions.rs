//! Ultraspherical kernels, Bessel kernels and the Mehler-Heine limit.

use eigenloc::specfun::{bessel_kernel, gegenbauer_norm, mehler_heine_pair, multiplicity};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("C^3_N(1) and C^3_N(-1):");
    for degree in [1usize, 10, 301, 500] {
        let top = gegenbauer_norm(degree, 3, 1.0)?;
        let bottom = gegenbauer_norm(degree, 3, -1.0)?;
        println!("  N = {degree:>3}  {top:.15}  {bottom:+.15}");
    }

    println!("bessel_kernel(n, r):");
    for n in 2..=4 {
        let row: Vec<String> = [0.0, 1.0, std::f64::consts::PI, 5.0]
            .iter()
            .map(|&r| bessel_kernel(n, r).map(|v| format!("{v:+.6}")))
            .collect::<Result<_, _>>()?;
        println!("  n = {n}  {}", row.join("  "));
    }

    println!("Mehler-Heine gap, n = 3, t in [0, 10]:");
    let mut prev = None;
    for degree in [50usize, 100, 200, 400] {
        let mut gap = 0.0f64;
        for i in 0..=100 {
            let (lhs, rhs) = mehler_heine_pair(degree, 3, 0.1 * i as f64)?;
            gap = gap.max((lhs - rhs).abs());
        }
        match prev {
            Some(p) => println!("  N = {degree:>3}  gap {gap:.3e}  ratio {:.3}", p / gap),
            None => println!("  N = {degree:>3}  gap {gap:.3e}"),
        }
        prev = Some(gap);
    }

    println!("eigenspace dimension d(N, n) on S^n:");
    for n in [2u64, 3] {
        let dims: Vec<u64> = (0..6).map(|d| multiplicity(d, n)).collect();
        println!("  n = {n}  {dims:?}");
    }
    Ok(())
}
