use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::specfun::{gegenbauer_norm, harmonic_basis, harmonic_count, harmonic_offset};
use crate::waves::BesselTerm;

fn unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 0.1 && r <= 1.0 {
            return v.iter().map(|x| x / r).collect();
        }
    }
}

fn in_ball(rng: &mut ChaCha8Rng, dim: usize, radius: f64) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-radius..radius)).collect();
        if v.iter().map(|x| x * x).sum::<f64>().sqrt() < radius {
            return v;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn single(n: usize, center: Vec<f64>, c: f64) -> BesselSum {
    BesselSum::new(
        n,
        1,
        2.0,
        vec![BesselTerm {
            coeff: vec![c],
            center,
        }],
    )
    .unwrap()
}

#[test]
fn chart_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=5 {
        let base = unit(&mut rng, n + 1);
        let chart = GeodesicChart::new(&base).unwrap();
        assert_eq!(chart.map(&vec![0.0; n]).unwrap(), chart.base());
        for e in chart.frame() {
            assert!(dot(e, chart.base()).abs() < 1e-14);
            assert!((dot(e, e) - 1.0).abs() < 1e-14);
        }
        for _ in 0..1000 {
            let x = in_ball(&mut rng, n, 3.0);
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let p = chart_map(&chart, &x, false).unwrap();
            assert!((dot(&p, &p).sqrt() - 1.0).abs() < 1e-12);
            assert!((dot(&p, chart.base()) - r.cos()).abs() < 1e-12);
            assert!((geodesic_distance(&p, chart.base()) - r).abs() < 1e-10);
            let back = chart_map(&chart, &p, true).unwrap();
            let err = back.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(err < 1e-12, "round trip error {err}");
        }
    }
}

#[test]
fn chart_errors() {
    let chart = GeodesicChart::north(2);
    assert!(matches!(chart.inverse(&[0.0, 0.0, -1.0]), Err(SphereError::AntipodalInverse)));
    assert!(matches!(chart.map(&[3.2, 0.0]), Err(SphereError::OutsideChart { .. })));
    assert!(matches!(chart.inverse(&[0.0, 0.0, 2.0]), Err(SphereError::NotUnitVector { .. })));
    assert!(GeodesicChart::new(&[0.5, 0.5]).is_err());
}

#[test]
fn single_term_value_at_base_point() {
    let chart = GeodesicChart::north(3);
    let psi = synthesize_sphere(&single(3, vec![0.0; 3], 1.0), 10, &chart).unwrap();
    let v = psi.eval(chart.base()).unwrap()[0];
    assert!((v - (2.0 / PI).sqrt()).abs() < 1e-14);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let p = unit(&mut rng, 4);
        let want = gegenbauer_norm(10, 3, dot(&p, chart.base())).unwrap() * (2.0 / PI).sqrt();
        assert!((psi.eval(&p).unwrap()[0] - want).abs() < 1e-13);
    }
    assert!((psi.eigenvalue() - 120.0).abs() < 1e-12);
}

#[test]
fn empty_sum_is_zero() {
    let chart = GeodesicChart::north(3);
    let bs = BesselSum::empty(3, 2, 1.0).unwrap();
    let psi = synthesize_sphere(&bs, 4, &chart).unwrap();
    assert_eq!(psi.eval(chart.base()).unwrap(), vec![0.0, 0.0]);
}

#[test]
fn degree_must_exceed_radius() {
    let chart = GeodesicChart::north(3);
    let bs = single(3, vec![0.0; 3], 1.0);
    assert!(matches!(
        synthesize_sphere(&bs, 2, &chart),
        Err(SphereError::DegreeTooSmall { .. })
    ));
    assert!(synthesize_sphere(&bs, 3, &chart).is_ok());
}

#[test]
fn parity_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 2..=6 {
        for degree in [2usize, 3, 7, 40, 301, 500] {
            let chart = GeodesicChart::new(&unit(&mut rng, n + 1)).unwrap();
            let terms = (0..3)
                .map(|_| BesselTerm {
                    coeff: vec![rng.gen_range(-1.0..1.0)],
                    center: in_ball(&mut rng, n, 0.9),
                })
                .collect();
            let bs = BesselSum::new(n, 1, 1.0, terms).unwrap();
            let psi = synthesize_sphere(&bs, degree, &chart).unwrap();
            let sign = if degree % 2 == 0 { 1.0 } else { -1.0 };
            for _ in 0..200 {
                let p = unit(&mut rng, n + 1);
                let q: Vec<f64> = p.iter().map(|v| -v).collect();
                let a = psi.eval(&p).unwrap()[0];
                let b = psi.eval(&q).unwrap()[0];
                assert!((b - sign * a).abs() <= 1e-10, "n={n} N={degree}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn addition_theorem_on_the_two_sphere() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for degree in 0..=5u32 {
        for _ in 0..50 {
            let p = unit(&mut rng, 3);
            let q = unit(&mut rng, 3);
            let yp = harmonic_basis(degree, &p).unwrap();
            let yq = harmonic_basis(degree, &q).unwrap();
            let off = harmonic_offset(degree, 3);
            let sum: f64 = (0..harmonic_count(degree, 3)).map(|k| yp[off + k] * yq[off + k]).sum();
            let want = 4.0 * PI / (2 * degree + 1) as f64 * sum;
            let got = gegenbauer_norm(degree as usize, 2, dot(&p, &q)).unwrap();
            assert!((got - want).abs() <= 1e-9, "N={degree}: {got} vs {want}");
        }
    }
}

#[test]
fn decay_profile_examples() {
    assert!((decay_profile(1, 3, PI / 3.0).unwrap() - 0.5).abs() < 1e-12);
    assert!(decay_profile(40, 3, 0.2).unwrap() >= decay_profile(40, 3, 0.4).unwrap());
    let scaled: Vec<f64> = [50usize, 100, 200, 400]
        .iter()
        .map(|&d| d as f64 * decay_profile(d, 3, 0.3).unwrap())
        .collect();
    let hi = scaled.iter().cloned().fold(0.0, f64::max);
    let lo = scaled.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(hi / lo <= 3.0, "{scaled:?}");
    assert!(decay_profile(10, 3, 0.0).is_err());
    assert!(decay_profile(10, 3, PI / 2.0).is_err());
}

#[test]
fn laplace_beltrami_residual_is_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let chart = GeodesicChart::north(3);
    let bs = BesselSum::new(
        3,
        1,
        2.0,
        vec![
            BesselTerm {
                coeff: vec![1.0],
                center: vec![0.3, 0.0, 0.2],
            },
            BesselTerm {
                coeff: vec![-0.7],
                center: vec![-0.5, 0.4, 0.0],
            },
        ],
    )
    .unwrap();
    let psi = synthesize_sphere(&bs, 12, &chart).unwrap();
    let points: Vec<Vec<f64>> = (0..30).map(|_| unit(&mut rng, 4)).collect();
    let coarse = psi.laplace_beltrami_residual(&points, 2e-3).unwrap();
    let fine = psi.laplace_beltrami_residual(&points, 1e-3).unwrap();
    assert!(fine < 1e-4, "{fine}");
    assert!(coarse / fine > 3.0 && coarse / fine < 5.0, "{coarse} {fine}");
}

#[test]
fn multi_synthesis() {
    let a = GeodesicChart::north(3);
    let b = GeodesicChart::new(&[1.0, 0.0, 0.0, 0.0]).unwrap();
    let bs = single(3, vec![0.0; 3], 1.0);
    let (one, _) = multi_synthesize(&[(a.clone(), bs.clone())], 30).unwrap();
    assert_eq!(one, synthesize_sphere(&bs, 30, &a).unwrap());

    let (two, report) = multi_synthesize(&[(a.clone(), bs.clone()), (b.clone(), bs.clone())], 30).unwrap();
    assert!((report.rho - PI / 4.0).abs() < 1e-12);
    let near = a.map(&[0.01, 0.02, 0.0]).unwrap();
    let cross = two.eval(&near).unwrap()[0] - one.eval(&near).unwrap()[0];
    assert!(cross.abs() <= report.interference_bound + 1e-15);

    let anti = GeodesicChart::new(&[0.0, 0.0, 0.0, -1.0]).unwrap();
    assert!(matches!(
        multi_synthesize(&[(a.clone(), bs.clone()), (anti, bs.clone())], 30),
        Err(SphereError::AntipodalBasePoints { .. })
    ));
    assert!(matches!(
        multi_synthesize(&[(a.clone(), bs.clone()), (a, bs)], 30),
        Err(SphereError::CoincidentBasePoints { .. })
    ));
}

#[test]
fn serde_round_trip() {
    let chart = GeodesicChart::north(3);
    let psi = synthesize_sphere(&single(3, vec![0.1, 0.2, 0.0], 0.5), 20, &chart).unwrap();
    let text = serde_json::to_string(&psi).unwrap();
    let back: SphereEigenfunction = serde_json::from_str(&text).unwrap();
    assert_eq!(back, psi);
    let bad = text.replace("\"n\":3", "\"n\":2");
    assert!(serde_json::from_str::<SphereEigenfunction>(&bad).is_err());
}

#[test]
fn rescaled_field_tracks_the_target() {
    let chart = GeodesicChart::north(3);
    let bs = single(3, vec![0.2, 0.0, 0.0], 1.0);
    let target = crate::waves::WaveSpec::BesselSum(bs.clone());
    let mut prev = f64::INFINITY;
    for degree in [25usize, 50, 100] {
        let psi = synthesize_sphere(&bs, degree, &chart).unwrap();
        let field = RescaledSphere::new(&psi, &chart);
        let mut err = 0.0f64;
        for x in [[0.0, 0.0, 0.0], [0.5, -0.3, 0.1], [-0.6, 0.6, 0.3]] {
            let want = target.eval(&x).unwrap()[0];
            err = err.max((field.eval(&x)[0] - want.re).abs());
        }
        assert!(err < prev);
        prev = err;
    }
    assert!(prev < 0.01, "{prev}");
}
