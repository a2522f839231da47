use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::herglotz::{build_cap_cover, CellAnchor, CoverOptions};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn brute_force(degree: i64, n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let range: Vec<i64> = (-degree..=degree).collect();
    let mut idx = vec![0usize; n];
    loop {
        let k: Vec<i64> = idx.iter().map(|&i| range[i]).collect();
        if k.iter().map(|v| v * v).sum::<i64>() == degree * degree {
            out.push(k);
        }
        let mut d = n;
        loop {
            if d == 0 {
                return out;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < range.len() {
                break;
            }
            idx[d] = 0;
        }
    }
}

#[test]
fn lattice_counts() {
    assert_eq!(enumerate_lattice(1, 3).unwrap().len(), 6);
    assert_eq!(enumerate_lattice(3, 3).unwrap().len(), 30);
    assert_eq!(enumerate_lattice(1, 2).unwrap().len(), 4);
    assert_eq!(enumerate_lattice(5, 2).unwrap().len(), 12);
    assert_eq!(enumerate_lattice(1, 4).unwrap().len(), 8);
}

#[test]
fn lattice_matches_brute_force() {
    for n in 2..=3 {
        for degree in 1..=50i64 {
            if n == 3 && degree > 30 && degree % 7 != 0 {
                continue;
            }
            let got = enumerate_lattice(degree as u64, n).unwrap();
            let mut want = brute_force(degree, n);
            want.sort();
            assert_eq!(got.points(), want.as_slice(), "N={degree} n={n}");
        }
    }
    for degree in [1i64, 2, 6, 9] {
        let got = enumerate_lattice(degree as u64, 4).unwrap();
        assert_eq!(got.points(), brute_force(degree, 4).as_slice());
    }
}

#[test]
fn lattice_is_closed_under_negation() {
    let l = enumerate_lattice(45, 3).unwrap();
    let set: std::collections::BTreeSet<_> = l.points().iter().cloned().collect();
    for k in l.points() {
        let neg: Vec<i64> = k.iter().map(|v| -v).collect();
        assert!(set.contains(&neg));
        assert_eq!(k.iter().map(|v| v * v).sum::<i64>(), 45 * 45);
    }
}

#[test]
fn lattice_errors() {
    assert!(matches!(enumerate_lattice(2001, 3), Err(TorusError::DegreeOverCap { .. })));
    assert!(matches!(enumerate_lattice(3, 5), Err(TorusError::UnsupportedDimension { .. })));
    assert!(enumerate_lattice(0, 3).is_err());
    assert_eq!(exact_sqrt(49), Some(7));
    assert_eq!(exact_sqrt(50), None);
    assert_eq!(exact_sqrt(-1), None);
    assert_eq!(exact_sqrt(4_000_000_000_000_000_000), Some(2_000_000_000));
}

#[test]
fn single_cell_assignment() {
    let cover = build_cap_cover(3, 3.0).unwrap();
    let lattice = enumerate_lattice(7, 3).unwrap();
    let a = assign_caps(&cover, &lattice).unwrap();
    assert_eq!(a.len(), 1);
}

#[test]
fn coarse_three_dimensional_cover_is_filled() {
    let cover = build_cap_cover(3, 0.7).unwrap();
    let found = (1..=500u64)
        .step_by(2)
        .find(|&d| assign_caps(&cover, &enumerate_lattice(d, 3).unwrap()).is_ok());
    assert!(found.is_some());
}

#[test]
fn empty_cells_are_reported() {
    let cover = build_cap_cover(3, 0.2).unwrap();
    match assign_caps(&cover, &enumerate_lattice(3, 3).unwrap()) {
        Err(TorusError::EmptyCell { report }) => {
            assert!(!report.empty.is_empty());
            assert_eq!(report.counts.iter().sum::<usize>(), 30);
            assert_eq!(report.cells.len(), cover.len());
        }
        other => panic!("expected an empty cell, got {other:?}"),
    }
}

#[test]
fn zero_density_gives_zero() {
    let cover = build_cap_cover(3, 1.0).unwrap();
    let f = HerglotzDensity::constant(3, vec![c(0.0, 0.0)]).unwrap();
    let s = synthesize_torus(&f, &cover, 45, TorusOptions::default()).unwrap();
    assert!(s.eigenfunction.modes().is_empty());
    assert_eq!(s.eigenfunction.eval(&[0.1, 0.2, 0.3]).unwrap(), vec![c(0.0, 0.0)]);
}

#[test]
fn single_mode_pair() {
    let psi = TorusEigenfunction::new(
        5,
        3,
        1,
        true,
        vec![TorusMode {
            k: vec![3, 4, 0],
            coeff: vec![c(0.7, -0.2)],
        }],
    )
    .unwrap();
    assert_eq!(psi.modes().len(), 2);
    let x = [0.3, -1.1, 2.0];
    let want = 2.0 * (c(0.35, -0.1) * Complex64::from_polar(1.0, 3.0 * x[0] + 4.0 * x[1])).re;
    let got = psi.eval(&x).unwrap()[0];
    assert!((got.re - want).abs() < 1e-14 && got.im.abs() < 1e-15);
}

#[test]
fn cosine_mode() {
    let psi = TorusEigenfunction::new(
        4,
        2,
        1,
        false,
        vec![
            TorusMode {
                k: vec![4, 0],
                coeff: vec![c(0.5, 0.0)],
            },
            TorusMode {
                k: vec![-4, 0],
                coeff: vec![c(0.5, 0.0)],
            },
        ],
    )
    .unwrap();
    assert!((psi.eval(&[0.0, 0.0]).unwrap()[0] - c(1.0, 0.0)).norm() < 1e-15);
    let x = [0.37, 1.2];
    assert!((psi.eval(&x).unwrap()[0].re - (4.0 * x[0]).cos()).abs() < 1e-14);
}

#[test]
fn invalid_modes_are_rejected() {
    let bad = TorusEigenfunction::new(
        5,
        3,
        1,
        false,
        vec![TorusMode {
            k: vec![3, 3, 0],
            coeff: vec![c(1.0, 0.0)],
        }],
    );
    assert!(matches!(bad, Err(TorusError::OffShell { .. })));
}

fn hermitian_density() -> HerglotzDensity {
    HerglotzDensity::from_fn(3, 1, true, |x: &[f64]| vec![c(1.0 + 0.4 * x[2] * x[2], 0.5 * x[0])]).unwrap()
}

#[test]
fn periodicity_realness_and_eigen_equation() {
    let cover = build_cap_cover(3, 0.7).unwrap();
    let degree = (1..=500u64)
        .step_by(2)
        .find(|&d| assign_caps(&cover, &enumerate_lattice(d, 3).unwrap()).is_ok())
        .unwrap();
    let s = synthesize_torus(&hermitian_density(), &cover, degree, TorusOptions::default()).unwrap();
    let psi = &s.eigenfunction;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let x: Vec<f64> = (0..3).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        let shift: Vec<f64> = x
            .iter()
            .map(|v| v + 2.0 * PI * rng.gen_range(-3i32..=3) as f64)
            .collect();
        let a = psi.eval(&x).unwrap()[0];
        let b = psi.eval(&shift).unwrap()[0];
        let scale = psi.modes().iter().map(|m| m.coeff[0].norm()).sum::<f64>();
        assert!((a - b).norm() <= 1e-12 * scale.max(1.0) * degree as f64);
        assert!(a.im.abs() <= 1e-12 * scale.max(1.0));
        let lap = psi.laplacian(&x).unwrap()[0];
        assert!((lap + psi.eigenvalue() * a).norm() <= 1e-10 * psi.eigenvalue() * scale);
    }
}

#[test]
fn rescaled_eigenfunction_is_the_discretized_sum() {
    let f = HerglotzDensity::from_fn(3, 1, false, |x: &[f64]| vec![c(x[2].exp(), x[0] * x[1])]).unwrap();
    let cover = SphericalCapCover::new(
        3,
        0.5,
        CoverOptions {
            anchor: CellAnchor::Corner,
            ..Default::default()
        },
    )
    .unwrap();
    let degree = 1001;
    let lattice = enumerate_lattice(degree, 3).unwrap();
    let s = synthesize_on_lattice(&f, &cover, &lattice, TorusOptions::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.6..0.6)).collect();
        let y: Vec<f64> = x.iter().map(|v| v / degree as f64).collect();
        let mut want = c(0.0, 0.0);
        for (cell, k) in cover.cells().iter().zip(&s.assignment.cells) {
            let xi = lattice.direction(k.unwrap());
            let phase: f64 = xi.iter().zip(&x).map(|(a, b)| a * b).sum();
            want += f.eval(&xi).unwrap()[0] * cell.area * Complex64::from_polar(1.0, phase);
        }
        let got = s.eigenfunction.eval(&y).unwrap()[0];
        assert!((got - want).norm() <= 1e-12 * want.norm().max(1.0), "{got} vs {want}");
        assert!((s.plane_waves.eval(&x).unwrap()[0] - got).norm() <= 1e-12);
    }
}

#[test]
fn even_degree_policy() {
    let f = hermitian_density();
    let cover = build_cap_cover(3, 3.0).unwrap();
    assert!(matches!(
        synthesize_torus(&f, &cover, 10, TorusOptions::default()),
        Err(TorusError::EvenDegree { .. })
    ));
    let opts = TorusOptions {
        allow_even: true,
        ..Default::default()
    };
    assert!(synthesize_torus(&f, &cover, 10, opts).is_ok());
    let f4 = HerglotzDensity::constant(4, vec![c(1.0, 0.0)]).unwrap();
    let cover4 = build_cap_cover(4, 3.0).unwrap();
    assert!(synthesize_torus(&f4, &cover4, 4, TorusOptions::default()).is_ok());
}

#[test]
fn quadrant_search() {
    let cover = SphericalCapCover::circle_arcs(4, 0.0).unwrap();
    let candidates: Vec<u64> = (1..=50).collect();
    let search = search_torus2(&candidates, &cover).unwrap();
    assert!(search.admissible.contains(&5));
    for &d in &search.admissible {
        let lattice = enumerate_lattice(d, 2).unwrap();
        for q in 0..4 {
            assert!(lattice.points().iter().any(|k| {
                let a = (k[1] as f64).atan2(k[0] as f64).rem_euclid(2.0 * PI);
                a >= q as f64 * PI / 2.0 && a < (q + 1) as f64 * PI / 2.0
            }));
        }
    }
    let octants = SphericalCapCover::circle_arcs(8, 0.0).unwrap();
    let search = search_torus2(&candidates, &octants).unwrap();
    assert!(search.failing.contains(&1));
    assert!(search.admissible.contains(&5));
    assert_eq!(search.admissible.len() + search.failing.len(), candidates.len());
    let whole = build_cap_cover(2, 7.0).unwrap();
    assert_eq!(search_torus2(&candidates, &whole).unwrap().admissible, candidates);
    let fine = build_cap_cover(2, 0.05).unwrap();
    let few: Vec<u64> = (1..=20).collect();
    assert_eq!(search_torus2(&few, &fine).unwrap().admissible, Vec::<u64>::new());
}

#[test]
fn serde_round_trip() {
    let cover = build_cap_cover(3, 3.0).unwrap();
    let s = synthesize_torus(&hermitian_density(), &cover, 7, TorusOptions::default()).unwrap();
    let text = serde_json::to_string(&s.eigenfunction).unwrap();
    let back: TorusEigenfunction = serde_json::from_str(&text).unwrap();
    assert_eq!(back, s.eigenfunction);
    let lattice = enumerate_lattice(3, 3).unwrap();
    let text = serde_json::to_string(&lattice).unwrap();
    assert_eq!(serde_json::from_str::<LatticeSphere>(&text).unwrap(), lattice);
}

#[test]
fn real_part_evaluation_uses_conjugate_pairs() {
    let cover = build_cap_cover(3, 1.0).unwrap();
    let s = synthesize_torus(&hermitian_density(), &cover, 45, TorusOptions::default()).unwrap();
    let field = RescaledTorus::new(&s.eigenfunction);
    let both = RescaledTorus::new(&s.eigenfunction).with_parts(Parts::Both);
    for x in [[0.1, 0.2, -0.4], [1.0, -0.7, 0.3]] {
        let a = field.eval(&x);
        let b = both.eval(&x);
        assert!((a[0] - b[0]).abs() < 1e-12 && b[1].abs() < 1e-12);
    }
}
