use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::grid::GridSpec;
use crate::specfun::{bessel_kernel, harmonic_count, sph_harmonic};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn random_point(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<f64> {
    loop {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-radius..radius)).collect();
        if norm(&x) <= radius {
            return x;
        }
    }
}

fn origin_kernel(n: usize, m: usize) -> BesselSum {
    BesselSum::new(
        n,
        m,
        0.0,
        vec![BesselTerm {
            coeff: vec![1.0; m],
            center: vec![0.0; n],
        }],
    )
    .unwrap()
}

fn e1_plane_wave(n: usize) -> PlaneWaveSum {
    let mut d = vec![0.0; n];
    d[0] = 1.0;
    PlaneWaveSum::new(
        n,
        1,
        vec![PlaneWaveTerm {
            coeff: vec![c(1.0)],
            direction: d,
        }],
    )
    .unwrap()
}

#[test]
fn trivial_values() {
    let bs = WaveSpec::BesselSum(origin_kernel(3, 1));
    let v = bs.eval(&[PI, 0.0, 0.0]).unwrap();
    assert!(v[0].norm() < 1e-15);
    let pw = WaveSpec::PlaneWaveSum(e1_plane_wave(3));
    assert_eq!(pw.eval(&[0.0; 3]).unwrap()[0], c(1.0));
    assert!(pw.eval(&[0.0; 2]).is_err());
}

#[test]
fn multiplicity_values() {
    assert_eq!(Multiplicity::new(1, 2).d, 3);
    assert_eq!(Multiplicity::new(2, 3).d, 9);
    assert_eq!(Multiplicity::new(0, 5).d, 1);
}

#[test]
fn constant_density_gives_the_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [2usize, 3] {
        let f = HerglotzDensity::constant(n, vec![c((2.0 * PI).powf(-(n as f64) / 2.0))]).unwrap();
        let spec = WaveSpec::Herglotz(f);
        for _ in 0..10 {
            let x = random_point(&mut rng, n, 5.0);
            let got = spec.eval(&x).unwrap()[0];
            let want = bessel_kernel(n, norm(&x)).unwrap();
            assert!((got - want).norm() < 1e-10, "n={n} x={x:?} {got} vs {want}");
        }
    }
}

#[test]
fn bessel_sum_agrees_with_its_density() {
    let bs = BesselSum::new(
        3,
        2,
        1.0,
        vec![
            BesselTerm {
                coeff: vec![1.0, -0.5],
                center: vec![0.3, 0.0, -0.4],
            },
            BesselTerm {
                coeff: vec![0.25, 2.0],
                center: vec![-0.6, 0.5, 0.1],
            },
        ],
    )
    .unwrap();
    let direct = WaveSpec::BesselSum(bs.clone());
    let via = WaveSpec::Herglotz(HerglotzDensity::from_bessel_sum(&bs));
    let ev = via.evaluator(3.0, 1e-12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let x = random_point(&mut rng, 3, 2.0);
        let a = direct.eval(&x).unwrap();
        let b = ev.eval_complex(&x);
        for (p, q) in a.iter().zip(&b) {
            assert!((p - q).norm() < 1e-10);
            assert!(q.im.abs() < 1e-12);
        }
    }
}

#[test]
fn coarse_grid_density_is_reported() {
    let f = HerglotzDensity::constant(3, vec![c(1.0)]).unwrap().to_grid(8).unwrap();
    let spec = WaveSpec::Herglotz(f);
    assert!(matches!(
        spec.evaluator(40.0, 1e-10),
        Err(WaveError::QuadratureInsufficient { .. })
    ));
    let rough = HerglotzDensity::from_fn(3, 1, false, |xi: &[f64]| vec![c(xi[2].signum())]).unwrap();
    assert!(matches!(
        WaveSpec::Herglotz(rough).evaluator(2.0, 1e-14),
        Err(WaveError::QuadratureInsufficient { .. })
    ));
}

#[test]
fn residual_is_second_order() {
    let pw = WaveSpec::PlaneWaveSum(
        PlaneWaveSum::new(
            2,
            1,
            vec![PlaneWaveTerm {
                coeff: vec![c(1.0)],
                direction: vec![0.6, 0.8],
            }],
        )
        .unwrap(),
    );
    let res = |h: f64| helmholtz_residual(&pw, &GridSpec::cube(2, 1.0, h).unwrap()).unwrap();
    let (a, b) = (res(0.1), res(0.05));
    let ratio = a.sup / b.sup;
    assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    assert!(a.sup <= a.expected_scale * 1.01);

    let k = WaveSpec::BesselSum(origin_kernel(3, 1));
    let g = GridSpec::cube(3, 0.5, 0.02).unwrap();
    assert!(helmholtz_residual(&k, &g).unwrap().sup <= 1e-3);

    let zero = WaveSpec::BesselSum(BesselSum::empty(3, 1, 1.0).unwrap());
    assert_eq!(helmholtz_residual(&zero, &g).unwrap().sup, 0.0);
    let tiny = GridSpec::cube(3, 0.05, 0.05).unwrap();
    assert!(matches!(
        helmholtz_residual(&zero, &tiny),
        Err(WaveError::Grid(_))
    ));
}

#[test]
fn radial_wave_is_pure_l0() {
    let k = WaveSpec::BesselSum(origin_kernel(3, 1));
    let (exp, rep) = expand_spec(&k, 4, ExpansionOptions::default()).unwrap();
    assert!((exp.coeff(0, 1)[0] - c(2.0 * PI.sqrt())).norm() < 1e-10);
    for (i, b) in exp.coeffs().iter().enumerate().skip(1) {
        assert!(b[0].norm() < 1e-10, "index {i}: {}", b[0]);
    }
    assert!(rep.l2_truncation < 1e-10);
}

#[test]
fn plane_wave_expansion_matches_the_classical_series() {
    let pw = WaveSpec::PlaneWaveSum(e1_plane_wave(3));
    let (exp, _) = expand_spec(&pw, 8, ExpansionOptions::default()).unwrap();
    let e1 = [1.0, 0.0, 0.0];
    for l in 0..=8u32 {
        for k in 1..=harmonic_count(l, 3) {
            let want = i_pow(l) * (two_pi_pow(3) * sph_harmonic(l, k, &e1).unwrap());
            let got = exp.coeff(l, k)[0];
            assert!((got - want).norm() < 1e-9, "l={l} k={k}: {got} vs {want}");
        }
    }
}

#[test]
fn plane_wave_reconstruction_and_round_trip() {
    for n in [2usize, 3] {
        let pw = WaveSpec::PlaneWaveSum(e1_plane_wave(n).real_part());
        let (exp, rep) = expand_spec(&pw, 12, ExpansionOptions::default()).unwrap();
        assert!(rep.l2_truncation < 1e-6 * rep.l2_norm);
        let f1 = expansion_to_density(&exp).unwrap();
        assert!(f1.is_real());
        assert!(f1.reality_defect(40).unwrap() < 1e-10);
        let herglotz = WaveSpec::Herglotz(f1).evaluator(1.0, 1e-13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = random_point(&mut rng, n, 1.0);
            let want = pw.eval(&x).unwrap()[0];
            let series = exp.eval(&x).unwrap()[0];
            let back = herglotz.eval_complex(&x)[0];
            assert!((series - want).norm() < 1e-6, "n={n}");
            assert!((back - series).norm() < 1e-8, "n={n}");
        }
    }
}

#[test]
fn l0_coefficient_gives_a_constant_density() {
    let mut exp = HarmonicExpansion::zeros(3, 1, 3).unwrap();
    exp.coeff_mut(0, 1)[0] = c(1.0);
    let f = expansion_to_density(&exp).unwrap();
    let a = f.eval(&[1.0, 0.0, 0.0]).unwrap()[0];
    let b = f.eval(&[0.0, 0.6, -0.8]).unwrap()[0];
    assert!((a - b).norm() < 1e-15);
}

#[test]
fn tiny_radius_fit_is_ill_conditioned() {
    let pw = WaveSpec::PlaneWaveSum(e1_plane_wave(3));
    let opts = ExpansionOptions {
        radius: 1e-3,
        ..Default::default()
    };
    assert!(matches!(
        expand_spec(&pw, 12, opts),
        Err(WaveError::IllConditionedRadialFit { .. })
    ));
}

#[test]
fn json_round_trips() {
    let specs = vec![
        WaveSpec::BesselSum(origin_kernel(3, 2)),
        WaveSpec::PlaneWaveSum(e1_plane_wave(2)),
        WaveSpec::Herglotz(
            HerglotzDensity::constant(3, vec![c(0.5)])
                .unwrap()
                .to_grid(40)
                .unwrap(),
        ),
        WaveSpec::Harmonic(HarmonicExpansion::zeros(2, 1, 3).unwrap()),
    ];
    let x = [0.3, -0.2, 0.1];
    for s in specs {
        let text = serde_json::to_string(&s).unwrap();
        let back: WaveSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        let p = &x[..s.n()];
        assert_eq!(s.eval(p).unwrap(), back.eval(p).unwrap());
    }
    let bad = r#"{"kind":"plane_wave_sum","n":2,"m":1,"terms":[{"coeff":[[1,0]],"direction":[1,1]}]}"#;
    assert!(serde_json::from_str::<WaveSpec>(bad).is_err());
    let far = r#"{"kind":"bessel_sum","n":2,"m":1,"radius":1,"terms":[{"coeff":[1],"center":[2,0]}]}"#;
    assert!(serde_json::from_str::<WaveSpec>(far).is_err());
}

#[test]
fn grid_density_interpolates_smooth_functions() {
    let f = HerglotzDensity::from_fn(3, 1, false, |xi: &[f64]| vec![c(xi[0] + 0.5 * xi[2])]).unwrap();
    let g = f.to_grid(60).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let mut p = random_point(&mut rng, 3, 1.0);
        let r = norm(&p);
        p.iter_mut().for_each(|v| *v /= r);
        let a = f.eval(&p).unwrap()[0];
        let b = g.eval(&p).unwrap()[0];
        assert!((a - b).norm() < 1e-2);
    }
}
