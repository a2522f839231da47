use std::collections::HashSet;
use std::f64::consts::PI;

use super::*;
use crate::grid::{scalar_field, FnField};
use crate::specfun::bessel_kernel;

fn radial_bessel() -> impl Field {
    scalar_field(3, |x: &[f64]| bessel_kernel(3, x.iter().map(|v| v * v).sum::<f64>().sqrt()).unwrap())
}

fn euler_from_scratch(c: &NodalComponent) -> i64 {
    let mut edges = HashSet::new();
    for t in &c.cells {
        for i in 0..t.len() {
            let (a, b) = (t[i], t[(i + 1) % t.len()]);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let e = if c.kind == ComponentKind::Curve { c.cells.len() } else { edges.len() };
    let f = if c.kind == ComponentKind::Surface { c.cells.len() } else { 0 };
    c.vertices.len() as i64 - e as i64 + f as i64
}

#[test]
fn plane_through_grid_nodes_is_a_disk() {
    let spec = GridSpec::cube(3, 1.0, 0.1).unwrap();
    let field = scalar_field(3, |x: &[f64]| x[0]);
    let comps = nodal_extract(&EvaluationGrid::sample(&spec, &field).unwrap()).unwrap();
    assert_eq!(comps.len(), 1);
    let c = &comps[0];
    assert_eq!(c.euler, 1);
    assert!(!c.closed && c.genus.is_none());
    assert_eq!(euler_from_scratch(c), c.euler);
    assert!(c.vertices.iter().all(|v| v[0].abs() < 1e-9));
    assert!((stability_margin(&field, c, 1e-4) - 1.0).abs() < 1e-9);
}

#[test]
fn bessel_zero_set_is_a_round_sphere() {
    let spec = GridSpec::ball(3, 4.0, 0.1, 1).unwrap();
    let field = radial_bessel();
    let comps = nodal_extract(&EvaluationGrid::sample(&spec, &field).unwrap()).unwrap();
    assert_eq!(comps.len(), 1);
    let c = &comps[0];
    assert_eq!((c.euler, c.closed, c.genus), (2, true, Some(0)));
    assert_eq!(euler_from_scratch(c), 2);
    for v in &c.vertices {
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((r - PI).abs() < 5e-3, "vertex radius {r}");
    }
    let want = (2.0 / PI).sqrt() / PI;
    let margin = stability_margin(&field, c, 1e-4);
    assert!((margin - want).abs() < 2e-3 * want, "{margin} vs {want}");
}

#[test]
fn torus_surface_has_genus_one() {
    let spec = GridSpec::cube(3, 1.0, 0.05).unwrap();
    let field = scalar_field(3, |x: &[f64]| {
        let rho = (x[0] * x[0] + x[1] * x[1]).sqrt() - 0.6;
        rho * rho + x[2] * x[2] - 0.04
    });
    let comps = nodal_extract(&EvaluationGrid::sample(&spec, &field).unwrap()).unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!((comps[0].euler, comps[0].genus), (0, Some(1)));
}

#[test]
fn cosine_slices_are_parallel_lines() {
    let spec = GridSpec::cube(2, 1.0, 0.01).unwrap();
    let field = scalar_field(2, |x: &[f64]| (10.0 * x[0]).cos());
    let comps = nodal_extract(&EvaluationGrid::sample(&spec, &field).unwrap()).unwrap();
    assert_eq!(comps.len(), 6);
    let mut levels: Vec<f64> = comps
        .iter()
        .map(|c| {
            assert_eq!(c.kind, ComponentKind::Curve);
            assert_eq!(c.euler, 1);
            assert!(!c.closed);
            c.centroid()[0]
        })
        .collect();
    levels.sort_by(f64::total_cmp);
    for (got, k) in levels.iter().zip(-3..3) {
        let want = (k as f64 + 0.5) * PI / 10.0;
        assert!((got - want).abs() < 1e-4, "{got} vs {want}");
    }
}

#[test]
fn joint_nodal_set_is_a_circle() {
    let spec = GridSpec::cube(3, 1.0, 0.05).unwrap();
    let field = FnField::new(3, 2, |x: &[f64], out: &mut [f64]| {
        out[0] = x[2] + 0.013;
        out[1] = x[0] * x[0] + x[1] * x[1] - 0.25;
    });
    let comps = nodal_extract(&EvaluationGrid::sample(&spec, &field).unwrap()).unwrap();
    assert_eq!(comps.len(), 1);
    let c = &comps[0];
    assert_eq!((c.kind, c.euler, c.closed), (ComponentKind::Curve, 0, true));
    for v in &c.vertices {
        assert!(((v[0] * v[0] + v[1] * v[1]).sqrt() - 0.5).abs() < 5e-3);
    }
    // rows (0, 0, 1) and (2x, 2y, 0): both singular values are 1 and 2|x| = 1
    assert!((stability_margin(&field, c, 1e-4) - 1.0).abs() < 1e-2);
}

#[test]
fn double_zero_has_vanishing_margin() {
    let spec = GridSpec::cube(3, 1.0, 0.1).unwrap();
    let field = scalar_field(3, |x: &[f64]| x[0] * x[0]);
    let comps = nodal_extract(&EvaluationGrid::sample(&spec, &field).unwrap()).unwrap();
    assert!(!comps.is_empty());
    for c in &comps {
        assert!(stability_margin(&field, c, 1e-4) < 1e-4);
    }
}

#[test]
fn topology_is_stable_under_refinement_and_perturbation() {
    for h in [0.1, 0.08] {
        let spec = GridSpec::ball(3, 4.0, h, 1).unwrap();
        let field = scalar_field(3, |x: &[f64]| {
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            bessel_kernel(3, r).unwrap() + 0.01 * (0.3 * x[0] + 0.2 * x[1] * x[2]).sin()
        });
        let comps = nodal_extract(&EvaluationGrid::sample(&spec, &field).unwrap()).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].euler, 2);
    }
}

#[test]
fn unsupported_shapes_are_rejected() {
    let spec = GridSpec::cube(2, 1.0, 0.1).unwrap();
    let field = FnField::new(2, 2, |_: &[f64], out: &mut [f64]| out.fill(1.0));
    assert!(matches!(
        nodal_extract(&EvaluationGrid::sample(&spec, &field).unwrap()),
        Err(AnalysisError::Unsupported(_))
    ));
}

#[test]
fn hausdorff_distance_of_shifted_sets() {
    let a: Vec<Vec<f64>> = (0..200).map(|i| vec![i as f64 * 0.01, 0.0]).collect();
    let b: Vec<Vec<f64>> = a.iter().map(|p| vec![p[0], 0.3]).collect();
    assert!((hausdorff(&a, &b) - 0.3).abs() < 1e-12);
    let mut c = a.clone();
    c.push(vec![5.0, 0.0]);
    assert!((hausdorff(&a, &c) - 3.01).abs() < 1e-9);
    assert_eq!(hausdorff(&a, &a), 0.0);
}

#[test]
fn localized_check_matches_and_reports_mismatches() {
    let spec = GridSpec::ball(3, 4.0, 0.1, 1).unwrap();
    let target = radial_bessel();
    let reference = nodal_extract(&EvaluationGrid::sample(&spec, &target).unwrap()).unwrap();
    let perturbed = scalar_field(3, |x: &[f64]| {
        let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        bessel_kernel(3, r).unwrap() + 0.005 * x[0]
    });
    let report = localized_nodal_check(&perturbed, &spec, &reference, NodalCheckOptions::default()).unwrap();
    assert!(report.all_matched());
    assert_eq!(report.matches[0].euler, 2);
    assert!(report.matches[0].margin > 0.2);
    assert!(report.matches[0].hausdorff < 0.1);

    let flat = scalar_field(3, |_| 1.0);
    let report = localized_nodal_check(&flat, &spec, &reference, NodalCheckOptions::default()).unwrap();
    assert!(!report.all_matched());
    assert_eq!(report.unmatched, vec![0]);
}
