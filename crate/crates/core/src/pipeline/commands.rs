//! The seven subcommands. Each writes its artifacts through [`Artifacts`]
//! and returns a JSON summary of its headline numbers.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{Artifacts, Manifold, PipelineError, RunConfig, Subcommand};
use crate::analysis::export::{write_grid_csv, write_obj, write_vertices_csv};
use crate::analysis::{cr_error, match_components, nodal_extract};
use crate::grid::{EvaluationGrid, Field, GridSpec};
use crate::herglotz::{
    discretize_density, discretize_transform, extend_and_transform, BallCellCover, BumpProfile,
    CoverOptions, FourierOptions, SphericalCapCover,
};
use crate::sphere::{synthesize_sphere, GeodesicChart, RescaledSphere, SphereEigenfunction};
use crate::torus::{
    assign_caps_partial, degree_cap, enumerate_lattice_capped, synthesize_torus, RescaledTorus,
    TorusOptions, TorusSynthesis,
};
use crate::waves::{BesselSum, HerglotzDensity, Parts, WaveSpec, DEFAULT_TOLERANCE};

pub(super) fn dispatch(sub: Subcommand, cfg: &RunConfig, art: &mut Artifacts) -> Result<Value, PipelineError> {
    match sub {
        Subcommand::Lattice => lattice(cfg, art),
        Subcommand::Cover => cover(cfg, art),
        Subcommand::Approximate => approximate(cfg, art),
        Subcommand::Synthesize => synthesize(cfg, art),
        Subcommand::ErrorScan => error_scan(cfg, art),
        Subcommand::Verify => verify(cfg, art),
        Subcommand::Nodal => nodal(cfg, art),
    }
}

fn cover_options(cfg: &RunConfig) -> CoverOptions {
    CoverOptions {
        anchor: cfg.cover.anchor,
        ..CoverOptions::default()
    }
}

fn cap_cover(cfg: &RunConfig) -> Result<SphericalCapCover, PipelineError> {
    Ok(SphericalCapCover::new(cfg.n, cfg.cover.eps, cover_options(cfg))?)
}

fn torus_options(cfg: &RunConfig) -> TorusOptions {
    TorusOptions {
        allow_even: cfg.allow_even,
        degree_cap: cfg.degree_cap,
    }
}

fn grid_spec(cfg: &RunConfig) -> Result<GridSpec, PipelineError> {
    Ok(GridSpec::ball(cfg.n, cfg.grid.radius, cfg.grid.step, cfg.order.max(1))?)
}

fn target(cfg: &RunConfig) -> Result<WaveSpec, PipelineError> {
    let spec = cfg.target_spec()?;
    if spec.n() != cfg.n {
        return Err(PipelineError::config(format!(
            "target lives in dimension {}, configuration has n = {}",
            spec.n(),
            cfg.n
        )));
    }
    Ok(spec)
}

fn density(spec: &WaveSpec) -> Result<HerglotzDensity, PipelineError> {
    spec.herglotz_density()
        .ok_or_else(|| PipelineError::config("the target has no Herglotz density (plane-wave sums are not supported here)"))
}

fn to_usize(degree: u64) -> Result<usize, PipelineError> {
    usize::try_from(degree).map_err(|_| PipelineError::config("degree out of range"))
}

fn csv_row(out: &mut String, cells: impl IntoIterator<Item = String>) {
    let row: Vec<String> = cells.into_iter().collect();
    out.push_str(&row.join(","));
    out.push('\n');
}

fn header(prefix: &[&str], name: &str, count: usize, suffix: &[&str]) -> Vec<String> {
    prefix
        .iter()
        .map(|s| s.to_string())
        .chain((1..=count).map(|i| format!("{name}{i}")))
        .chain(suffix.iter().map(|s| s.to_string()))
        .collect()
}

fn json_err(e: serde_json::Error) -> PipelineError {
    PipelineError::new(super::ErrorClass::Io, "json", e.to_string())
}

// lattice

fn lattice(cfg: &RunConfig, art: &mut Artifacts) -> Result<Value, PipelineError> {
    let cap = match cfg.degree_cap {
        Some(c) => c,
        None => degree_cap(cfg.n).ok_or_else(|| PipelineError::config(format!("no lattice support for n = {}", cfg.n)))?,
    };
    if cfg.degrees.is_some() {
        return lattice_search(cfg, art, cap);
    }
    let degree = cfg.require_degree()?;
    let lat = enumerate_lattice_capped(degree, cfg.n, cap)?;
    let mut csv = String::new();
    csv_row(&mut csv, header(&[], "k", cfg.n, &[]));
    for k in lat.points() {
        csv_row(&mut csv, k.iter().map(|v| v.to_string()));
    }
    art.write("lattice.csv", csv.as_bytes())?;
    art.json("lattice.json", &lat)?;
    let cover = cap_cover(cfg)?;
    let assignment = assign_caps_partial(&cover, &lat)?;
    let mut caps = String::new();
    csv_row(&mut caps, header(&["cell"], "center", cfg.n, &["count", "chosen"]));
    for (i, cell) in cover.cells().iter().enumerate() {
        let chosen = assignment.cells[i]
            .map(|j| lat.points()[j].iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        csv_row(
            &mut caps,
            std::iter::once(i.to_string())
                .chain(cell.center.iter().map(|v| v.to_string()))
                .chain([assignment.counts[i].to_string(), chosen]),
        );
    }
    art.write("caps.csv", caps.as_bytes())?;
    let counts = &assignment.counts;
    Ok(json!({
        "degree": degree,
        "n": cfg.n,
        "points": lat.len(),
        "cells": cover.len(),
        "empty_cells": assignment.empty.len(),
        "min_per_cell": counts.iter().copied().min().unwrap_or(0),
        "max_per_cell": counts.iter().copied().max().unwrap_or(0),
        "admissible": assignment.is_complete(),
    }))
}

fn lattice_search(cfg: &RunConfig, art: &mut Artifacts, cap: u64) -> Result<Value, PipelineError> {
    let cover = cap_cover(cfg)?;
    let mut csv = String::from("N,points,empty_cells,admissible\n");
    let mut admissible = Vec::new();
    let mut failing = Vec::new();
    for degree in cfg.degree_list()? {
        let lat = enumerate_lattice_capped(degree, cfg.n, cap)?;
        let a = assign_caps_partial(&cover, &lat)?;
        let ok = a.is_complete();
        writeln!(csv, "{degree},{},{},{ok}", lat.len(), a.empty.len()).expect("string write");
        if ok {
            admissible.push(degree);
        } else {
            failing.push(degree);
        }
    }
    art.write("search.csv", csv.as_bytes())?;
    Ok(json!({
        "n": cfg.n,
        "eps": cfg.cover.eps,
        "cells": cover.len(),
        "admissible": admissible.len(),
        "failing": failing.len(),
        "first_admissible": admissible.first(),
        "last_failing": failing.last(),
    }))
}

// cover

fn cover(cfg: &RunConfig, art: &mut Artifacts) -> Result<Value, PipelineError> {
    let cover = cap_cover(cfg)?;
    art.json("cover.json", &cover)?;
    let mut csv = String::new();
    csv_row(&mut csv, header(&["cell"], "center", cfg.n, &["area", "diameter"]));
    for (i, c) in cover.cells().iter().enumerate() {
        csv_row(
            &mut csv,
            std::iter::once(i.to_string())
                .chain(c.center.iter().map(|v| v.to_string()))
                .chain([c.area.to_string(), c.diameter.to_string()]),
        );
    }
    art.write("cover.csv", csv.as_bytes())?;
    let ball = BallCellCover::new(cfg.n, cfg.cover.radius, cfg.cover.delta, cover_options(cfg))?;
    let mut bcsv = String::new();
    csv_row(&mut bcsv, header(&["cell"], "x", cfg.n, &["volume", "diameter"]));
    for (i, c) in ball.cells().iter().enumerate() {
        csv_row(
            &mut bcsv,
            std::iter::once(i.to_string())
                .chain(c.point.iter().map(|v| v.to_string()))
                .chain([c.volume.to_string(), c.diameter.to_string()]),
        );
    }
    art.write("ball_cover.csv", bcsv.as_bytes())?;
    Ok(json!({
        "n": cfg.n,
        "eps": cover.eps(),
        "cells": cover.len(),
        "total_area": cover.total_area(),
        "max_diameter": cover.max_diameter(),
        "ball_cells": ball.len(),
        "ball_volume": ball.total_volume(),
        "ball_max_diameter": ball.max_diameter(),
    }))
}

// approximate

struct FourierApprox {
    sum: BesselSum,
    tail: f64,
    l1: f64,
    cells: usize,
    dropped_imaginary: f64,
}

fn fourier_approx(cfg: &RunConfig, f: &HerglotzDensity) -> Result<FourierApprox, PipelineError> {
    let bump = BumpProfile::new(cfg.cover.bump[0], cfg.cover.bump[1])?;
    let opts = FourierOptions {
        radius: cfg.cover.radius,
        ..FourierOptions::default()
    };
    // The cover is cheap next to the transform, so size limits fail fast.
    BallCellCover::new(f.n(), cfg.cover.radius, cfg.cover.delta, cover_options(cfg))?;
    let ft = extend_and_transform(f, bump, opts)?;
    let (sum, report) = discretize_transform(&ft, cfg.cover.delta, cover_options(cfg))?;
    Ok(FourierApprox {
        sum,
        tail: ft.tail_mass(),
        l1: ft.l1_norm(),
        cells: report.cells,
        dropped_imaginary: report.dropped_imaginary,
    })
}

fn approximate(cfg: &RunConfig, art: &mut Artifacts) -> Result<Value, PipelineError> {
    let spec = target(cfg)?;
    let f = density(&spec)?;
    let grid = grid_spec(cfg)?;
    let cover = cap_cover(cfg)?;
    let pw = WaveSpec::PlaneWaveSum(discretize_density(&f, &cover)?);
    let pw_field = pw.evaluator(grid.corner_radius(), DEFAULT_TOLERANCE)?;
    let pw_error = cr_error(&spec, &pw_field, &grid, cfg.order)?;
    art.json("plane_waves.json", &pw)?;
    let mut results = json!({
        "order": cfg.order,
        "plane_waves": { "eps": cfg.cover.eps, "terms": cover.len(), "error": pw_error },
    });
    if cfg.n == 2 || cfg.n == 3 {
        let fa = fourier_approx(cfg, &f)?;
        let bs = WaveSpec::BesselSum(fa.sum);
        let bs_field = bs.evaluator(grid.corner_radius(), DEFAULT_TOLERANCE)?;
        let bs_error = cr_error(&spec, &bs_field, &grid, cfg.order)?;
        art.json("bessel_sum.json", &bs)?;
        results["bessel_sum"] = json!({
            "delta": cfg.cover.delta,
            "radius": cfg.cover.radius,
            "cells": fa.cells,
            "terms": match &bs { WaveSpec::BesselSum(b) => b.len(), _ => 0 },
            "tail_mass": fa.tail,
            "l1_norm": fa.l1,
            "dropped_imaginary": fa.dropped_imaginary,
            "error": bs_error,
        });
    }
    art.json("approximate.json", &results)?;
    Ok(results)
}

// synthesis shared by synthesize, error-scan, verify and nodal

enum Prepared {
    Sphere { bs: BesselSum, chart: GeodesicChart },
    Torus { density: HerglotzDensity, cover: SphericalCapCover },
}

enum Built {
    Sphere { psi: SphereEigenfunction, chart: GeodesicChart },
    Torus(Box<TorusSynthesis>),
}

impl Built {
    fn field(&self) -> Box<dyn Field + '_> {
        match self {
            Built::Sphere { psi, chart } => Box::new(RescaledSphere::new(psi, chart)),
            Built::Torus(s) => Box::new(RescaledTorus::new(&s.eigenfunction)),
        }
    }

    fn eigenfunction_json(&self) -> Result<Value, PipelineError> {
        match self {
            Built::Sphere { psi, .. } => serde_json::to_value(psi),
            Built::Torus(s) => serde_json::to_value(&s.eigenfunction),
        }
        .map_err(json_err)
    }

    fn summary(&self) -> Value {
        match self {
            Built::Sphere { psi, chart } => json!({
                "manifold": "sphere",
                "degree": psi.degree(),
                "eigenvalue": psi.eigenvalue(),
                "terms": psi.terms().len(),
                "base_point": chart.base(),
            }),
            Built::Torus(s) => json!({
                "manifold": "torus",
                "degree": s.eigenfunction.degree(),
                "eigenvalue": s.eigenfunction.eigenvalue(),
                "modes": s.eigenfunction.modes().len(),
                "real": s.eigenfunction.is_real(),
                "cells": s.assignment.cells.len(),
            }),
        }
    }
}

fn prepare(cfg: &RunConfig, spec: &WaveSpec) -> Result<Prepared, PipelineError> {
    match cfg.manifold {
        Manifold::Sphere => {
            let bs = match spec {
                WaveSpec::BesselSum(bs) => bs.clone(),
                other => fourier_approx(cfg, &density(other)?)?.sum,
            };
            let chart = match &cfg.base_point {
                Some(p) => GeodesicChart::new(p)?,
                None => GeodesicChart::north(cfg.n),
            };
            Ok(Prepared::Sphere { bs, chart })
        }
        Manifold::Torus => Ok(Prepared::Torus {
            density: density(spec)?,
            cover: cap_cover(cfg)?,
        }),
    }
}

fn build(cfg: &RunConfig, prep: &Prepared, degree: u64) -> Result<Built, PipelineError> {
    match prep {
        Prepared::Sphere { bs, chart } => Ok(Built::Sphere {
            psi: synthesize_sphere(bs, to_usize(degree)?, chart)?,
            chart: chart.clone(),
        }),
        Prepared::Torus { density, cover } => Ok(Built::Torus(Box::new(synthesize_torus(
            density,
            cover,
            degree,
            torus_options(cfg),
        )?))),
    }
}

fn synthesize(cfg: &RunConfig, art: &mut Artifacts) -> Result<Value, PipelineError> {
    let spec = target(cfg)?;
    let degree = cfg.require_degree()?;
    let built = build(cfg, &prepare(cfg, &spec)?, degree)?;
    art.json("eigenfunction.json", &built.eigenfunction_json()?)?;
    let grid = grid_spec(cfg)?;
    let field = built.field();
    let samples = EvaluationGrid::sample(&grid, field.as_ref())?;
    let mut csv = Vec::new();
    write_grid_csv(&samples, &mut csv)?;
    art.write("grid.csv", &csv)?;
    let mut results = built.summary();
    results["order"] = json!(cfg.order);
    results["error"] = json!(cr_error(&spec, field.as_ref(), &grid, cfg.order)?);
    if let Built::Torus(s) = &built {
        results["assignment"] = serde_json::to_value(&s.assignment).map_err(json_err)?;
    }
    art.json("synthesize.json", &results)?;
    if let Built::Torus(s) = &built {
        if let Some(obj) = results.as_object_mut() {
            obj.remove("assignment");
            obj.insert("cells".into(), json!(s.assignment.cells.len()));
        }
    }
    Ok(results)
}

// error-scan

fn error_scan(cfg: &RunConfig, art: &mut Artifacts) -> Result<Value, PipelineError> {
    let spec = target(cfg)?;
    let degrees = cfg.degree_list()?;
    if degrees.is_empty() {
        return Err(PipelineError::config("error-scan needs `degrees` or `degree`"));
    }
    let prep = prepare(cfg, &spec)?;
    let grid = grid_spec(cfg)?;
    let mut csv = String::from("N,error,status\n");
    let mut rows = Vec::new();
    for degree in degrees {
        let outcome = build(cfg, &prep, degree).and_then(|b| Ok(cr_error(&spec, b.field().as_ref(), &grid, cfg.order)?));
        match outcome {
            Ok(e) => {
                writeln!(csv, "{degree},{e},ok").expect("string write");
                rows.push(json!({ "N": degree, "error": e, "status": "ok" }));
            }
            Err(err) if err.class == super::ErrorClass::Io => return Err(err),
            Err(err) => {
                log::warn!("N = {degree}: {err}");
                writeln!(csv, "{degree},,{}", err.kind).expect("string write");
                rows.push(json!({ "N": degree, "error": null, "status": err.kind }));
            }
        }
    }
    art.write("errors.csv", csv.as_bytes())?;
    let ok = rows.iter().filter(|r| r["status"] == "ok").count();
    let results = json!({ "order": cfg.order, "scanned": rows.len(), "succeeded": ok, "rows": rows });
    if ok == 0 {
        return Err(PipelineError::numerical("scan_failed", "no degree in the scan could be synthesized")
            .with_details(results));
    }
    Ok(results)
}

// verify

struct Check {
    name: &'static str,
    value: f64,
    tolerance: f64,
}

impl Check {
    fn passed(&self) -> bool {
        self.value <= self.tolerance
    }

    fn line(&self) -> String {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        format!("{tag} {} {:.3e} <= {:.1e}", self.name, self.value, self.tolerance)
    }
}

fn unit_points(rng: &mut ChaCha8Rng, dim: usize, count: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 0.1 && r <= 1.0 {
            out.push(v.iter().map(|x| x / r).collect());
        }
    }
    out
}

fn verify(cfg: &RunConfig, art: &mut Artifacts) -> Result<Value, PipelineError> {
    let spec = target(cfg)?;
    let degree = cfg.require_degree()?;
    let built = build(cfg, &prepare(cfg, &spec)?, degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let checks = match &built {
        Built::Sphere { psi, .. } => verify_sphere(psi, &mut rng, cfg.samples)?,
        Built::Torus(s) => verify_torus(s, &mut rng, cfg)?,
    };
    let lines: Vec<String> = checks.iter().map(Check::line).collect();
    let passed = checks.iter().all(Check::passed);
    let mut text = lines.join("\n");
    text.push('\n');
    art.write("verify.txt", text.as_bytes())?;
    let mut results = built.summary();
    results["checks"] = checks
        .iter()
        .map(|c| json!({ "name": c.name, "value": c.value, "tolerance": c.tolerance, "passed": c.passed() }))
        .collect();
    results["lines"] = json!(lines);
    results["passed"] = json!(passed);
    art.json("verify.json", &results)?;
    if !passed {
        return Err(PipelineError::numerical("verification_failed", "at least one identity check failed")
            .with_details(json!(lines)));
    }
    Ok(results)
}

fn verify_sphere(psi: &SphereEigenfunction, rng: &mut ChaCha8Rng, samples: usize) -> Result<Vec<Check>, PipelineError> {
    let points = unit_points(rng, psi.n() + 1, samples.max(1));
    let sign = if psi.degree() % 2 == 0 { 1.0 } else { -1.0 };
    let mut defect = 0.0f64;
    let mut scale = 0.0f64;
    for p in &points {
        let q: Vec<f64> = p.iter().map(|v| -v).collect();
        let a = psi.eval(p)?;
        let b = psi.eval(&q)?;
        for (x, y) in a.iter().zip(&b) {
            defect = defect.max((y - sign * x).abs());
            scale = scale.max(x.abs());
        }
    }
    let h = 0.01 / psi.degree().max(1) as f64;
    let residual = psi.laplace_beltrami_residual(&points, h)?;
    Ok(vec![
        Check {
            name: "parity",
            value: if scale > 0.0 { defect / scale } else { defect },
            tolerance: 1e-12,
        },
        Check {
            name: "eigen_residual",
            value: residual,
            tolerance: 1e-4,
        },
    ])
}

fn verify_torus(syn: &TorusSynthesis, rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Result<Vec<Check>, PipelineError> {
    let psi = &syn.eigenfunction;
    let n = psi.n();
    let lambda = psi.eigenvalue();
    let tau = 2.0 * std::f64::consts::PI;
    let (mut imag, mut eig, mut period, mut rescale, mut scale) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let pw = WaveSpec::PlaneWaveSum(syn.plane_waves.clone());
    let pw_eval = pw.evaluator(cfg.grid.radius, DEFAULT_TOLERANCE)?.with_parts(Parts::Both);
    let big = psi.degree() as f64;
    let max_abs = |v: &[Complex64]| v.iter().fold(0.0f64, |m, c| m.max(c.norm()));
    for _ in 0..cfg.samples.max(1) {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..tau)).collect();
        let v = psi.eval(&x)?;
        scale = scale.max(max_abs(&v));
        imag = imag.max(v.iter().fold(0.0f64, |m, c| m.max(c.im.abs())));
        let lap = psi.laplacian(&x)?;
        eig = eig.max(lap.iter().zip(&v).fold(0.0f64, |m, (l, c)| m.max((l + c * lambda).norm())));
        for d in 0..n {
            let mut y = x.clone();
            y[d] += tau;
            let w = psi.eval(&y)?;
            period = period.max(w.iter().zip(&v).fold(0.0f64, |m, (a, b)| m.max((a - b).norm())));
        }
        let z: Vec<f64> = unit_points(rng, n, 1)[0].iter().map(|t| t * cfg.grid.radius * rng.gen::<f64>()).collect();
        let direct = psi.eval(&z.iter().map(|t| t / big).collect::<Vec<_>>())?;
        let via = pw_eval.eval_complex(&z);
        rescale = rescale.max(direct.iter().zip(&via).fold(0.0f64, |m, (a, b)| m.max((a - b).norm())));
    }
    let rel = |v: f64| if scale > 0.0 { v / scale } else { v };
    let mut checks = Vec::new();
    if psi.is_real() {
        checks.push(Check {
            name: "realness",
            value: rel(imag),
            tolerance: 1e-12,
        });
    }
    checks.push(Check {
        name: "eigen_residual",
        value: rel(eig) / lambda.max(1.0),
        tolerance: 1e-10,
    });
    checks.push(Check {
        name: "periodicity",
        value: rel(period),
        tolerance: 1e-9,
    });
    checks.push(Check {
        name: "rescaling",
        value: rel(rescale),
        tolerance: 1e-10,
    });
    Ok(checks)
}

// nodal

fn nodal(cfg: &RunConfig, art: &mut Artifacts) -> Result<Value, PipelineError> {
    let spec = target(cfg)?;
    let degree = cfg.require_degree()?;
    let grid = GridSpec::ball(cfg.n, cfg.grid.radius, cfg.grid.step, 1)?;
    let reference_field = spec.evaluator(grid.corner_radius(), DEFAULT_TOLERANCE)?;
    let references = nodal_extract(&EvaluationGrid::sample(&grid, &reference_field)?)?;
    let built = build(cfg, &prepare(cfg, &spec)?, degree)?;
    let field = built.field();
    let found = nodal_extract(&EvaluationGrid::sample(&grid, field.as_ref())?)?;
    let report = match_components(field.as_ref(), grid.step, &found, &references, cfg.nodal);
    let mut buf = Vec::new();
    write_obj(&references, &mut buf)?;
    art.write("reference.obj", &buf)?;
    buf.clear();
    write_obj(&found, &mut buf)?;
    art.write("components.obj", &buf)?;
    buf.clear();
    write_vertices_csv(&found, &mut buf)?;
    art.write("vertices.csv", &buf)?;
    art.json("nodal.json", &report)?;
    let mut results = built.summary();
    results["references"] = json!(report.references.len());
    results["components"] = json!(report.components.len());
    results["matches"] = serde_json::to_value(&report.matches).map_err(json_err)?;
    results["unmatched"] = json!(report.unmatched);
    results["all_matched"] = json!(report.all_matched());
    if !report.all_matched() {
        return Err(PipelineError::numerical("nodal_mismatch", "some reference components have no stable match")
            .with_details(results));
    }
    Ok(results)
}
