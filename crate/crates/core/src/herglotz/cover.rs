//! Zonal partitions of `S^{n-1}` into cells of small Euclidean diameter.
//!
//! A cover of `S^d` (`d >= 2`) cuts the polar angle `ψ` (measured from the
//! last axis) into `M` equal bands. The two end bands are polar caps; every
//! other band is the product of its `ψ`-interval with a cover of `S^{d-1}`.
//! On `S^1` the cells are equal arcs. Cells are half-open in every zonal
//! coordinate, so each point lies in exactly one cell.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::HerglotzError;
use crate::specfun::gamma;

/// Default upper bound on the number of cells.
pub const DEFAULT_MAX_CELLS: usize = 1_000_000;

/// Where the representative point of a cell sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellAnchor {
    /// Midpoint of every zonal interval (the pole for caps).
    #[default]
    Center,
    /// Lower end of every zonal interval (the pole for caps).
    Corner,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverOptions {
    pub anchor: CellAnchor,
    pub max_cells: usize,
}

impl Default for CoverOptions {
    fn default() -> Self {
        Self {
            anchor: CellAnchor::Center,
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapCell {
    /// Representative point `ξ_j`.
    pub center: Vec<f64>,
    pub area: f64,
    /// Upper bound on the Euclidean diameter.
    pub diameter: f64,
    /// Zonal intervals `[lo, hi)`: polar angles outermost first, then the
    /// azimuth.
    pub bounds: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq)]
enum Zone {
    Whole,
    Arcs { k: usize, offset: f64 },
    Bands { width: f64, first: Vec<usize>, rings: Vec<Zone> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphericalCapCover {
    n: usize,
    eps: f64,
    anchor: CellAnchor,
    cells: Vec<CapCell>,
    #[serde(skip)]
    root: Zone,
}

/// `|S^{n-1}| = 2 π^{n/2} / Γ(n/2)`.
pub fn sphere_area(n: usize) -> f64 {
    2.0 * PI.powf(n as f64 / 2.0) / gamma(n as f64 / 2.0)
}

/// Cover of `S^{n-1}` (`n ∈ {2, 3, 4}`) with cell diameters `<= eps`.
/// `eps >= 2` yields the single cell `S^{n-1}`.
pub fn build_cap_cover(n: usize, eps: f64) -> Result<SphericalCapCover, HerglotzError> {
    SphericalCapCover::new(n, eps, CoverOptions::default())
}

struct LocalCell {
    point: Vec<f64>,
    area: f64,
    diameter: f64,
    bounds: Vec<[f64; 2]>,
}

impl SphericalCapCover {
    pub fn new(n: usize, eps: f64, opts: CoverOptions) -> Result<Self, HerglotzError> {
        if !(2..=4).contains(&n) {
            return Err(HerglotzError::UnsupportedDimension { n });
        }
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(HerglotzError::InvalidParameter(format!("eps must be positive, got {eps}")));
        }
        let mut budget = opts.max_cells;
        let (root, local) = build_zone(n - 1, eps, opts.anchor, &mut budget).ok_or(
            HerglotzError::TooManyCells {
                limit: opts.max_cells,
            },
        )?;
        Ok(Self::assemble(n, eps, opts.anchor, root, local))
    }

    /// `k` equal arcs of `S^1` starting at angle `offset`.
    pub fn circle_arcs(k: usize, offset: f64) -> Result<Self, HerglotzError> {
        if k == 0 {
            return Err(HerglotzError::InvalidParameter("need at least one arc".into()));
        }
        let local = arc_cells(k, offset, CellAnchor::Center);
        let eps = local.iter().map(|c| c.diameter).fold(0.0, f64::max);
        Ok(Self::assemble(2, eps, CellAnchor::Center, Zone::Arcs { k, offset }, local))
    }

    fn assemble(n: usize, eps: f64, anchor: CellAnchor, root: Zone, local: Vec<LocalCell>) -> Self {
        let cells = local
            .into_iter()
            .map(|c| CapCell {
                center: c.point,
                area: c.area,
                diameter: c.diameter,
                bounds: c.bounds,
            })
            .collect();
        Self {
            n,
            eps,
            anchor,
            cells,
            root,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn anchor(&self) -> CellAnchor {
        self.anchor
    }

    pub fn cells(&self) -> &[CapCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn total_area(&self) -> f64 {
        self.cells.iter().map(|c| c.area).sum()
    }

    pub fn max_diameter(&self) -> f64 {
        self.cells.iter().map(|c| c.diameter).fold(0.0, f64::max)
    }

    /// Index of the cell containing the unit vector `xi`.
    pub fn locate(&self, xi: &[f64]) -> usize {
        locate_in(&self.root, xi)
    }

    pub fn contains(&self, cell: usize, xi: &[f64]) -> bool {
        self.locate(xi) == cell
    }

    /// Point of `S^{n-1}` with zonal coordinates `coords` (polar angles,
    /// then azimuth).
    pub fn zonal_point(coords: &[f64]) -> Vec<f64> {
        from_zonal(coords)
    }
}

fn from_zonal(coords: &[f64]) -> Vec<f64> {
    match coords {
        [] => unreachable!("empty zonal coordinates"),
        [phi] => vec![phi.cos(), phi.sin()],
        [psi, rest @ ..] => {
            let (s, c) = psi.sin_cos();
            let mut p: Vec<f64> = from_zonal(rest).into_iter().map(|v| v * s).collect();
            p.push(c);
            p
        }
    }
}

fn locate_in(zone: &Zone, x: &[f64]) -> usize {
    match zone {
        Zone::Whole => 0,
        Zone::Arcs { k, offset } => {
            let phi = (x[1].atan2(x[0]) - offset).rem_euclid(2.0 * PI);
            ((phi / (2.0 * PI) * *k as f64).floor() as usize).min(k - 1)
        }
        Zone::Bands { width, first, rings } => {
            let d = x.len() - 1;
            let psi = x[d].clamp(-1.0, 1.0).acos();
            let b = ((psi / width).floor() as usize).min(rings.len() - 1);
            match &rings[b] {
                Zone::Whole => first[b],
                ring => {
                    let s = x[..d].iter().map(|v| v * v).sum::<f64>().sqrt();
                    let u: Vec<f64> = if s > 0.0 {
                        x[..d].iter().map(|v| v / s).collect()
                    } else {
                        let mut e = vec![0.0; d];
                        e[0] = 1.0;
                        e
                    };
                    first[b] + locate_in(ring, &u)
                }
            }
        }
    }
}

/// Measure `∫_lo^hi sin^{d-1} ψ dψ`, written to avoid cancellation.
fn band_measure(d: usize, lo: f64, hi: f64) -> f64 {
    match d {
        2 => 2.0 * (0.5 * (lo + hi)).sin() * (0.5 * (hi - lo)).sin(),
        3 => 0.5 * (hi - lo) - 0.5 * (hi + lo).cos() * (hi - lo).sin(),
        _ => unreachable!("band measure for d = {d}"),
    }
}

fn whole_cell(d: usize, anchor: CellAnchor) -> LocalCell {
    let mut bounds = vec![[0.0, PI]; d - 1];
    bounds.push([0.0, 2.0 * PI]);
    let point = if d == 1 {
        match anchor {
            CellAnchor::Center => vec![-1.0, 0.0],
            CellAnchor::Corner => vec![1.0, 0.0],
        }
    } else {
        let mut p = vec![0.0; d + 1];
        p[d] = 1.0;
        p
    };
    LocalCell {
        point,
        area: sphere_area(d + 1),
        diameter: 2.0,
        bounds,
    }
}

fn arc_cells(k: usize, offset: f64, anchor: CellAnchor) -> Vec<LocalCell> {
    let w = 2.0 * PI / k as f64;
    let diameter = if k == 1 { 2.0 } else { 2.0 * (0.5 * w).sin() };
    (0..k)
        .map(|i| {
            let lo = offset + i as f64 * w;
            let hi = offset + (i + 1) as f64 * w;
            let a = match anchor {
                CellAnchor::Center => 0.5 * (lo + hi),
                CellAnchor::Corner => lo,
            };
            LocalCell {
                point: vec![a.cos(), a.sin()],
                area: w,
                diameter,
                bounds: vec![[lo, hi]],
            }
        })
        .collect()
}

/// Builds a cover of `S^d`; `None` once `budget` cells are exceeded.
fn build_zone(d: usize, eps: f64, anchor: CellAnchor, budget: &mut usize) -> Option<(Zone, Vec<LocalCell>)> {
    if eps >= 2.0 {
        *budget = budget.checked_sub(1)?;
        return Some((Zone::Whole, vec![whole_cell(d, anchor)]));
    }
    if d == 1 {
        let arc = 2.0 * (0.5 * eps).asin();
        let mut k = (2.0 * PI / arc).ceil() as usize;
        k += k % 2;
        if k > *budget {
            return None;
        }
        *budget -= k;
        return Some((Zone::Arcs { k, offset: 0.0 }, arc_cells(k, 0.0, anchor)));
    }
    let m = (2.0 * PI / eps).ceil() as usize;
    let width = PI / m as f64;
    let chord = 2.0 * (0.5 * width).sin();
    let mut first = Vec::with_capacity(m);
    let mut rings = Vec::with_capacity(m);
    let mut cells = Vec::new();
    let sub_area = sphere_area(d);
    for b in 0..m {
        first.push(cells.len());
        let lo = b as f64 * width;
        let hi = if b + 1 == m { PI } else { (b + 1) as f64 * width };
        let measure = band_measure(d, lo, hi);
        if b == 0 || b + 1 == m {
            *budget = budget.checked_sub(1)?;
            let mut bounds = vec![[lo, hi]];
            bounds.extend(whole_cell(d - 1, anchor).bounds);
            let mut point = vec![0.0; d + 1];
            point[d] = if b == 0 { 1.0 } else { -1.0 };
            cells.push(LocalCell {
                point,
                area: measure * sub_area,
                diameter: 2.0 * width.sin(),
                bounds,
            });
            rings.push(Zone::Whole);
            continue;
        }
        // Fold onto the northern half so mirrored bands get identical rings.
        let folded = b.min(m - 1 - b);
        let fhi = (folded + 1) as f64 * width;
        let s_max = if fhi >= 0.5 * PI - 1e-15 { 1.0 } else { fhi.sin() };
        let sub_eps = (eps * eps - chord * chord).sqrt() / s_max;
        let (ring, sub) = build_zone(d - 1, sub_eps, anchor, budget)?;
        let psi = match anchor {
            CellAnchor::Center => 0.5 * (lo + hi),
            CellAnchor::Corner => lo,
        };
        let (sp, cp) = psi.sin_cos();
        for c in sub {
            let mut point: Vec<f64> = c.point.iter().map(|v| v * sp).collect();
            point.push(cp);
            let mut bounds = vec![[lo, hi]];
            bounds.extend(c.bounds);
            cells.push(LocalCell {
                point,
                area: measure * c.area,
                diameter: (chord * chord + s_max * s_max * c.diameter * c.diameter)
                    .sqrt()
                    .min(2.0),
                bounds,
            });
        }
        rings.push(ring);
    }
    Some((Zone::Bands { width, first, rings }, cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dist(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
    }

    fn random_in(cell: &CapCell, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let coords: Vec<f64> = cell.bounds.iter().map(|[lo, hi]| rng.gen_range(*lo..*hi)).collect();
        from_zonal(&coords)
    }

    #[test]
    fn areas_sum_to_the_sphere() {
        let c = build_cap_cover(2, PI).unwrap();
        assert!((c.total_area() - 2.0 * PI).abs() < 1e-12);
        for (n, eps) in [(3, 0.5), (3, 0.05), (4, 0.6), (2, 0.01), (3, 1.99)] {
            let c = build_cap_cover(n, eps).unwrap();
            assert!((c.total_area() - sphere_area(n)).abs() < 1e-8, "n={n} eps={eps}");
            assert!(c.max_diameter() <= eps * (1.0 + 1e-12));
        }
    }

    #[test]
    fn monte_carlo_diameters_respect_eps() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (n, eps) in [(2, 0.3), (3, 0.5), (4, 0.9)] {
            let cover = build_cap_cover(n, eps).unwrap();
            let mut worst = 0.0f64;
            for _ in 0..100_000 {
                let cell = &cover.cells()[rng.gen_range(0..cover.len())];
                let a = random_in(cell, &mut rng);
                let b = random_in(cell, &mut rng);
                worst = worst.max(dist(&a, &b));
            }
            assert!(worst <= eps, "n={n}: {worst} > {eps}");
        }
    }

    #[test]
    fn locate_agrees_with_bounds_and_centers() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [2usize, 3, 4] {
            let cover = build_cap_cover(n, 0.4).unwrap();
            for (i, cell) in cover.cells().iter().enumerate() {
                assert_eq!(cover.locate(&cell.center), i, "n={n} cell {i}");
                let p = random_in(cell, &mut rng);
                assert!(cover.contains(i, &p));
            }
        }
    }

    #[test]
    fn covers_are_antipodally_symmetric() {
        for n in [2usize, 3, 4] {
            let cover = build_cap_cover(n, 0.3).unwrap();
            for cell in cover.cells() {
                let neg: Vec<f64> = cell.center.iter().map(|v| -v).collect();
                let j = cover.locate(&neg);
                let back = &cover.cells()[j].center;
                assert!(dist(back, &neg) < 1e-12, "n={n}");
                assert!((cover.cells()[j].area - cell.area).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn large_eps_gives_one_cell() {
        for n in [2usize, 3, 4] {
            let c = build_cap_cover(n, 2.0 * PI).unwrap();
            assert_eq!(c.len(), 1);
            assert!((c.total_area() - sphere_area(n)).abs() < 1e-12);
        }
    }

    #[test]
    fn quadrant_arcs() {
        let c = SphericalCapCover::circle_arcs(4, 0.0).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.locate(&[0.6, 0.8]), 0);
        assert_eq!(c.locate(&[-0.6, 0.8]), 1);
        assert_eq!(c.locate(&[0.0, 1.0]), 1);
        assert_eq!(c.locate(&[0.6, -0.8]), 3);
    }

    #[test]
    fn errors() {
        assert!(build_cap_cover(5, 0.5).is_err());
        assert!(build_cap_cover(3, 0.0).is_err());
        let opts = CoverOptions {
            max_cells: 100,
            ..Default::default()
        };
        assert!(matches!(
            SphericalCapCover::new(3, 0.05, opts),
            Err(HerglotzError::TooManyCells { .. })
        ));
    }

    #[test]
    fn halving_eps_doubles_the_band_count() {
        let a = build_cap_cover(3, 2.0 * PI / 16.0).unwrap();
        let b = build_cap_cover(3, 2.0 * PI / 32.0).unwrap();
        let bands = |c: &SphericalCapCover| match &c.root {
            Zone::Bands { rings, .. } => rings.len(),
            _ => 0,
        };
        assert_eq!(2 * bands(&a), bands(&b));
    }
}
