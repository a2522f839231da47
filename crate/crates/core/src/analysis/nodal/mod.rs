//! Zero sets of sampled fields by marching simplices, their topology and
//! their structural stability.

use std::collections::HashMap;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fd::jacobian;
use super::AnalysisError;
use crate::grid::{EvaluationGrid, Field, GridSpec};

/// Relative shift of the isovalue that keeps zeros off grid nodes.
pub const TIE_BREAK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    /// Triangulated surface in `R^3`.
    Surface,
    /// Polyline in `R^2` or `R^3`.
    Curve,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodalComponent {
    pub kind: ComponentKind,
    pub vertices: Vec<Vec<f64>>,
    /// Triangles for surfaces, segments for curves.
    pub cells: Vec<Vec<usize>>,
    /// `V - E + F` (surfaces) or `V - E` (curves).
    pub euler: i64,
    /// Every edge borders two triangles, or every vertex has two segments.
    pub closed: bool,
    /// `(2 - χ)/2` for closed surfaces.
    pub genus: Option<i64>,
}

impl NodalComponent {
    fn new(kind: ComponentKind, vertices: Vec<Vec<f64>>, cells: Vec<Vec<usize>>) -> Self {
        let (euler, closed) = topology(kind, vertices.len(), &cells);
        let genus = (kind == ComponentKind::Surface && closed).then_some((2 - euler) / 2);
        Self {
            kind,
            vertices,
            cells,
            euler,
            closed,
            genus,
        }
    }

    pub fn centroid(&self) -> Vec<f64> {
        let dim = self.vertices.first().map_or(0, |v| v.len());
        let mut c = vec![0.0; dim];
        for v in &self.vertices {
            c.iter_mut().zip(v).for_each(|(a, b)| *a += b);
        }
        let k = self.vertices.len().max(1) as f64;
        c.iter_mut().for_each(|a| *a /= k);
        c
    }
}

fn topology(kind: ComponentKind, nv: usize, cells: &[Vec<usize>]) -> (i64, bool) {
    match kind {
        ComponentKind::Surface => {
            let mut edges: HashMap<(usize, usize), u32> = HashMap::new();
            for t in cells {
                for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                    *edges.entry((a.min(b), a.max(b))).or_default() += 1;
                }
            }
            let closed = edges.values().all(|&c| c == 2);
            (nv as i64 - edges.len() as i64 + cells.len() as i64, closed)
        }
        ComponentKind::Curve => {
            let mut degree = vec![0u32; nv];
            for s in cells {
                degree[s[0]] += 1;
                degree[s[1]] += 1;
            }
            (nv as i64 - cells.len() as i64, degree.iter().all(|&d| d == 2))
        }
    }
}

/// Vertices created on simplex edges, shared by the key of the edge.
struct Builder {
    points: Vec<Vec<f64>>,
    aux: Vec<f64>,
    index: HashMap<(usize, usize), usize>,
    cells: Vec<Vec<usize>>,
}

impl Builder {
    fn new() -> Self {
        Self {
            points: Vec::new(),
            aux: Vec::new(),
            index: HashMap::new(),
            cells: Vec::new(),
        }
    }

    /// Zero of the linear interpolant of `s` on the edge `(a, b)`; the
    /// auxiliary value is interpolated with the same weight.
    fn vertex<P, A>(&mut self, a: usize, b: usize, sa: f64, sb: f64, point: &P, aux: &A) -> usize
    where
        P: Fn(usize) -> Vec<f64>,
        A: Fn(usize) -> f64,
    {
        let key = (a.min(b), a.max(b));
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let (a, b, sa, sb) = if a < b { (a, b, sa, sb) } else { (b, a, sb, sa) };
        let t = sa / (sa - sb);
        let (pa, pb) = (point(a), point(b));
        self.points
            .push(pa.iter().zip(&pb).map(|(x, y)| x + t * (y - x)).collect());
        self.aux.push(aux(a) + t * (aux(b) - aux(a)));
        self.index.insert(key, self.points.len() - 1);
        self.points.len() - 1
    }
}

fn sub(a: &[f64], b: &[f64]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(u: [f64; 3], v: [f64; 3]) -> [f64; 3] {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

/// Field scale and shifted values `u - TIE_BREAK·scale` of one component.
fn shifted(grid: &EvaluationGrid, comp: usize) -> Vec<f64> {
    let scale = (0..grid.spec.len())
        .map(|i| grid.value(i, comp))
        .filter(|v| v.is_finite())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let iso = TIE_BREAK * scale.max(f64::MIN_POSITIVE);
    (0..grid.spec.len()).map(|i| grid.value(i, comp) - iso).collect()
}

fn active_nodes(grid: &EvaluationGrid) -> Vec<bool> {
    (0..grid.spec.len())
        .into_par_iter()
        .map(|i| grid.spec.in_mask(i) && (0..grid.components).all(|c| grid.value(i, c).is_finite()))
        .collect()
}

/// Base nodes of the grid cells whose corners are all active and whose
/// shifted values change sign.
fn crossing_cells(spec: &GridSpec, s: &[f64], active: &[bool]) -> (Vec<usize>, Vec<usize>) {
    let n = spec.n;
    let strides = spec.strides();
    let corners: Vec<usize> = (0..1usize << n)
        .map(|mask| (0..n).filter(|d| mask >> d & 1 == 1).map(|d| strides[d]).sum())
        .collect();
    let cells = (0..spec.len())
        .into_par_iter()
        .filter(|&base| {
            let mut mi = vec![0; n];
            spec.multi_index(base, &mut mi);
            if mi.iter().zip(&spec.counts).any(|(&i, &c)| i + 1 >= c) {
                return false;
            }
            let mut pos = 0;
            for &c in &corners {
                if !active[base + c] {
                    return false;
                }
                pos += (s[base + c] > 0.0) as usize;
            }
            pos != 0 && pos != corners.len()
        })
        .collect();
    (cells, strides)
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Zero isosurface of component `comp` by marching tetrahedra on the Kuhn
/// split of every grid cell; `aux` values are carried to the vertices.
fn march_tetrahedra(grid: &EvaluationGrid, comp: usize, aux: Option<usize>) -> Builder {
    let spec = &grid.spec;
    let s = shifted(grid, comp);
    let active = active_nodes(grid);
    let (cells, strides) = crossing_cells(spec, &s, &active);
    let point = |i: usize| spec.node(i);
    let aux_value = |i: usize| aux.map_or(0.0, |c| grid.value(i, c));
    let mut b = Builder::new();
    for base in cells {
        for perm in PERMUTATIONS {
            let mut tet = [base; 4];
            for k in 0..3 {
                tet[k + 1] = tet[k] + strides[perm[k]];
            }
            let (pos, neg): (Vec<usize>, Vec<usize>) = tet.iter().partition(|&&v| s[v] > 0.0);
            let mut polygon = Vec::with_capacity(4);
            match (pos.len(), neg.len()) {
                (1, 3) | (3, 1) => {
                    let (lone, rest) = if pos.len() == 1 { (pos[0], &neg) } else { (neg[0], &pos) };
                    for &o in rest.iter() {
                        polygon.push(b.vertex(lone, o, s[lone], s[o], &point, &aux_value));
                    }
                }
                (2, 2) => {
                    for (p, q) in [(pos[0], neg[0]), (pos[0], neg[1]), (pos[1], neg[1]), (pos[1], neg[0])] {
                        polygon.push(b.vertex(p, q, s[p], s[q], &point, &aux_value));
                    }
                }
                _ => continue,
            }
            let centre = |set: &[usize]| -> Vec<f64> {
                let mut c = vec![0.0; 3];
                for &v in set {
                    c.iter_mut().zip(point(v)).for_each(|(a, x)| *a += x);
                }
                c
            };
            let dir = sub(&centre(&pos), &centre(&neg));
            for k in 1..polygon.len() - 1 {
                let (v0, mut v1, mut v2) = (polygon[0], polygon[k], polygon[k + 1]);
                let nrm = cross(sub(&b.points[v1], &b.points[v0]), sub(&b.points[v2], &b.points[v0]));
                if nrm[0] * dir[0] + nrm[1] * dir[1] + nrm[2] * dir[2] < 0.0 {
                    std::mem::swap(&mut v1, &mut v2);
                }
                b.cells.push(vec![v0, v1, v2]);
            }
        }
    }
    b
}

/// Zero set of `value` on a list of triangles, as segments.
fn march_triangles<V, P>(triangles: &[[usize; 3]], value: V, point: P) -> Builder
where
    V: Fn(usize) -> f64,
    P: Fn(usize) -> Vec<f64>,
{
    let none = |_: usize| 0.0;
    let mut b = Builder::new();
    for tri in triangles {
        let (pos, neg): (Vec<usize>, Vec<usize>) = tri.iter().partition(|&&v| value(v) > 0.0);
        if pos.is_empty() || neg.is_empty() {
            continue;
        }
        let (lone, rest) = if pos.len() == 1 { (pos[0], neg) } else { (neg[0], pos) };
        let a = b.vertex(lone, rest[0], value(lone), value(rest[0]), &point, &none);
        let c = b.vertex(lone, rest[1], value(lone), value(rest[1]), &point, &none);
        b.cells.push(vec![a, c]);
    }
    b
}

fn contour_lines(grid: &EvaluationGrid) -> Builder {
    let spec = &grid.spec;
    let s = shifted(grid, 0);
    let active = active_nodes(grid);
    let (cells, strides) = crossing_cells(spec, &s, &active);
    let (e0, e1) = (strides[0], strides[1]);
    let triangles: Vec<[usize; 3]> = cells
        .iter()
        .flat_map(|&b| [[b, b + e0, b + e0 + e1], [b, b + e1, b + e0 + e1]])
        .collect();
    march_triangles(&triangles, |i| s[i], |i| spec.node(i))
}

fn joint_curves(grid: &EvaluationGrid) -> Builder {
    let surface = march_tetrahedra(grid, 0, Some(1));
    let scale = surface.aux.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let iso = TIE_BREAK * scale.max(f64::MIN_POSITIVE);
    let triangles: Vec<[usize; 3]> = surface.cells.iter().map(|t| [t[0], t[1], t[2]]).collect();
    march_triangles(&triangles, |i| surface.aux[i] - iso, |i| surface.points[i].clone())
}

/// Splits a mesh into connected components, in order of first appearance.
fn components(kind: ComponentKind, mesh: Builder) -> Vec<NodalComponent> {
    let nv = mesh.points.len();
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for cell in &mesh.cells {
        for w in cell.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut label: HashMap<usize, usize> = HashMap::new();
    let mut groups: Vec<(Vec<usize>, Vec<Vec<usize>>)> = Vec::new();
    let mut local = vec![usize::MAX; nv];
    for cell in &mesh.cells {
        let root = find(&mut parent, cell[0]);
        let g = *label.entry(root).or_insert_with(|| {
            groups.push((Vec::new(), Vec::new()));
            groups.len() - 1
        });
        let mapped = cell
            .iter()
            .map(|&v| {
                if local[v] == usize::MAX {
                    local[v] = groups[g].0.len();
                    groups[g].0.push(v);
                }
                local[v]
            })
            .collect();
        groups[g].1.push(mapped);
    }
    groups
        .into_iter()
        .map(|(verts, cells)| {
            let vertices = verts.iter().map(|&v| mesh.points[v].clone()).collect();
            NodalComponent::new(kind, vertices, cells)
        })
        .collect()
}

/// Connected components of the zero set of a sampled field: isosurfaces
/// for `n = 3, m = 1`, contour lines for `n = 2, m = 1`, and joint nodal
/// curves for `n = 3, m = 2`. Only cells whose nodes are all inside the
/// mask take part.
pub fn nodal_extract(grid: &EvaluationGrid) -> Result<Vec<NodalComponent>, AnalysisError> {
    grid.spec.require_nodes(2)?;
    Ok(match (grid.spec.n, grid.components) {
        (3, 1) => components(ComponentKind::Surface, march_tetrahedra(grid, 0, None)),
        (2, 1) => components(ComponentKind::Curve, contour_lines(grid)),
        (3, 2) => components(ComponentKind::Curve, joint_curves(grid)),
        (n, m) => {
            return Err(AnalysisError::Unsupported(format!(
                "nodal extraction for n = {n}, m = {m}"
            )))
        }
    })
}

/// Smallest singular value of the finite-difference Jacobian of `field`
/// over the vertices of `component`; zero for an empty component.
pub fn stability_margin(field: &dyn Field, component: &NodalComponent, step: f64) -> f64 {
    let n = field.dim();
    let m = field.components();
    if component.vertices.is_empty() {
        return 0.0;
    }
    component
        .vertices
        .par_iter()
        .map(|x| {
            let jac = DMatrix::from_row_slice(m, n, &jacobian(field, x, step));
            jac.singular_values().iter().cloned().fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min)
}

/// Uniform bucket index for nearest-neighbour queries.
struct PointIndex<'a> {
    points: &'a [Vec<f64>],
    lo: Vec<f64>,
    size: f64,
    buckets: HashMap<Vec<i64>, Vec<usize>>,
}

impl<'a> PointIndex<'a> {
    fn new(points: &'a [Vec<f64>]) -> Self {
        let dim = points[0].len();
        let mut lo = vec![f64::INFINITY; dim];
        let mut hi = vec![f64::NEG_INFINITY; dim];
        for p in points {
            for d in 0..dim {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        let extent = lo.iter().zip(&hi).map(|(a, b)| b - a).fold(0.0, f64::max);
        let size = (extent / (points.len() as f64).powf(1.0 / dim as f64)).max(1e-9);
        let mut idx = Self {
            points,
            lo,
            size,
            buckets: HashMap::new(),
        };
        for (i, p) in points.iter().enumerate() {
            let key = idx.key(p);
            idx.buckets.entry(key).or_default().push(i);
        }
        idx
    }

    fn key(&self, p: &[f64]) -> Vec<i64> {
        p.iter()
            .zip(&self.lo)
            .map(|(x, l)| ((x - l) / self.size).floor() as i64)
            .collect()
    }

    fn nearest(&self, q: &[f64]) -> f64 {
        let centre = self.key(q);
        let dim = centre.len();
        let mut best = f64::INFINITY;
        let mut ring = 0i64;
        loop {
            let mut offset = vec![-ring; dim];
            loop {
                if offset.iter().any(|o| o.abs() == ring) {
                    let key: Vec<i64> = centre.iter().zip(&offset).map(|(c, o)| c + o).collect();
                    if let Some(list) = self.buckets.get(&key) {
                        for &i in list {
                            let d = self.points[i]
                                .iter()
                                .zip(q)
                                .map(|(a, b)| (a - b) * (a - b))
                                .sum::<f64>();
                            best = best.min(d);
                        }
                    }
                }
                let mut d = 0;
                while d < dim {
                    offset[d] += 1;
                    if offset[d] <= ring {
                        break;
                    }
                    offset[d] = -ring;
                    d += 1;
                }
                if d == dim {
                    break;
                }
            }
            if best.is_finite() && (ring as f64 * self.size).powi(2) >= best {
                return best.sqrt();
            }
            ring += 1;
        }
    }
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() && b.is_empty() { 0.0 } else { f64::INFINITY };
    }
    let directed = |from: &[Vec<f64>], to: &[Vec<f64>]| {
        let index = PointIndex::new(to);
        from.par_iter().map(|p| index.nearest(p)).reduce(|| 0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NodalCheckOptions {
    /// Largest Hausdorff distance accepted for a match.
    pub hausdorff_tolerance: f64,
    /// Step of the finite-difference Jacobian.
    pub gradient_step: f64,
}

impl Default for NodalCheckOptions {
    fn default() -> Self {
        Self {
            hausdorff_tolerance: 0.25,
            gradient_step: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub kind: ComponentKind,
    pub vertices: usize,
    pub cells: usize,
    pub euler: i64,
    pub closed: bool,
    pub genus: Option<i64>,
    pub centroid: Vec<f64>,
}

impl From<&NodalComponent> for ComponentSummary {
    fn from(c: &NodalComponent) -> Self {
        Self {
            kind: c.kind,
            vertices: c.vertices.len(),
            cells: c.cells.len(),
            euler: c.euler,
            closed: c.closed,
            genus: c.genus,
            centroid: c.centroid(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodalMatch {
    pub reference: usize,
    pub component: usize,
    pub euler: i64,
    pub genus: Option<i64>,
    pub hausdorff: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodalReport {
    pub step: f64,
    pub references: Vec<ComponentSummary>,
    pub components: Vec<ComponentSummary>,
    pub matches: Vec<NodalMatch>,
    /// References without a component of equal topology within the
    /// Hausdorff tolerance.
    pub unmatched: Vec<usize>,
}

impl NodalReport {
    pub fn all_matched(&self) -> bool {
        self.unmatched.is_empty() && !self.references.is_empty()
    }
}

/// Extracts the nodal components of `field` (a rescaled eigenfunction) on
/// `grid` and matches them against `references` with [`match_components`].
pub fn localized_nodal_check(
    field: &dyn Field,
    grid: &GridSpec,
    references: &[NodalComponent],
    opts: NodalCheckOptions,
) -> Result<NodalReport, AnalysisError> {
    let samples = EvaluationGrid::sample(grid, field)?;
    let found = nodal_extract(&samples)?;
    Ok(match_components(field, grid.step, &found, references, opts))
}

/// Pairs each reference with an unused component of equal topology (kind,
/// χ, closedness, genus) and smallest Hausdorff distance within tolerance;
/// margins are measured on `field`.
pub fn match_components(
    field: &dyn Field,
    step: f64,
    found: &[NodalComponent],
    references: &[NodalComponent],
    opts: NodalCheckOptions,
) -> NodalReport {
    let mut used = vec![false; found.len()];
    let mut matches = Vec::new();
    let mut unmatched = Vec::new();
    for (r, reference) in references.iter().enumerate() {
        let best = found
            .iter()
            .enumerate()
            .filter(|(i, c)| {
                !used[*i]
                    && c.kind == reference.kind
                    && c.euler == reference.euler
                    && c.closed == reference.closed
                    && c.genus == reference.genus
            })
            .map(|(i, c)| (i, hausdorff(&c.vertices, &reference.vertices)))
            .filter(|(_, d)| *d <= opts.hausdorff_tolerance)
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, d)) => {
                used[i] = true;
                matches.push(NodalMatch {
                    reference: r,
                    component: i,
                    euler: found[i].euler,
                    genus: found[i].genus,
                    hausdorff: d,
                    margin: stability_margin(field, &found[i], opts.gradient_step),
                });
            }
            None => unmatched.push(r),
        }
    }
    NodalReport {
        step,
        references: references.iter().map(ComponentSummary::from).collect(),
        components: found.iter().map(ComponentSummary::from).collect(),
        matches,
        unmatched,
    }
}

#[cfg(test)]
mod tests;
