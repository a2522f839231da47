//! Centred second-order finite differences on uniform grids.

use crate::grid::{EvaluationGrid, Field};

/// All multi-indices `α ∈ N^n` with `|α| <= r`, graded.
pub fn multi_indices(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; n]];
    if r >= 1 {
        for d in 0..n {
            let mut a = vec![0; n];
            a[d] = 1;
            out.push(a);
        }
    }
    if r >= 2 {
        for d in 0..n {
            for e in d..n {
                let mut a = vec![0; n];
                a[d] += 1;
                a[e] += 1;
                out.push(a);
            }
        }
    }
    out
}

/// `∂^α u` at node `idx` (`|α| <= 2`); the node's neighbours along the
/// axes involved must exist.
pub fn partial(grid: &EvaluationGrid, strides: &[usize], idx: usize, comp: usize, alpha: &[usize]) -> f64 {
    let h = grid.spec.step;
    let u = |i: usize| grid.value(i, comp);
    let axes: Vec<usize> = alpha
        .iter()
        .enumerate()
        .flat_map(|(d, &k)| std::iter::repeat(d).take(k))
        .collect();
    match axes.as_slice() {
        [] => u(idx),
        [d] => (u(idx + strides[*d]) - u(idx - strides[*d])) / (2.0 * h),
        [d, e] if d == e => {
            let s = strides[*d];
            (u(idx + s) - 2.0 * u(idx) + u(idx - s)) / (h * h)
        }
        [d, e] => {
            let (s, t) = (strides[*d], strides[*e]);
            (u(idx + s + t) - u(idx + s - t) - u(idx - s + t) + u(idx - s - t)) / (4.0 * h * h)
        }
        _ => panic!("derivatives of order > 2 are not supported"),
    }
}

/// Five-point (or 2n+1-point) Laplacian at node `idx`.
pub fn laplacian(grid: &EvaluationGrid, strides: &[usize], idx: usize, comp: usize) -> f64 {
    let h2 = grid.spec.step * grid.spec.step;
    let c = grid.value(idx, comp);
    strides
        .iter()
        .map(|&s| grid.value(idx + s, comp) - 2.0 * c + grid.value(idx - s, comp))
        .sum::<f64>()
        / h2
}

/// Largest `|∂^α u|` over `nodes`, components and `|α| <= r`.
pub fn derivative_sup(grid: &EvaluationGrid, nodes: &[usize], r: usize) -> f64 {
    let strides = grid.spec.strides();
    let mut worst = 0.0f64;
    for alpha in multi_indices(grid.spec.n, r) {
        for &idx in nodes {
            for c in 0..grid.components {
                worst = worst.max(partial(grid, &strides, idx, c, &alpha).abs());
            }
        }
    }
    worst
}

/// Row-major `m × n` Jacobian of `field` at `x` by centred differences.
pub fn jacobian(field: &dyn Field, x: &[f64], h: f64) -> Vec<f64> {
    let n = field.dim();
    let m = field.components();
    let mut jac = vec![0.0; m * n];
    let mut xp = x.to_vec();
    let mut up = vec![0.0; m];
    let mut um = vec![0.0; m];
    for d in 0..n {
        xp[d] = x[d] + h;
        field.eval_into(&xp, &mut up);
        xp[d] = x[d] - h;
        field.eval_into(&xp, &mut um);
        xp[d] = x[d];
        for i in 0..m {
            jac[i * n + d] = (up[i] - um[i]) / (2.0 * h);
        }
    }
    jac
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{scalar_field, GridSpec};

    #[test]
    fn multi_index_counts() {
        assert_eq!(multi_indices(3, 0).len(), 1);
        assert_eq!(multi_indices(3, 1).len(), 4);
        assert_eq!(multi_indices(3, 2).len(), 10);
    }

    #[test]
    fn stencils_are_exact_on_quadratics() {
        let g = GridSpec::cube(2, 1.0, 0.25).unwrap();
        let f = scalar_field(2, |x| 3.0 * x[0] * x[0] + 2.0 * x[0] * x[1] - x[1]);
        let s = EvaluationGrid::sample(&g, &f).unwrap();
        let st = g.strides();
        for idx in g.interior(1) {
            let x = g.node(idx);
            assert!((partial(&s, &st, idx, 0, &[1, 0]) - (6.0 * x[0] + 2.0 * x[1])).abs() < 1e-12);
            assert!((partial(&s, &st, idx, 0, &[0, 1]) - (2.0 * x[0] - 1.0)).abs() < 1e-12);
            assert!((partial(&s, &st, idx, 0, &[2, 0]) - 6.0).abs() < 1e-10);
            assert!((partial(&s, &st, idx, 0, &[1, 1]) - 2.0).abs() < 1e-10);
            assert!((laplacian(&s, &st, idx, 0) - 6.0).abs() < 1e-10);
        }
    }

    #[test]
    fn gradient_error_is_second_order() {
        let f = scalar_field(2, |x| (1.3 * x[0] - 0.7 * x[1]).sin());
        let err = |h: f64| {
            let g = GridSpec::cube(2, 1.0, h).unwrap();
            let s = EvaluationGrid::sample(&g, &f).unwrap();
            let st = g.strides();
            g.interior(1)
                .into_iter()
                .map(|idx| {
                    let x = g.node(idx);
                    let exact = 1.3 * (1.3 * x[0] - 0.7 * x[1]).cos();
                    (partial(&s, &st, idx, 0, &[1, 0]) - exact).abs()
                })
                .fold(0.0, f64::max)
        };
        let ratio = err(0.1) / err(0.05);
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn jacobian_of_linear_map() {
        let f = crate::grid::FnField::new(3, 2, |x: &[f64], out: &mut [f64]| {
            out[0] = x[0] + 2.0 * x[2];
            out[1] = -x[1];
        });
        let j = jacobian(&f, &[0.3, -0.2, 0.9], 1e-3);
        let expect = [1.0, 0.0, 2.0, 0.0, -1.0, 0.0];
        for (a, b) in j.iter().zip(expect) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
