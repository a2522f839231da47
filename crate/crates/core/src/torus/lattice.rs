//! Integer points on the sphere `|k|² = N²`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::TorusError;

/// Default upper bounds on `N` per dimension `n = 2, 3, 4`.
pub const DEFAULT_DEGREE_CAPS: [u64; 3] = [100_000_000, 2000, 300];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSphere {
    degree: u64,
    n: usize,
    points: Vec<Vec<i64>>,
}

impl LatticeSphere {
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `k/N` for the point at `index`.
    pub fn direction(&self, index: usize) -> Vec<f64> {
        let d = self.degree as f64;
        self.points[index].iter().map(|&v| v as f64 / d).collect()
    }
}

pub fn degree_cap(n: usize) -> Option<u64> {
    (2..=4).contains(&n).then(|| DEFAULT_DEGREE_CAPS[n - 2])
}

/// Integer square root of `v` when `v` is a perfect square.
pub fn exact_sqrt(v: i64) -> Option<i64> {
    if v < 0 {
        return None;
    }
    let mut r = (v as f64).sqrt() as i64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    (r * r == v).then_some(r)
}

fn floor_sqrt(v: i64) -> i64 {
    let mut r = (v as f64).sqrt() as i64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// All `k ∈ Z^n` with `|k|² = N²`, for `n ∈ {2, 3, 4}` and `N` up to the
/// default cap of the dimension.
pub fn enumerate_lattice(degree: u64, n: usize) -> Result<LatticeSphere, TorusError> {
    let cap = degree_cap(n).ok_or(TorusError::UnsupportedDimension { n })?;
    enumerate_lattice_capped(degree, n, cap)
}

pub fn enumerate_lattice_capped(degree: u64, n: usize, cap: u64) -> Result<LatticeSphere, TorusError> {
    if !(2..=4).contains(&n) {
        return Err(TorusError::UnsupportedDimension { n });
    }
    if degree == 0 {
        return Err(TorusError::InvalidParameter("N must be at least 1".into()));
    }
    if degree > cap {
        return Err(TorusError::DegreeOverCap { degree, cap });
    }
    let big = degree as i64;
    let target = big * big;
    let points: Vec<Vec<i64>> = (-big..=big)
        .into_par_iter()
        .flat_map_iter(|k1| {
            let mut out = Vec::new();
            let mut prefix = vec![k1];
            complete(&mut prefix, target - k1 * k1, n, &mut out);
            out
        })
        .collect();
    Ok(LatticeSphere {
        degree,
        n,
        points,
    })
}

/// Appends all completions of `prefix` whose remaining squares sum to `rest`.
fn complete(prefix: &mut Vec<i64>, rest: i64, n: usize, out: &mut Vec<Vec<i64>>) {
    if prefix.len() == n - 1 {
        if let Some(r) = exact_sqrt(rest) {
            let mut p = prefix.clone();
            if r == 0 {
                p.push(0);
                out.push(p);
            } else {
                p.push(-r);
                out.push(p.clone());
                *p.last_mut().unwrap() = r;
                out.push(p);
            }
        }
        return;
    }
    let bound = floor_sqrt(rest);
    for k in -bound..=bound {
        prefix.push(k);
        complete(prefix, rest - k * k, n, out);
        prefix.pop();
    }
}
