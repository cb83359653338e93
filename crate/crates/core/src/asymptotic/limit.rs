use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::spectral::rational_part::{orthonormalize, rational_part, DEFAULT_HEIGHT, DEFAULT_TOLERANCE};
use crate::torus::ClosedSubgroup;

use super::patch::{mat_vec, norm};

pub const DEFAULT_ITERS: usize = 200;
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct LimitDirection {
    pub direction: Vec<f64>,
    /// Estimate of the closure of the projected line `span(u)`; always approximate.
    pub subgroup: Option<ClosedSubgroup>,
}

/// Accumulation points, up to sign, of `E^j v / ||E^j v||` over the last
/// quarter of `iters` iterations.
pub fn limit_direction(e: &IntMatrix, v: &[f64], iters: usize, cluster_tol: f64) -> Result<Vec<Vec<f64>>> {
    let n = e.require_square()?;
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    let nv = norm(v);
    if nv == 0.0 || !nv.is_finite() {
        return Err(Error::Precondition("direction v must be nonzero".into()));
    }
    let a = e.to_f64_rows();
    let mut u: Vec<f64> = v.iter().map(|x| x / nv).collect();
    let start = iters - iters / 4;
    let mut reps: Vec<Vec<f64>> = Vec::new();
    for j in 0..=iters {
        if j >= start {
            let c = sign_canonical(&u);
            if !reps.iter().any(|r| dist(r, &c) < cluster_tol) {
                reps.push(c);
            }
        }
        let w = mat_vec(&a, &u);
        let nw = norm(&w);
        if nw == 0.0 {
            return Err(Error::Precondition("iterate collapsed to zero".into()));
        }
        u = w.into_iter().map(|x| x / nw).collect();
    }
    Ok(reps)
}

/// Limit directions together with the subgroup whose dual consists of the
/// small integer vectors numerically orthogonal to each direction.
pub fn limit_directions_with_subgroups(
    e: &IntMatrix,
    v: &[f64],
    iters: usize,
    cluster_tol: f64,
) -> Result<Vec<LimitDirection>> {
    Ok(limit_direction(e, v, iters, cluster_tol)?
        .into_iter()
        .map(|u| {
            let subgroup = line_closure(&u);
            LimitDirection { direction: u, subgroup }
        })
        .collect())
}

/// Closure of `π(span u)`: its dual is the integer part of `u^⊥`.
fn line_closure(u: &[f64]) -> Option<ClosedSubgroup> {
    let n = u.len();
    let mut cols = vec![u.to_vec()];
    cols.extend((0..n).map(|i| {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        e
    }));
    let q = orthonormalize(&cols);
    let perp: Vec<Vec<f64>> = q[1..].to_vec();
    let part = rational_part(&perp, DEFAULT_HEIGHT, DEFAULT_TOLERANCE);
    let rows: Vec<Vec<BigInt>> = part
        .subspace
        .basis
        .iter()
        .map(|c| c.iter().map(|x| x.to_integer()).collect())
        .collect();
    let rows_i64: Option<Vec<Vec<i64>>> = rows.iter().map(|r| r.iter().map(ToPrimitive::to_i64).collect()).collect();
    rows_i64.map(|r| ClosedSubgroup::from_dual_i64(n, &r))
}

fn sign_canonical(u: &[f64]) -> Vec<f64> {
    let lead = u.iter().find(|x| x.abs() > 1e-9).copied().unwrap_or(1.0);
    if lead < 0.0 {
        u.iter().map(|x| -x).collect()
    } else {
        u.to_vec()
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
