//! The sup-inf distance from the unit segment along `E^j v` at `E^j x` to
//! `E^j(M)`, estimated by sampling and local least-squares refinement.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::num::{to_f64, Rational};
use crate::spectral::rational_part::{distance_to_span, orthonormalize};
use crate::spectral::{dominant_complement, spectral_data};

use super::patch::{mat_vec, norm, ManifoldPatch};

pub const DEFAULT_THRESHOLD: f64 = 1e-3;
/// Iterates whose matrix entries exceed this many bits are not attempted.
const MAX_ENTRY_BITS: u64 = 1000;
/// Only patch samples mapped into this ball around `E^j x` steer the window.
const WINDOW_RADIUS: f64 = 2.0;
const WINDOW_ROUNDS: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub segment_points: usize,
    pub patch_points: usize,
    pub refine_iters: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { segment_points: 200, patch_points: 10_000, refine_iters: 40 }
    }
}

impl Sampling {
    pub fn doubled(&self) -> Self {
        Sampling {
            segment_points: self.segment_points * 2,
            patch_points: self.patch_points * 2,
            refine_iters: self.refine_iters,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecayRecord {
    pub j: usize,
    pub distance: f64,
    /// `||E^j|| ||v||² / ||E^j v||²`
    pub bound_rhs: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug)]
pub struct DecayReport {
    pub records: Vec<DecayRecord>,
    /// Least-squares fit of `distance_j ≈ α bound_rhs_j`.
    pub alpha: f64,
    pub decayed: bool,
    pub threshold: f64,
    pub sampling: Sampling,
    /// Whether `v` lies in `V_σ^⊥`; `None` when the split is unavailable.
    pub v_in_dominant_complement: Option<bool>,
    pub bound_decays: bool,
}

impl DecayReport {
    pub fn distances(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.distance).collect()
    }

    /// `distance_j ≤ factor · α · bound_rhs_j` for every record.
    pub fn dominated(&self, factor: f64) -> bool {
        self.records.iter().all(|r| r.distance <= factor * self.alpha * r.bound_rhs)
    }
}

/// `E^j` in floating point, refusing entries too large to represent.
pub fn power_f64(e: &IntMatrix, j: usize) -> Result<Vec<Vec<f64>>> {
    e.require_square()?;
    let p = e.pow(j as u32);
    if p.max_abs_entry().bits() > MAX_ENTRY_BITS {
        return Err(Error::Overflow { step: j });
    }
    Ok(p.to_f64_rows())
}

/// Operator 2-norm via power iteration on `AᵀA` from every basis vector.
pub fn operator_norm(a: &[Vec<f64>]) -> f64 {
    let n = a.first().map_or(0, Vec::len);
    let at: Vec<Vec<f64>> = (0..n).map(|c| a.iter().map(|row| row[c]).collect()).collect();
    let mut best = 0f64;
    for start in 0..n {
        let mut x = vec![0.0; n];
        x[start] = 1.0;
        let mut est = 0.0;
        for _ in 0..200 {
            let y = mat_vec(&at, &mat_vec(a, &x));
            let ny = norm(&y);
            if ny == 0.0 {
                break;
            }
            est = ny;
            x = y.into_iter().map(|v| v / ny).collect();
        }
        best = best.max(est.sqrt());
    }
    best
}

fn check_inputs(patch: &ManifoldPatch, e: &IntMatrix, t0: &[Rational], v: &[f64]) -> Result<()> {
    let n = e.require_square()?;
    if patch.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: patch.ambient_dim() });
    }
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    if t0.len() != patch.param_dim() {
        return Err(Error::DimensionMismatch { expected: patch.param_dim(), found: t0.len() });
    }
    if !patch.contains_param(t0) {
        return Err(Error::Precondition("base parameter lies outside the patch domain".into()));
    }
    if norm(v) == 0.0 {
        return Err(Error::Precondition("direction v must be nonzero".into()));
    }
    Ok(())
}

/// `ρ(B(1, E^j x) ∩ ℓ(E^j x, E^j v), E^j(M))` with `x = patch(t0)`.
pub fn asymptotic_distance(
    e: &IntMatrix,
    patch: &ManifoldPatch,
    t0: &[Rational],
    v: &[f64],
    j: usize,
    sampling: &Sampling,
) -> Result<f64> {
    check_inputs(patch, e, t0, v)?;
    let a = power_f64(e, j)?;
    distance_for_power(&a, patch, t0, v, j, sampling)
}

fn distance_for_power(
    a: &[Vec<f64>],
    patch: &ManifoldPatch,
    t0: &[Rational],
    v: &[f64],
    j: usize,
    sampling: &Sampling,
) -> Result<f64> {
    let t0: Vec<f64> = t0.iter().map(to_f64).collect();
    let x = patch.eval(&t0);
    let av = mat_vec(a, v);
    let nav = norm(&av);
    if !nav.is_finite() || nav == 0.0 {
        return Err(Error::Overflow { step: j });
    }
    let u: Vec<f64> = av.iter().map(|c| c / nav).collect();
    // translated frame: E^j x sits at the origin
    let image = |t: &[f64]| -> Vec<f64> {
        let d: Vec<f64> = patch.eval(t).iter().zip(&x).map(|(p, q)| p - q).collect();
        mat_vec(a, &d)
    };
    let samples = adaptive_samples(patch, &t0, &image, sampling.patch_points);

    let s_count = sampling.segment_points.max(2);
    let dists: Vec<f64> = (0..s_count)
        .into_par_iter()
        .map(|i| {
            let s = -1.0 + 2.0 * i as f64 / (s_count - 1) as f64;
            let q: Vec<f64> = u.iter().map(|c| s * c).collect();
            let (t_best, _) = samples
                .iter()
                .map(|(t, p)| (t, sq_dist(p, &q)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("at least the base point is sampled");
            refine(patch, a, &image, &q, t_best.clone(), sampling.refine_iters)
        })
        .collect();
    Ok(dists.into_iter().fold(0.0, f64::max))
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn grid(lo: &[f64], hi: &[f64], per_dim: usize) -> Vec<Vec<f64>> {
    let k = lo.len();
    let mut out = Vec::with_capacity(per_dim.pow(k as u32));
    let mut idx = vec![0usize; k];
    loop {
        out.push(
            (0..k)
                .map(|d| lo[d] + (hi[d] - lo[d]) * idx[d] as f64 / (per_dim - 1) as f64)
                .collect(),
        );
        let mut d = 0;
        while d < k {
            idx[d] += 1;
            if idx[d] < per_dim {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
        if d == k {
            return out;
        }
    }
}

/// Grid samples over a parameter window that shrinks toward the part of the
/// patch mapped near `E^j x`, so the sample density follows the expansion.
fn adaptive_samples(
    patch: &ManifoldPatch,
    t0: &[f64],
    image: &(dyn Fn(&[f64]) -> Vec<f64> + Sync),
    budget: usize,
) -> Vec<(Vec<f64>, Vec<f64>)> {
    let k = patch.param_dim();
    let per_dim = ((budget as f64).powf(1.0 / k as f64).round() as usize).max(3);
    let dom = patch.domain_f64();
    let mut lo: Vec<f64> = dom.iter().map(|d| d.0).collect();
    let mut hi: Vec<f64> = dom.iter().map(|d| d.1).collect();
    let mut samples = Vec::new();
    for _ in 0..WINDOW_ROUNDS {
        samples = grid(&lo, &hi, per_dim)
            .into_par_iter()
            .map(|t| {
                let p = image(&t);
                (t, p)
            })
            .collect::<Vec<_>>();
        samples.push((t0.to_vec(), vec![0.0; patch.ambient_dim()]));
        let inside: Vec<&Vec<f64>> =
            samples.iter().filter(|(_, p)| norm(p) <= WINDOW_RADIUS).map(|(t, _)| t).collect();
        if inside.len() * 4 >= samples.len() {
            break;
        }
        let mut shrunk = false;
        let (mut nlo, mut nhi) = (lo.clone(), hi.clone());
        for d in 0..k {
            let step = (hi[d] - lo[d]) / (per_dim - 1) as f64;
            let a = inside.iter().map(|t| t[d]).fold(t0[d], f64::min) - step;
            let b = inside.iter().map(|t| t[d]).fold(t0[d], f64::max) + step;
            nlo[d] = a.max(dom[d].0);
            nhi[d] = b.min(dom[d].1);
            if nhi[d] - nlo[d] < 0.9 * (hi[d] - lo[d]) {
                shrunk = true;
            }
        }
        if !shrunk || nlo.iter().zip(&nhi).any(|(a, b)| b - a <= f64::EPSILON * a.abs().max(1.0)) {
            break;
        }
        lo = nlo;
        hi = nhi;
    }
    samples
}

/// Damped Gauss-Newton on `|E^j (patch(t) - x) - q|²`, kept inside the domain.
fn refine(
    patch: &ManifoldPatch,
    a: &[Vec<f64>],
    image: &(dyn Fn(&[f64]) -> Vec<f64> + Sync),
    q: &[f64],
    mut t: Vec<f64>,
    iters: usize,
) -> f64 {
    let k = patch.param_dim();
    let dom = patch.domain_f64();
    let residual = |t: &[f64]| -> Vec<f64> { image(t).iter().zip(q).map(|(p, c)| p - c).collect() };
    let mut r = residual(&t);
    let mut f = norm(&r);
    let mut lambda = 1e-3;
    for _ in 0..iters {
        let jac = patch.jacobian(&t);
        // columns of E^j J
        let cols: Vec<Vec<f64>> = (0..k).map(|c| mat_vec(a, &jac.iter().map(|row| row[c]).collect::<Vec<_>>())).collect();
        let mut h = vec![vec![0.0; k]; k];
        let mut g = vec![0.0; k];
        for i in 0..k {
            g[i] = cols[i].iter().zip(&r).map(|(x, y)| x * y).sum();
            for l in 0..k {
                h[i][l] = cols[i].iter().zip(&cols[l]).map(|(x, y)| x * y).sum();
            }
        }
        let mut improved = false;
        for _ in 0..12 {
            let mut m = h.clone();
            for i in 0..k {
                m[i][i] += lambda * h[i][i].max(1e-300);
            }
            let Some(delta) = solve(m, g.iter().map(|x| -x).collect()) else {
                lambda *= 10.0;
                continue;
            };
            let cand: Vec<f64> = (0..k).map(|i| (t[i] + delta[i]).clamp(dom[i].0, dom[i].1)).collect();
            let rc = residual(&cand);
            let fc = norm(&rc);
            if fc < f {
                t = cand;
                r = rc;
                f = fc;
                lambda = (lambda / 3.0).max(1e-12);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved || f == 0.0 {
            break;
        }
    }
    f
}

/// Gaussian elimination with partial pivoting for the small normal equations.
fn solve(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let k = b.len();
    for c in 0..k {
        let p = (c..k).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[p][c] == 0.0 || !m[p][c].is_finite() {
            return None;
        }
        m.swap(c, p);
        b.swap(c, p);
        for r in c + 1..k {
            let f = m[r][c] / m[c][c];
            for cc in c..k {
                m[r][cc] -= f * m[c][cc];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; k];
    for r in (0..k).rev() {
        let s: f64 = (r + 1..k).map(|c| m[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / m[r][r];
    }
    Some(x)
}

/// Records the distance and the flat bound for `j = 0..=j_max`.
pub fn verify_flat_bound(
    e: &IntMatrix,
    patch: &ManifoldPatch,
    t0: &[Rational],
    v: &[f64],
    j_max: usize,
    sampling: &Sampling,
    threshold: f64,
) -> Result<DecayReport> {
    check_inputs(patch, e, t0, v)?;
    let nv2 = norm(v).powi(2);
    let mut records = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let a = power_f64(e, j)?;
        let distance = distance_for_power(&a, patch, t0, v, j, sampling)?;
        let bound_rhs = operator_norm(&a) * nv2 / norm(&mat_vec(&a, v)).powi(2);
        if !bound_rhs.is_finite() {
            return Err(Error::Overflow { step: j });
        }
        let ratio = if bound_rhs > 0.0 { distance / bound_rhs } else { f64::INFINITY };
        records.push(DecayRecord { j, distance, bound_rhs, ratio });
    }

    let (num, den) = records
        .iter()
        .filter(|r| r.bound_rhs > 0.0)
        .fold((0.0, 0.0), |(n, d), r| (n + r.distance * r.bound_rhs, d + r.bound_rhs * r.bound_rhs));
    let alpha = if den > 0.0 { num / den } else { 0.0 };

    let tail_small = records.len() >= 3 && records[records.len() - 3..].iter().all(|r| r.distance < threshold);
    let half = records.len() / 2;
    let monotone = records[half..]
        .windows(2)
        .all(|w| w[1].distance <= w[0].distance * (1.0 + 1e-9) + 1e-15);
    let bound_decays = records.last().map(|r| r.bound_rhs) < records.first().map(|r| r.bound_rhs);

    let v_in_dominant_complement = spectral_data(e)
        .and_then(|data| dominant_complement(e, &data))
        .ok()
        .map(|w| {
            let q = orthonormalize(&w.basis_f64());
            distance_to_span(&q, v) <= 1e-9 * norm(v)
        });
    if v_in_dominant_complement == Some(false) && j_max >= 8 && !bound_decays {
        return Err(Error::Invariant("flat bound does not decay for a direction outside the dominant complement".into()));
    }

    Ok(DecayReport {
        records,
        alpha,
        decayed: tail_small && monotone,
        threshold,
        sampling: *sampling,
        v_in_dominant_complement,
        bound_decays,
    })
}
