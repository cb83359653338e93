//! Sampling check of `Z_h ⊆ E(Z_h)` for real trigonometric polynomials.

use std::f64::consts::TAU;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::num::to_f64;
use crate::torus::TrigPoly;

const MAX_GRID: usize = 50_000_000;
const NEWTON_STEPS: usize = 80;

#[derive(Clone, Debug)]
pub struct ZeroSampleReport {
    pub resolution: usize,
    pub tolerance: f64,
    pub grid_points: usize,
    /// Grid local minima of `|h|` below the grid-spacing bound.
    pub candidates: usize,
    /// Candidates refined to `|h| < tolerance`.
    pub zero_samples: usize,
    pub violations: usize,
    pub violation_rate: f64,
    /// `|det E|`, the number of preimage sheets searched.
    pub sheets: usize,
    pub first_violation: Option<Vec<f64>>,
}

/// Representatives of `Z^n / E Z^n`: with `U E V = D`, the vectors `U^{-1} a`
/// for `0 <= a_i < d_i`.
pub fn lattice_coset_reps(e: &IntMatrix) -> Result<Vec<Vec<f64>>> {
    let n = e.require_square()?;
    let snf = smith_normal_form(e);
    if snf.rank() < n {
        return Err(Error::Precondition("E is singular".into()));
    }
    let u_inv = snf.u.to_rational().inverse().expect("unimodular");
    let d: Vec<u64> = snf
        .invariant_factors
        .iter()
        .map(|x| x.to_u64().filter(|&v| v <= 1_000_000))
        .collect::<Option<_>>()
        .ok_or(Error::BudgetExceeded { what: "preimage sheets", budget: 1_000_000 })?;
    let total: u64 = d.iter().product();
    if total > 1_000_000 {
        return Err(Error::BudgetExceeded { what: "preimage sheets", budget: 1_000_000 });
    }
    let u_inv: Vec<Vec<f64>> = (0..n).map(|i| u_inv.row(i).iter().map(to_f64).collect()).collect();
    let mut reps = Vec::with_capacity(total as usize);
    let mut a = vec![0u64; n];
    loop {
        reps.push(u_inv.iter().map(|row| row.iter().zip(&a).map(|(x, &ai)| x * ai as f64).sum()).collect());
        let mut k = 0;
        while k < n {
            a[k] += 1;
            if a[k] < d[k] {
                break;
            }
            a[k] = 0;
            k += 1;
        }
        if k == n {
            return Ok(reps);
        }
    }
}

/// Minimum-norm Newton steps toward `h = 0`.
fn newton(h: &TrigPoly, mut x: Vec<f64>, tol: f64) -> (Vec<f64>, f64) {
    let mut v = h.value_f64(&x);
    for _ in 0..NEWTON_STEPS {
        if v.abs() < tol * 1e-3 {
            break;
        }
        let g = h.gradient_f64(&x);
        let g2: f64 = g.iter().map(|c| c * c).sum();
        if g2 == 0.0 {
            break;
        }
        let cand: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - v * gi / g2).collect();
        let vc = h.value_f64(&cand);
        if vc.abs() >= v.abs() {
            break;
        }
        x = cand;
        v = vc;
    }
    (x, v)
}

fn torus_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = (x - y) - (x - y).round();
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

pub fn sample_zero_set_inclusion(h: &TrigPoly, e: &IntMatrix, resolution: usize, tolerance: f64) -> Result<ZeroSampleReport> {
    let n = e.require_square()?;
    if h.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: h.ambient_dim() });
    }
    if !h.is_real() {
        return Err(Error::Precondition("h must be real valued".into()));
    }
    if resolution < 2 {
        return Err(Error::Precondition("resolution must be at least 2".into()));
    }
    let grid_points = resolution
        .checked_pow(n as u32)
        .filter(|&g| g <= MAX_GRID)
        .ok_or(Error::BudgetExceeded { what: "zero-set grid", budget: MAX_GRID })?;
    let reps = lattice_coset_reps(e)?;
    let a = e.to_f64_rows();
    let a_inv: Vec<Vec<f64>> = {
        let inv = e.to_rational().inverse().expect("nonsingular");
        (0..n).map(|i| inv.row(i).iter().map(to_f64).collect()).collect()
    };

    // a zero inside a grid cell keeps the nearest grid value below this bound
    let lipschitz: f64 = h
        .terms()
        .iter()
        .map(|t| {
            let c = to_f64(&t.re).hypot(to_f64(&t.im));
            c * t.freq.iter().map(|l| l.to_f64().unwrap_or(f64::INFINITY).abs()).sum::<f64>()
        })
        .sum();
    let cell_bound = TAU * lipschitz / resolution as f64;

    let point = |mut idx: usize| -> Vec<f64> {
        (0..n)
            .map(|_| {
                let c = idx % resolution;
                idx /= resolution;
                c as f64 / resolution as f64
            })
            .collect()
    };
    let values: Vec<f64> = (0..grid_points).into_par_iter().map(|i| h.value_f64(&point(i)).abs()).collect();
    let candidates: Vec<usize> = (0..grid_points)
        .into_par_iter()
        .filter(|&i| {
            let v = values[i];
            if v > cell_bound.max(tolerance) {
                return false;
            }
            let mut stride = 1;
            (0..n).all(|_| {
                let c = (i / stride) % resolution;
                let up = i - c * stride + ((c + 1) % resolution) * stride;
                let down = i - c * stride + ((c + resolution - 1) % resolution) * stride;
                stride *= resolution;
                v <= values[up] && v <= values[down]
            })
        })
        .collect();

    let outcomes: Vec<Option<(bool, Vec<f64>)>> = candidates
        .par_iter()
        .map(|&i| {
            let (z, v) = newton(h, point(i), tolerance);
            if v.abs() >= tolerance {
                return None;
            }
            let found = reps.iter().any(|r| {
                let shifted: Vec<f64> = z.iter().zip(r).map(|(zi, ri)| zi + ri).collect();
                let pre: Vec<f64> = a_inv.iter().map(|row| row.iter().zip(&shifted).map(|(p, q)| p * q).sum()).collect();
                if h.value_f64(&pre).abs() < tolerance {
                    return true;
                }
                let (w, vw) = newton(h, pre, tolerance);
                let ew: Vec<f64> = a.iter().map(|row| row.iter().zip(&w).map(|(p, q)| p * q).sum()).collect();
                vw.abs() < tolerance && torus_dist(&ew, &z) < tolerance.sqrt()
            });
            Some((found, z))
        })
        .collect();

    let zero_samples = outcomes.iter().flatten().count();
    let first_violation = outcomes.iter().flatten().find(|(ok, _)| !ok).map(|(_, z)| z.clone());
    let violations = outcomes.iter().flatten().filter(|(ok, _)| !ok).count();
    Ok(ZeroSampleReport {
        resolution,
        tolerance,
        grid_points,
        candidates: candidates.len(),
        zero_samples,
        violations,
        violation_rate: if zero_samples == 0 { 0.0 } else { violations as f64 / zero_samples as f64 },
        sheets: reps.len(),
        first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;
    use crate::torus::{coset_to_trig_poly, ClosedSubgroup, TorusPoint};

    #[test]
    fn coset_reps_count_degree() {
        assert_eq!(lattice_coset_reps(&IntMatrix::diagonal(&[2, 3])).unwrap().len(), 6);
        assert_eq!(lattice_coset_reps(&IntMatrix::from_i64(&[[0, -1], [2, 0]])).unwrap().len(), 2);
    }

    #[test]
    fn invariant_axis_has_no_violations() {
        let h = coset_to_trig_poly(&ClosedSubgroup::axis(2, 1), &TorusPoint::zero(2)).unwrap();
        let r = sample_zero_set_inclusion(&h, &IntMatrix::diagonal(&[2, 3]), 128, 1e-6).unwrap();
        assert!(r.zero_samples > 0);
        assert_eq!(r.violations, 0);
        assert_eq!(r.sheets, 6);
    }

    #[test]
    fn constant_has_empty_zero_set() {
        let h = TrigPoly::constant(2, rat(1, 1));
        let r = sample_zero_set_inclusion(&h, &IntMatrix::diagonal(&[2, 3]), 64, 1e-6).unwrap();
        assert_eq!((r.zero_samples, r.violation_rate), (0, 0.0));
    }

    #[test]
    fn shifted_line_violates() {
        let y = TorusPoint::from_fractions(&[(1, 3), (0, 1)]);
        let h = coset_to_trig_poly(&ClosedSubgroup::axis(2, 1), &y).unwrap();
        let r = sample_zero_set_inclusion(&h, &IntMatrix::diagonal(&[2, 3]), 128, 1e-6).unwrap();
        assert!(r.zero_samples > 0);
        assert!(r.violation_rate > 0.5);
    }
}
