//! Largest rational subspace inside a numerically given subspace, found by
//! enumerating integer vectors in a box.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::linalg::Lattice;
use crate::num::Rational;
use crate::spectral::split::SubspaceDescription;

pub const DEFAULT_HEIGHT: u32 = 25;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Largest box the enumeration will visit.
const MAX_BOX: f64 = 2.0e7;

#[derive(Clone, Debug)]
pub struct RationalPart {
    pub subspace: SubspaceDescription,
    pub height_used: u32,
    pub candidates: usize,
}

/// Orthonormal basis of the column span (modified Gram-Schmidt, drops
/// numerically dependent columns).
pub fn orthonormalize(cols: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for c in cols {
        let mut v = c.clone();
        for q in &out {
            let d: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
            for (x, y) in v.iter_mut().zip(q) {
                *x -= d * y;
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            out.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    out
}

/// Euclidean distance from `v` to the span of the orthonormal columns `q`.
pub fn distance_to_span(q: &[Vec<f64>], v: &[f64]) -> f64 {
    let mut r = v.to_vec();
    for b in q {
        let d: f64 = r.iter().zip(b).map(|(a, c)| a * c).sum();
        for (x, y) in r.iter_mut().zip(b) {
            *x -= d * y;
        }
    }
    r.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Span of the primitive integer vectors of sup-norm at most `height` within
/// `tol` of the span of `basis`, returned as a saturated lattice basis.
pub fn rational_part(basis: &[Vec<f64>], height: u32, tol: f64) -> RationalPart {
    let n = basis.first().map_or(0, Vec::len);
    let q = orthonormalize(basis);
    let k = q.len();
    let mut h = height;
    while h > 1 && (2.0 * h as f64 + 1.0).powi(n as i32) > MAX_BOX {
        h -= 1;
    }
    if k == 0 || n == 0 {
        return RationalPart { subspace: empty(n), height_used: h, candidates: 0 };
    }
    let hi = h as i64;
    let mut found: Vec<(i64, Vec<i64>)> = (0..=hi)
        .into_par_iter()
        .flat_map_iter(|first| {
            let q = &q;
            Odometer::new(n - 1, hi).filter_map(move |rest| {
                let mut v = Vec::with_capacity(n);
                v.push(first);
                v.extend(rest);
                if !canonical_sign(&v) || v.iter().fold(0i64, |g, x| g.gcd(x)) != 1 {
                    return None;
                }
                let vf: Vec<f64> = v.iter().map(|&x| x as f64).collect();
                (distance_to_span(q, &vf) <= tol).then(|| (v.iter().map(|x| x * x).sum(), v))
            })
        })
        .collect();
    found.sort();
    let candidates = found.len();
    let mut chosen: Vec<Vec<BigInt>> = Vec::new();
    for (_, v) in found {
        if chosen.len() == k {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(v.iter().map(|&x| BigInt::from(x)).collect());
        if crate::linalg::matrix::rank_of_rows(&trial, n) == trial.len() {
            chosen = trial;
        }
    }
    let lattice = Lattice::new(n, &chosen).expect("length n").saturate();
    let basis = lattice
        .basis()
        .iter()
        .map(|row| row.iter().cloned().map(Rational::from_integer).collect())
        .collect();
    RationalPart {
        subspace: SubspaceDescription { n, exact: false, basis, g: None },
        height_used: h,
        candidates,
    }
}

fn empty(n: usize) -> SubspaceDescription {
    SubspaceDescription { n, exact: false, basis: Vec::new(), g: None }
}

/// First nonzero entry positive.
fn canonical_sign(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// All vectors in `[-h, h]^len`.
struct Odometer {
    cur: Vec<i64>,
    h: i64,
    done: bool,
}

impl Odometer {
    fn new(len: usize, h: i64) -> Self {
        Self { cur: vec![-h; len], h, done: false }
    }
}

impl Iterator for Odometer {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let mut i = 0;
        loop {
            if i == self.cur.len() {
                self.done = true;
                break;
            }
            if self.cur[i] < self.h {
                self.cur[i] += 1;
                break;
            }
            self.cur[i] = -self.h;
            i += 1;
        }
        Some(out)
    }
}
