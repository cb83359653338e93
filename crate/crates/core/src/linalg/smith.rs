//! Smith normal form with unimodular transforms.
//!
//! The diagonal carries the invariant factors `s_1 | s_2 | ... | s_r`.
//! The gcd-of-minors quantities `d_k = s_1 * ... * s_k` are exposed
//! separately as [`SmithDecomposition::elementary_divisors`], and can be
//! recomputed from scratch with [`elementary_divisors_by_minors`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// Left unimodular factor, `rows x rows`.
    pub u: IntMatrix,
    /// Right unimodular factor, `cols x cols`.
    pub v: IntMatrix,
    /// `u * m * v`, diagonal.
    pub d: IntMatrix,
    /// Nonzero diagonal entries of `d`, positive, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    /// Running products of the invariant factors.
    pub elementary_divisors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    'pivots: for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_entry(&d, t) else {
                break 'pivots;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = d[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    d.add_row_multiple(i, t, &-&q);
                    u.add_row_multiple(i, t, &-&q);
                }
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = d[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    d.add_col_multiple(j, t, &-&q);
                    v.add_col_multiple(j, t, &-&q);
                }
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide everything still to be diagonalized
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    let invariant_factors: Vec<BigInt> = (0..rows.min(cols))
        .map(|i| d[(i, i)].clone())
        .take_while(|x| !x.is_zero())
        .collect();
    let elementary_divisors = invariant_factors
        .iter()
        .scan(BigInt::one(), |acc, s| {
            *acc *= s;
            Some(acc.clone())
        })
        .collect();
    SmithDecomposition { u, v, d, invariant_factors, elementary_divisors }
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let a = d[(i, j)].abs();
            if a.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| &a < b) {
                let one = a.is_one();
                best = Some((i, j, a));
                if one {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Elementary divisors via the fast path (products of invariant factors).
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(m).elementary_divisors
}

/// Elementary divisors straight from the definition: `d_k` is the gcd of all
/// `k x k` minors. Exponential in the dimension; meant as an oracle.
pub fn elementary_divisors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in combinations(m.rows(), k) {
            for cs in combinations(m.cols(), k) {
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[(i, j)].clone()).collect())
                    .collect();
                let minor = IntMatrix::from_rows(sub)
                    .and_then(|s| s.det())
                    .expect("square minor");
                g = g.gcd(&minor);
                if g.is_one() {
                    break;
                }
            }
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}
