//! Row-style Hermite normal form.
//!
//! Convention: echelon profile (pivot columns strictly increase going down),
//! positive pivots, entries above each pivot reduced into `[0, pivot)`.
//! Zero rows sink to the bottom. This fixes a unique basis for every lattice,
//! which is what subgroup equality and hashing rely on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Returns `(h, u)` with `u` unimodular and `u * m = h` in Hermite form.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, u) = hermite_rows(&m.to_rows(), m.cols());
    (
        IntMatrix::from_rows(h).expect("same shape as input"),
        IntMatrix::from_rows(u).expect("square transform"),
    )
}

/// Hermite form of a (possibly empty) list of rows of length `n`, with the
/// transform. The output has as many rows as the input.
pub fn hermite_rows(rows: &[Vec<BigInt>], n: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let k = rows.len();
    let mut h: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut r = 0;
    for c in 0..n {
        if r == k {
            break;
        }
        loop {
            let best = (r..k)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&a, &b| h[a][c].abs().cmp(&h[b][c].abs()));
            let Some(p) = best else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut clean = true;
            for i in r + 1..k {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                sub_multiple(&mut h, i, r, &q);
                sub_multiple(&mut u, i, r, &q);
                clean &= h[i][c].is_zero();
            }
            if clean {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate(&mut h[r]);
            negate(&mut u[r]);
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                sub_multiple(&mut h, i, r, &q);
                sub_multiple(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Canonical basis of the lattice spanned by `rows`: nonzero Hermite rows.
pub fn canonical_basis(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let (h, _) = hermite_rows(rows, n);
    h.into_iter().filter(|row| row.iter().any(|x| !x.is_zero())).collect()
}

fn sub_multiple(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x -= q * y;
    }
}

fn negate(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        *x = -std::mem::take(x);
    }
}

/// Whether `rows` (already nonzero Hermite rows) are in the canonical form.
pub fn is_hermite(rows: &[Vec<BigInt>]) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut pivots = Vec::new();
    for row in rows {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if last_pivot.is_some_and(|lp| p <= lp) || !row[p].is_positive() {
            return false;
        }
        last_pivot = Some(p);
        pivots.push(p);
    }
    for (i, &p) in pivots.iter().enumerate() {
        for above in &rows[..i] {
            if above[p].is_negative() || above[p] >= rows[i][p] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn identity_unchanged() {
        let (h, u) = hermite_normal_form(&IntMatrix::identity(3));
        assert_eq!(h, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));
    }

    #[test]
    fn unimodular_rows_reduce_to_identity() {
        let m = IntMatrix::from_i64(&[[2, -1], [1, 0]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u.mul(&m), h);
        assert!(u.is_unimodular());
    }

    #[test]
    fn already_canonical() {
        assert_eq!(canonical_basis(&rows(&[&[0, 2]]), 2), rows(&[&[0, 2]]));
        assert_eq!(canonical_basis(&rows(&[&[0, -2]]), 2), rows(&[&[0, 2]]));
    }

    #[test]
    fn reduces_above_pivots() {
        let b = canonical_basis(&rows(&[&[1, 7], &[0, 3], &[2, 2]]), 2);
        assert!(is_hermite(&b));
        // lattice spanned by (1,7),(0,3),(2,2): contains (0, 12) and (0,3) -> det 1*?
        assert_eq!(b, rows(&[&[1, 1], &[0, 3]]));
    }

    #[test]
    fn transform_is_unimodular_with_zero_rows() {
        let m = IntMatrix::from_i64(&[[2, 4, 6], [1, 2, 3], [0, 0, 5]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(u.mul(&m), h);
        assert!(u.is_unimodular());
        assert!(h.row(2).iter().all(Zero::is_zero));
    }
}
