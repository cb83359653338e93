//! Sublattices of `Z^n` held in canonical Hermite form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::hermite::{canonical_basis, hermite_rows};
use super::matrix::{rank_of_rows, IntMatrix};
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

/// A sublattice of `Z^n`. The basis rows are the nonzero rows of the Hermite
/// form, so two lattices are equal iff their bases are entrywise equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    n: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn new(n: usize, generators: &[Vec<BigInt>]) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        Ok(Self { n, basis: canonical_basis(generators, n) })
    }

    pub fn from_i64<R: AsRef<[i64]>>(n: usize, generators: &[R]) -> Self {
        let g: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::new(n, &g).expect("literal generators must have length n")
    }

    pub fn zero(n: usize) -> Self {
        Self { n, basis: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        Self { n, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Exact membership by forward reduction against the echelon basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.n);
        let mut w = v.to_vec();
        for row in &self.basis {
            let p = pivot(row);
            let (q, r) = w[p].div_mod_floor(&row[p]);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (x, y) in w.iter_mut().zip(row) {
                    *x -= &q * y;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.n, other.n);
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Self { n: self.n, basis: canonical_basis(&gens, self.n) }
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.n, other.n);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.n);
        }
        let a = self.basis.len();
        let mut stacked = self.basis.clone();
        stacked.extend(other.basis.iter().cloned());
        let (h, u) = hermite_rows(&stacked, self.n);
        let gens: Vec<Vec<BigInt>> = h
            .iter()
            .zip(&u)
            .filter(|(row, _)| row.iter().all(Zero::is_zero))
            .map(|(_, coeffs)| combine(&coeffs[..a], &self.basis, self.n))
            .collect();
        Self { n: self.n, basis: canonical_basis(&gens, self.n) }
    }

    /// `span_Q(L) ∩ Z^n`.
    pub fn saturate(&self) -> Lattice {
        let ortho = integer_kernel_rows(&self.basis, self.n);
        Self { n: self.n, basis: integer_kernel_rows(&ortho, self.n) }
    }

    pub fn is_saturated(&self) -> bool {
        self.invariant_factors().iter().all(One::is_one)
    }

    /// Invariant factors of the basis matrix; all ones iff saturated.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let m = IntMatrix::from_rows(self.basis.clone()).expect("nonempty basis");
        smith_normal_form(&m).invariant_factors
    }

    /// Image under `v -> a v`.
    pub fn image(&self, a: &IntMatrix) -> Lattice {
        let gens: Vec<Vec<BigInt>> = self.basis.iter().map(|b| a.mul_vec(b)).collect();
        Self { n: a.rows(), basis: canonical_basis(&gens, a.rows()) }
    }

    /// `{ l in Z^n : a l in self }`.
    pub fn preimage(&self, a: &IntMatrix) -> Lattice {
        let n = a.cols();
        let r = self.basis.len();
        // kernel of [a | -B^T]
        let rows: Vec<Vec<BigInt>> = (0..a.rows())
            .map(|i| {
                let mut row = a.row(i).to_vec();
                row.extend(self.basis.iter().map(|b| -&b[i]));
                row
            })
            .collect();
        let kernel = integer_kernel_rows(&rows, n + r);
        let gens: Vec<Vec<BigInt>> = kernel.into_iter().map(|mut v| {
            v.truncate(n);
            v
        }).collect();
        Self { n, basis: canonical_basis(&gens, n) }
    }

    /// Rank over the rationals of the span of this lattice together with `other`.
    pub fn joint_rank(&self, other: &Lattice) -> usize {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        rank_of_rows(&rows, self.n)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| format!("({})", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

fn pivot(row: &[BigInt]) -> usize {
    row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero")
}

fn combine(coeffs: &[BigInt], basis: &[Vec<BigInt>], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

/// `{ x in Z^m : M x = 0 }` for `M` given as rows of length `m` (any number
/// of rows, including none). Returned in canonical Hermite form.
pub fn integer_kernel_rows(rows: &[Vec<BigInt>], m: usize) -> Vec<Vec<BigInt>> {
    let r = rows.len();
    let transposed: Vec<Vec<BigInt>> = (0..m)
        .map(|j| (0..r).map(|i| rows[i][j].clone()).collect())
        .collect();
    let (h, u) = hermite_rows(&transposed, r);
    let gens: Vec<Vec<BigInt>> = h
        .iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(Zero::is_zero))
        .map(|(_, x)| x)
        .collect();
    canonical_basis(&gens, m)
}

pub fn integer_kernel(m: &IntMatrix) -> Lattice {
    Lattice { n: m.cols(), basis: integer_kernel_rows(&m.to_rows(), m.cols()) }
}

pub fn lattice_intersect(a: &Lattice, b: &Lattice) -> Lattice {
    a.intersect(b)
}

pub fn lattice_sum(a: &Lattice, b: &Lattice) -> Lattice {
    a.sum(b)
}

pub fn lattice_saturate(a: &Lattice) -> Lattice {
    a.saturate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturation_extracts_primitive_vector() {
        let l = Lattice::from_i64(2, &[[0, 2]]);
        assert_eq!(l.saturate(), Lattice::from_i64(2, &[[0, 1]]));
        assert!(!l.is_saturated());
        assert!(l.saturate().is_saturated());
    }

    #[test]
    fn axes_intersect_trivially() {
        let a = Lattice::from_i64(2, &[[1, 0]]);
        let b = Lattice::from_i64(2, &[[0, 1]]);
        assert_eq!(a.intersect(&b), Lattice::zero(2));
        assert_eq!(a.sum(&b), Lattice::full(2));
    }

    #[test]
    fn kernel_of_row_vector() {
        let k = integer_kernel(&IntMatrix::from_i64(&[[1, 2]]));
        assert_eq!(k.rank(), 1);
        let v = &k.basis()[0];
        assert!(v == &vec![BigInt::from(2), BigInt::from(-1)] || v == &vec![BigInt::from(-2), BigInt::from(1)]);
    }

    #[test]
    fn intersection_of_multiples() {
        let a = Lattice::from_i64(1, &[[4]]);
        let b = Lattice::from_i64(1, &[[6]]);
        assert_eq!(a.intersect(&b), Lattice::from_i64(1, &[[12]]));
        assert_eq!(a.sum(&b), Lattice::from_i64(1, &[[2]]));
    }

    #[test]
    fn membership() {
        let l = Lattice::from_i64(2, &[[1, 1], [0, 3]]);
        assert!(l.contains(&[BigInt::from(2), BigInt::from(5)]));
        assert!(!l.contains(&[BigInt::from(2), BigInt::from(3)]));
    }

    #[test]
    fn preimage_and_image() {
        let e = IntMatrix::from_i64(&[[2, 0], [0, 3]]);
        let l = Lattice::from_i64(2, &[[1, 0]]);
        assert_eq!(l.image(&e), Lattice::from_i64(2, &[[2, 0]]));
        assert_eq!(Lattice::from_i64(2, &[[2, 0]]).preimage(&e), l);
        // (0,1) lattice pulled back by diag(2,3): 3*l2 in Z(0,1) for any l2 -> l1 = 0
        assert_eq!(Lattice::from_i64(2, &[[0, 1]]).preimage(&e), Lattice::from_i64(2, &[[0, 1]]));
    }

    #[test]
    fn kernel_of_empty_is_everything() {
        assert_eq!(integer_kernel_rows(&[], 3).len(), 3);
    }
}
