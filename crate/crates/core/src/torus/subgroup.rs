//! Closed subgroups of the torus, stored by their annihilator lattice.
//!
//! A closed subgroup `G ⊆ T^n` is determined by `G^⊥ = { l ∈ Z^n : l·x ∈ Z
//! for all x ∈ G }`, and every subgroup of `Z^n` arises this way. Sums and
//! intersections swap under this correspondence, inclusion reverses, and `G`
//! is connected exactly when `G^⊥` is saturated.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::lattice::integer_kernel_rows;
use crate::linalg::{smith_normal_form, IntMatrix, Lattice, RatMatrix};
use crate::num::{dot_int_rat, lcm_denominators, Rational};
use crate::torus::point::TorusPoint;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedSubgroup {
    dual: Lattice,
    connected: bool,
}

impl ClosedSubgroup {
    pub fn from_lattice(dual: Lattice) -> Self {
        let connected = dual.is_saturated();
        Self { dual, connected }
    }

    pub fn from_dual(n: usize, generators: &[Vec<BigInt>]) -> Result<Self> {
        Ok(Self::from_lattice(Lattice::new(n, generators)?))
    }

    pub fn from_dual_i64<R: AsRef<[i64]>>(n: usize, generators: &[R]) -> Self {
        Self::from_lattice(Lattice::from_i64(n, generators))
    }

    /// The whole torus `T^n`.
    pub fn full(n: usize) -> Self {
        Self { dual: Lattice::zero(n), connected: true }
    }

    /// The trivial subgroup `{0}`.
    pub fn trivial(n: usize) -> Self {
        Self { dual: Lattice::full(n), connected: true }
    }

    /// `π_n(V)` for the rational subspace `V` spanned by `columns`.
    pub fn from_rational_subspace(n: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let mut ints = Vec::with_capacity(columns.len());
        for c in columns {
            if c.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: c.len() });
            }
            let den = lcm_denominators(c);
            ints.push(
                c.iter()
                    .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
                    .collect::<Vec<BigInt>>(),
            );
        }
        if crate::linalg::matrix::rank_of_rows(&ints, n) != ints.len() {
            return Err(Error::DependentColumns);
        }
        let dual = integer_kernel_rows(&ints, n);
        Ok(Self { dual: Lattice::new(n, &dual)?, connected: true })
    }

    /// Closure of the image of the axis spanned by `e_i`.
    pub fn axis(n: usize, i: usize) -> Self {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        Self::from_rational_subspace(n, &[v]).expect("unit vector")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dual.ambient_dim()
    }

    pub fn dual(&self) -> &Lattice {
        &self.dual
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim() - self.dual.rank()
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn is_full(&self) -> bool {
        self.dual.is_zero()
    }

    pub fn is_trivial(&self) -> bool {
        self.dual == Lattice::full(self.ambient_dim())
    }

    /// Identity component; its annihilator is the saturation of `G^⊥`.
    pub fn connected_component(&self) -> Self {
        if self.connected {
            return self.clone();
        }
        Self { dual: self.dual.saturate(), connected: true }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ambient_dim() == other.ambient_dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: other.ambient_dim() })
        }
    }

    /// `(G + H)^⊥ = G^⊥ ∩ H^⊥`
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_lattice(self.dual.intersect(&other.dual)))
    }

    /// `(G ∩ H)^⊥ = G^⊥ + H^⊥`
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_lattice(self.dual.sum(&other.dual)))
    }

    /// `G ⊇ H` iff `G^⊥ ⊆ H^⊥`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.dual.is_sublattice_of(&other.dual))
    }

    /// Exact character test: `x ∈ G` iff `l·x ∈ Z` for every dual generator.
    pub fn contains_point(&self, x: &TorusPoint) -> bool {
        self.dual
            .basis()
            .iter()
            .all(|l| dot_int_rat(l, x.coords()).is_integer())
    }

    /// `V ∩ Z^n` where `π_n(V)` is the identity component.
    pub fn spanning_lattice(&self) -> Lattice {
        let n = self.ambient_dim();
        Lattice::new(n, &integer_kernel_rows(self.dual.basis(), n)).expect("kernel vectors have length n")
    }

    /// A complement `H` with `G ∩ H = {0}` and `G + H = T^n`, built from the
    /// Smith decomposition of a basis matrix of `V = π_n^{-1}(G)`.
    pub fn complement(&self) -> Result<Self> {
        if !self.connected {
            return Err(Error::NotConnected);
        }
        let n = self.ambient_dim();
        let span = self.spanning_lattice();
        let m = span.rank();
        if m == 0 {
            return Ok(Self::full(n));
        }
        if m == n {
            return Ok(Self::trivial(n));
        }
        // columns of M span V
        let cols = IntMatrix::from_rows(span.basis().to_vec())?.transpose();
        let snf = smith_normal_form(&cols);
        let u_inv = snf.u.to_rational().inverse().expect("unimodular");
        let w: Vec<Vec<Rational>> = (m..n).map(|j| u_inv.column(j)).collect();
        Self::from_rational_subspace(n, &w)
    }

    /// An element of `G` addressed by torsion indices and continuous parameters.
    ///
    /// With `U B V = D` the Smith form of the dual basis `B`, the group is
    /// `{ V w : w_i ∈ (1/s_i) Z for i < rank, w_i free otherwise }`. `torsion[i]`
    /// selects `w_i = torsion[i] / s_i` and `params` fill the free coordinates.
    pub fn element(&self, torsion: &[BigInt], params: &[Rational]) -> TorusPoint {
        let n = self.ambient_dim();
        let r = self.dual.rank();
        assert_eq!(params.len(), n - r, "one parameter per dimension of G");
        if r == 0 {
            return TorusPoint::new(params.to_vec());
        }
        let b = IntMatrix::from_rows(self.dual.basis().to_vec()).expect("nonempty");
        let snf = smith_normal_form(&b);
        let mut w = Vec::with_capacity(n);
        for (i, s) in snf.invariant_factors.iter().enumerate() {
            let a = torsion.get(i).cloned().unwrap_or_default();
            w.push(Rational::new(a, s.clone()));
        }
        w.extend(params.iter().cloned());
        TorusPoint::new(snf.v.mul_rat_vec(&w))
    }

    /// Orders of the cyclic factors of `G / G_c`.
    pub fn torsion_orders(&self) -> Vec<BigInt> {
        self.dual.invariant_factors().into_iter().filter(|s| !s.is_one()).collect()
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.ambient_dim() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: n, found: self.ambient_dim() })
        }
    }

    /// Matrix form of the dual basis, or `None` for the full torus.
    pub(crate) fn dual_matrix(&self) -> Option<IntMatrix> {
        if self.dual.is_zero() {
            None
        } else {
            Some(IntMatrix::from_rows(self.dual.basis().to_vec()).expect("nonempty"))
        }
    }
}

impl fmt::Display for ClosedSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(dim {}, dual {})", self.dim(), self.dual)
    }
}

/// `x ∈ G + y`
pub fn coset_contains_point(g: &ClosedSubgroup, y: &TorusPoint, x: &TorusPoint) -> bool {
    g.contains_point(&x.sub(y))
}

/// Basis vectors of a rational subspace as columns of a matrix.
pub fn subspace_matrix(n: usize, columns: &[Vec<Rational>]) -> Result<RatMatrix> {
    RatMatrix::from_columns(n, columns)
}
