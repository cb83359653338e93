//! Cosets of connected subgroups and their finite unions.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::smith_normal_form;
use crate::num::{dot_int_rat, frac, Rational};
use crate::torus::point::TorusPoint;
use crate::torus::subgroup::{coset_contains_point, ClosedSubgroup};

/// `G + y` with `G` connected and `y` the canonical representative of the coset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coset {
    subgroup: ClosedSubgroup,
    translate: TorusPoint,
}

impl Coset {
    pub fn new(subgroup: ClosedSubgroup, translate: TorusPoint) -> Result<Self> {
        if !subgroup.is_connected() {
            return Err(Error::NotConnected);
        }
        translate.check_dim(subgroup.ambient_dim())?;
        let translate = canonical_translate(&subgroup, &translate);
        Ok(Self { subgroup, translate })
    }

    pub fn point(x: TorusPoint) -> Self {
        let n = x.dim();
        Self { subgroup: ClosedSubgroup::trivial(n), translate: x }
    }

    pub fn subgroup(&self) -> &ClosedSubgroup {
        &self.subgroup
    }

    pub fn translate(&self) -> &TorusPoint {
        &self.translate
    }

    pub fn ambient_dim(&self) -> usize {
        self.subgroup.ambient_dim()
    }

    pub fn contains_point(&self, x: &TorusPoint) -> bool {
        coset_contains_point(&self.subgroup, &self.translate, x)
    }

    /// `self ⊇ other`
    pub fn contains(&self, other: &Coset) -> bool {
        self.subgroup.dual().is_sublattice_of(other.subgroup.dual()) && self.contains_point(&other.translate)
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}", self.subgroup, self.translate)
    }
}

/// Canonical representative of `G + y` for connected `G`.
///
/// With `B` the dual basis and `U B V = [I 0]`, the coset is determined by
/// `c = B y mod 1`; the representative is `V (U c mod 1, 0)`.
pub fn canonical_translate(g: &ClosedSubgroup, y: &TorusPoint) -> TorusPoint {
    let Some(b) = g.dual_matrix() else {
        return TorusPoint::zero(g.ambient_dim());
    };
    let c: Vec<Rational> = g.dual().basis().iter().map(|l| frac(&dot_int_rat(l, y.coords()))).collect();
    let snf = smith_normal_form(&b);
    let uc = snf.u.mul_rat_vec(&c);
    let mut w: Vec<Rational> = uc.iter().map(frac).collect();
    w.resize(g.ambient_dim(), Rational::default());
    TorusPoint::new(snf.v.mul_rat_vec(&w))
}

/// A finite union of cosets of connected subgroups, kept sorted with
/// duplicates and redundant members removed. The empty union is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetUnion {
    n: usize,
    cosets: Vec<Coset>,
}

impl CosetUnion {
    pub fn new(n: usize, cosets: Vec<Coset>) -> Result<Self> {
        if let Some(c) = cosets.iter().find(|c| c.ambient_dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: c.ambient_dim() });
        }
        Ok(Self { n, cosets: normalize(cosets) })
    }

    pub fn from_pairs(n: usize, pairs: Vec<(ClosedSubgroup, TorusPoint)>) -> Result<Self> {
        let cosets = pairs.into_iter().map(|(g, y)| Coset::new(g, y)).collect::<Result<Vec<_>>>()?;
        Self::new(n, cosets)
    }

    pub fn empty(n: usize) -> Self {
        Self { n, cosets: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Self { n, cosets: vec![Coset::new(ClosedSubgroup::full(n), TorusPoint::zero(n)).expect("connected")] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn union(&self, other: &CosetUnion) -> Result<CosetUnion> {
        let mut all = self.cosets.clone();
        all.extend(other.cosets.iter().cloned());
        Self::new(self.n, all)
    }

    pub fn contains_point(&self, x: &TorusPoint) -> bool {
        self.cosets.iter().any(|c| c.contains_point(x))
    }

    /// A connected coset inside a finite union lies inside a single member.
    pub fn contains_coset(&self, c: &Coset) -> bool {
        self.cosets.iter().any(|m| m.contains(c))
    }

    pub fn contains_union(&self, other: &CosetUnion) -> bool {
        other.cosets.iter().all(|c| self.contains_coset(c))
    }

    /// First member of `other` not covered by `self`.
    pub fn uncovered<'a>(&self, other: &'a CosetUnion) -> Option<&'a Coset> {
        other.cosets.iter().find(|c| !self.contains_coset(c))
    }

    /// `S_G`: the members whose subgroup contains `G`.
    pub fn invariant_subset(&self, g: &ClosedSubgroup) -> Result<CosetUnion> {
        g.check_dim(self.n)?;
        let kept = self
            .cosets
            .iter()
            .filter(|c| c.subgroup.dual().is_sublattice_of(g.dual()))
            .cloned()
            .collect();
        Ok(Self { n: self.n, cosets: kept })
    }
}

impl fmt::Display for CosetUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cosets.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.cosets.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

fn normalize(mut cosets: Vec<Coset>) -> Vec<Coset> {
    cosets.sort();
    cosets.dedup();
    let keep: Vec<bool> = (0..cosets.len())
        .map(|i| !cosets.iter().enumerate().any(|(j, c)| j != i && c.contains(&cosets[i])))
        .collect();
    cosets.into_iter().zip(keep).filter_map(|(c, k)| k.then_some(c)).collect()
}

/// `x ∈ G + y` for the member `(G, y)`.
pub fn coset_union_contains_coset(s: &CosetUnion, c: &Coset) -> bool {
    s.contains_coset(c)
}
