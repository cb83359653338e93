use std::collections::HashSet;
use std::fmt;

use crate::dynamics::{image_subgroup, orbit_subgroup_default, LimitSource};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::torus::{ClosedSubgroup, Coset, CosetUnion};

pub const DEFAULT_BUILD_BUDGET: usize = 64;

/// `E(G + y) = E(G) + E(y)`
pub fn apply_endo_coset(e: &IntMatrix, c: &Coset) -> Result<Coset> {
    Coset::new(image_subgroup(e, c.subgroup())?, c.translate().apply(e))
}

pub fn apply_endo(e: &IntMatrix, s: &CosetUnion) -> Result<CosetUnion> {
    let n = e.require_square()?;
    if s.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: s.ambient_dim() });
    }
    let images = s.cosets().iter().map(|c| apply_endo_coset(e, c)).collect::<Result<Vec<_>>>()?;
    CosetUnion::new(n, images)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceVerdict {
    /// `S ⊆ E(S)`
    pub forward: bool,
    /// A member of `S` not covered by `E(S)`.
    pub forward_witness: Option<Coset>,
    /// `E(S) ⊆ S`
    pub backward: bool,
    /// A member of `E(S)` not covered by `S`.
    pub backward_witness: Option<Coset>,
    pub equal: bool,
}

pub fn check_invariance(e: &IntMatrix, s: &CosetUnion) -> Result<InvarianceVerdict> {
    let image = apply_endo(e, s)?;
    let forward_witness = image.uncovered(s).cloned();
    let backward_witness = s.uncovered(&image).cloned();
    let forward = forward_witness.is_none();
    let backward = backward_witness.is_none();
    Ok(InvarianceVerdict { forward, forward_witness, backward, backward_witness, equal: forward && backward })
}

#[derive(Clone, Debug)]
pub struct BuiltUnion {
    pub union: CosetUnion,
    pub verdict: InvarianceVerdict,
}

/// Closes the seeds under `c ↦ E(c)` until every orbit cycles. When the
/// closure satisfies `S ⊆ E(S)` it must also satisfy `S = E(S)`; a violation
/// is reported as an internal error.
pub fn build_invariant_union(e: &IntMatrix, seeds: &[Coset], budget: usize) -> Result<BuiltUnion> {
    let n = e.require_square()?;
    let mut all = Vec::new();
    for seed in seeds {
        if seed.ambient_dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: seed.ambient_dim() });
        }
        let mut seen = HashSet::new();
        let mut c = seed.clone();
        let mut steps = 0;
        while seen.insert(c.clone()) {
            if steps == budget {
                return Err(Error::BudgetExceeded { what: "coset orbit", budget });
            }
            all.push(c.clone());
            c = apply_endo_coset(e, &c)?;
            steps += 1;
        }
    }
    let union = CosetUnion::new(n, all)?;
    let verdict = check_invariance(e, &union)?;
    if verdict.forward && !verdict.equal {
        return Err(Error::Invariant("closure satisfies S ⊆ E(S) but not S = E(S)".into()));
    }
    Ok(BuiltUnion { union, verdict })
}

/// The periodic part of a closure: `E^k(S)` once every orbit has entered its cycle.
pub fn periodic_part(e: &IntMatrix, s: &CosetUnion, budget: usize) -> Result<CosetUnion> {
    let mut seen = HashSet::new();
    let mut cur = s.clone();
    for _ in 0..=budget {
        if !seen.insert(cur.clone()) {
            return Ok(cur);
        }
        let next = apply_endo(e, &cur)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::BudgetExceeded { what: "union orbit", budget })
}

#[derive(Clone, Debug)]
pub enum InvinvOutcome {
    Confirmed { subgroup: ClosedSubgroup, period: usize, source: LimitSource },
    /// Never expected; signals a defect if produced.
    Counterexample { subgroup: ClosedSubgroup, period: usize, periodic: bool, s_g: CosetUnion },
}

impl InvinvOutcome {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, InvinvOutcome::Confirmed { .. })
    }
}

impl fmt::Display for InvinvOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvinvOutcome::Confirmed { subgroup, period, .. } => write!(f, "confirmed: {subgroup}, period {period}"),
            InvinvOutcome::Counterexample { subgroup, period, .. } => {
                write!(f, "counterexample: {subgroup}, period {period}")
            }
        }
    }
}

/// For `S = E(S)` and `S = S_H`, finds `G` in the orbit closure of `H` with
/// `E^p(G) = G` and checks `S = S_G`.
pub fn verify_invinv_conclusion(e: &IntMatrix, s: &CosetUnion, h: &ClosedSubgroup) -> Result<InvinvOutcome> {
    let n = e.require_square()?;
    h.check_dim(n)?;
    if !h.is_connected() {
        return Err(Error::Precondition("H must be connected".into()));
    }
    if h.dim() == 0 {
        return Err(Error::Precondition("H must have positive dimension".into()));
    }
    if !check_invariance(e, s)?.equal {
        return Err(Error::Precondition("S is not E-invariant".into()));
    }
    if s.invariant_subset(h)? != *s {
        return Err(Error::Precondition("S differs from S_H".into()));
    }
    let report = orbit_subgroup_default(e, h).map_err(|err| match err {
        Error::OrbitBudgetExceeded(r) => {
            Error::BudgetExceeded { what: "subgroup orbit", budget: r.orbit.len().saturating_sub(1) }
        }
        other => other,
    })?;
    let info = report.period.expect("reports without a period are returned as errors");
    let g = info.subgroup;
    let mut img = g.clone();
    for _ in 0..info.period {
        img = image_subgroup(e, &img)?;
    }
    let periodic = img == g;
    let s_g = s.invariant_subset(&g)?;
    if periodic && s_g == *s {
        Ok(InvinvOutcome::Confirmed { subgroup: g, period: info.period, source: info.source })
    } else {
        Ok(InvinvOutcome::Counterexample { subgroup: g, period: info.period, periodic, s_g })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::TorusPoint;

    fn axis(i: usize) -> ClosedSubgroup {
        ClosedSubgroup::axis(2, i)
    }

    fn coset(g: ClosedSubgroup, p: &[(i64, i64)]) -> Coset {
        Coset::new(g, TorusPoint::from_fractions(p)).unwrap()
    }

    fn axes() -> CosetUnion {
        CosetUnion::new(2, vec![coset(axis(0), &[(0, 1), (0, 1)]), coset(axis(1), &[(0, 1), (0, 1)])]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let e = IntMatrix::diagonal(&[2, 3]);
        assert_eq!(apply_endo(&e, &axes()).unwrap(), axes());
        let shifted = CosetUnion::new(2, vec![coset(axis(1), &[(1, 2), (0, 1)])]).unwrap();
        let image = CosetUnion::new(2, vec![coset(axis(1), &[(0, 1), (0, 1)])]).unwrap();
        assert_eq!(apply_endo(&e, &shifted).unwrap(), image);
        assert!(apply_endo(&e, &CosetUnion::empty(2)).unwrap().is_empty());
    }

    #[test]
    fn invariance_examples() {
        let e = IntMatrix::diagonal(&[2, 3]);
        assert!(check_invariance(&e, &axes()).unwrap().equal);
        let shifted = CosetUnion::new(2, vec![coset(axis(1), &[(1, 2), (0, 1)])]).unwrap();
        let v = check_invariance(&e, &shifted).unwrap();
        assert!(!v.forward && !v.equal);
        assert_eq!(v.forward_witness.as_ref(), shifted.cosets().first());
        let fixed = CosetUnion::new(2, vec![Coset::point(TorusPoint::from_fractions(&[(0, 1), (1, 2)]))]).unwrap();
        assert!(check_invariance(&e, &fixed).unwrap().equal);
    }

    #[test]
    fn build_examples() {
        let rot = IntMatrix::from_i64(&[[0, -1], [2, 0]]);
        let b = build_invariant_union(&rot, &[coset(axis(0), &[(0, 1), (0, 1)])], DEFAULT_BUILD_BUDGET).unwrap();
        assert_eq!(b.union, axes());
        assert!(b.verdict.equal);

        let e = IntMatrix::diagonal(&[2, 3]);
        let b = build_invariant_union(&e, &[coset(axis(1), &[(1, 2), (0, 1)])], DEFAULT_BUILD_BUDGET).unwrap();
        let expected =
            CosetUnion::new(2, vec![coset(axis(1), &[(1, 2), (0, 1)]), coset(axis(1), &[(0, 1), (0, 1)])]).unwrap();
        assert_eq!(b.union, expected);
        assert!(!b.verdict.forward);
        assert_eq!(periodic_part(&e, &b.union, 8).unwrap().len(), 1);

        let p = Coset::point(TorusPoint::zero(2));
        assert_eq!(build_invariant_union(&e, &[p], 4).unwrap().union.len(), 1);
    }

    #[test]
    fn invinv_examples() {
        let e = IntMatrix::diagonal(&[2, 3]);
        let s = CosetUnion::new(2, vec![coset(axis(1), &[(0, 1), (0, 1)])]).unwrap();
        let out = verify_invinv_conclusion(&e, &s, &axis(1)).unwrap();
        match out {
            InvinvOutcome::Confirmed { subgroup, period, .. } => assert_eq!((subgroup, period), (axis(1), 1)),
            other => panic!("{other}"),
        }
        let full = CosetUnion::full(2);
        assert!(verify_invinv_conclusion(&e, &full, &axis(0)).unwrap().is_confirmed());
        let rot = IntMatrix::from_i64(&[[0, -1], [2, 0]]);
        assert!(matches!(verify_invinv_conclusion(&rot, &axes(), &axis(0)), Err(Error::Precondition(_))));
        assert!(verify_invinv_conclusion(&rot, &axes(), &ClosedSubgroup::trivial(2)).is_err());
    }
}
