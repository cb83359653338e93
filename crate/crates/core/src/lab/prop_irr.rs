use crate::dynamics::fixed_points;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RatMatrix};
use crate::num::Rational;
use crate::spectral::rational_part::{distance_to_span, orthonormalize, DEFAULT_HEIGHT, DEFAULT_TOLERANCE};
use crate::spectral::{rational_part, SubspaceDescription};
use crate::torus::{ClosedSubgroup, Coset, CosetUnion, TorusPoint};

use super::invariance::check_invariance;

/// Tolerance for numeric subspace membership.
const SPAN_TOL: f64 = 1e-8;
/// Integer shifts tried when lifting a torus point into a numeric subspace.
const LIFT_RADIUS: i64 = 8;

pub const PATH_BOUNDED_NOTE: &str =
    "K is a finite union of cosets of connected subgroups, so bounded C1 paths inside K hold structurally";

#[derive(Clone, Debug)]
pub enum PropIrrVerdict {
    /// Hypotheses that failed; the conclusion was not tested.
    PreconditionViolated(Vec<String>),
    /// `K ⊆ π(V_rat) + y` for the fixed point `y`.
    Holds { witness: TorusPoint },
    /// No fixed point works; a defect if the hypotheses hold.
    Fails,
}

#[derive(Clone, Debug)]
pub struct PropIrrReport {
    pub verdict: PropIrrVerdict,
    /// `π(V_rat)`
    pub v_rat: ClosedSubgroup,
    /// False when `V_rat` came from the numeric rational-part search.
    pub v_rat_exact: bool,
    pub note: &'static str,
}

/// Rational columns spanning the Lie algebra of a connected subgroup.
pub(crate) fn lie_algebra(g: &ClosedSubgroup) -> Vec<Vec<Rational>> {
    let n = g.ambient_dim();
    let rows: Vec<Vec<Rational>> = g
        .dual()
        .basis()
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    if rows.is_empty() {
        return RatMatrix::identity(n).columns();
    }
    RatMatrix::from_rows(rows, n).expect("rows of length n").nullspace()
}

fn to_f64_cols(cols: &[Vec<Rational>]) -> Vec<Vec<f64>> {
    cols.iter().map(|c| c.iter().map(crate::num::to_f64).collect()).collect()
}

fn in_span(q: &[Vec<f64>], v: &[f64]) -> bool {
    let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    distance_to_span(q, v) <= SPAN_TOL * nv.max(1.0)
}

/// Some integer translate of `p` lies in the numeric span `q`.
fn lifts_into(q: &[Vec<f64>], p: &TorusPoint) -> bool {
    let base = p.to_f64();
    let n = base.len();
    let width = (2 * LIFT_RADIUS + 1) as usize;
    let total = width.pow(n as u32);
    (0..total).any(|mut idx| {
        let v: Vec<f64> = base
            .iter()
            .map(|b| {
                let m = (idx % width) as i64 - LIFT_RADIUS;
                idx /= width;
                b + m as f64
            })
            .collect();
        in_span(q, &v)
    })
}

fn pi_of(n: usize, basis: &[Vec<Rational>]) -> Result<ClosedSubgroup> {
    if basis.is_empty() {
        return Ok(ClosedSubgroup::trivial(n));
    }
    ClosedSubgroup::from_rational_subspace(n, basis)
}

/// Checks `E(V) = V`, `K ⊆ π(V) + x` and `E(K) = K`, then searches the fixed
/// points of `E` for `y` with `K ⊆ π(V_rat) + y`.
pub fn check_prop_irr_instance(
    e: &IntMatrix,
    v: &SubspaceDescription,
    k: &CosetUnion,
    x: &TorusPoint,
) -> Result<PropIrrReport> {
    let n = e.require_square()?;
    if v.n != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.n });
    }
    if k.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: k.ambient_dim() });
    }
    x.check_dim(n)?;

    let mut violations = Vec::new();
    let q = orthonormalize(&v.basis_f64());
    let (v_rat, v_rat_exact) = if v.exact {
        (pi_of(n, &v.basis)?, true)
    } else {
        let part = rational_part(&v.basis_f64(), DEFAULT_HEIGHT, DEFAULT_TOLERANCE);
        (pi_of(n, &part.subspace.basis)?, false)
    };

    let invariant = if v.exact {
        v.is_invariant(e)
    } else {
        let a = e.to_f64_rows();
        v.basis_f64().iter().all(|b| {
            let eb: Vec<f64> = a.iter().map(|row| row.iter().zip(b).map(|(p, q)| p * q).sum()).collect();
            in_span(&q, &eb)
        })
    };
    if !invariant {
        violations.push("E(V) != V".to_string());
    }

    let pi_v = if v.exact { Some(v_rat.clone()) } else { None };
    for c in k.cosets() {
        let shift = c.translate().sub(x);
        let inside = match &pi_v {
            Some(p) => p.contains(c.subgroup())? && p.contains_point(&shift),
            None => {
                let lie = to_f64_cols(&lie_algebra(c.subgroup()));
                lie.iter().all(|w| in_span(&q, w)) && lifts_into(&q, &shift)
            }
        };
        if !inside {
            violations.push(format!("member {c} is not inside pi(V) + x"));
        }
    }

    if !check_invariance(e, k)?.equal {
        violations.push("E(K) != K".to_string());
    }

    if !violations.is_empty() {
        return Ok(PropIrrReport {
            verdict: PropIrrVerdict::PreconditionViolated(violations),
            v_rat,
            v_rat_exact,
            note: PATH_BOUNDED_NOTE,
        });
    }

    let covers = |y: &TorusPoint| -> Result<bool> {
        let target = Coset::new(v_rat.clone(), y.clone())?;
        Ok(k.cosets().iter().all(|c| target.contains(c)))
    };
    let mut verdict = PropIrrVerdict::Fails;
    for y in fixed_points(e)? {
        if covers(&y)? {
            verdict = PropIrrVerdict::Holds { witness: y };
            break;
        }
    }
    Ok(PropIrrReport { verdict, v_rat, v_rat_exact, note: PATH_BOUNDED_NOTE })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{from_f64, rat};
    use crate::spectral::{rational_part_of_dominant_complement, spectral_data};

    #[test]
    fn irrational_dominant_eigenspace() {
        let e = IntMatrix::from_i64(&[[2, 1], [1, 3]]);
        let lambda = (5.0 + 5f64.sqrt()) / 2.0;
        let v = SubspaceDescription {
            n: 2,
            exact: false,
            basis: vec![vec![from_f64(1.0), from_f64(lambda - 2.0)]],
            g: None,
        };
        let k = CosetUnion::new(2, vec![Coset::point(TorusPoint::zero(2))]).unwrap();
        let r = check_prop_irr_instance(&e, &v, &k, &TorusPoint::zero(2)).unwrap();
        assert!(r.v_rat.is_trivial() && !r.v_rat_exact);
        match r.verdict {
            PropIrrVerdict::Holds { witness } => assert_eq!(witness, TorusPoint::zero(2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rational_subspace_case() {
        let e = IntMatrix::diagonal(&[2, 3]);
        let data = spectral_data(&e).unwrap();
        let v = rational_part_of_dominant_complement(&e, &data);
        assert!(v.exact);
        // V = span(e1); K = line through the fixed point (0, 1/2)
        let y = TorusPoint::from_fractions(&[(0, 1), (1, 2)]);
        let k = CosetUnion::new(2, vec![Coset::new(ClosedSubgroup::axis(2, 0), y.clone()).unwrap()]).unwrap();
        let r = check_prop_irr_instance(&e, &v, &k, &y).unwrap();
        match r.verdict {
            PropIrrVerdict::Holds { witness } => assert_eq!(witness, y),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn violated_preconditions_are_reported() {
        let e = IntMatrix::diagonal(&[2, 3]);
        let v = SubspaceDescription {
            n: 2,
            exact: true,
            basis: vec![vec![rat(1, 1), rat(0, 1)]],
            g: None,
        };
        let p = TorusPoint::from_fractions(&[(1, 3), (0, 1)]);
        let k = CosetUnion::new(2, vec![Coset::point(p)]).unwrap();
        let r = check_prop_irr_instance(&e, &v, &k, &TorusPoint::zero(2)).unwrap();
        match r.verdict {
            PropIrrVerdict::PreconditionViolated(v) => assert!(v.iter().any(|m| m.contains("E(K)"))),
            other => panic!("{other:?}"),
        }
    }
}
