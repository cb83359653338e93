//! Orbits `H, E(H), E²(H), ...` in the space of closed subgroups.

use std::collections::HashMap;
use std::fmt;

use crate::dynamics::window::{window_lattice, DEFAULT_RADIUS};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Lattice};
use crate::torus::ClosedSubgroup;

use super::endo::image_subgroup;

pub const DEFAULT_MAX_ITER: usize = 64;
/// Periods tried when testing a tail-sum candidate.
const TAIL_PERIODS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitSource {
    /// An exact repetition `E^{i+p}(H) = E^i(H)` was observed.
    Cycle,
    /// The subgroup whose dual is the intersection of the late orbit duals
    /// turned out to be exactly periodic.
    TailSum,
}

impl fmt::Display for LimitSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitSource::Cycle => "cycle",
            LimitSource::TailSum => "tail_sum",
        })
    }
}

#[derive(Clone, Debug)]
pub struct PeriodInfo {
    pub subgroup: ClosedSubgroup,
    pub period: usize,
    pub preperiod: usize,
    pub source: LimitSource,
}

#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub orbit: Vec<ClosedSubgroup>,
    pub period: Option<PeriodInfo>,
    pub window_radius: u32,
    /// Lattice generated by the limit dual restricted to the window.
    pub window_limit: Lattice,
    /// True when no exact periodic limit was found.
    pub approximate: bool,
    /// First index from which every later orbit dual contains the window limit.
    pub stabilization_index: usize,
}

impl OrbitReport {
    /// `W ⊆ G_j^⊥` for every recorded `j` at or after the stabilization index.
    pub fn containment_holds(&self) -> bool {
        self.orbit[self.stabilization_index..]
            .iter()
            .all(|g| self.window_limit.is_sublattice_of(g.dual()))
    }
}

pub fn orbit_subgroup(e: &IntMatrix, h: &ClosedSubgroup, max_iter: usize, radius: u32) -> Result<OrbitReport> {
    e.require_square()?;
    if !h.is_connected() {
        return Err(Error::NotConnected);
    }
    let mut orbit = vec![h.clone()];
    let mut seen: HashMap<ClosedSubgroup, usize> = HashMap::from([(h.clone(), 0)]);
    let mut cycle = None;
    for j in 1..=max_iter {
        let next = image_subgroup(e, &orbit[j - 1])?;
        if let Some(&i) = seen.get(&next) {
            cycle = Some((i, j - i));
            break;
        }
        seen.insert(next.clone(), j);
        orbit.push(next);
    }

    if let Some((pre, p)) = cycle {
        // the limit dual is the intersection over one full cycle
        let limit = orbit[pre..].iter().fold(orbit[pre].dual().clone(), |acc, g| acc.intersect(g.dual()));
        let window_limit = window_lattice(&limit, radius);
        let info = PeriodInfo { subgroup: orbit[pre].clone(), period: p, preperiod: pre, source: LimitSource::Cycle };
        let stab = stabilization(&orbit, &window_limit);
        return Ok(OrbitReport {
            orbit,
            period: Some(info),
            window_radius: radius,
            window_limit,
            approximate: false,
            stabilization_index: stab,
        });
    }

    let last = orbit.len() - 1;
    let mid = last / 2;
    let tail = orbit[mid..].iter().fold(orbit[mid].dual().clone(), |acc, g| acc.intersect(g.dual()));
    let candidate = ClosedSubgroup::from_lattice(tail.clone());
    let mut period = None;
    let mut img = candidate.clone();
    for p in 1..=TAIL_PERIODS {
        img = image_subgroup(e, &img)?;
        if img == candidate {
            period = Some(p);
            break;
        }
    }
    let window_limit = window_lattice(&tail, radius);
    let stab = stabilization(&orbit, &window_limit);
    let report = OrbitReport {
        period: period.map(|p| PeriodInfo { subgroup: candidate, period: p, preperiod: mid, source: LimitSource::TailSum }),
        approximate: period.is_none(),
        orbit,
        window_radius: radius,
        window_limit,
        stabilization_index: stab,
    };
    if report.period.is_some() {
        Ok(report)
    } else {
        Err(Error::OrbitBudgetExceeded(Box::new(report)))
    }
}

pub fn orbit_subgroup_default(e: &IntMatrix, h: &ClosedSubgroup) -> Result<OrbitReport> {
    orbit_subgroup(e, h, DEFAULT_MAX_ITER, DEFAULT_RADIUS)
}

/// Smallest `k` such that `W ⊆ G_j^⊥` for every recorded `j ≥ k`.
fn stabilization(orbit: &[ClosedSubgroup], w: &Lattice) -> usize {
    let mut k = orbit.len();
    while k > 0 && w.is_sublattice_of(orbit[k - 1].dual()) {
        k -= 1;
    }
    k
}
