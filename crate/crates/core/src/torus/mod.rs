//! Closed subgroups, cosets and coset unions of the torus `T^n`.

pub mod coset;
pub mod point;
pub mod subgroup;
pub mod trig;

pub use coset::{canonical_translate, coset_union_contains_coset, Coset, CosetUnion};
pub use point::TorusPoint;
pub use subgroup::{coset_contains_point, ClosedSubgroup};
pub use trig::{coset_to_trig_poly, TrigPoly, TrigTerm};
