//! Expanding endomorphisms of the torus and their action on subgroups.

pub mod endo;
pub mod fixed;
pub mod orbit;
pub mod window;

pub use endo::{
    degree, image_subgroup, preimage_subgroup, validate_expanding, validate_expanding_with, ExpandingEndo,
};
pub use fixed::{fixed_points, fixed_points_by_enumeration};
pub use orbit::{orbit_subgroup, orbit_subgroup_default, LimitSource, OrbitReport, PeriodInfo};
pub use window::{subgroup_window_distance, window, window_lattice};
