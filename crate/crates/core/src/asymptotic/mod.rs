//! Sampling estimates of how `E^j` flattens parameterized patches along tangent directions.

pub mod distance;
pub mod expr;
pub mod limit;
pub mod patch;

pub use distance::{
    asymptotic_distance, operator_norm, power_f64, verify_flat_bound, DecayRecord, DecayReport, Sampling,
    DEFAULT_THRESHOLD,
};
pub use expr::Expr;
pub use limit::{limit_direction, limit_directions_with_subgroups, LimitDirection};
pub use patch::{tangent_vector, tangent_vector_fd, ManifoldPatch};
