//! Exact invariance checks for finite coset unions, plus a sampling
//! diagnostic for zero sets of trigonometric polynomials.

pub mod invariance;
pub mod prop_irr;
pub mod zeros;

pub use invariance::{
    apply_endo, apply_endo_coset, build_invariant_union, check_invariance, periodic_part, verify_invinv_conclusion,
    BuiltUnion, InvarianceVerdict, InvinvOutcome, DEFAULT_BUILD_BUDGET,
};
pub use prop_irr::{check_prop_irr_instance, PropIrrReport, PropIrrVerdict};
pub use zeros::{lattice_coset_reps, sample_zero_set_inclusion, ZeroSampleReport};
