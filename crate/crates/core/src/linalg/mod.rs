//! Exact integer and rational linear algebra.

pub mod factor;
pub mod hermite;
pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod smith;

pub use factor::{factor_over_integers, Factorization};
pub use hermite::hermite_normal_form;
pub use lattice::{integer_kernel, lattice_intersect, lattice_saturate, lattice_sum, Lattice};
pub use matrix::{IntMatrix, RatMatrix};
pub use poly::{char_poly, IntPolynomial};
pub use smith::{elementary_divisors, elementary_divisors_by_minors, smith_normal_form, SmithDecomposition};
