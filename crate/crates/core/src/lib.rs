//! Closed subgroups, coset unions and expanding endomorphisms of the torus
//! `T^n = R^n / Z^n`, with exact lattice algebra underneath.

pub mod asymptotic;
pub mod dynamics;
pub mod error;
pub mod lab;
pub mod linalg;
pub mod num;
pub mod spectral;
pub mod torus;
pub mod wire;

pub use asymptotic::{DecayReport, ManifoldPatch, Sampling};
pub use dynamics::{ExpandingEndo, OrbitReport};
pub use error::{Error, Result};
pub use lab::{InvarianceVerdict, InvinvOutcome, PropIrrReport, ZeroSampleReport};
pub use linalg::{IntMatrix, IntPolynomial, Lattice, RatMatrix, SmithDecomposition};
pub use num::Rational;
pub use spectral::{SpectralData, SubspaceDescription};
pub use torus::{ClosedSubgroup, Coset, CosetUnion, TorusPoint, TrigPoly};
