//! Certified spectra of integer matrices and the dominant-eigenspace split.

pub mod rational_part;
pub mod roots;
pub mod split;

pub use rational_part::{rational_part, RationalPart};
pub use roots::{certify_roots, CertifiedRoot, ModulusClass, RootData};
pub use split::{
    dominant_complement, numeric_dominant_complement, rational_part_of_dominant_complement, spectral_data,
    spectral_data_with_precision, FactorTag, SpectralData, SubspaceDescription, TaggedFactor,
};
