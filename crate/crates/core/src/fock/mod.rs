//! Functions of the lowest Landau level as coefficient vectors in the
//! special Hermite basis, with their conserved quantities and symmetries.

mod carlen;
mod catalog;
mod coeffs;
mod functionals;
mod symmetry;

pub use carlen::{carlen_gap, ln_lp_norm};
pub use catalog::{catalog_coefficients, WaveSpec, CATALOG_TAIL_TOLERANCE};
pub use coeffs::FockCoefficients;
pub use functionals::{
    angular_momentum, functionals, hamiltonian, magnetic_momentum, mass, FunctionalReport,
    PairWeights,
};
pub use symmetry::{
    apply_phase, apply_rotation, apply_translation, displacement_matrix,
    TRANSLATION_TAIL_TOLERANCE,
};
