//! Generic shape-invariance machinery: parameter chains, spectra by partial
//! sums, grid-based factorization operators and the partner-relation checks.

mod chain;
pub mod eigensolve;
mod grid;
mod ops;

pub use chain::{ParameterChain, SpectrumTable};
pub use grid::GridFunction;
pub use ops::{
    apply_lowering, apply_raising, build_eigenfunction, build_eigenfunction_from, chain_lower,
    chain_raise, cross_validate_with_eigensolver, ground_state_from_superpotential,
    hamiltonian_residual, verify_partner_relations, EigenCrossCheck, PartnerItem, PartnerReport,
    ShapeInvariantModel,
};
