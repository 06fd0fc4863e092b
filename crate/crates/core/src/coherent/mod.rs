//! Coherent-state families for the shape-invariant chain: Z-functional
//! choices, expansion coefficients, normalization, Fock expansions and
//! overlaps.

mod coeffs;
mod overlap;
mod states;
mod zchoice;

pub use coeffs::{coefficient_closed, coefficient_raw, CoefficientTable, LogCoefficient};
pub use overlap::{overlap, overlap_closed};
pub use states::{
    lowering_eigenvalue_check, normalization, normalization_closed, normalization_series_sum,
    state_coefficients, StateExpansion,
};
pub use zchoice::{log_z_product, raw_z_factor, z_product, ZChoice};
