//! Photon-added coherent states for shape-invariant potentials.
//!
//! The crate builds the full numeric stack for the Poschl-Teller (first
//! type) model: special-function kernels, the SUSY factorization machinery
//! on a grid, closed-form expansion coefficients and their brute-force
//! counterparts, coherent-state families, resolution-of-identity weight
//! functions, and pseudo-thermal statistics.

pub mod coherent;
pub mod error;
pub mod measure;
pub mod poschl_teller;
pub mod quad;
pub mod specfun;
pub mod susy;
pub mod thermal;

pub use error::{Error, Result};
