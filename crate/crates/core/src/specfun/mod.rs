//! Special-function kernels: complex log-gamma, Pochhammer symbols,
//! generalized hypergeometric series and Meijer G evaluation.
//!
//! All operations are pure functions of their inputs.

mod control;
mod gamma;
mod meijer;
mod pfq;

pub use control::SeriesControl;
pub use gamma::{ln_gamma_real, log_gamma, pochhammer, real_gamma};
pub use meijer::{meijer_g, MeijerGSpec};
pub use pfq::{hypergeometric_pfq, hypergeometric_pfq_complex};
