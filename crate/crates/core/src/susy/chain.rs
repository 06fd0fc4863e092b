//! Translation-class parameter chains and the spectra they generate.
//!
//! A shape-invariant model is driven by the remainder sequence `R(a_k)` on
//! the shifted parameters `a_k = a_1 + (k-1)η`; bound-state energies are the
//! partial sums `E_n = Σ_{k<=n} R(a_k)` with `E_0 = 0`.

use crate::error::{Error, Result};

pub struct ParameterChain {
    a1: f64,
    shift: f64,
    remainder_fn: Box<dyn Fn(usize) -> f64 + Send + Sync>,
}

impl ParameterChain {
    /// `remainder_fn(k)` must return `R(a_k)` for `k >= 1`.
    pub fn new<F>(a1: f64, shift: f64, remainder_fn: F) -> Self
    where
        F: Fn(usize) -> f64 + Send + Sync + 'static,
    {
        ParameterChain {
            a1,
            shift,
            remainder_fn: Box::new(remainder_fn),
        }
    }

    /// Chain parameter `a_k = a_1 + (k-1)·shift`, `k >= 1`.
    pub fn parameter(&self, k: usize) -> f64 {
        self.a1 + (k as f64 - 1.0) * self.shift
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// `R(a_k)` for `k >= 1`.
    pub fn remainder(&self, k: usize) -> f64 {
        debug_assert!(k >= 1);
        (self.remainder_fn)(k)
    }

    /// `[R(a_1), ..., R(a_count)]`.
    pub fn remainder_sequence(&self, count: usize) -> Vec<f64> {
        (1..=count).map(|k| self.remainder(k)).collect()
    }

    /// Partial-sum spectrum `E_0..E_{n_max}`.
    pub fn spectrum(&self, n_max: usize) -> SpectrumTable {
        let mut energies = Vec::with_capacity(n_max + 1);
        let mut acc = 0.0;
        energies.push(0.0);
        for k in 1..=n_max {
            acc += self.remainder(k);
            energies.push(acc);
        }
        SpectrumTable { energies }
    }

    /// Energy level `E_n` by partial summation.
    pub fn energy(&self, n: usize) -> f64 {
        (1..=n).map(|k| self.remainder(k)).sum()
    }

    /// Checks `R(a_k) > 0` over `1..=count` (real expansion coefficients
    /// need positive remainders).
    pub fn check_positive_remainders(&self, count: usize) -> Result<()> {
        for k in 1..=count {
            let r = self.remainder(k);
            if !(r > 0.0) {
                return Err(Error::Constraint(format!(
                    "remainder R(a_{k}) = {r} is not positive"
                )));
            }
        }
        Ok(())
    }
}

/// Bound-state energies `E_0..E_nmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    energies: Vec<f64>,
}

impl SpectrumTable {
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn level(&self, n: usize) -> f64 {
        self.energies[n]
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.energies.windows(2).all(|w| w[1] > w[0])
    }
}
