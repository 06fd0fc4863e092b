//! The two choices of the state-construction functional Z.
//!
//! A coherent-state family is dressed by a product of chain factors
//! `Z(a_j)`. The phase-only choice contributes `e^{-iαE_n}` and leaves
//! moduli untouched; the Gamma-weighted choice multiplies in
//! `√(g(a;κ,κ) g(a;κ,0))` with `g(a;c,d) = ca + d`, which closes to the
//! square-rooted ratio `κ^{2n} Γ(2n+2m+2ρ)/Γ(2m+2ρ)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poschl_teller::PTParams;
use crate::specfun::ln_gamma_real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZChoice {
    /// `Z(a) = e^{-iαR(a)}`: pure phases, states defined on the whole plane.
    PhaseOnly { alpha: f64 },
    /// `Z(a) = √(g(a;κ,κ) g(a;κ,0)) e^{-iαR(a)}` with `g(a;c,d) = ca + d`;
    /// requires `κ = λ` and confines labels to `|z| < 1`.
    GammaWeighted { alpha: f64, kappa: f64 },
}

impl ZChoice {
    pub fn alpha(&self) -> f64 {
        match *self {
            ZChoice::PhaseOnly { alpha } => alpha,
            ZChoice::GammaWeighted { alpha, .. } => alpha,
        }
    }

    /// Model-compatibility constraints: the Gamma-weighted functional is
    /// only closed-form when `κ = λ` (and then `ν = 2ρ − 1 >= 1`).
    pub fn validate(&self, p: &PTParams) -> Result<()> {
        if let ZChoice::GammaWeighted { kappa, .. } = *self {
            let lambda = p.lambda();
            if (kappa - lambda).abs() > 1e-12 * lambda.abs() {
                return Err(Error::Constraint(format!(
                    "Gamma-weighted functional requires kappa = lambda, got kappa = {kappa}, lambda = {lambda}"
                )));
            }
            if p.nu() < 1.0 {
                return Err(Error::Constraint(format!(
                    "Gamma-weighted functional requires nu >= 1, got {}",
                    p.nu()
                )));
            }
        }
        Ok(())
    }

    /// Radius of the label domain: unbounded for phase-only, the unit disk
    /// for Gamma-weighted.
    pub fn domain_radius(&self) -> f64 {
        match self {
            ZChoice::PhaseOnly { .. } => f64::INFINITY,
            ZChoice::GammaWeighted { .. } => 1.0,
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.norm() < self.domain_radius()
    }
}

/// `(log-modulus, phase)` of the chain product `∏_{k=m}^{n+m-1} Z_{j+k}`.
///
/// The phase is `-αE_n` with `E_n = λ²n(n+2ρ)`; the Gamma-weighted modulus
/// is the square root of `κ^{2n} Γ(2n+2m+2ρ)/Γ(2m+2ρ)`.
pub fn log_z_product(
    choice: &ZChoice,
    p: &PTParams,
    m: usize,
    n: usize,
) -> Result<(f64, f64)> {
    choice.validate(p)?;
    let phase = -choice.alpha() * p.energy(n);
    let log_mod = match *choice {
        ZChoice::PhaseOnly { .. } => 0.0,
        ZChoice::GammaWeighted { kappa, .. } => {
            if n == 0 {
                0.0
            } else {
                let rho2 = 2.0 * p.rho();
                let (mf, nf) = (m as f64, n as f64);
                0.5 * (2.0 * nf * kappa.ln()
                    + ln_gamma_real(2.0 * nf + 2.0 * mf + rho2)?
                    - ln_gamma_real(2.0 * mf + rho2)?)
            }
        }
    };
    Ok((log_mod, phase))
}

/// The chain product itself. Overflows for very large `n` in the
/// Gamma-weighted case; use [`log_z_product`] inside series.
pub fn z_product(choice: &ZChoice, p: &PTParams, m: usize, n: usize) -> Result<Complex64> {
    let (log_mod, phase) = log_z_product(choice, p, m, n)?;
    Ok(Complex64::from_polar(log_mod.exp(), phase))
}

/// One raw chain factor `Z(a_k)` at zero-based chain index `k` (which may
/// be -1 for the lowering-eigenvalue bookkeeping), built from the g-factor
/// products instead of the closed Gamma ratio.
pub fn raw_z_factor(choice: &ZChoice, p: &PTParams, k: i64) -> Result<Complex64> {
    choice.validate(p)?;
    let a_k = 2.0 * p.rho() + 2.0 * k as f64;
    let lam2 = p.lambda() * p.lambda();
    let remainder = lam2 * (a_k + 1.0);
    let phase = -choice.alpha() * remainder;
    let modulus = match *choice {
        ZChoice::PhaseOnly { .. } => 1.0,
        ZChoice::GammaWeighted { kappa, .. } => {
            let g_kk = kappa * a_k + kappa;
            let g_k0 = kappa * a_k;
            if g_kk <= 0.0 || g_k0 <= 0.0 {
                return Err(Error::Domain(format!(
                    "g-factors nonpositive at chain index {k} (a = {a_k})"
                )));
            }
            (g_kk * g_k0).sqrt()
        }
    };
    Ok(Complex64::from_polar(modulus, phase))
}
