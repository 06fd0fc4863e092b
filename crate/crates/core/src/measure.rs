//! Resolution-of-identity weight functions and their Stieltjes-moment
//! validation.
//!
//! The radial weight `ω_m` satisfies `∫ x^n · π N_m²(x) ω_m(x) dx = |K_n^m|²`
//! (the angular integration is exact for diagonal moments). The Stieltjes
//! density `W_m = π N_m² ω_m` is what the moment checks integrate: it is
//! free of the normalization constant, `x^m g_m(x)` for the phase-only
//! family and `Γ(2m+ν+1) κ^{-2m} G^{3,0}_{3,3}(x)` for the Gamma-weighted
//! one.
//!
//! The constant in front of the phase-only Meijer kernel is fixed by the
//! moment identity itself (`λ^{-2(2m+1)} 2^{2ρ-3} / √π`), which the printed
//! prefactor does not satisfy; the moment identity is normative here.

use crate::coherent::{coefficient_closed, normalization_series_sum, ZChoice};
use crate::error::{Error, Result};
use crate::poschl_teller::PTParams;
use crate::quad::integrate_vector;
use crate::specfun::{ln_gamma_real, meijer_g, MeijerGSpec, SeriesControl};

/// One weight-function family: a Z-choice, the model parameters and the
/// photon-added number m.
#[derive(Debug, Clone)]
pub struct WeightSpec {
    pub choice: ZChoice,
    pub params: PTParams,
    pub m: usize,
}

impl WeightSpec {
    pub fn new(choice: ZChoice, params: PTParams, m: usize) -> Result<Self> {
        choice.validate(&params)?;
        Ok(WeightSpec { choice, params, m })
    }

    /// Upper end of the radial domain; `None` means unbounded.
    pub fn domain_upper(&self) -> Option<f64> {
        match self.choice {
            ZChoice::PhaseOnly { .. } => None,
            ZChoice::GammaWeighted { .. } => Some(1.0),
        }
    }

    /// The lower-only Meijer kernel of the family.
    fn stieltjes_g_spec(&self) -> Result<MeijerGSpec> {
        let mf = self.m as f64;
        match self.choice {
            ZChoice::PhaseOnly { .. } => {
                let rho = self.params.rho();
                MeijerGSpec::new(
                    5,
                    0,
                    3,
                    5,
                    vec![0.0, 2.0 * rho + mf - 1.0, 2.0 * rho + mf - 1.0],
                    vec![-mf, -mf, 2.0 * rho - 1.0, rho - 1.0, rho - 0.5],
                )
            }
            ZChoice::GammaWeighted { .. } => {
                let nu = self.params.nu();
                MeijerGSpec::new(
                    3,
                    0,
                    3,
                    3,
                    vec![mf, 2.0 * mf + nu, 2.0 * mf + nu],
                    vec![0.0, 0.0, mf + nu],
                )
            }
        }
    }

    /// Argument scale of the kernel: `x a²/4` for phase-only, `x` for
    /// Gamma-weighted.
    fn kernel_argument_scale(&self) -> f64 {
        match self.choice {
            ZChoice::PhaseOnly { .. } => self.params.a() * self.params.a() / 4.0,
            ZChoice::GammaWeighted { .. } => 1.0,
        }
    }

    /// log of the constant multiplying the kernel inside the Stieltjes
    /// density `W_m`.
    fn stieltjes_log_constant(&self) -> Result<f64> {
        let mf = self.m as f64;
        match self.choice {
            ZChoice::PhaseOnly { .. } => {
                let rho = self.params.rho();
                let lambda = self.params.lambda();
                Ok(-2.0 * (2.0 * mf + 1.0) * lambda.ln()
                    + (2.0 * rho - 3.0) * std::f64::consts::LN_2
                    - 0.5 * std::f64::consts::PI.ln())
            }
            ZChoice::GammaWeighted { kappa, .. } => {
                let nu = self.params.nu();
                Ok(ln_gamma_real(2.0 * mf + nu + 1.0)? - 2.0 * mf * kappa.ln())
            }
        }
    }
}

/// Stieltjes density `W_m(x) = π N_m²(x) ω_m(x)` (normalization-free).
pub fn moment_kernel(spec: &WeightSpec, x: f64, ctl: &SeriesControl) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("radial variable must be > 0, got {x}")));
    }
    let g_spec = spec.stieltjes_g_spec()?;
    let g = meijer_g(&g_spec, x * spec.kernel_argument_scale(), ctl)?;
    let constant = spec.stieltjes_log_constant()?.exp();
    Ok(match spec.choice {
        ZChoice::PhaseOnly { .. } => x.powi(spec.m as i32) * constant * g,
        ZChoice::GammaWeighted { .. } => constant * g,
    })
}

/// The weight function `ω_m(x)` itself, evaluated through the printed
/// Meijer-G expressions (contour for the lower-only kernel, residue series
/// inside the normalization factor).
pub fn weight_function(spec: &WeightSpec, x: f64, ctl: &SeriesControl) -> Result<f64> {
    if let Some(hi) = spec.domain_upper() {
        if x >= hi {
            return Err(Error::Domain(format!(
                "x = {x} outside the radial domain (0, {hi})"
            )));
        }
    }
    let kernel = moment_kernel(spec, x, ctl)?;
    // ω_m = W_m(x) S(x) / π with S = Σ x^n/|K_n^m|² = 1/N_m².
    let (series_sum, _) =
        normalization_series_sum(&spec.choice, &spec.params, spec.m, x, 1e-13, 400_000)?;
    Ok(kernel * series_sum / std::f64::consts::PI)
}

/// One Stieltjes-moment comparison.
#[derive(Debug, Clone)]
pub struct MomentCheck {
    pub n: usize,
    pub integral: f64,
    pub target: f64,
    pub rel_err: f64,
}

/// `∫ x^n W_m(x) dx` against `|K_n^m|²` for `n = 0..=n_max`, sharing the
/// expensive kernel evaluations across all moments.
pub fn identity_resolution_report(
    spec: &WeightSpec,
    n_max: usize,
    ctl: &SeriesControl,
) -> Result<Vec<MomentCheck>> {
    let integrals = match spec.domain_upper() {
        Some(hi) => {
            let mut failure = None;
            let vals = integrate_vector(
                |x| match moment_kernel(spec, x.max(1e-300), ctl) {
                    Ok(w) => (0..=n_max).map(|n| x.powi(n as i32) * w).collect(),
                    Err(e) => {
                        failure.get_or_insert(e);
                        vec![0.0; n_max + 1]
                    }
                },
                0.0,
                hi,
                n_max + 1,
                (0.2 * ctl.rel_tol).max(2e-12),
                1e-300,
                4000,
            );
            if let Some(e) = failure {
                return Err(e);
            }
            vals?
        }
        None => {
            // Exponential map x = e^u for the improper upper limit. The
            // kernel decays like exp(-aλ√x) = exp(-e^{u/2}) (aλ = 1), so the
            // cutoff solves (n_max+m+1)u - a e^{u/2} λ ... = log(tiny).
            let power = (n_max + spec.m + 1) as f64;
            let scale = spec.params.a() * spec.kernel_argument_scale().sqrt() / spec.params.a();
            let mut u_hi = 4.0_f64;
            while power * u_hi - 2.0 * scale * (u_hi / 2.0).exp() > -50.0 && u_hi < 120.0 {
                u_hi += 0.5;
            }
            let u_lo = -50.0;
            let mut failure = None;
            let vals = integrate_vector(
                |u| {
                    let x = u.exp();
                    match moment_kernel(spec, x, ctl) {
                        Ok(w) => (0..=n_max)
                            .map(|n| (u * (n as f64 + 1.0)).exp() * w)
                            .collect(),
                        Err(e) => {
                            failure.get_or_insert(e);
                            vec![0.0; n_max + 1]
                        }
                    }
                },
                u_lo,
                u_hi,
                n_max + 1,
                (0.2 * ctl.rel_tol).max(2e-12),
                1e-300,
                4000,
            );
            if let Some(e) = failure {
                return Err(e);
            }
            vals?
        }
    };

    let mut out = Vec::with_capacity(n_max + 1);
    for (n, &integral) in integrals.iter().enumerate() {
        let target = coefficient_closed(&spec.choice, &spec.params, spec.m, n)?.mod2();
        let rel_err = (integral - target).abs() / target.abs();
        out.push(MomentCheck {
            n,
            integral,
            target,
            rel_err,
        });
    }
    Ok(out)
}

/// Single-moment variant of [`identity_resolution_report`].
pub fn moment_check(spec: &WeightSpec, n: usize, ctl: &SeriesControl) -> Result<MomentCheck> {
    Ok(identity_resolution_report(spec, n, ctl)?.pop().unwrap())
}
