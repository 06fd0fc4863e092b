//! Expansion coefficients of the photon-added coherent states.
//!
//! `K_n^m` carries the square-rooted product of remainder partial sums over
//! the Z-product and the m-fold partial-sum product. `coefficient_raw`
//! assembles it literally from chain sums; `coefficient_closed` uses the
//! Gamma closed forms. Everything is held in log-modulus/phase form so that
//! the phase-only family (whose moduli grow factorially) never overflows.

use num_complex::Complex64;

use crate::coherent::zchoice::{log_z_product, ZChoice};
use crate::error::Result;
use crate::poschl_teller::PTParams;
use crate::specfun::ln_gamma_real;

/// A coefficient in log-polar form: `value = exp(log_modulus) e^{i phase}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogCoefficient {
    pub log_modulus: f64,
    pub phase: f64,
}

impl LogCoefficient {
    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.log_modulus.exp(), self.phase)
    }

    /// `log |K|²`.
    pub fn log_mod2(&self) -> f64 {
        2.0 * self.log_modulus
    }

    pub fn mod2(&self) -> f64 {
        self.log_mod2().exp()
    }
}

/// `K_n^m` evaluated literally: remainder partial sums from the chain,
/// divided by the Z-product and the m-fold partial-sum product.
pub fn coefficient_raw(
    choice: &ZChoice,
    p: &PTParams,
    m: usize,
    n: usize,
) -> Result<LogCoefficient> {
    choice.validate(p)?;
    let chain = p.chain();
    // Σ_{s=k}^{n+m} R(a_s) by direct summation.
    let partial = |k: usize| -> f64 { (k..=n + m).map(|s| chain.remainder(s)).sum() };
    let mut log_num = 0.0;
    for k in m + 1..=n + m {
        log_num += partial(k).ln();
    }
    let mut log_den_m = 0.0;
    for k in 1..=m {
        log_den_m += partial(k).ln();
    }
    let log_z_mod = log_z_product(choice, p, m, n)?.0;
    // Raw phase route: E_n from chain partial sums rather than the closed
    // level formula.
    let phase = choice.alpha() * chain.energy(n);
    Ok(LogCoefficient {
        log_modulus: 0.5 * log_num - log_z_mod - 0.5 * log_den_m,
        phase,
    })
}

/// `K_n^m` through the printed Gamma closed forms (log space).
pub fn coefficient_closed(
    choice: &ZChoice,
    p: &PTParams,
    m: usize,
    n: usize,
) -> Result<LogCoefficient> {
    choice.validate(p)?;
    let (mf, nf) = (m as f64, n as f64);
    let phase = choice.alpha() * p.energy(n);
    let log_modulus = match *choice {
        ZChoice::PhaseOnly { .. } => {
            let rho2 = 2.0 * p.rho();
            (nf - mf) * p.lambda().ln()
                + 0.5 * (2.0 * ln_gamma_real(nf + 1.0)?
                    + ln_gamma_real(2.0 * nf + 2.0 * mf + rho2)?
                    + ln_gamma_real(nf + mf + rho2)?
                    - ln_gamma_real(nf + mf + 1.0)?
                    - 2.0 * ln_gamma_real(nf + 2.0 * mf + rho2)?)
        }
        ZChoice::GammaWeighted { kappa, .. } => {
            let nu = p.nu();
            0.5 * (-2.0 * mf * kappa.ln()
                + 2.0 * ln_gamma_real(nf + 1.0)?
                + ln_gamma_real(nf + mf + nu + 1.0)?
                + ln_gamma_real(2.0 * mf + nu + 1.0)?
                - ln_gamma_real(nf + mf + 1.0)?
                - 2.0 * ln_gamma_real(nf + 2.0 * mf + nu + 1.0)?)
        }
    };
    Ok(LogCoefficient { log_modulus, phase })
}

/// Tabulated `|K_n^m|²` and phases for `n = 0..=n_max`.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub m: usize,
    pub mod2: Vec<f64>,
    pub phase: Vec<f64>,
}

impl CoefficientTable {
    pub fn build(choice: &ZChoice, p: &PTParams, m: usize, n_max: usize) -> Result<Self> {
        let mut mod2 = Vec::with_capacity(n_max + 1);
        let mut phase = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let c = coefficient_closed(choice, p, m, n)?;
            mod2.push(c.mod2());
            phase.push(c.phase);
        }
        Ok(CoefficientTable { m, mod2, phase })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt() -> PTParams {
        PTParams::new(2.0, 2.0, 1.0).unwrap()
    }

    #[test]
    fn k00_is_one() {
        let p = pt();
        for choice in [
            ZChoice::PhaseOnly { alpha: 0.4 },
            ZChoice::GammaWeighted {
                alpha: 0.4,
                kappa: 1.0,
            },
        ] {
            let raw = coefficient_raw(&choice, &p, 0, 0).unwrap();
            assert!(raw.log_modulus.abs() < 1e-14);
            assert!(raw.phase.abs() < 1e-14);
            let closed = coefficient_closed(&choice, &p, 0, 0).unwrap();
            assert!(closed.log_modulus.abs() < 1e-12);
        }
    }

    #[test]
    fn worked_value_k11() {
        // |K_1^1|² = R(a_2) / (R(a_1)+R(a_2)) = 7/12 for λ=1, ρ=2.
        let p = pt();
        let choice = ZChoice::PhaseOnly { alpha: 0.0 };
        let raw = coefficient_raw(&choice, &p, 1, 1).unwrap();
        assert!((raw.mod2() - 7.0 / 12.0).abs() < 1e-13);
        let closed = coefficient_closed(&choice, &p, 1, 1).unwrap();
        assert!((closed.mod2() - 7.0 / 12.0).abs() < 1e-13);
    }

    #[test]
    fn raw_equals_closed_both_choices() {
        let p = pt();
        for choice in [
            ZChoice::PhaseOnly { alpha: 0.37 },
            ZChoice::GammaWeighted {
                alpha: 0.37,
                kappa: 1.0,
            },
        ] {
            for m in 0..=6usize {
                for n in 0..=20usize {
                    let raw = coefficient_raw(&choice, &p, m, n).unwrap();
                    let closed = coefficient_closed(&choice, &p, m, n).unwrap();
                    assert!(
                        (raw.log_modulus - closed.log_modulus).abs()
                            <= 1e-10 * closed.log_modulus.abs().max(1.0),
                        "modulus m={m} n={n}: {} vs {}",
                        raw.log_modulus,
                        closed.log_modulus
                    );
                    assert!(
                        (raw.phase - closed.phase).abs() <= 1e-10 * closed.phase.abs().max(1.0),
                        "phase m={m} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn gamma_weighted_m0_matches_beta_ratio() {
        // h_n for the Gamma-weighted family: |K_n^0|² = Γ(n+1)Γ(ν+1)/Γ(n+ν+1).
        let p = pt(); // ν = 3
        let choice = ZChoice::GammaWeighted {
            alpha: 0.0,
            kappa: 1.0,
        };
        let oracle = |n: usize| -> f64 {
            let (mut num, mut den) = (1.0, 1.0);
            for j in 1..=n {
                num *= j as f64;
            }
            for j in 1..=n {
                den *= 3.0 + j as f64; // (ν+1)_n
            }
            num / den
        };
        for n in 0..=10 {
            let c = coefficient_closed(&choice, &p, 0, n).unwrap();
            assert!(
                (c.mod2() - oracle(n)).abs() < 1e-12 * oracle(n),
                "n = {n}: {} vs {}",
                c.mod2(),
                oracle(n)
            );
        }
        // Worked example: n = 3, ν = 3 gives Γ(4)Γ(4)/Γ(7) = 36/720 = 0.05.
        let c3 = coefficient_closed(&choice, &p, 0, 3).unwrap();
        assert!((c3.mod2() - 0.05).abs() < 1e-14);
    }

    #[test]
    fn table_rows_positive_and_m0_reproduces_hn() {
        let p = pt();
        let choice = ZChoice::PhaseOnly { alpha: 0.0 };
        let table = CoefficientTable::build(&choice, &p, 0, 15).unwrap();
        // h_n (m = 0) closed form: λ^{2n} n! Γ(2ρ+2n)/Γ(2ρ+n).
        for (n, &m2) in table.mod2.iter().enumerate() {
            assert!(m2 > 0.0);
            let nf = n as f64;
            let hn2 = (ln_gamma_real(nf + 1.0).unwrap()
                + ln_gamma_real(4.0 + 2.0 * nf).unwrap()
                - ln_gamma_real(4.0 + nf).unwrap())
            .exp();
            assert!((m2 - hn2).abs() < 1e-11 * hn2, "n = {n}");
        }
    }
}
