//! Inner products of photon-added states: the defining series and the
//! closed hypergeometric forms.

use num_complex::Complex64;

use crate::coherent::coeffs::coefficient_closed;
use crate::coherent::states::normalization;
use crate::coherent::zchoice::ZChoice;
use crate::error::{Error, Result};
use crate::poschl_teller::PTParams;
use crate::specfun::{hypergeometric_pfq_complex, ln_gamma_real, SeriesControl};

/// `⟨z1; m1 | z2; m2⟩` by the defining series
/// `N1 N2 z̄1^{m2-m1} Σ_n (z̄1 z2)^n / (K̄_{n+m2-m1}^{m1} K_n^{m2})`
/// (stated for `m2 >= m1`; the reverse order goes through conjugation).
pub fn overlap(
    choice: &ZChoice,
    p: &PTParams,
    z1: Complex64,
    m1: usize,
    z2: Complex64,
    m2: usize,
) -> Result<Complex64> {
    if m1 > m2 {
        return Ok(overlap(choice, p, z2, m2, z1, m1)?.conj());
    }
    choice.validate(p)?;
    for z in [z1, z2] {
        if !choice.contains(z) {
            return Err(Error::Domain(format!(
                "label |z| = {} outside the domain radius {}",
                z.norm(),
                choice.domain_radius()
            )));
        }
    }
    let delta = m2 - m1;
    let w = z1.conj() * z2;
    let n1 = normalization(choice, p, m1, z1.norm_sqr())?;
    let n2 = normalization(choice, p, m2, z2.norm_sqr())?;

    let ln_abs_w = if w.norm() > 0.0 {
        w.norm().ln()
    } else {
        f64::NEG_INFINITY
    };
    let arg_w = w.arg();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut prev_mag = f64::NAN;
    let mut converged = false;
    let max_terms = 100_000;
    for n in 0..max_terms {
        let bra = coefficient_closed(choice, p, m1, n + delta)?;
        let ket = coefficient_closed(choice, p, m2, n)?;
        let log_mag = if n == 0 && w.norm() == 0.0 {
            -bra.log_modulus - ket.log_modulus
        } else {
            n as f64 * ln_abs_w - bra.log_modulus - ket.log_modulus
        };
        // 1/(conj(K_{n+δ}^{m1}) K_n^{m2}) carries phase +φ_bra − φ_ket.
        let term = Complex64::from_polar(log_mag.exp(), n as f64 * arg_w + bra.phase - ket.phase);
        sum += term;
        let mag = term.norm();
        if n > 0 {
            let ratio = mag / prev_mag.max(f64::MIN_POSITIVE);
            if mag == 0.0 || (ratio < 0.99 && mag * ratio / (1.0 - ratio) <= 1e-13 * sum.norm())
            {
                converged = true;
                break;
            }
        } else if w.norm() == 0.0 {
            converged = true;
            break;
        }
        prev_mag = mag;
    }
    if !converged {
        return Err(Error::SeriesNonConvergent {
            max_terms,
            last_ratio: prev_mag / sum.norm(),
        });
    }
    let prefactor = z1.conj().powi(delta as i32);
    Ok(n1 * n2 * prefactor * sum)
}

/// The closed hypergeometric overlap (3F4 for the phase-only family, 3F2
/// for the Gamma-weighted one). Only the α = 0 convention is supported:
/// for `m1 != m2` a nonzero phase parameter leaves the series without a
/// single pFq closed form.
pub fn overlap_closed(
    choice: &ZChoice,
    p: &PTParams,
    z1: Complex64,
    m1: usize,
    z2: Complex64,
    m2: usize,
    ctl: &SeriesControl,
) -> Result<Complex64> {
    if m1 > m2 {
        return Ok(overlap_closed(choice, p, z2, m2, z1, m1, ctl)?.conj());
    }
    choice.validate(p)?;
    if choice.alpha() != 0.0 && m1 != m2 {
        return Err(Error::Domain(
            "closed overlap form requires alpha = 0 when m1 != m2".into(),
        ));
    }
    let delta = (m2 - m1) as f64;
    let (m_big, m_small) = (m2 as f64, m1 as f64);
    let n1 = normalization(choice, p, m1, z1.norm_sqr())?;
    let n2 = normalization(choice, p, m2, z2.norm_sqr())?;
    let w = z1.conj() * z2;

    let value = match *choice {
        ZChoice::PhaseOnly { .. } => {
            let rho2 = 2.0 * p.rho();
            let rho = p.rho();
            let log_pref = 2.0 * m_small * p.lambda().ln() + ln_gamma_real(m_big + 1.0)?
                + ln_gamma_real(m_big + m_small + rho2)?
                - ln_gamma_real(delta + 1.0)?
                - ln_gamma_real(m_big + rho2)?;
            let f = hypergeometric_pfq_complex(
                &[m_big + 1.0, 2.0 * m_big + rho2, m_big + m_small + rho2],
                &[
                    delta + 1.0,
                    m_big + rho,
                    m_big + rho + 0.5,
                    m_big + rho2,
                ],
                w * p.a() * p.a() / 4.0,
                ctl,
            )?;
            log_pref.exp() * f
        }
        ZChoice::GammaWeighted { kappa, .. } => {
            let nu = p.nu();
            let log_pref = (m_big + m_small) * kappa.ln() + ln_gamma_real(m_big + 1.0)?
                + ln_gamma_real(m_big + m_small + nu + 1.0)?
                + ln_gamma_real(2.0 * m_big + nu + 1.0)?
                - ln_gamma_real(delta + 1.0)?
                - ln_gamma_real(m_big + nu + 1.0)?
                - 0.5
                    * (ln_gamma_real(2.0 * m_small + nu + 1.0)?
                        + ln_gamma_real(2.0 * m_big + nu + 1.0)?);
            let f = hypergeometric_pfq_complex(
                &[
                    m_big + 1.0,
                    m_big + m_small + nu + 1.0,
                    2.0 * m_big + nu + 1.0,
                ],
                &[delta + 1.0, m_big + nu + 1.0],
                w,
                ctl,
            )?;
            log_pref.exp() * f
        }
    };
    Ok(n1 * n2 * z1.conj().powi((m2 - m1) as i32) * value)
}
