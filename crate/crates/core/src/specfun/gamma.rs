//! Log-gamma and Pochhammer kernels.
//!
//! Everything downstream (hypergeometric series, Mellin-Barnes contours,
//! closed-form coefficient ratios) funnels through `log_gamma`, so it is kept
//! allocation-free and valid on the whole complex plane minus the poles.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Lanczos coefficients for g = 7, n = 9 (the GSL set).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const TWO_PI: f64 = std::f64::consts::TAU;

fn is_nonpositive_integer(s: Complex64, tol: f64) -> Option<f64> {
    if s.im.abs() > tol {
        return None;
    }
    let r = s.re.round();
    if r <= 0.0 && (s.re - r).abs() <= tol {
        Some(r)
    } else {
        None
    }
}

/// Principal-branch logarithm of the gamma function.
///
/// `exp(log_gamma(s))` equals `Γ(s)` everywhere the function is defined; on
/// the positive real axis the result is real. Arguments in the left half
/// plane are shifted right through the recurrence
/// `log Γ(s) = log Γ(s + k) − Σ log(s + j)`.
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(s, 1e-12).is_some() {
        return Err(Error::GammaPole { re: s.re, im: s.im });
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut z = s;
    // Push the argument to Re(z) >= 0.5 where the Lanczos sum is accurate.
    while z.re < 0.5 {
        shift += z.ln();
        z += 1.0;
    }
    let zm1 = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    let log_sqrt_two_pi = 0.5 * TWO_PI.ln();
    let value = log_sqrt_two_pi + (zm1 + 0.5) * t.ln() - t + acc.ln();
    Ok(value - shift)
}

/// `Γ(x)` for real `x`, through the complex kernel so that negative
/// non-integer arguments come out with the right sign.
pub fn real_gamma(x: f64) -> Result<f64> {
    let lg = log_gamma(Complex64::new(x, 0.0))?;
    Ok(lg.exp().re)
}

/// `log Γ(x)` for real positive `x` (the common case in coefficient ratios).
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    let lg = log_gamma(Complex64::new(x, 0.0))?;
    Ok(lg.re)
}

/// Rising factorial `(a)_n = a (a+1) ⋯ (a+n−1)` as an explicit product.
///
/// Exact for small integer inputs; the empty product is 1.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    let mut acc = 1.0;
    for k in 0..n {
        acc *= a + k as f64;
    }
    acc
}
