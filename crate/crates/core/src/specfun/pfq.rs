//! Generalized hypergeometric series pFq.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::SeriesControl;

/// Sum of `pFq(a; b; x) = Σ_n ∏(a_i)_n / ∏(b_j)_n · x^n / n!`.
///
/// Terms are built by the ratio recurrence; summation stops once two
/// consecutive terms fall below `ctl.rel_tol` relative to the partial sum
/// (two, because alternating series can have accidentally small terms).
///
/// Convergence classes: `#a <= #b` is entire, `#a == #b + 1` needs `|x| < 1`,
/// and anything beyond is rejected unless `|x| < 1` was requested explicitly
/// (the divergent class is never exercised by the model formulas here).
pub fn hypergeometric_pfq(a: &[f64], b: &[f64], x: f64, ctl: &SeriesControl) -> Result<f64> {
    ctl.validate()?;
    for &bj in b {
        let r = bj.round();
        if r <= 0.0 && (bj - r).abs() < 1e-12 {
            return Err(Error::Domain(format!(
                "pFq lower parameter {bj} is a nonpositive integer"
            )));
        }
    }
    if a.len() == b.len() + 1 && x.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "pFq with #a = #b+1 requires |x| < 1, got x = {x}"
        )));
    }
    if a.len() > b.len() + 1 && x.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "divergent pFq class (#a > #b+1) requires |x| < 1, got x = {x}"
        )));
    }
    if x == 0.0 {
        return Ok(1.0);
    }

    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut small_streak = 0;
    for n in 0..ctl.max_terms {
        let nf = n as f64;
        let mut ratio = x / (nf + 1.0);
        for &ai in a {
            ratio *= ai + nf;
        }
        for &bj in b {
            ratio /= bj + nf;
        }
        term *= ratio;
        // A vanishing term ends the series exactly (some a_i hit a
        // nonpositive integer: the series terminates).
        if term == 0.0 {
            return Ok(sum);
        }
        sum += term;
        if term.abs() <= ctl.rel_tol * sum.abs().max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
        if !sum.is_finite() {
            return Err(Error::SeriesNonConvergent {
                max_terms: n + 1,
                last_ratio: f64::INFINITY,
            });
        }
    }
    Err(Error::SeriesNonConvergent {
        max_terms: ctl.max_terms,
        last_ratio: (term / sum).abs(),
    })
}

/// `pFq` at a complex argument (same series, same convergence rules with
/// `|x|` in place of `x`). The overlap closed forms need this for complex
/// state labels.
pub fn hypergeometric_pfq_complex(
    a: &[f64],
    b: &[f64],
    x: Complex64,
    ctl: &SeriesControl,
) -> Result<Complex64> {
    ctl.validate()?;
    for &bj in b {
        let r = bj.round();
        if r <= 0.0 && (bj - r).abs() < 1e-12 {
            return Err(Error::Domain(format!(
                "pFq lower parameter {bj} is a nonpositive integer"
            )));
        }
    }
    if a.len() > b.len() && x.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "pFq with #a > #b requires |x| < 1, got |x| = {}",
            x.norm()
        )));
    }
    if x.norm() == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }

    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small_streak = 0;
    for n in 0..ctl.max_terms {
        let nf = n as f64;
        let mut ratio = x / (nf + 1.0);
        for &ai in a {
            ratio *= ai + nf;
        }
        for &bj in b {
            ratio /= bj + nf;
        }
        term *= ratio;
        if term.norm() == 0.0 {
            return Ok(sum);
        }
        sum += term;
        if term.norm() <= ctl.rel_tol * sum.norm().max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
        if !sum.norm().is_finite() {
            return Err(Error::SeriesNonConvergent {
                max_terms: n + 1,
                last_ratio: f64::INFINITY,
            });
        }
    }
    Err(Error::SeriesNonConvergent {
        max_terms: ctl.max_terms,
        last_ratio: (term.norm() / sum.norm()).min(f64::INFINITY),
    })
}
