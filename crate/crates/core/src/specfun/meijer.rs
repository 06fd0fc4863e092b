//! Meijer G-function evaluation.
//!
//! Two parameter shapes are supported, which are the two the closed-form
//! weight/normalization expressions actually produce:
//!
//! * "upper-reducible": `m = 1`, `n = p`, first lower parameter 0. These
//!   reduce to a Gamma prefactor times a pFq series (the residue chain of the
//!   single Γ(s) factor) and accept arguments of either sign.
//! * "lower-only": `n = 0`, `m = q`. These are evaluated by trapezoidal
//!   quadrature of the Mellin-Barnes integral along a vertical line placed
//!   right of every pole of `∏ Γ(b_j + s)`. Repeated lower parameters (double
//!   poles) need no case analysis on this route.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{hypergeometric_pfq, log_gamma, real_gamma, SeriesControl};

/// Parameter lists specifying one Meijer G instance
/// `G^{m,n}_{p,q}(x | a_1..a_p ; b_1..b_q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeijerGSpec {
    pub m_idx: usize,
    pub n_idx: usize,
    pub p: usize,
    pub q: usize,
    pub a_list: Vec<f64>,
    pub b_list: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    UpperReducible,
    LowerOnly,
}

impl MeijerGSpec {
    pub fn new(
        m_idx: usize,
        n_idx: usize,
        p: usize,
        q: usize,
        a_list: Vec<f64>,
        b_list: Vec<f64>,
    ) -> Result<Self> {
        let spec = MeijerGSpec {
            m_idx,
            n_idx,
            p,
            q,
            a_list,
            b_list,
        };
        spec.shape()?;
        Ok(spec)
    }

    fn shape(&self) -> Result<Shape> {
        if self.a_list.len() != self.p || self.b_list.len() != self.q {
            return Err(Error::UnsupportedShape(format!(
                "parameter list lengths ({}, {}) do not match (p, q) = ({}, {})",
                self.a_list.len(),
                self.b_list.len(),
                self.p,
                self.q
            )));
        }
        if self.m_idx > self.q || self.n_idx > self.p {
            return Err(Error::UnsupportedShape(
                "require m <= q and n <= p".into(),
            ));
        }
        if self.m_idx == 1 && self.n_idx == self.p && self.b_list.first().copied() == Some(0.0) {
            return Ok(Shape::UpperReducible);
        }
        if self.n_idx == 0 && self.m_idx == self.q {
            return Ok(Shape::LowerOnly);
        }
        Err(Error::UnsupportedShape(format!(
            "G^{{{},{}}}_{{{},{}}} is neither upper-reducible (m=1, n=p, b1=0) nor lower-only (n=0, m=q)",
            self.m_idx, self.n_idx, self.p, self.q
        )))
    }
}

/// Evaluate the G-function at real argument `x`.
///
/// Upper-reducible shapes accept either sign of `x`; lower-only shapes
/// require `x > 0`.
pub fn meijer_g(spec: &MeijerGSpec, x: f64, ctl: &SeriesControl) -> Result<f64> {
    ctl.validate()?;
    match spec.shape()? {
        Shape::UpperReducible => residue_series(spec, x, ctl),
        Shape::LowerOnly => {
            if x <= 0.0 {
                return Err(Error::Domain(format!(
                    "lower-only Meijer G requires x > 0, got {x}"
                )));
            }
            contour_integral(spec, x, ctl)
        }
    }
}

/// Residue-series route: `G^{1,p}_{p,q}(x | a; 0, b_2..) =
/// ∏Γ(1−a_i)/∏Γ(1−b_j) · pFq(1−a; 1−b_rest; −x)`.
fn residue_series(spec: &MeijerGSpec, x: f64, ctl: &SeriesControl) -> Result<f64> {
    let alphas: Vec<f64> = spec.a_list.iter().map(|a| 1.0 - a).collect();
    let betas: Vec<f64> = spec.b_list[1..].iter().map(|b| 1.0 - b).collect();
    let mut prefactor = 1.0;
    for &al in &alphas {
        prefactor *= real_gamma(al)?;
    }
    for &be in &betas {
        prefactor /= real_gamma(be)?;
    }
    Ok(prefactor * hypergeometric_pfq(&alphas, &betas, -x, ctl)?)
}

/// Hard cap on one-sided contour samples before declaring non-convergence.
const MAX_CONTOUR_SAMPLES: usize = 6_000_000;

fn contour_integral(spec: &MeijerGSpec, x: f64, ctl: &SeriesControl) -> Result<f64> {
    // Cancel identical Γ(b+s)/Γ(a+s) pairs; this is exact and removes the
    // shared poles (e.g. the m = 0 weight collapses G^{3,0}_{3,3} to
    // G^{1,0}_{1,1}).
    let mut num: Vec<f64> = spec.b_list.clone();
    let mut den: Vec<f64> = Vec::with_capacity(spec.p);
    for &a in &spec.a_list {
        if let Some(pos) = num.iter().position(|&b| b == a) {
            num.swap_remove(pos);
        } else {
            den.push(a);
        }
    }

    // Exponential decay rate of |integrand| is (π/2)·delta per unit |t|;
    // delta = 0 means algebraic decay |t|^{-mu}.
    let delta = num.len() as i64 - den.len() as i64;
    let mu: f64 = den.iter().sum::<f64>() - num.iter().sum::<f64>();
    if delta < 0 || (delta == 0 && mu <= 1.0) {
        return Err(Error::ContourPlacement(format!(
            "integrand does not decay along vertical lines (delta = {delta}, mu = {mu})"
        )));
    }
    // Balanced kernels are supported on (0, 1): for x >= 1 the line can be
    // pushed to +∞ (no right poles, x^{-σ} → 0), so the integral vanishes.
    if delta == 0 && x >= 1.0 {
        return Ok(0.0);
    }

    if !(ctl.contour_offset > 0.0) {
        return Err(Error::ContourPlacement(format!(
            "offset margin must be positive, got {}",
            ctl.contour_offset
        )));
    }
    let sigma_min = spec
        .b_list
        .iter()
        .fold(f64::NEG_INFINITY, |acc, &b| acc.max(-b))
        + ctl.contour_offset;
    for &b in &spec.b_list {
        let arg = b + sigma_min;
        let r = arg.round();
        if r <= 0.0 && (arg - r).abs() < 1e-9 {
            return Err(Error::PoleOnContour(sigma_min));
        }
    }

    let ln_x = x.ln();
    // The on-axis log-integrand is convex in σ; placing the line near its
    // minimum (the saddle) keeps the quadrature conditioned even when the
    // result sits many orders below the integrand scale.
    let log_f0 = |sigma: f64| -> f64 {
        let mut w = -sigma * ln_x;
        for &b in &num {
            w += ln_gamma_positive(b + sigma);
        }
        for &a in &den {
            w -= ln_gamma_positive(a + sigma);
        }
        w
    };
    let mut sigma = sigma_min;
    let mut best = log_f0(sigma_min);
    let mut step = 0.25;
    let mut probe = sigma_min;
    while probe < sigma_min + 60.0 {
        probe += step;
        step *= 1.2;
        let v = log_f0(probe);
        if v < best {
            best = v;
            sigma = probe;
        }
    }

    // Spacing from the initial window, refined when the x-oscillation
    // e^{-it ln x} is faster than the default resolves.
    let base_dt = 2.0 * ctl.contour_halfwidth / (ctl.contour_points - 1) as f64;
    let dt = base_dt.min(std::f64::consts::PI / (4.0 * (1.0 + ln_x.abs())));

    let eval = |t: f64| -> Result<Complex64> {
        let s = Complex64::new(sigma, t);
        let mut w = -s * ln_x;
        for &b in &num {
            w += log_gamma(s + b)?;
        }
        for &a in &den {
            w -= log_gamma(s + a)?;
        }
        Ok(w.exp())
    };

    // Conjugate symmetry: parameters and x are real, so only t >= 0 is
    // sampled and the t < 0 half contributes the complex conjugate.
    let f0 = eval(0.0)?;
    let mut sum = 0.5 * f0.re;
    let mut abs_sum = 0.5 * f0.norm();
    let mut prev_mag = f0.norm();
    let k_min = (ctl.contour_points / 2).max(8);
    let mut k = 1usize;
    loop {
        let fk = eval(k as f64 * dt)?;
        let mag = fk.norm();
        sum += fk.re;
        abs_sum += mag;
        if k >= k_min {
            // Remaining-tail bound in sum units: geometric for exponential
            // decay, else |t|^{-mu} with the oscillation-damped alternative
            // 2|f|/(|ln x| dt) from integration by parts.
            let tail = if delta > 0 {
                let ratio = (mag / prev_mag.max(f64::MIN_POSITIVE)).min(0.999);
                mag * ratio / (1.0 - ratio)
            } else {
                let absolute = mag * (k as f64) / (mu - 1.0);
                if ln_x != 0.0 {
                    absolute.min(2.0 * mag / (ln_x.abs() * dt))
                } else {
                    absolute
                }
            };
            // The signed partial sum is the right scale under cancellation;
            // the abs_sum floor stops at the rounding limit when the value
            // sits at the conditioning limit of the line.
            let floor = if k > 250_000 { 1e-12 } else { 1e-15 };
            let target = (0.1 * ctl.rel_tol * sum.abs()).max(floor * abs_sum);
            if tail <= target.max(f64::MIN_POSITIVE) {
                break;
            }
        }
        if k >= MAX_CONTOUR_SAMPLES {
            return Err(Error::ContourNonConvergent { points: k });
        }
        prev_mag = mag;
        k += 1;
    }

    Ok(sum * dt / std::f64::consts::PI)
}

/// Real log-gamma for strictly positive arguments, used only for the
/// saddle search (falls back to a large value at poles, which the search
/// then avoids).
fn ln_gamma_positive(x: f64) -> f64 {
    if x <= 0.0 {
        return f64::INFINITY;
    }
    match log_gamma(Complex64::new(x, 0.0)) {
        Ok(v) => v.re,
        Err(_) => f64::INFINITY,
    }
}
