//! Grid-sampled wavefunctions on a Dirichlet interval.
//!
//! Functions are sampled on the `n` midpoints of a uniform partition of
//! `(x_min, x_max)` (half-offset lattice, endpoints excluded); bound states
//! carry implicit zeros at the walls. Two spectral derivative flavours are
//! provided: the sine expansion for functions that vanish at the walls, and
//! the cosine expansion for smooth envelope quotients whose even reflection
//! through the walls is regular. The half-offset lattice makes both discrete
//! transforms exactly orthogonal.

use crate::error::{Error, Result};

/// A real function sampled on the midpoint lattice of a uniform grid.
#[derive(Debug, Clone)]
pub struct GridFunction {
    x_min: f64,
    x_max: f64,
    values: Vec<f64>,
}

/// Fraction of the top of the spectrum inspected by the resolution check,
/// and the relative magnitude above which a function counts as unresolved.
const TAIL_FRACTION: f64 = 0.02;
const TAIL_THRESHOLD: f64 = 1e-6;

fn check_tail(coeffs: &[f64], value_scale: f64) -> Result<()> {
    let n = coeffs.len();
    let max_mag = coeffs.iter().fold(0.0_f64, |a, &c| a.max(c.abs()));
    // A spectrum at machine-noise level relative to the pointwise scale of
    // the function (e.g. a constant under the cosine analysis) is resolved
    // by definition.
    if max_mag <= 1e-13 * value_scale {
        return Ok(());
    }
    let tail_len = ((n as f64 * TAIL_FRACTION) as usize).max(4).min(n - 1);
    let tail_mag = coeffs[n - tail_len..]
        .iter()
        .fold(0.0_f64, |a, &c| a.max(c.abs()));
    if tail_mag > TAIL_THRESHOLD * max_mag {
        return Err(Error::GridTooCoarse(format!(
            "spectrum tail ratio {:.2e} exceeds {TAIL_THRESHOLD:.0e}",
            tail_mag / max_mag
        )));
    }
    Ok(())
}

impl GridFunction {
    pub fn new(x_min: f64, x_max: f64, values: Vec<f64>) -> Result<Self> {
        if !(x_max > x_min) {
            return Err(Error::Domain(format!(
                "grid interval [{x_min}, {x_max}] is empty"
            )));
        }
        if values.len() < 8 {
            return Err(Error::GridTooCoarse(format!(
                "need at least 8 nodes, got {}",
                values.len()
            )));
        }
        Ok(GridFunction {
            x_min,
            x_max,
            values,
        })
    }

    /// Sample `f` on the `n` midpoints of `(x_min, x_max)`.
    pub fn sample<F: Fn(f64) -> f64>(x_min: f64, x_max: f64, n: usize, f: F) -> Result<Self> {
        let h = (x_max - x_min) / n as f64;
        let values = (0..n).map(|j| f(x_min + (j as f64 + 0.5) * h)).collect();
        GridFunction::new(x_min, x_max, values)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / self.values.len() as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        self.x_min + (j as f64 + 0.5) * self.spacing()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// L2 inner product by the midpoint rule.
    pub fn dot(&self, other: &GridFunction) -> f64 {
        debug_assert_eq!(self.values.len(), other.values.len());
        let h = self.spacing();
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| a * b)
            .sum::<f64>()
            * h
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Scale to unit L2 norm; fails when the norm underflows.
    pub fn normalized(&self) -> Result<GridFunction> {
        let n = self.norm();
        if !(n > 1e-280) {
            return Err(Error::NormalizationUnderflow(0));
        }
        let mut out = self.clone();
        for v in &mut out.values {
            *v /= n;
        }
        Ok(out)
    }

    pub fn scaled(&self, c: f64) -> GridFunction {
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= c;
        }
        out
    }

    /// Pointwise `self - c * other`.
    pub fn sub_scaled(&self, other: &GridFunction, c: f64) -> GridFunction {
        let mut out = self.clone();
        for (v, w) in out.values.iter_mut().zip(other.values.iter()) {
            *v -= c * w;
        }
        out
    }

    /// Spectral first derivative under the Dirichlet sine basis
    /// (modes `sin(k π (x-x_min)/L)`, exact on the half-offset lattice).
    ///
    /// Fails with `GridTooCoarse` when the top of the function's own
    /// spectrum carries non-negligible weight.
    pub fn derivative(&self) -> Result<GridFunction> {
        let n = self.values.len();
        // Quarter-period table: sin(pi m / 2n), cos(pi m / 2n) for m mod 4n;
        // mode k at node j samples the angle k(2j+1)pi/2n.
        let (sin_t, cos_t) = quarter_tables(n);

        // DST-II analysis: b_k = (2/n) Σ_j f_j sin(k (2j+1) π / 2n).
        let mut coeffs = vec![0.0; n];
        for (km1, ck) in coeffs.iter_mut().enumerate() {
            let k = km1 + 1;
            let mut idx = k; // angle index at j = 0 is k·1
            let mut acc = 0.0;
            for &fj in &self.values {
                acc += fj * sin_t[idx];
                idx += 2 * k;
                if idx >= 4 * n {
                    idx -= 4 * n;
                }
            }
            *ck = acc * if k == n { 1.0 } else { 2.0 } / n as f64;
        }
        let scale = self.values.iter().fold(0.0_f64, |a, &v| a.max(v.abs()));
        check_tail(&coeffs, scale)?;
        spectral_floor(&mut coeffs, scale);

        // Synthesis of f' = Σ_k b_k (kπ/L) cos(k θ_j).
        let length = self.x_max - self.x_min;
        let mut out = vec![0.0; n];
        for (j, oj) in out.iter_mut().enumerate() {
            let mut idx = 2 * j + 1; // angle index for k = 1
            let mut acc = 0.0;
            for (km1, &bk) in coeffs.iter().enumerate() {
                let k = km1 + 1;
                let wavenumber = k as f64 * std::f64::consts::PI / length;
                acc += bk * wavenumber * cos_t[idx];
                idx += 2 * j + 1;
                if idx >= 4 * n {
                    idx -= 4 * n;
                }
            }
            *oj = acc;
        }
        GridFunction::new(self.x_min, self.x_max, out)
    }

    /// Spectral first derivative under the Neumann cosine basis
    /// (modes `cos(k π (x-x_min)/L)`), for functions whose even reflection
    /// through both walls is smooth.
    pub fn cosine_derivative(&self) -> Result<GridFunction> {
        let n = self.values.len();
        let (sin_t, cos_t) = quarter_tables(n);

        // DCT-II analysis for k = 1..n-1 (the k = 0 mean does not enter the
        // derivative).
        let mut coeffs = vec![0.0; n - 1];
        for (km1, ck) in coeffs.iter_mut().enumerate() {
            let k = km1 + 1;
            let mut idx = k;
            let mut acc = 0.0;
            for &fj in &self.values {
                acc += fj * cos_t[idx];
                idx += 2 * k;
                if idx >= 4 * n {
                    idx -= 4 * n;
                }
            }
            *ck = acc * 2.0 / n as f64;
        }
        let scale = self.values.iter().fold(0.0_f64, |a, &v| a.max(v.abs()));
        check_tail(&coeffs, scale)?;
        spectral_floor(&mut coeffs, scale);

        let length = self.x_max - self.x_min;
        let mut out = vec![0.0; n];
        for (j, oj) in out.iter_mut().enumerate() {
            let mut idx = 2 * j + 1;
            let mut acc = 0.0;
            for (km1, &qk) in coeffs.iter().enumerate() {
                let k = km1 + 1;
                let wavenumber = k as f64 * std::f64::consts::PI / length;
                acc -= qk * wavenumber * sin_t[idx];
                idx += 2 * j + 1;
                if idx >= 4 * n {
                    idx -= 4 * n;
                }
            }
            *oj = acc;
        }
        GridFunction::new(self.x_min, self.x_max, out)
    }
}

/// Zero coefficients at rounding-noise level (relative to the pointwise
/// scale of the analysed function) so that repeated derivative applications
/// (the operator chains) do not amplify top-of-spectrum noise by O(n) per
/// step.
fn spectral_floor(coeffs: &mut [f64], value_scale: f64) {
    let floor = 1e-14 * value_scale;
    for c in coeffs.iter_mut() {
        if c.abs() < floor {
            *c = 0.0;
        }
    }
}

/// sin/cos lookup over the quarter-step lattice `π m / 2n`, `m = 0..4n`.
fn quarter_tables(n: usize) -> (Vec<f64>, Vec<f64>) {
    let step = std::f64::consts::PI / (2 * n) as f64;
    let mut sin_t = Vec::with_capacity(4 * n);
    let mut cos_t = Vec::with_capacity(4 * n);
    for m in 0..4 * n {
        let (s, c) = (step * m as f64).sin_cos();
        sin_t.push(s);
        cos_t.push(c);
    }
    (sin_t, cos_t)
}
