//! Tolerance and budget knobs for series summation and contour quadrature.

use crate::error::{Error, Result};

/// Controls for series truncation and Mellin-Barnes contour evaluation.
///
/// `contour_offset` is the margin added to `max(−b_j)` when placing the
/// vertical integration line; `contour_halfwidth` and `contour_points` fix
/// the initial window `[−T, T]` and its sampling, after which the window is
/// grown at constant spacing until the integrand tail is negligible.
#[derive(Debug, Clone, Copy)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub contour_offset: f64,
    pub contour_halfwidth: f64,
    pub contour_points: usize,
}

impl SeriesControl {
    pub fn new(
        rel_tol: f64,
        max_terms: usize,
        contour_offset: f64,
        contour_halfwidth: f64,
        contour_points: usize,
    ) -> Result<Self> {
        let ctl = SeriesControl {
            rel_tol,
            max_terms,
            contour_offset,
            contour_halfwidth,
            contour_points,
        };
        ctl.validate()?;
        Ok(ctl)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidControl("rel_tol must be > 0".into()));
        }
        if self.max_terms < 1 {
            return Err(Error::InvalidControl("max_terms must be >= 1".into()));
        }
        if self.contour_points < 3 || self.contour_points % 2 == 0 {
            return Err(Error::InvalidControl(
                "contour_points must be >= 3 and odd".into(),
            ));
        }
        Ok(())
    }

    /// Tighten the contour tolerance, keeping the series tolerance.
    pub fn with_contour_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}

impl Default for SeriesControl {
    /// Series tolerance 1e-10, contour tolerance handled by callers that
    /// loosen `rel_tol` to 1e-6 (contour accuracy is the limiting factor and
    /// is surfaced in every downstream tolerance).
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-10,
            max_terms: 20_000,
            contour_offset: 0.5,
            contour_halfwidth: 10.0,
            contour_points: 401,
        }
    }
}

impl SeriesControl {
    /// Default control for contour-backed evaluation (rel_tol 1e-6).
    pub fn contour_default() -> Self {
        SeriesControl {
            rel_tol: 1e-6,
            ..Self::default()
        }
    }
}
