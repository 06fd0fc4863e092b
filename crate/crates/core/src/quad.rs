//! Adaptive Gauss-Kronrod quadrature (G7-K15 pairs).
//!
//! Used for the Stieltjes moment checks and the trace/normalization
//! integrals. Improper upper limits are handled by callers through an
//! exponential-map substitution; a vector variant integrates a family of
//! integrands sharing one expensive kernel evaluation per node.

use crate::error::{Error, Result};

/// Kronrod-15 abscissae on [-1, 1] (positive half; symmetric).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];

/// Kronrod-15 weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// Gauss-7 weights for the odd-indexed Kronrod abscissae.
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One G7-K15 panel: returns (kronrod value, error estimate).
fn kronrod_panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut result_k = 0.0;
    let mut result_g = 0.0;
    let mut resabs = 0.0;
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let (fv1, fv2) = if x == 0.0 {
            let v = f(center);
            (v, 0.0)
        } else {
            (f(center - half * x), f(center + half * x))
        };
        let s = fv1 + fv2;
        result_k += wk * s;
        resabs += wk * (fv1.abs() + fv2.abs());
        if i % 2 == 1 {
            result_g += WG[i / 2] * s;
        }
    }
    let value = result_k * half;
    let err = ((result_k - result_g) * half).abs();
    // The classic rescaling keeps the estimate meaningful when the panel
    // value is dominated by cancellation.
    let resabs = resabs * half.abs();
    let scaled = if resabs > 0.0 && err > 0.0 {
        (200.0 * err / resabs).powf(1.5).min(1.0) * resabs
    } else {
        err
    };
    (value, scaled.max(err * f64::EPSILON))
}

/// Adaptive integration of `f` over `[a, b]` to relative tolerance
/// `rel_tol` (with an absolute floor `abs_floor` for integrals near zero).
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_floor: f64,
    max_panels: usize,
) -> Result<f64> {
    #[derive(Debug)]
    struct Panel {
        a: f64,
        b: f64,
        value: f64,
        err: f64,
    }
    let (value, err) = kronrod_panel(&mut f, a, b);
    let mut heap = vec![Panel { a, b, value, err }];
    let mut panels_used = 1usize;
    loop {
        let total: f64 = heap.iter().map(|p| p.value).sum();
        let total_err: f64 = heap.iter().map(|p| p.err).sum();
        let target = (rel_tol * total.abs()).max(abs_floor);
        if total_err <= target {
            return Ok(total);
        }
        if panels_used >= max_panels {
            return Err(Error::QuadratureNonConvergent {
                value: total,
                err: total_err,
            });
        }
        // Split the worst panel.
        let worst = heap
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let Panel { a, b, .. } = heap.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Err(Error::QuadratureNonConvergent {
                value: heap.iter().map(|p| p.value).sum(),
                err: f64::INFINITY,
            });
        }
        let (v1, e1) = kronrod_panel(&mut f, a, mid);
        let (v2, e2) = kronrod_panel(&mut f, mid, b);
        heap.push(Panel {
            a,
            b: mid,
            value: v1,
            err: e1,
        });
        heap.push(Panel {
            a: mid,
            b,
            value: v2,
            err: e2,
        });
        panels_used += 1;
    }
}

/// Adaptive integration of a family `f_i(x) = base(x) · weight_i(x)` where
/// `base` is expensive (e.g. a contour-evaluated kernel) and the `weight_i`
/// are cheap multipliers (e.g. powers of x). `eval` returns the full vector
/// of integrand values at `x`; panels are refined until every component
/// meets its tolerance.
pub fn integrate_vector<F: FnMut(f64) -> Vec<f64>>(
    mut eval: F,
    a: f64,
    b: f64,
    n_components: usize,
    rel_tol: f64,
    abs_floor: f64,
    max_panels: usize,
) -> Result<Vec<f64>> {
    struct Panel {
        a: f64,
        b: f64,
        value: Vec<f64>,
        err: Vec<f64>,
        worst: f64,
    }

    let panel_of = |f: &mut F, a: f64, b: f64| -> Panel {
        let center = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut result_k = vec![0.0; n_components];
        let mut result_g = vec![0.0; n_components];
        for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
            let mut accumulate = |vals: Vec<f64>, idx: usize| {
                for (c, v) in vals.into_iter().enumerate() {
                    result_k[c] += wk * v;
                    if idx % 2 == 1 {
                        result_g[c] += WG[idx / 2] * v;
                    }
                }
            };
            if x == 0.0 {
                accumulate(f(center), i);
            } else {
                accumulate(f(center - half * x), i);
                accumulate(f(center + half * x), i);
            }
        }
        let value: Vec<f64> = result_k.iter().map(|v| v * half).collect();
        let err: Vec<f64> = result_k
            .iter()
            .zip(result_g.iter())
            .map(|(k, g)| ((k - g) * half).abs())
            .collect();
        let worst = err.iter().cloned().fold(0.0, f64::max);
        Panel {
            a,
            b,
            value,
            err,
            worst,
        }
    };

    let mut heap = vec![panel_of(&mut eval, a, b)];
    let mut panels_used = 1usize;
    loop {
        let mut total = vec![0.0; n_components];
        let mut total_err = vec![0.0; n_components];
        for p in &heap {
            for c in 0..n_components {
                total[c] += p.value[c];
                total_err[c] += p.err[c];
            }
        }
        let ok = (0..n_components)
            .all(|c| total_err[c] <= (rel_tol * total[c].abs()).max(abs_floor));
        if ok {
            return Ok(total);
        }
        if panels_used >= max_panels {
            return Err(Error::QuadratureNonConvergent {
                value: total[0],
                err: total_err.iter().cloned().fold(0.0, f64::max),
            });
        }
        let worst = heap
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.worst.partial_cmp(&y.1.worst).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let Panel { a, b, .. } = heap.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Err(Error::QuadratureNonConvergent {
                value: 0.0,
                err: f64::INFINITY,
            });
        }
        heap.push(panel_of(&mut eval, a, mid));
        heap.push(panel_of(&mut eval, mid, b));
        panels_used += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(|x| x * x * x, 0.0, 2.0, 1e-12, 1e-300, 100).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn smooth_exponential() {
        let v = integrate(|x| (-x).exp(), 0.0, 30.0, 1e-12, 1e-300, 200).unwrap();
        assert!((v - 1.0).abs() < 1e-11, "{v}");
    }

    #[test]
    fn integrable_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2 despite the singular endpoint.
        let v = integrate(|x| x.max(1e-300).powf(-0.5), 0.0, 1.0, 1e-9, 1e-12, 4000).unwrap();
        assert!((v - 2.0).abs() < 1e-6, "{v}");
    }

    #[test]
    fn log_singularity() {
        // ∫_0^1 ln(1/x) dx = 1.
        let v = integrate(|x| -x.max(1e-300).ln(), 0.0, 1.0, 1e-10, 1e-13, 4000).unwrap();
        assert!((v - 1.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn vector_moments_of_beta_weight() {
        // Moments of 3(1-x)^2 on (0,1): ∫ x^n 3(1-x)^2 dx = 6/((n+1)(n+2)(n+3)).
        let n_max = 6;
        let vals = integrate_vector(
            |x| {
                let w = 3.0 * (1.0 - x) * (1.0 - x);
                (0..=n_max).map(|n| x.powi(n as i32) * w).collect()
            },
            0.0,
            1.0,
            n_max + 1,
            1e-12,
            1e-15,
            500,
        )
        .unwrap();
        for (n, v) in vals.iter().enumerate() {
            let nf = n as f64;
            let expected = 6.0 / ((nf + 1.0) * (nf + 2.0) * (nf + 3.0));
            assert!((v - expected).abs() < 1e-12, "n = {n}: {v} vs {expected}");
        }
    }

    #[test]
    fn reports_non_convergence() {
        let r = integrate(|x| (1.0 / x).sin() / x, 1e-6, 1.0, 1e-14, 1e-300, 4);
        assert!(matches!(r, Err(Error::QuadratureNonConvergent { .. })));
    }
}
