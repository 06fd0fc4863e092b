//! Finite-difference eigensolver for `-ψ'' + V ψ = E ψ` on a Dirichlet grid.
//!
//! This is the cross-check route against the operator-chain construction:
//! a plain second-difference tridiagonal matrix on the midpoint lattice
//! (Dirichlet walls enter through odd-reflection ghosts, exact for sine
//! modes), Sturm-sequence bisection for the lowest eigenvalues and inverse
//! iteration for eigenvectors. Eigenvalues are Richardson-extrapolated from
//! two grids, which removes the leading discretization term of the
//! three-point stencil.

use crate::error::{Error, Result};
use crate::susy::GridFunction;

/// Count of eigenvalues of the tridiagonal matrix strictly below `lambda`
/// (Sturm sequence via the shifted LDLᵀ pivots).
fn sturm_count(diag: &[f64], off: f64, lambda: f64) -> usize {
    let mut count = 0usize;
    let mut d = f64::INFINITY; // first row has no subdiagonal term
    let off2 = off * off;
    for &t in diag {
        d = t - lambda - if d != 0.0 { off2 / d } else { off2 / 1e-300 };
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// k-th (0-based) eigenvalue by bisection.
fn bisect_eigenvalue(diag: &[f64], off: f64, k: usize) -> f64 {
    let mut lo = diag.iter().cloned().fold(f64::INFINITY, f64::min) - 2.0 * off.abs();
    let mut hi = diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 2.0 * off.abs();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-14 * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Solve `(T - shift) x = b` for tridiagonal `T` with constant off-diagonal,
/// Gaussian elimination with partial pivoting (one extra superdiagonal of
/// fill-in). Row i holds (d[i], e[i], f[i]) in columns (i, i+1, i+2); sub[i]
/// is the not-yet-eliminated entry of row i+1 in column i.
fn solve_shifted(diag: &[f64], off: f64, shift: f64, b: &mut [f64]) {
    let n = diag.len();
    let mut d: Vec<f64> = diag.iter().map(|t| t - shift).collect();
    let mut e = vec![0.0; n];
    let mut f = vec![0.0; n];
    let mut sub = vec![0.0; n];
    for i in 0..n - 1 {
        e[i] = off;
        sub[i] = off;
    }

    for i in 0..n - 1 {
        if sub[i].abs() > d[i].abs() {
            // Swap rows i and i+1 (row i+1 currently reads
            // [sub[i], d[i+1], e[i+1]] in columns i, i+1, i+2).
            b.swap(i, i + 1);
            let old_row_i = (d[i], e[i], f[i]);
            d[i] = sub[i];
            e[i] = d[i + 1];
            f[i] = e[i + 1];
            sub[i] = old_row_i.0;
            d[i + 1] = old_row_i.1;
            e[i + 1] = old_row_i.2;
        }
        let pivot = if d[i] != 0.0 { d[i] } else { 1e-300 };
        let m = sub[i] / pivot;
        d[i + 1] -= m * e[i];
        e[i + 1] -= m * f[i];
        b[i + 1] -= m * b[i];
    }
    for i in (0..n).rev() {
        let mut acc = b[i];
        if i + 1 < n {
            acc -= e[i] * b[i + 1];
        }
        if i + 2 < n {
            acc -= f[i] * b[i + 2];
        }
        b[i] = acc / if d[i] != 0.0 { d[i] } else { 1e-300 };
    }
}

/// One eigenpair of the grid Hamiltonian.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub energy: f64,
    pub state: GridFunction,
}

/// Lowest `count` eigenpairs of `-d²/dx² + V` sampled like `potential`.
///
/// `potential` supplies `V(x_j)` on the interior nodes; the returned states
/// are unit-normalized with positive leading lobe.
pub fn lowest_eigenpairs(
    x_min: f64,
    x_max: f64,
    potential: &[f64],
    count: usize,
) -> Result<Vec<EigenPair>> {
    let n = potential.len();
    if n < 16 {
        return Err(Error::GridTooCoarse(
            "eigensolver needs at least 16 nodes".into(),
        ));
    }
    let h = (x_max - x_min) / n as f64;
    let inv_h2 = 1.0 / (h * h);
    let mut diag: Vec<f64> = potential.iter().map(|v| 2.0 * inv_h2 + v).collect();
    // Odd-reflection ghost at each wall: the midpoint lattice has no
    // boundary node, and ψ(-h/2) = -ψ(h/2) adds 1/h² to the end diagonals.
    diag[0] += inv_h2;
    diag[n - 1] += inv_h2;
    let off = -inv_h2;

    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let lambda = bisect_eigenvalue(&diag, off, k);
        // Inverse iteration from a sine seed of matching node count.
        let mut v: Vec<f64> = (0..n)
            .map(|j| {
                (std::f64::consts::PI * (k + 1) as f64 * (j as f64 + 0.5) / n as f64).sin()
            })
            .collect();
        for _ in 0..4 {
            solve_shifted(&diag, off, lambda + 1e-8 * lambda.abs().max(1.0), &mut v);
            let norm = (v.iter().map(|x| x * x).sum::<f64>()).sqrt();
            if !(norm > 0.0) {
                return Err(Error::NormalizationUnderflow(k));
            }
            for x in &mut v {
                *x /= norm;
            }
        }
        let mut state = GridFunction::new(x_min, x_max, v)?.normalized()?;
        // Deterministic sign: first sizeable lobe positive.
        if let Some(first) = state
            .values()
            .iter()
            .find(|x| x.abs() > 1e-3 * state.values().iter().fold(0.0f64, |a, &b| a.max(b.abs())))
        {
            if *first < 0.0 {
                state = state.scaled(-1.0);
            }
        }
        out.push(EigenPair {
            energy: lambda,
            state,
        });
    }
    Ok(out)
}

/// Richardson-extrapolated eigenvalues: solve on `n` and `2n` midpoints
/// (halving h) and combine as `(4E_fine − E_coarse)/3`.
pub fn extrapolated_energies<V: Fn(f64) -> f64>(
    x_min: f64,
    x_max: f64,
    n: usize,
    potential: V,
    count: usize,
) -> Result<Vec<f64>> {
    let sample = |nn: usize| -> Vec<f64> {
        let h = (x_max - x_min) / nn as f64;
        (0..nn)
            .map(|j| potential(x_min + (j as f64 + 0.5) * h))
            .collect()
    };
    let coarse = lowest_eigenpairs(x_min, x_max, &sample(n), count)?;
    let fine = lowest_eigenpairs(x_min, x_max, &sample(2 * n), count)?;
    Ok(coarse
        .iter()
        .zip(fine.iter())
        .map(|(c, f)| (4.0 * f.energy - c.energy) / 3.0)
        .collect())
}
