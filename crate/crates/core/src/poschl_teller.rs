//! First-type Poschl-Teller model on `(0, πa)`.
//!
//! The potential is taken in the standard trigonometric form with `sin²` and
//! `cos²` denominators and the constant shift `-(l+l')²/4a²` that zeroes the
//! ground-state energy; this is the only form consistent with the printed
//! superpotential and the shape-invariance remainder `(l+l'+1)/a²`.

use crate::error::{Error, Result};
use crate::specfun::ln_gamma_real;
use crate::susy::{GridFunction, ParameterChain, ShapeInvariantModel};

/// Model parameters `(l, l', a)` with the derived quantities
/// `λ = 1/a`, `ρ = (l+l')/2`, `ν = 2ρ − 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PTParams {
    l: f64,
    l_prime: f64,
    a: f64,
}

impl PTParams {
    /// Requires `l, l' >= 3/2` (the essentially self-adjoint regime) and
    /// `a > 0`.
    pub fn new(l: f64, l_prime: f64, a: f64) -> Result<Self> {
        if !(l >= 1.5) || !(l_prime >= 1.5) {
            return Err(Error::Constraint(format!(
                "PT-I requires l, l' >= 3/2, got ({l}, {l_prime})"
            )));
        }
        if !(a > 0.0) {
            return Err(Error::Constraint(format!("length scale a must be > 0, got {a}")));
        }
        Ok(PTParams { l, l_prime, a })
    }

    /// Convenience constructor from `(λ, ρ)` with a symmetric well
    /// `l = l' = ρ`.
    pub fn symmetric(lambda: f64, rho: f64) -> Result<Self> {
        PTParams::new(rho, rho, 1.0 / lambda)
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn l_prime(&self) -> f64 {
        self.l_prime
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn lambda(&self) -> f64 {
        1.0 / self.a
    }

    pub fn rho(&self) -> f64 {
        0.5 * (self.l + self.l_prime)
    }

    pub fn nu(&self) -> f64 {
        2.0 * self.rho() - 1.0
    }

    pub fn domain(&self) -> (f64, f64) {
        (0.0, std::f64::consts::PI * self.a)
    }

    fn u(&self, x: f64) -> f64 {
        x / (2.0 * self.a)
    }

    fn check_domain(&self, x: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if x <= lo || x >= hi {
            return Err(Error::Domain(format!(
                "x = {x} outside the open interval (0, {hi})"
            )));
        }
        Ok(())
    }

    /// Parameters at chain step `k >= 1`: `(l, l') -> (l+k-1, l'+k-1)`.
    pub fn at_chain_step(&self, k: usize) -> PTParams {
        let d = (k - 1) as f64;
        PTParams {
            l: self.l + d,
            l_prime: self.l_prime + d,
            a: self.a,
        }
    }

    /// `V(x)` including the `-(l+l')²/4a²` shift (so the ground level is 0).
    pub fn potential_value(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        let u = self.u(x);
        let quarter = 1.0 / (4.0 * self.a * self.a);
        let s = u.sin();
        let c = u.cos();
        Ok(quarter
            * (self.l * (self.l - 1.0) / (s * s) + self.l_prime * (self.l_prime - 1.0) / (c * c))
            - (self.l + self.l_prime).powi(2) * quarter)
    }

    /// `W(x) = -(1/2a)[l cot(u) - l' tan(u)]`.
    pub fn superpotential_value(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        let u = self.u(x);
        Ok(-(self.l / u.tan() - self.l_prime * u.tan()) / (2.0 * self.a))
    }

    /// `W'(x) = (1/4a²)[l/sin²(u) + l'/cos²(u)]`.
    pub fn superpotential_derivative(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        let u = self.u(x);
        let s = u.sin();
        let c = u.cos();
        Ok((self.l / (s * s) + self.l_prime / (c * c)) / (4.0 * self.a * self.a))
    }

    /// Shape-invariance remainder `R(a_k) = λ²(l + l' + 2k − 1)`, `k >= 1`.
    pub fn remainder(&self, k: usize) -> f64 {
        let lam2 = self.lambda() * self.lambda();
        lam2 * (self.l + self.l_prime + 2.0 * k as f64 - 1.0)
    }

    /// Closed-form level `E_n = λ² n (n + 2ρ)`.
    pub fn energy(&self, n: usize) -> f64 {
        let lam2 = self.lambda() * self.lambda();
        let nf = n as f64;
        lam2 * nf * (nf + 2.0 * self.rho())
    }

    /// Translation chain `a_k = a_1 + 2(k−1)` with `a_1 = l + l'` and the
    /// remainder sequence above.
    pub fn chain(&self) -> ParameterChain {
        let me = *self;
        ParameterChain::new(self.l + self.l_prime, 2.0, move |k| me.remainder(k))
    }

    /// The two Gamma-product closed forms entering the expansion
    /// coefficients: the n-fold numerator product
    /// `λ^{2n} Γ(n+1) Γ(2n+2m+2ρ) / Γ(n+2m+2ρ)` and the m-fold denominator
    /// product `λ^{2m} Γ(n+m+1) Γ(n+2m+2ρ) / (Γ(n+1) Γ(n+m+2ρ))`, both
    /// assembled in log space.
    pub fn gamma_products(&self, m: usize, n: usize) -> Result<(f64, f64)> {
        let rho2 = 2.0 * self.rho();
        let (mf, nf) = (m as f64, n as f64);
        let ln_lam = self.lambda().ln();
        let numerator = if n == 0 {
            1.0
        } else {
            (2.0 * nf * ln_lam + ln_gamma_real(nf + 1.0)?
                + ln_gamma_real(2.0 * nf + 2.0 * mf + rho2)?
                - ln_gamma_real(nf + 2.0 * mf + rho2)?)
            .exp()
        };
        let denominator_extra = if m == 0 {
            1.0
        } else {
            (2.0 * mf * ln_lam + ln_gamma_real(nf + mf + 1.0)?
                + ln_gamma_real(nf + 2.0 * mf + rho2)?
                - ln_gamma_real(nf + 1.0)?
                - ln_gamma_real(nf + mf + rho2)?)
            .exp()
        };
        Ok((numerator, denominator_extra))
    }

    /// Nodeless ground state `sin^l(u) cos^{l'}(u)` at chain step `k`,
    /// sampled on `n_nodes` interior nodes and unit-normalized by the grid
    /// quadrature.
    pub fn ground_state(&self, k: usize, n_nodes: usize) -> Result<GridFunction> {
        let p = self.at_chain_step(k);
        let (lo, hi) = self.domain();
        let raw = GridFunction::sample(lo, hi, n_nodes, |x| {
            let u = p.u(x);
            u.sin().powf(p.l) * u.cos().powf(p.l_prime)
        })?;
        raw.normalized()
    }
}

impl ShapeInvariantModel for PTParams {
    fn domain(&self) -> (f64, f64) {
        PTParams::domain(self)
    }

    fn remainder(&self, k: usize) -> f64 {
        PTParams::remainder(self, k)
    }

    fn superpotential(&self, k: usize, x: f64) -> f64 {
        self.at_chain_step(k)
            .superpotential_value(x)
            .unwrap_or(f64::NAN)
    }

    fn superpotential_derivative(&self, k: usize, x: f64) -> f64 {
        self.at_chain_step(k)
            .superpotential_derivative(x)
            .unwrap_or(f64::NAN)
    }

    fn potential(&self, k: usize, x: f64) -> f64 {
        // Potential of the k-th hierarchy member with ITS ground level at
        // zero: V_1(x; a_k).
        self.at_chain_step(k).potential_value(x).unwrap_or(f64::NAN)
    }

    fn ground_state(&self, k: usize, n_nodes: usize) -> Result<GridFunction> {
        PTParams::ground_state(self, k, n_nodes)
    }
}
