//! The rational approximant `R_{k-1,k}(λ) ≈ λ^{-α}` centered at a parameter
//! `τ > 0`, in two equivalent representations:
//!
//! * partial fractions: `R(λ) = Σ_j γ_j / (λ + η_j)` with positive
//!   coefficients and shifts, obtained from the Gauss-Jacobi rule;
//! * pole-zero form: `R(λ) = p_{k-1}(λ) / q_k(λ)` with
//!   `p_{k-1}(λ) = χ·Π_r (λ + ε_r)` and `q_k(λ) = Π_j (λ + η_j)`.
//!
//! The center τ is where the approximation is exact (`R(τ) = τ^{-α}`), with
//! contact of order `2k`; its placement is the business of the `tau` module.

use crate::error::{Error, Result};
use crate::jacobi::{build_rule, jacobi_zeros};
use crate::scalar::log_gamma;

/// Rational approximant of `λ^{-α}` with numerator degree `k-1` and
/// denominator degree `k`, interpolating at the center `τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PadeForm {
    /// Denominator degree (rule size).
    pub k: usize,
    /// Fractional order in (0, 1).
    pub alpha: f64,
    /// Interpolation center, > 0.
    pub tau: f64,
    /// Partial-fraction coefficients γ_j > 0, matched index-wise to `shifts`.
    pub coeffs: Vec<f64>,
    /// Partial-fraction shifts η_j > 0, strictly increasing (poles are -η_j).
    pub shifts: Vec<f64>,
    /// Numerator root magnitudes ε_r > 0, strictly increasing
    /// (zeros are -ε_r); length k-1.
    pub zeros: Vec<f64>,
    /// Leading numerator coefficient χ > 0.
    pub leading_coeff: f64,
    /// ln χ, kept alongside so downstream products can stay in log space.
    ln_leading_coeff: f64,
}

/// Build the approximant for the given order, fractional power, and center.
///
/// The coefficients come from the `k`-point Gauss-Jacobi rule: with nodes ϑ_j
/// and weights w_j,
/// `γ_j = (2 sin(απ) τ^{1-α} / π) · w_j / (1 + ϑ_j)` and
/// `η_j = τ (1 - ϑ_j) / (1 + ϑ_j)`;
/// the numerator roots map the zeros of the complementary-exponent Jacobi
/// polynomial the same way, and χ is assembled in log space (the raw product
/// over/underflows for large k).
pub fn build_pade(k: usize, alpha: f64, tau: f64) -> Result<PadeForm> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::domain(format!("build_pade: tau must be positive, got {tau}")));
    }
    let rule = build_rule(k, alpha)?; // validates k and alpha

    let sin_a = (alpha * std::f64::consts::PI).sin();
    let scale = 2.0 * sin_a * tau.powf(1.0 - alpha) / std::f64::consts::PI;
    // Nodes ascend, so η = τ(1-ϑ)/(1+ϑ) descends; build then reverse to keep
    // the shifts strictly increasing.
    let mut pairs: Vec<(f64, f64)> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&th, &w)| {
            let eta = tau * (1.0 - th) / (1.0 + th);
            let gamma = scale * w / (1.0 + th);
            (eta, gamma)
        })
        .collect();
    pairs.reverse();
    let shifts: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let coeffs: Vec<f64> = pairs.iter().map(|p| p.1).collect();

    let mut zeros: Vec<f64> = if k >= 2 {
        jacobi_zeros(k - 1, alpha, 1.0 - alpha)?
            .iter()
            .map(|&z| tau * (1.0 - z) / (1.0 + z))
            .collect()
    } else {
        Vec::new()
    };
    zeros.reverse();

    for (name, seq) in [("shifts", &shifts), ("coeffs", &coeffs), ("zeros", &zeros)] {
        if seq.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::convergence(format!(
                "build_pade: non-positive or non-finite {name} at k={k}, alpha={alpha}, tau={tau}"
            )));
        }
    }
    for w in shifts.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::convergence(
                "build_pade: partial-fraction shifts not strictly increasing".to_string(),
            ));
        }
    }
    // The negated zeros must interlace the negated shifts:
    // η_1 < ε_1 < η_2 < ... < ε_{k-1} < η_k.
    for r in 0..zeros.len() {
        if !(shifts[r] < zeros[r] && zeros[r] < shifts[r + 1]) {
            return Err(Error::convergence(format!(
                "build_pade: zero {} does not interlace shifts ({}, {})",
                zeros[r],
                shifts[r],
                shifts[r + 1]
            )));
        }
    }

    // χ = τ^{-α} · Γ(k+α) Γ(k+1) Γ(1-α) / (Γ(k) Γ(α+1) Γ(k-α+1))
    //       · (Π_j η_j) / (Π_r ε_r), evaluated as a log sum.
    let kf = k as f64;
    let mut ln_chi = -alpha * tau.ln()
        + log_gamma(kf + alpha)?
        + log_gamma(kf + 1.0)?
        + log_gamma(1.0 - alpha)?
        - log_gamma(kf)?
        - log_gamma(alpha + 1.0)?
        - log_gamma(kf - alpha + 1.0)?;
    for &eta in &shifts {
        ln_chi += eta.ln();
    }
    for &eps in &zeros {
        ln_chi -= eps.ln();
    }
    let chi = ln_chi.exp();
    if !(chi.is_finite() && chi > 0.0) {
        return Err(Error::convergence(format!(
            "build_pade: leading coefficient exp({ln_chi}) not representable"
        )));
    }
    // The leading coefficient must equal Σγ_j (both are the λ→∞ limit of
    // λ·R(λ)); a mismatch means the closed form and the quadrature drifted
    // apart, which is a construction bug worth failing loudly on.
    let coeff_sum: f64 = coeffs.iter().sum();
    if (chi - coeff_sum).abs() > 1e-8 * coeff_sum {
        return Err(Error::convergence(format!(
            "build_pade: leading coefficient {chi} inconsistent with coefficient sum {coeff_sum}"
        )));
    }

    Ok(PadeForm {
        k,
        alpha,
        tau,
        coeffs,
        shifts,
        zeros,
        leading_coeff: chi,
        ln_leading_coeff: ln_chi,
    })
}

impl PadeForm {
    /// Partial-fraction evaluation `Σ γ_j / (λ + η_j)`; the intended domain is
    /// `λ > 0` (between the poles the form is still computable but no longer
    /// approximates anything).
    pub fn eval(&self, lambda: f64) -> f64 {
        self.coeffs
            .iter()
            .zip(&self.shifts)
            .map(|(&g, &e)| g / (lambda + e))
            .sum()
    }

    /// Numerator and denominator of the pole-zero form as separately evaluated
    /// raw products: `p(λ) = χ·Π(λ + ε_r)`, `q(λ) = Π(λ + η_j)`.
    ///
    /// Negative λ is allowed (the resolvent pole search lives there). Raw
    /// products overflow for large k at large |λ|; use [`Self::eval_pole_zero`]
    /// or the log-space helpers for those regimes.
    pub fn eval_poly_parts(&self, lambda: f64) -> (f64, f64) {
        let p = self.leading_coeff
            * self.zeros.iter().map(|&e| lambda + e).product::<f64>();
        let q = self.shifts.iter().map(|&e| lambda + e).product::<f64>();
        (p, q)
    }

    /// Overflow-safe pole-zero evaluation: pairs each numerator factor with a
    /// denominator factor (they interlace, so each ratio is O(1)) and divides
    /// the leading coefficient by the one unpaired denominator factor.
    pub fn eval_pole_zero(&self, lambda: f64) -> f64 {
        let mut r = self.leading_coeff / (lambda + self.shifts[self.k - 1]);
        for i in 0..self.k - 1 {
            r *= (lambda + self.zeros[i]) / (lambda + self.shifts[i]);
        }
        r
    }

    /// Sign and log magnitude of the numerator `p(λ)` at real λ, for product
    /// formulas that must stay in log space.
    pub(crate) fn numerator_log(&self, lambda: f64) -> (f64, f64) {
        let mut sign = 1.0f64;
        let mut ln = self.ln_leading_coeff;
        for &e in &self.zeros {
            let f = lambda + e;
            sign *= f.signum();
            ln += f.abs().ln();
        }
        (sign, ln)
    }
}
