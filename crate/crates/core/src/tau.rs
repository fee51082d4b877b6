//! Selection of the interpolation center τ for the resolvent approximant.
//!
//! The sup error of `S_{k-1,k}` over the spectral interval has two (or three)
//! competing local maxima whose heights move in opposite directions as τ
//! grows. The choices here place τ so the dominant peaks balance:
//!
//! * `tau_unbounded` — spectrum `[c, ∞)`: balances the left-end peak against
//!   the interior peak using the Lambert W function;
//! * `tau_bounded` — spectrum `[c, λ_N]`: balances the two endpoint peaks;
//! * `tau_switching` — uses the unbounded choice for small k and the bounded
//!   one once k exceeds a computable threshold (`regime_threshold`), which
//!   marks where the interior peak of the unbounded model would land beyond
//!   λ_N anyway;
//! * `tau_reference_*` — earlier h-independent variants, kept for
//!   comparison experiments.
//!
//! All selectors accept real (non-integer) k ≥ 1 so error-slope diagnostics
//! can sample densely; experiments use integer k.

use crate::error::{Error, Result};
use crate::scalar::lambert_w0;

use std::f64::consts::E;

/// Which selection rule produced a τ value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauRegime {
    /// Balanced for spectrum `[c, ∞)`.
    Unbounded,
    /// Balanced for spectrum `[c, λ_N]`.
    Bounded,
    /// h-independent comparison rule for `[c, ∞)`.
    ReferenceUnbounded,
    /// h-independent comparison rule for `[c, λ_N]`.
    ReferenceBounded,
}

/// A selected center together with how it was selected.
#[derive(Debug, Clone, PartialEq)]
pub struct TauChoice {
    /// The selected center, > 0.
    pub tau: f64,
    /// Rule that produced it.
    pub regime: TauRegime,
    /// The (possibly non-integer) order the selection was made for.
    pub k: f64,
    /// Switching threshold k̄; populated only by [`tau_switching`].
    pub regime_threshold: Option<f64>,
}

/// Spectral interval of the operator: lower bound c, and the largest
/// eigenvalue when known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumBounds {
    /// Lower spectral bound, > 0.
    pub c: f64,
    /// Largest eigenvalue λ_N when known; `None` means only `[c, ∞)` is known.
    pub lambda_max: Option<f64>,
}

impl SpectrumBounds {
    /// Bounds for a spectrum known only to lie in `[c, ∞)`.
    pub fn unbounded(c: f64) -> Result<Self> {
        check_positive("c", c)?;
        Ok(SpectrumBounds { c, lambda_max: None })
    }

    /// Bounds for a spectrum inside `[c, lambda_max]`.
    pub fn bounded(c: f64, lambda_max: f64) -> Result<Self> {
        check_positive("c", c)?;
        if !(lambda_max > c && lambda_max.is_finite()) {
            return Err(Error::domain(format!(
                "SpectrumBounds: lambda_max ({lambda_max}) must exceed c ({c})"
            )));
        }
        Ok(SpectrumBounds { c, lambda_max: Some(lambda_max) })
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive and finite, got {v}")))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("alpha must lie in (0, 1), got {alpha}")))
    }
}

fn check_k(k: f64) -> Result<()> {
    if k >= 1.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("k must be a real >= 1, got {k}")))
    }
}

fn check_interval(c: f64, lambda_max: f64) -> Result<()> {
    check_positive("c", c)?;
    if !(lambda_max >= c && lambda_max.is_finite()) {
        return Err(Error::domain(format!(
            "lambda_max ({lambda_max}) must be >= c ({c})"
        )));
    }
    Ok(())
}

/// Scale factor `φ_k = (α / (2 k e)) · ((c^{-α} + h) / h)^{1/α}` entering the
/// unbounded-spectrum selection.
pub fn pole_scale(k: f64, alpha: f64, h: f64, c: f64) -> Result<f64> {
    check_k(k)?;
    check_alpha(alpha)?;
    check_positive("h", h)?;
    check_positive("c", c)?;
    Ok(alpha / (2.0 * k * E) * ((c.powf(-alpha) + h) / h).powf(1.0 / alpha))
}

/// Center for spectrum `[c, ∞)`:
/// `τ_k = c · φ_k² · exp(2 W(2k / (φ_k α)))` with `φ_k` from [`pole_scale`].
pub fn tau_unbounded(k: f64, alpha: f64, h: f64, c: f64) -> Result<TauChoice> {
    let phi = pole_scale(k, alpha, h, c)?;
    let w = lambert_w0(2.0 * k / (phi * alpha))?;
    Ok(TauChoice {
        tau: c * phi * phi * (2.0 * w).exp(),
        regime: TauRegime::Unbounded,
        k,
        regime_threshold: None,
    })
}

/// h-independent comparison center for spectrum `[c, ∞)`:
/// `τ̃_k = c · (α / (2 k e))² · exp(2 W(4 k² e / α²))`.
pub fn tau_reference_unbounded(k: f64, alpha: f64, c: f64) -> Result<TauChoice> {
    check_k(k)?;
    check_alpha(alpha)?;
    check_positive("c", c)?;
    let s = alpha / (2.0 * k * E);
    let w = lambert_w0(4.0 * k * k * E / (alpha * alpha))?;
    Ok(TauChoice {
        tau: c * s * s * (2.0 * w).exp(),
        regime: TauRegime::ReferenceUnbounded,
        k,
        regime_threshold: None,
    })
}

/// Offset `σ_k = (α λ_N^{1/2} / (8k)) · ln( (λ_N/c) · ((λ_N^{-α}+h)/(c^{-α}+h))^{2/α} )`
/// used by the bounded-spectrum selection; may be negative.
pub fn tau_bounded_offset(k: f64, alpha: f64, h: f64, c: f64, lambda_max: f64) -> Result<f64> {
    check_k(k)?;
    check_alpha(alpha)?;
    check_positive("h", h)?;
    check_interval(c, lambda_max)?;
    let log_term = (lambda_max / c).ln()
        + (2.0 / alpha) * ((lambda_max.powf(-alpha) + h) / (c.powf(-alpha) + h)).ln();
    Ok(alpha * lambda_max.sqrt() / (8.0 * k) * log_term)
}

/// Map a balance offset `sigma` back to a center on `[c, λ_N]`:
/// `τ = (-σ + sqrt(σ² + sqrt(c·λ_N)))²`. Well-defined for any real `σ`,
/// including negative offsets, and always returns a positive center.
pub fn offset_to_tau(sigma: f64, c: f64, lambda_max: f64) -> f64 {
    let root = (sigma * sigma + (c * lambda_max).sqrt()).sqrt();
    let t = -sigma + root;
    t * t
}

/// Center for spectrum `[c, λ_N]`:
/// `τ_{k,N} = (−σ_k + sqrt(σ_k² + (c λ_N)^{1/2}))²` with `σ_k` from
/// [`tau_bounded_offset`]. Tends to `sqrt(c λ_N)` as k → ∞.
pub fn tau_bounded(k: f64, alpha: f64, h: f64, c: f64, lambda_max: f64) -> Result<TauChoice> {
    let sigma = tau_bounded_offset(k, alpha, h, c, lambda_max)?;
    Ok(TauChoice {
        tau: offset_to_tau(sigma, c, lambda_max),
        regime: TauRegime::Bounded,
        k,
        regime_threshold: None,
    })
}

/// h-independent comparison center for spectrum `[c, λ_N]`: same quadratic
/// shape as [`tau_bounded`] with the simpler offset
/// `σ̃_k = (α λ_N^{1/2} / (8k)) · ln(λ_N / c)`.
pub fn tau_reference_bounded(k: f64, alpha: f64, c: f64, lambda_max: f64) -> Result<TauChoice> {
    check_k(k)?;
    check_alpha(alpha)?;
    check_interval(c, lambda_max)?;
    let sigma = alpha * lambda_max.sqrt() / (8.0 * k) * (lambda_max / c).ln();
    Ok(TauChoice {
        tau: offset_to_tau(sigma, c, lambda_max),
        regime: TauRegime::ReferenceBounded,
        k,
        regime_threshold: None,
    })
}

/// Order threshold k̄ above which the bounded selection should take over:
/// `k̄ = (α / (2√2)) · ( ln( (λ_N/c) e² (h/(c^{-α}+h))^{2/α} ) )^{1/2} · (λ_N/c)^{1/4}`.
///
/// When the logarithm's argument is ≤ 1 the formula has no real value; the
/// interior error peak then sits beyond λ_N for every k, so the bounded rule
/// applies throughout and 0 is returned.
pub fn regime_threshold(alpha: f64, h: f64, c: f64, lambda_max: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_positive("h", h)?;
    check_interval(c, lambda_max)?;
    let ratio = lambda_max / c;
    let ln_arg = ratio.ln() + 2.0 + (2.0 / alpha) * (h / (c.powf(-alpha) + h)).ln();
    if ln_arg <= 0.0 {
        return Ok(0.0);
    }
    Ok(alpha / (2.0 * 2.0f64.sqrt()) * ln_arg.sqrt() * ratio.powf(0.25))
}

/// Combined rule: without a known λ_N, always the unbounded selection; with
/// one, the unbounded selection for `k < k̄` and the bounded selection for
/// `k ≥ k̄`. The returned choice carries k̄ whenever λ_N is known.
pub fn tau_switching(k: f64, alpha: f64, h: f64, bounds: &SpectrumBounds) -> Result<TauChoice> {
    match bounds.lambda_max {
        None => tau_unbounded(k, alpha, h, bounds.c),
        Some(lambda_max) => {
            let k_bar = regime_threshold(alpha, h, bounds.c, lambda_max)?;
            let mut choice = if k < k_bar {
                tau_unbounded(k, alpha, h, bounds.c)?
            } else {
                tau_bounded(k, alpha, h, bounds.c, lambda_max)?
            };
            choice.regime_threshold = Some(k_bar);
            Ok(choice)
        }
    }
}
