//! Scalar error models for the approximants and the machinery to measure the
//! true sup error.
//!
//! For `R(λ) ≈ λ^{-α}` with center τ, the leading error term is
//! `2 sin(απ) λ^{-α} ρ(λ)^{2k}` with `ρ(λ) = (√λ - √τ)/(√λ + √τ)`; for the
//! resolvent approximant the corresponding kernel is
//! `g(λ) = λ^{-α} ρ(λ)^{2k} / (λ^{-α} + h)²`, which vanishes at 0, τ, and ∞
//! and has exactly two interior maxima — one left of τ and one at
//! `λ₂ ≈ s_k · 4k²τ/α²`. The τ selectors balance the relevant peak heights;
//! this module evaluates the peaks, the a-priori estimates implied by the
//! balancing, and the measured sup error of a concrete [`ResolventForm`].

use crate::error::{Error, Result};
use crate::resolvent::ResolventForm;
use crate::scalar::lambert_w0;
use crate::tau::tau_unbounded;

use std::f64::consts::E;
use std::f64::consts::PI;

/// Interval the sup error was taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorRegime {
    /// `[c, ∞)`, searched up to an adaptive cap beyond the last peak.
    Unbounded,
    /// `[c, λ_N]`.
    Bounded,
}

/// Measured sup error of a resolvent approximant over a spectral interval,
/// together with the matching a-priori estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorProfile {
    /// Order of the measured form.
    pub k: usize,
    /// Fractional order.
    pub alpha: f64,
    /// Resolvent scale.
    pub h: f64,
    /// Center of the underlying approximant.
    pub tau: f64,
    /// max |(1 + h λ^α)^{-1} - S(λ)| over the searched interval.
    pub sup_error: f64,
    /// Location where the maximum was attained.
    pub argmax_lambda: f64,
    /// A-priori estimate matching the regime (peak-balance form for the
    /// unbounded interval, endpoint-decay form for the bounded one).
    pub estimate_value: f64,
    /// Which interval was searched.
    pub regime: ErrorRegime,
}

/// Signed ratio `ρ(λ) = (√λ - √τ)/(√λ + √τ)`; |ρ| < 1 for λ, τ > 0.
fn contraction_ratio(lambda: f64, tau: f64) -> f64 {
    let (s, t) = (lambda.sqrt(), tau.sqrt());
    (s - t) / (s + t)
}

/// Leading error model `2 sin(απ) λ^{-α} ρ(λ)^{2k}` for the approximation of
/// `λ^{-α}` itself. Intended domain λ > 0, τ > 0, k ≥ 1; real k is allowed
/// for slope diagnostics.
pub fn pade_error_estimate(lambda: f64, k: f64, alpha: f64, tau: f64) -> f64 {
    let rho = contraction_ratio(lambda, tau).abs();
    2.0 * (alpha * PI).sin() * lambda.powf(-alpha) * rho.powf(2.0 * k)
}

/// Error kernel `g(λ) = λ^{-α} ρ(λ)^{2k} / (λ^{-α} + h)²` for the resolvent
/// approximant; the sup error behaves like `2h sin(απ) · sup g`.
pub fn error_kernel(lambda: f64, k: f64, alpha: f64, h: f64, tau: f64) -> f64 {
    let rho = contraction_ratio(lambda, tau).abs();
    let la = lambda.powf(-alpha);
    la * rho.powf(2.0 * k) / ((la + h) * (la + h))
}

/// Exact pointwise error `(1 + h λ^α)^{-1} - S(λ)` of a resolvent form;
/// λ ≥ 0 (at 0 the target is exactly 1).
pub fn resolvent_error(lambda: f64, form: &ResolventForm) -> f64 {
    1.0 / (1.0 + form.h * lambda.powf(form.alpha)) - form.eval(lambda)
}

/// Heights of the competing error peaks at a given center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalancePeaks {
    /// Kernel value at the left end of the spectrum, g(c).
    pub low_end: f64,
    /// Model height of the interior high-λ peak:
    /// `(α²/(4k²τ))^α e^{-2α} / h²`.
    pub high_peak: f64,
    /// Kernel value at the right end g(λ_N), when λ_N is known.
    pub high_end: Option<f64>,
}

/// Evaluate the peak heights the τ selectors balance: the unbounded rule
/// equates `low_end` with `high_peak`, the bounded rule equates `low_end`
/// with `high_end`.
pub fn balance_peaks(
    tau: f64,
    k: f64,
    alpha: f64,
    h: f64,
    c: f64,
    lambda_max: Option<f64>,
) -> BalancePeaks {
    let low_end = error_kernel(c, k, alpha, h, tau);
    let high_peak =
        (alpha * alpha / (4.0 * k * k * tau)).powf(alpha) * (-2.0 * alpha).exp() / (h * h);
    let high_end = lambda_max.map(|l| error_kernel(l, k, alpha, h, tau));
    BalancePeaks { low_end, high_peak, high_end }
}

/// Location of the high-λ maximum of the error kernel: returns
/// `(λ₂, s_k)` with `λ₂ = s_k · 4k²τ/α²` and
/// `s_k = exp( W(4α / (h (4k²τ/α²)^α)) / α )`.
pub fn upper_peak_estimate(k: f64, alpha: f64, h: f64, tau: f64) -> Result<(f64, f64)> {
    if !(k >= 1.0 && alpha > 0.0 && alpha < 1.0 && h > 0.0 && tau > 0.0) {
        return Err(Error::domain(format!(
            "upper_peak_estimate: need k >= 1, alpha in (0,1), h > 0, tau > 0; \
             got k={k}, alpha={alpha}, h={h}, tau={tau}"
        )));
    }
    let base = 4.0 * k * k * tau / (alpha * alpha);
    let s = (lambert_w0(4.0 * alpha / (h * base.powf(alpha)))? / alpha).exp();
    Ok((s * base, s))
}

/// Simplified form of the peak-location scale `s_k`,
/// `exp( (4/h) (α²/(4k²τ))^α )`; agrees with the Lambert-W form to O(1%)
/// once the W argument is small (large k).
pub fn upper_peak_scale_simplified(k: f64, alpha: f64, h: f64, tau: f64) -> f64 {
    (4.0 / h * (alpha * alpha / (4.0 * k * k * tau)).powf(alpha)).exp()
}

/// Asymptotic a-priori sup-error estimate for the unbounded interval with the
/// balanced center τ_k:
/// `(2 sin(απ) c^{-α} / h) · (2k e^{1/2}/α)^{-4α} · (ln[(4k²e/α²)(h/(c^{-α}+h))^{1/α}])^{2α}`.
///
/// The squared-logarithm factor requires its argument to exceed 1; below that
/// the asymptotic form is outside its validity region and NaN is returned.
/// [`error_estimate_unbounded`] is the finite-everywhere pre-asymptotic form
/// of the same bound.
pub fn error_estimate_unbounded_asymptotic(k: f64, alpha: f64, h: f64, c: f64) -> f64 {
    let ln_arg = (4.0 * k * k * E / (alpha * alpha)).ln()
        + (1.0 / alpha) * (h / (c.powf(-alpha) + h)).ln();
    if ln_arg <= 0.0 {
        return f64::NAN;
    }
    2.0 * (alpha * PI).sin() * c.powf(-alpha) / h
        * (2.0 * k * E.sqrt() / alpha).powf(-4.0 * alpha)
        * ln_arg.powf(2.0 * alpha)
}

/// Pre-asymptotic a-priori sup-error estimate for the unbounded interval:
/// `2h sin(απ) · high_peak(τ_k)`, i.e. the balanced interior-peak height
/// before any asymptotic simplification. Finite for all k ≥ 1.
pub fn error_estimate_unbounded(k: f64, alpha: f64, h: f64, c: f64) -> Result<f64> {
    let tau = tau_unbounded(k, alpha, h, c)?.tau;
    let peak =
        (alpha * alpha / (4.0 * k * k * tau)).powf(alpha) * (-2.0 * alpha).exp() / (h * h);
    Ok(2.0 * h * (alpha * PI).sin() * peak)
}

/// A-priori sup-error estimate for the bounded interval `[c, λ_N]` with the
/// balanced center τ_{k,N}:
/// `2h sin(απ) (c λ_N)^{-α/2} / ((c^{-α}+h)(λ_N^{-α}+h)) · exp(-4k (c/λ_N)^{1/4})`.
pub fn error_estimate_bounded(k: f64, alpha: f64, h: f64, c: f64, lambda_max: f64) -> f64 {
    2.0 * h * (alpha * PI).sin() * (c * lambda_max).powf(-alpha / 2.0)
        / ((c.powf(-alpha) + h) * (lambda_max.powf(-alpha) + h))
        * (-4.0 * k * (c / lambda_max).powf(0.25)).exp()
}

/// Golden-section maximization of |error| in log-λ coordinates on
/// `[lo, hi]`, to a window of 1e-6 in ln λ (≈ relative in λ).
fn golden_refine(form: &ResolventForm, lo: f64, hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let f = |t: f64| resolvent_error(t.exp(), form).abs();
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > 1e-6 {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let t = 0.5 * (a + b);
    (t.exp(), f(t))
}

/// Measure the sup error of a resolvent form over `[c, λ_N]`, or over
/// `[c, ∞)` when no upper bound is given (searched up to
/// `max(1e16, 10·λ₂)`, past which the kernel shape guarantees decay).
///
/// Scans a 2000-point log grid, refines around the three best grid points by
/// golden section, and checks the interval endpoints explicitly. The returned
/// profile carries the regime-matching a-priori estimate.
pub fn measure_sup_error(
    form: &ResolventForm,
    c: f64,
    lambda_max: Option<f64>,
) -> Result<ErrorProfile> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::domain(format!("measure_sup_error: c must be positive, got {c}")));
    }
    if let Some(l) = lambda_max {
        if !(l > c && l.is_finite()) {
            return Err(Error::domain(format!(
                "measure_sup_error: lambda_max ({l}) must exceed c ({c})"
            )));
        }
    }
    let kf = form.k as f64;
    let upper = match lambda_max {
        Some(l) => l,
        None => {
            let (l2, _) = upper_peak_estimate(kf, form.alpha, form.h, form.tau)?;
            (10.0 * l2).max(1e16)
        }
    };

    const GRID: usize = 2000;
    let (ln_c, ln_u) = (c.ln(), upper.ln());
    let step = (ln_u - ln_c) / (GRID as f64 - 1.0);
    let values: Vec<f64> = (0..GRID)
        .map(|i| resolvent_error((ln_c + step * i as f64).exp(), form).abs())
        .collect();

    // Indices of the three largest grid values, by straight selection.
    let mut top = [0usize; 3];
    let mut top_v = [f64::NEG_INFINITY; 3];
    for (i, &v) in values.iter().enumerate() {
        if v > top_v[0] {
            top = [i, top[0], top[1]];
            top_v = [v, top_v[0], top_v[1]];
        } else if v > top_v[1] {
            top = [top[0], i, top[1]];
            top_v = [top_v[0], v, top_v[1]];
        } else if v > top_v[2] {
            top[2] = i;
            top_v[2] = v;
        }
    }

    let mut best = (c, resolvent_error(c, form).abs());
    let at_upper = resolvent_error(upper, form).abs();
    if at_upper > best.1 {
        best = (upper, at_upper);
    }
    for &i in &top {
        let lo = (ln_c + step * i.saturating_sub(1) as f64).exp();
        let hi = (ln_c + step * (i + 1).min(GRID - 1) as f64).exp();
        let (x, v) = golden_refine(form, lo, hi);
        if v > best.1 {
            best = (x, v);
        }
    }

    let (regime, estimate_value) = match lambda_max {
        Some(l) => (
            ErrorRegime::Bounded,
            error_estimate_bounded(kf, form.alpha, form.h, c, l),
        ),
        None => (
            ErrorRegime::Unbounded,
            error_estimate_unbounded(kf, form.alpha, form.h, c)?,
        ),
    };

    Ok(ErrorProfile {
        k: form.k,
        alpha: form.alpha,
        h: form.h,
        tau: form.tau,
        sup_error: best.1,
        argmax_lambda: best.0.clamp(c, upper),
        estimate_value,
        regime,
    })
}
