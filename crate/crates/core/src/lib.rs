//! Rational approximation of fractional-power resolvents.
//!
//! For a self-adjoint positive definite operator A with spectrum in
//! `[c, ∞)` (or `[c, λ_N]`), this crate approximates `(I + hA^α)^{-1}`,
//! `α ∈ (0, 1)`, by a k-term rational form
//!
//! ```text
//! (I + hA^α)^{-1}  ≈  Σ_j γ̄_j (η̄_j I + A)^{-1}
//! ```
//!
//! so that one application costs k shifted linear solves. The construction:
//!
//! 1. [`jacobi::build_rule`] — Gauss-Jacobi quadrature for the weight
//!    `(1-t)^{-α}(1+t)^{α-1}`;
//! 2. [`pade::build_pade`] — a rational approximant `R(λ) ≈ λ^{-α}` with
//!    interpolation center τ, in partial-fraction and pole-zero form;
//! 3. [`resolvent::ResolventForm`] — the induced approximation
//!    `S(λ) = R/(R + h) ≈ (1 + hλ^α)^{-1}` re-expanded in partial fractions;
//! 4. [`tau`] — near-optimal placement of the center τ from (k, α, h) and
//!    the spectral bounds, balancing the competing error peaks;
//! 5. [`error_model`] — scalar error models, a-priori estimates, and
//!    measured sup errors;
//! 6. [`operators`] / [`krylov`] — test operators with exact spectral
//!    oracles, direct application of the rational form, and a rational
//!    Krylov projection variant that reuses the form's poles as shifts.
//!
//! Everything is plain `f64`; functions validate their domains and return
//! [`Error`] rather than silently degrading.

pub mod error;
pub mod error_model;
pub mod jacobi;
pub mod krylov;
pub mod operators;
pub mod pade;
pub mod resolvent;
pub mod scalar;
pub mod tau;

mod linalg;

pub use error::{Error, Result};
pub use error_model::{
    balance_peaks, error_estimate_bounded, error_estimate_unbounded,
    error_estimate_unbounded_asymptotic, error_kernel, measure_sup_error, pade_error_estimate,
    resolvent_error, upper_peak_estimate, upper_peak_scale_simplified, BalancePeaks, ErrorProfile,
    ErrorRegime,
};
pub use jacobi::{build_rule, jacobi_poly, jacobi_zeros, JacobiRule, MAX_RULE_SIZE};
pub use krylov::{
    generalized_residual, project_resolvent, rational_arnoldi, shift_invert_shifts,
    shifts_from_poles, KrylovState,
};
pub use operators::{apply_resolvent_form, operator_error_norm, resolvent_exact, Operator};
pub use pade::{build_pade, PadeForm};
pub use resolvent::ResolventForm;
pub use scalar::{lambert_w0, log_gamma};
pub use tau::{
    offset_to_tau, pole_scale, regime_threshold, tau_bounded, tau_bounded_offset,
    tau_reference_bounded, tau_reference_unbounded, tau_switching, tau_unbounded, SpectrumBounds,
    TauChoice, TauRegime,
};
