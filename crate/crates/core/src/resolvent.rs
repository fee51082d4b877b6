//! Rational approximation of the scalar resolvent `(1 + h λ^α)^{-1}`.
//!
//! Given the approximant `R(λ) ≈ λ^{-α}` in pole-zero form `p/q`, the function
//! `S(λ) = R(λ) / (R(λ) + h) = p(λ) / (p(λ) + h q(λ))` approximates the
//! resolvent. `p + h q` has k simple real negative roots, so S has its own
//! partial-fraction expansion `Σ γ̄_j / (λ + η̄_j)` with positive residues;
//! this module locates those poles (each bracketed between consecutive poles
//! of R, plus one to the left of them all) and assembles the residues in log
//! space.

use crate::error::{Error, Result};
use crate::pade::PadeForm;

/// Partial-fraction form of the resolvent approximant
/// `S(λ) = Σ_j residues[j] / (λ + poles[j]) ≈ (1 + h λ^α)^{-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolventForm {
    /// Number of terms (matches the underlying approximant order).
    pub k: usize,
    /// Fractional order in (0, 1).
    pub alpha: f64,
    /// Interpolation center of the underlying approximant.
    pub tau: f64,
    /// Resolvent scale parameter h > 0.
    pub h: f64,
    /// Shift magnitudes η̄_j > 0, strictly increasing (poles are -η̄_j).
    pub poles: Vec<f64>,
    /// Residues γ̄_j > 0, matched index-wise to `poles`.
    pub residues: Vec<f64>,
}

/// `R(λ) + h` and its derivative, in the stable partial-fraction form.
fn defect_and_slope(form: &PadeForm, h: f64, lambda: f64) -> (f64, f64) {
    let mut f = h;
    let mut df = 0.0;
    for (&g, &e) in form.coeffs.iter().zip(&form.shifts) {
        let d = lambda + e;
        f += g / d;
        df -= g / (d * d);
    }
    (f, df)
}

/// Find the single root of `R(λ) + h` inside `(lo, hi)`, where the sign is
/// already known to change: bisection to near machine width, then a few
/// Newton steps clamped to the bracket.
fn refine_root(form: &PadeForm, h: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let (mut flo, _) = defect_and_slope(form, h, lo);
    let (fhi, _) = defect_and_slope(form, h, hi);
    if !(flo > 0.0 && fhi < 0.0) {
        return Err(Error::convergence(format!(
            "resolvent pole search: bracket ({lo}, {hi}) does not straddle the root \
             (f(lo)={flo}, f(hi)={fhi})"
        )));
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (fm, _) = defect_and_slope(form, h, mid);
        if fm > 0.0 {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        let _ = flo;
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..4 {
        let (f, df) = defect_and_slope(form, h, x);
        if df == 0.0 {
            break;
        }
        let step = f / df;
        let mut next = x - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        x = next;
    }
    Ok(x)
}

/// Establish a sign-changing bracket strictly inside `(left, right)` where the
/// defect `R + h` runs from +∞ (at the pole on the left) to -∞ (at the pole on
/// the right). The nudge away from the endpoints starts at 1e-14 of the gap
/// and grows until both signs are correct; failure to find signs by a 1e-6
/// fraction of the gap is reported loudly rather than masked.
fn bracketed_root(form: &PadeForm, h: f64, left: f64, right: f64) -> Result<f64> {
    let gap = right - left;
    let mut frac = 1e-14;
    while frac <= 1e-6 {
        let lo = left + frac * gap;
        let hi = right - frac * gap;
        if lo < hi {
            let (flo, _) = defect_and_slope(form, h, lo);
            let (fhi, _) = defect_and_slope(form, h, hi);
            if flo > 0.0 && fhi < 0.0 {
                return refine_root(form, h, lo, hi);
            }
        }
        frac *= 10.0;
    }
    Err(Error::convergence(format!(
        "resolvent pole search: no sign change found between poles at {left} and {right} \
         (k={}, alpha={}, tau={}, h={h})",
        form.k, form.alpha, form.tau
    )))
}

impl ResolventForm {
    /// Build the resolvent form from an approximant and a scale `h > 0`.
    ///
    /// The k poles of S are located one per bracket: to the left of the most
    /// negative pole of R (where the defect runs from h toward -∞ as λ
    /// grows, with a guaranteed sign change inside
    /// `[-(η_max + Σγ/h)(1 + 1e-9) - 1, -η_max)` — the margin past the
    /// escape root must be relative, because at centers near 1e17 one ulp
    /// exceeds any absolute margin, and the region left of -η_max holds
    /// exactly one root however wide the bracket), and one between each
    /// pair of consecutive poles of R. Residues are
    /// `γ̄_j = p(-η̄_j) / (h · Π_{i≠j} (η̄_i - η̄_j))`, evaluated as signed log
    /// sums so large k cannot overflow the intermediate products.
    pub fn build(form: &PadeForm, h: f64) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::domain(format!(
                "ResolventForm::build: h must be positive, got {h}"
            )));
        }
        let k = form.k;
        let eta_max = form.shifts[k - 1];
        let coeff_sum: f64 = form.coeffs.iter().sum();

        // Roots collected in ascending λ order (most negative first).
        let mut roots = Vec::with_capacity(k);
        let escape_scale = eta_max + coeff_sum / h;
        roots.push(bracketed_root(form, h, -escape_scale * (1.0 + 1e-9) - 1.0, -eta_max)?);
        for j in (0..k - 1).rev() {
            roots.push(bracketed_root(form, h, -form.shifts[j + 1], -form.shifts[j])?);
        }

        // Ascending λ means descending η̄ = -λ; flip to ascending shifts.
        let mut poles: Vec<f64> = roots.iter().map(|&r| -r).collect();
        poles.reverse();
        for w in poles.windows(2) {
            if !(w[0] < w[1] && w[0] > 0.0) {
                return Err(Error::convergence(
                    "ResolventForm::build: poles not simple, negative, and ordered".to_string(),
                ));
            }
        }

        let ln_h = h.ln();
        let mut residues = Vec::with_capacity(k);
        for j in 0..k {
            let (mut sign, mut ln) = form.numerator_log(-poles[j]);
            ln -= ln_h;
            for i in 0..k {
                if i != j {
                    let d = poles[i] - poles[j];
                    sign *= d.signum();
                    ln -= d.abs().ln();
                }
            }
            let res = sign * ln.exp();
            if !(res.is_finite() && res > 0.0) {
                return Err(Error::convergence(format!(
                    "ResolventForm::build: residue {res} at pole {} not positive and finite",
                    poles[j]
                )));
            }
            residues.push(res);
        }

        Ok(ResolventForm {
            k,
            alpha: form.alpha,
            tau: form.tau,
            h,
            poles,
            residues,
        })
    }

    /// Partial-fraction evaluation `Σ γ̄_j / (λ + η̄_j)`; intended for λ ≥ 0.
    pub fn eval(&self, lambda: f64) -> f64 {
        self.residues
            .iter()
            .zip(&self.poles)
            .map(|(&g, &e)| g / (lambda + e))
            .sum()
    }
}
