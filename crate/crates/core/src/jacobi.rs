//! Jacobi polynomials, their zeros, and the Gauss-Jacobi quadrature rule for
//! the weight `ω(t) = (1-t)^{-α} (1+t)^{α-1}` on `[-1, 1]`.
//!
//! The rule underlies the rational approximation of `λ^{-α}`: its nodes and
//! weights become the shifts and coefficients of the partial-fraction form.

use crate::error::{Error, Result};
use crate::scalar::log_gamma;

/// Evaluate the Jacobi polynomial `P_n^{(a,b)}(t)` and its derivative by the
/// standard three-term recurrence (differentiated alongside for the slope).
///
/// Requires `a > -1` and `b > -1`; callers validate. Stable for all `t` in
/// `[-1, 1]` and the moderate degrees used here.
pub fn jacobi_poly(n: usize, a: f64, b: f64, t: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * t;
    let d1 = 0.5 * (a + b + 2.0);
    if n == 1 {
        return (p1, d1);
    }
    let (mut pm2, mut dm2) = (1.0, 0.0);
    let (mut pm1, mut dm1) = (p1, d1);
    let (mut p, mut d) = (p1, d1);
    for m in 2..=n {
        let mf = m as f64;
        let c0 = 2.0 * mf * (mf + a + b) * (2.0 * mf + a + b - 2.0);
        let c1 = 2.0 * mf + a + b - 1.0;
        let c2 = (2.0 * mf + a + b) * (2.0 * mf + a + b - 2.0);
        let c3 = a * a - b * b;
        let c4 = 2.0 * (mf + a - 1.0) * (mf + b - 1.0) * (2.0 * mf + a + b);
        p = (c1 * (c2 * t + c3) * pm1 - c4 * pm2) / c0;
        d = (c1 * (c2 * t + c3) * dm1 + c1 * c2 * pm1 - c4 * dm2) / c0;
        pm2 = pm1;
        dm2 = dm1;
        pm1 = p;
        dm1 = d;
    }
    (p, d)
}

/// Find one zero of `P_n^{(a,b)}` inside the bracket `(lo, hi)`, where the
/// polynomial changes sign. Bisection to near machine width, then a few
/// Newton steps clamped inside the bracket.
fn refine_zero(n: usize, a: f64, b: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let (mut flo, _) = jacobi_poly(n, a, b, lo);
    let (fhi, _) = jacobi_poly(n, a, b, hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::convergence(format!(
            "jacobi_zeros: bracket [{lo}, {hi}] of P_{n}^({a},{b}) lost its sign change"
        )));
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // interval at floating-point resolution
        }
        let (fm, _) = jacobi_poly(n, a, b, mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..4 {
        let (f, df) = jacobi_poly(n, a, b, x);
        if df == 0.0 {
            break;
        }
        let step = f / df;
        let next = x - step;
        x = next.clamp(lo, hi);
        if step.abs() <= 1e-17 {
            break;
        }
    }
    Ok(x)
}

/// All `n` zeros of `P_n^{(a,b)}`, strictly increasing in `(-1, 1)`.
///
/// Built level by level: the zeros of `P_m` strictly interlace those of
/// `P_{m+1}`, so the zeros of the previous degree together with `±1` bracket
/// every zero of the next degree. Each bracket is guaranteed to contain
/// exactly one sign change; any bracket that loses it reports a convergence
/// failure rather than returning a bad rule.
pub fn jacobi_zeros(n: usize, a: f64, b: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::domain("jacobi_zeros: degree must be >= 1".to_string()));
    }
    if !(a > -1.0) || !(b > -1.0) {
        return Err(Error::domain(format!(
            "jacobi_zeros: parameters must satisfy a > -1 and b > -1, got a = {a}, b = {b}"
        )));
    }
    let mut zeros = vec![(b - a) / (a + b + 2.0)];
    for m in 2..=n {
        let mut next = Vec::with_capacity(m);
        for i in 0..m {
            let lo = if i == 0 { -1.0 } else { zeros[i - 1] };
            let hi = if i == m - 1 { 1.0 } else { zeros[i] };
            next.push(refine_zero(m, a, b, lo, hi)?);
        }
        zeros = next;
    }
    for w in zeros.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::convergence(format!(
                "jacobi_zeros: zeros not strictly increasing ({} >= {})",
                w[0], w[1]
            )));
        }
    }
    Ok(zeros)
}

/// The `k`-point Gauss-Jacobi rule for `ω(t) = (1-t)^{-α} (1+t)^{α-1}`.
///
/// Exact for polynomials of degree `2k-1` against ω. Nodes are the zeros of
/// `P_k^{(-α, α-1)}`; all weights are positive and sum to the zeroth moment
/// `π / sin(απ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiRule {
    /// Rule size.
    pub k: usize,
    /// Fractional order in (0, 1); fixes both weight exponents.
    pub alpha: f64,
    /// Strictly increasing nodes in (-1, 1).
    pub nodes: Vec<f64>,
    /// Positive weights, one per node.
    pub weights: Vec<f64>,
}

/// Largest supported rule size. Experiments use k ≤ 60; the cap documents the
/// regime the construction has been validated in.
pub const MAX_RULE_SIZE: usize = 200;

/// Build the `k`-point rule for the weight `(1-t)^{-α} (1+t)^{α-1}`.
///
/// Weights come from the derivative formula
/// `w_j = C / ((1 - ϑ_j²)·P'_k(ϑ_j)²)` with the moment constant `C` assembled
/// in log space, so rules up to the size cap neither overflow nor lose
/// positivity.
pub fn build_rule(k: usize, alpha: f64) -> Result<JacobiRule> {
    if k == 0 || k > MAX_RULE_SIZE {
        return Err(Error::domain(format!(
            "build_rule: rule size {k} outside 1..={MAX_RULE_SIZE}"
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "build_rule: alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let a = -alpha;
    let b = alpha - 1.0;
    let nodes = jacobi_zeros(k, a, b)?;

    // C = 2^{a+b+1} Γ(k+a+1) Γ(k+b+1) / (Γ(k+1) Γ(k+a+b+1)); here a+b = -1,
    // so the power of two is 1 and the last gamma is Γ(k).
    let kf = k as f64;
    let ln_c = log_gamma(kf + a + 1.0)? + log_gamma(kf + b + 1.0)?
        - log_gamma(kf + 1.0)?
        - log_gamma(kf)?;
    let mut weights = Vec::with_capacity(k);
    for &x in &nodes {
        let (_, dp) = jacobi_poly(k, a, b, x);
        let ln_w = ln_c - (1.0 - x * x).ln() - 2.0 * dp.abs().ln();
        let w = ln_w.exp();
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::convergence(format!(
                "build_rule: weight at node {x} is {w}"
            )));
        }
        weights.push(w);
    }
    Ok(JacobiRule { k, alpha, nodes, weights })
}

impl JacobiRule {
    /// Apply the rule to a function on `(-1, 1)`: `Σ w_j f(ϑ_j)`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Zeroth moment of the weight: `π / sin(απ)`.
    pub fn total_mass(&self) -> f64 {
        std::f64::consts::PI / (self.alpha * std::f64::consts::PI).sin()
    }
}
