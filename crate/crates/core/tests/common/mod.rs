//! Shared helpers for the integration tests: an independent quadrature
//! oracle for the singular weight, and a least-squares slope fitter for
//! log-log decay checks.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Adaptive Simpson integration with Richardson acceptance, absolute
/// tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn recur<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recur(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recur(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recur(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Total mass of the weight `(1-t)^{-α}(1+t)^{α-1}` on (-1, 1):
/// exactly `π / sin(απ)`.
pub fn weight_total_mass(alpha: f64) -> f64 {
    PI / (alpha * PI).sin()
}

/// Oracle for `∫_{-1}^{1} f(t) (1-t)^{-α} (1+t)^{α-1} dt`, independent of the
/// Gauss-Jacobi construction under test. Each endpoint singularity is removed
/// by an exact power substitution, leaving two smooth integrals on (0, 1):
///
/// * right half, `u = (1-t)^{1-α}`:  `∫₀¹ f(t(u)) (1+t(u))^{α-1} / (1-α) du`
///   with `t(u) = 1 - u^{1/(1-α)}`;
/// * left half, `v = (1+t)^α`:  `∫₀¹ f(t(v)) (1-t(v))^{-α} / α dv`
///   with `t(v) = v^{1/α} - 1`.
pub fn weight_integral<F: Fn(f64) -> f64>(f: &F, alpha: f64) -> f64 {
    let tol = weight_total_mass(alpha) * 2e-14;
    // The additional u = s⁴ / v = s⁴ layers keep every corner exponent ≥ 3,
    // so the integrands are C³ at 0 and Simpson's error control is honest.
    let right = |s: f64| {
        let u = s * s * s * s;
        let t = 1.0 - u.powf(1.0 / (1.0 - alpha));
        f(t) * (1.0 + t).powf(alpha - 1.0) / (1.0 - alpha) * 4.0 * s * s * s
    };
    let left = |s: f64| {
        let v = s * s * s * s;
        let t = v.powf(1.0 / alpha) - 1.0;
        f(t) * (1.0 - t).powf(-alpha) / alpha * 4.0 * s * s * s
    };
    adaptive_simpson(&right, 0.0, 1.0, tol) + adaptive_simpson(&left, 0.0, 1.0, tol)
}

/// Moment `∫ t^m` against the weight, via the oracle above.
pub fn weight_moment(m: u32, alpha: f64) -> f64 {
    weight_integral(&|t: f64| t.powi(m as i32), alpha)
}

/// Least-squares slope of y against x.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}

/// Cyclic Jacobi eigensolver for small symmetric matrices: returns
/// eigenvalues ascending and the matching orthonormal eigenvectors as
/// columns (`vecs[i][j]` = component i of eigenvector j). Test-side oracle,
/// independent of the library's own linear algebra.
pub fn jacobi_eigen(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut q = vec![vec![0.0; n]; n];
    for (i, row) in q.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let scale = m
        .iter()
        .flatten()
        .fold(0.0f64, |acc, &x| acc.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                off = off.max(m[i][j].abs());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for r in p + 1..n {
                if m[p][r].abs() <= 1e-300 {
                    continue;
                }
                let theta = 0.5 * (m[r][r] - m[p][p]) / m[p][r];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkr) = (m[k][p], m[k][r]);
                    m[k][p] = c * mkp - s * mkr;
                    m[k][r] = s * mkp + c * mkr;
                }
                for k in 0..n {
                    let (mpk, mrk) = (m[p][k], m[r][k]);
                    m[p][k] = c * mpk - s * mrk;
                    m[r][k] = s * mpk + c * mrk;
                }
                for k in 0..n {
                    let (qkp, qkr) = (q[k][p], q[k][r]);
                    q[k][p] = c * qkp - s * qkr;
                    q[k][r] = s * qkp + c * qkr;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i][i].total_cmp(&m[j][j]));
    let vals: Vec<f64> = order.iter().map(|&i| m[i][i]).collect();
    let vecs: Vec<Vec<f64>> = (0..n)
        .map(|i| order.iter().map(|&j| q[i][j]).collect())
        .collect();
    (vals, vecs)
}
