//! Integration checks of the error model: the pointwise models track the
//! true errors inside their validity gates, the a-priori sup-error estimates
//! are sharp to the documented factors, the predicted peak location matches
//! brute force, the kernel has the two-peak shape the center selection
//! relies on, and the measured profile is internally consistent.

mod common;

use common::fit_slope;
use fracres::{
    build_pade, error_estimate_bounded, error_estimate_unbounded,
    error_estimate_unbounded_asymptotic, error_kernel, measure_sup_error, pade_error_estimate,
    resolvent_error, tau_bounded, tau_unbounded, upper_peak_estimate, ErrorRegime, ResolventForm,
};
use std::f64::consts::{E, PI};

const H: f64 = 1e-2;
const C: f64 = 1.0;

/// Validity gates for the pointwise models: the leading term must be small
/// against the target (expansion valid), above rounding noise, and λ must sit
/// away from the interpolation center where cancellation dominates.
fn gated(lambda: f64, tau: f64, alpha: f64, model: f64) -> bool {
    model <= 0.1 * lambda.powf(-alpha) && model >= 1e-12 && (lambda / tau - 1.0).abs() > 0.05
}

#[test]
fn power_model_tracks_true_error_in_gated_band() {
    for &alpha in &[0.3, 0.7] {
        for &k in &[20usize, 40] {
            let tau = tau_unbounded(k as f64, alpha, H, C).unwrap().tau;
            let f = build_pade(k, alpha, tau).unwrap();
            let mut n = 0;
            for i in 0..200 {
                let lambda = 1e-2 * 10f64.powf(i as f64 * 14.0 / 199.0);
                let model = pade_error_estimate(lambda, k as f64, alpha, tau);
                if !gated(lambda, tau, alpha, model) {
                    continue;
                }
                let actual = (lambda.powf(-alpha) - f.eval(lambda)).abs();
                let r = actual / model;
                assert!(
                    (0.7..=1.3).contains(&r),
                    "alpha={alpha}, k={k}, lambda={lambda}: ratio {r}"
                );
                n += 1;
            }
            assert!(n >= 40, "alpha={alpha}, k={k}: only {n} gated points");
        }
    }
}

#[test]
fn resolvent_model_tracks_true_error_in_gated_band() {
    for &alpha in &[0.3, 0.7] {
        for &k in &[20usize, 40] {
            let tau = tau_unbounded(k as f64, alpha, H, C).unwrap().tau;
            let f = build_pade(k, alpha, tau).unwrap();
            let s = ResolventForm::build(&f, H).unwrap();
            let mut n = 0;
            for i in 0..200 {
                let lambda = 1e-2 * 10f64.powf(i as f64 * 14.0 / 199.0);
                let model =
                    2.0 * H * (alpha * PI).sin() * error_kernel(lambda, k as f64, alpha, H, tau);
                let pmodel = pade_error_estimate(lambda, k as f64, alpha, tau);
                if !gated(lambda, tau, alpha, pmodel) || model < 1e-12 {
                    continue;
                }
                let r = resolvent_error(lambda, &s).abs() / model;
                assert!(
                    (0.7..=1.3).contains(&r),
                    "alpha={alpha}, k={k}, lambda={lambda}: ratio {r}"
                );
                n += 1;
            }
            assert!(n >= 40, "alpha={alpha}, k={k}: only {n} gated points");
        }
    }
}

#[test]
fn asymptotic_estimate_is_sharp_at_alpha_06() {
    for &k in &[20usize, 30, 40, 50, 60] {
        let alpha = 0.6;
        let tau = tau_unbounded(k as f64, alpha, H, C).unwrap().tau;
        let f = build_pade(k, alpha, tau).unwrap();
        let s = ResolventForm::build(&f, H).unwrap();
        let sup = measure_sup_error(&s, C, None).unwrap().sup_error;
        let estimate = error_estimate_unbounded_asymptotic(k as f64, alpha, H, C);
        let r = sup / estimate;
        assert!(
            (1.0 / 3.0..=3.0).contains(&r),
            "k={k}: sup {sup} vs estimate {estimate}, ratio {r}"
        );
    }
}

#[test]
fn preasymptotic_estimate_underbounds_small_alpha_by_shrinking_factor() {
    // At alpha = 0.4 the asymptotic form is invalid over most of this k
    // range; the pre-asymptotic peak-height estimate is finite and the
    // measured sup exceeds it by a factor that decreases toward 1 with k.
    let alpha = 0.4;
    let mut prev = f64::INFINITY;
    for &k in &[20usize, 30, 40, 50, 60] {
        let tau = tau_unbounded(k as f64, alpha, H, C).unwrap().tau;
        let f = build_pade(k, alpha, tau).unwrap();
        let s = ResolventForm::build(&f, H).unwrap();
        let sup = measure_sup_error(&s, C, None).unwrap().sup_error;
        let estimate = error_estimate_unbounded(k as f64, alpha, H, C).unwrap();
        let r = sup / estimate;
        assert!(
            (1.2..=4.2).contains(&r),
            "k={k}: sup {sup} vs estimate {estimate}, ratio {r}"
        );
        assert!(r < prev, "k={k}: ratio {r} did not decrease (prev {prev})");
        prev = r;
    }
}

#[test]
fn asymptotic_estimate_reports_nan_outside_validity() {
    // For alpha = 0.4, h = 1e-2, c = 1 the squared-log argument crosses zero
    // between k = 38 and k = 39.
    assert!(error_estimate_unbounded_asymptotic(38.0, 0.4, H, C).is_nan());
    let v = error_estimate_unbounded_asymptotic(39.0, 0.4, H, C);
    assert!(v.is_finite() && v > 0.0);
}

#[test]
fn predicted_peak_location_matches_brute_force() {
    for &(k, alpha) in &[(20usize, 0.5), (40, 0.3), (30, 0.75)] {
        let tau = tau_unbounded(k as f64, alpha, H, C).unwrap().tau;
        let (lam2, scale) = upper_peak_estimate(k as f64, alpha, H, tau).unwrap();
        assert!(scale >= 1.0);
        let (mut best_l, mut best_g) = (0.0, 0.0f64);
        for i in 0..100_000 {
            let l = (lam2 / 100.0) * 10f64.powf(i as f64 * 4.0 / 99_999.0);
            let g = error_kernel(l, k as f64, alpha, H, tau);
            if g > best_g {
                best_g = g;
                best_l = l;
            }
        }
        let rel = (lam2 - best_l).abs() / best_l;
        assert!(rel <= 0.1, "k={k}, alpha={alpha}: predicted {lam2} vs brute {best_l}");
    }
}

#[test]
fn kernel_has_two_maxima_straddling_the_center() {
    let (k, alpha) = (15usize, 0.75);
    let tau = tau_unbounded(k as f64, alpha, H, C).unwrap().tau;
    let (lam2, _) = upper_peak_estimate(k as f64, alpha, H, tau).unwrap();
    let lo = 1e-6 * tau;
    let hi = 1e3 * lam2;
    let n = 3000;
    let at = |i: usize| lo * (hi / lo).powf(i as f64 / (n - 1) as f64);
    let vals: Vec<f64> = (0..n)
        .map(|i| error_kernel(at(i), k as f64, alpha, H, tau))
        .collect();
    let maxima: Vec<(f64, f64)> = (1..n - 1)
        .filter(|&i| vals[i] > vals[i - 1] && vals[i] > vals[i + 1])
        .map(|i| (at(i), vals[i]))
        .collect();
    assert_eq!(maxima.len(), 2, "maxima found: {maxima:?}");
    assert!(maxima[0].0 < tau && maxima[1].0 > tau);
    // The kernel vanishes to high order at the center between the peaks.
    let dip = error_kernel(tau, k as f64, alpha, H, tau);
    assert!(dip <= 1e-6 * maxima[0].1.min(maxima[1].1));
}

#[test]
fn resolvent_error_at_left_edge_matches_model() {
    let (k, alpha) = (20usize, 0.6);
    let tau = tau_unbounded(k as f64, alpha, H, C).unwrap().tau;
    let f = build_pade(k, alpha, tau).unwrap();
    let s = ResolventForm::build(&f, H).unwrap();
    let actual = resolvent_error(C, &s).abs();
    let model = 2.0 * H * (alpha * PI).sin() * error_kernel(C, k as f64, alpha, H, tau);
    let r = actual / model;
    assert!((0.7..=1.5).contains(&r), "ratio {r}");
}

#[test]
fn asymptotic_estimate_decays_at_the_advertised_rate() {
    // After dividing out the slowly varying squared-logarithm factor, the
    // estimate decays like k^{-4α}.
    // The validity threshold k̄ grows as alpha shrinks; start each fit range
    // safely above it.
    for &(alpha, k_start) in &[(0.3, 300.0), (0.6, 50.0), (0.8, 50.0)] {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for i in 0..8 {
            let k = k_start * 8f64.powf(i as f64 / 7.0);
            let ln_arg = (4.0 * k * k * E / (alpha * alpha)).ln()
                + (1.0 / alpha) * (H / (C.powf(-alpha) + H)).ln();
            assert!(ln_arg > 0.0);
            let v = error_estimate_unbounded_asymptotic(k, alpha, H, C);
            xs.push(k.ln());
            ys.push(v.ln() - 2.0 * alpha * ln_arg.ln());
        }
        let slope = fit_slope(&xs, &ys);
        let want = -4.0 * alpha;
        assert!(
            (slope - want).abs() <= 0.1 * alpha,
            "alpha={alpha}: slope {slope}, expected {want}"
        );
    }
}

#[test]
fn measured_profile_is_internally_consistent() {
    let (k, alpha, lambda_max) = (12usize, 0.5, 1e6);
    let tau = tau_bounded(k as f64, alpha, H, C, lambda_max).unwrap().tau;
    let f = build_pade(k, alpha, tau).unwrap();
    let s = ResolventForm::build(&f, H).unwrap();
    let profile = measure_sup_error(&s, C, Some(lambda_max)).unwrap();
    assert_eq!(profile.k, k);
    assert_eq!(profile.regime, ErrorRegime::Bounded);
    assert!(profile.argmax_lambda >= C && profile.argmax_lambda <= lambda_max);
    for i in 0..100 {
        let lambda = C * (lambda_max / C).powf(i as f64 / 99.0);
        let pointwise = resolvent_error(lambda, &s).abs();
        assert!(
            profile.sup_error >= pointwise * (1.0 - 1e-9),
            "lambda={lambda}: pointwise {pointwise} above sup {}",
            profile.sup_error
        );
    }
    let th2 = error_estimate_bounded(k as f64, alpha, H, C, lambda_max);
    assert_eq!(profile.estimate_value, th2);

    let tau_u = tau_unbounded(k as f64, alpha, H, C).unwrap().tau;
    let fu = build_pade(k, alpha, tau_u).unwrap();
    let su = ResolventForm::build(&fu, H).unwrap();
    let unbounded = measure_sup_error(&su, C, None).unwrap();
    assert_eq!(unbounded.regime, ErrorRegime::Unbounded);
    assert_eq!(
        unbounded.estimate_value,
        error_estimate_unbounded(k as f64, alpha, H, C).unwrap()
    );
}
