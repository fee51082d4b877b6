//! Flag-to-object plumbing shared by the subcommands: operator
//! construction, spectral-bound resolution, and center-selection strategy
//! dispatch.

use fracres::{
    build_pade, tau_bounded, tau_reference_bounded, tau_reference_unbounded, tau_switching,
    tau_unbounded, Operator, ResolventForm, SpectrumBounds, TauRegime,
};

use crate::config::{check_positive, parse_k_range};
use crate::errors::{usage, CliError, Result};

/// Attach a pipeline-stage label to a library error so failures point at
/// the step that produced them.
pub fn stage(label: &'static str) -> impl Fn(fracres::Error) -> CliError + Copy {
    move |e| CliError::Numeric(format!("{label}: {e}"))
}

/// Euclidean distance between two vectors of equal length.
pub fn l2_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn require<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| {
        usage(format!(
            "--{flag} is required (or set `{flag}` in the config file)"
        ))
    })
}

/// Construct the operator selected by `--operator`:
///
/// * `diag`    — diagonal entries 1,2,…,N, or the explicit `--entries` list;
/// * `diagpow` — diagonal entries j^p for j = 1..=N;
/// * `lap1d`   — (N+1)²·tridiag(−1,2,−1), the Dirichlet Laplacian on (0,1);
/// * `dense`   — the diagonally dominant test matrix N·δ_ij + 1/(1+|i−j|).
pub fn build_operator(
    kind: &str,
    n: Option<u32>,
    p: Option<u32>,
    entries: Option<&str>,
) -> Result<Operator> {
    let need_n = || -> Result<usize> {
        let n = require(n, "n")?;
        if n == 0 {
            return Err(usage("n must be at least 1, got 0"));
        }
        Ok(n as usize)
    };
    match kind {
        "diag" => {
            let vals: Vec<f64> = match entries {
                Some(list) => {
                    let mut vals = Vec::new();
                    for part in list.split(',') {
                        let v: f64 = part.trim().parse().map_err(|_| {
                            usage(format!(
                                "entries must be a comma-separated list of numbers, got {part:?}"
                            ))
                        })?;
                        if !(v.is_finite() && v > 0.0) {
                            return Err(usage(format!(
                                "entries must all be positive (the operator must be positive definite), got {v}"
                            )));
                        }
                        vals.push(v);
                    }
                    if let Some(n) = n {
                        if n as usize != vals.len() {
                            return Err(usage(format!(
                                "n ({n}) disagrees with the number of entries ({})",
                                vals.len()
                            )));
                        }
                    }
                    vals
                }
                None => (1..=need_n()?).map(|j| j as f64).collect(),
            };
            Operator::diagonal(vals).map_err(stage("constructing diagonal operator"))
        }
        "diagpow" => {
            let n = need_n()?;
            let p = require(p, "p")?;
            Operator::diagonal_power(n, p).map_err(stage("constructing diagonal-power operator"))
        }
        "lap1d" => {
            let n = need_n()?;
            Operator::laplacian_1d(n).map_err(stage("constructing 1-D Laplacian"))
        }
        "dense" => {
            let n = need_n()?;
            let mut matrix = vec![vec![0.0; n]; n];
            for (i, row) in matrix.iter_mut().enumerate() {
                for (j, cell) in row.iter_mut().enumerate() {
                    let off = 1.0 / (1.0 + (i as f64 - j as f64).abs());
                    *cell = if i == j { n as f64 + off } else { off };
                }
            }
            Operator::dense_spd(matrix).map_err(stage("constructing dense operator"))
        }
        other => Err(usage(format!(
            "operator must be one of diag, diagpow, lap1d, dense; got {other:?}"
        ))),
    }
}

/// Spectral bounds for center selection: user flags override values
/// computed from the operator; with no operator, `c` defaults to 1.
/// `unbounded` discards the upper bound after all overrides, forcing the
/// `[c, ∞)` center machinery even when the operator's extent is known.
pub fn resolve_bounds(
    op: Option<&Operator>,
    c_flag: Option<f64>,
    lmax_flag: Option<f64>,
    unbounded: bool,
) -> Result<SpectrumBounds> {
    if let Some(c) = c_flag {
        check_positive(c, "c")?;
    }
    if let Some(l) = lmax_flag {
        check_positive(l, "lambda-max")?;
    }
    let mut bounds = match op {
        Some(op) if c_flag.is_none() || lmax_flag.is_none() => op
            .spectrum_bounds()
            .map_err(stage("computing spectral bounds"))?,
        _ => SpectrumBounds { c: c_flag.unwrap_or(1.0), lambda_max: None },
    };
    if let Some(c) = c_flag {
        bounds.c = c;
    }
    if let Some(l) = lmax_flag {
        bounds.lambda_max = Some(l);
    }
    if let Some(l) = bounds.lambda_max {
        if l < bounds.c {
            return Err(usage(format!(
                "lambda-max ({l}) must not be smaller than c ({})",
                bounds.c
            )));
        }
    }
    if unbounded {
        bounds.lambda_max = None;
    }
    Ok(bounds)
}

/// A center choice plus where it came from, for reports and CSV comments.
/// The switching strategy's label also records the regime threshold k̄.
pub struct ResolvedTau {
    pub tau: f64,
    pub label: String,
}

/// Turn `--tau` / `--tau-strategy` into a concrete center for order `k`.
///
/// `optimal` picks the peak-balancing center (τ_k on `[c, ∞)`, τ_{k,N}
/// when λ_N is known); `reference` picks the damping-free baseline center
/// (τ̃_k / τ̃_{k,N}); `switching` compares k with the regime threshold k̄
/// and requires λ_N.
pub fn resolve_tau(
    k: u32,
    alpha: f64,
    h: Option<f64>,
    bounds: &SpectrumBounds,
    explicit: Option<f64>,
    strategy: &str,
) -> Result<ResolvedTau> {
    if let Some(tau) = explicit {
        check_positive(tau, "tau")?;
        return Ok(ResolvedTau { tau, label: "explicit".into() });
    }
    let kf = k as f64;
    let c = bounds.c;
    let need_h = || require(h, "h");
    let err = stage("selecting the center");
    match strategy {
        "optimal" => match bounds.lambda_max {
            None => Ok(ResolvedTau {
                tau: tau_unbounded(kf, alpha, need_h()?, c).map_err(err)?.tau,
                label: "tau_k".into(),
            }),
            Some(l) => Ok(ResolvedTau {
                tau: tau_bounded(kf, alpha, need_h()?, c, l).map_err(err)?.tau,
                label: "tau_kN".into(),
            }),
        },
        "reference" => match bounds.lambda_max {
            None => Ok(ResolvedTau {
                tau: tau_reference_unbounded(kf, alpha, c).map_err(err)?.tau,
                label: "tau_tilde_k".into(),
            }),
            Some(l) => Ok(ResolvedTau {
                tau: tau_reference_bounded(kf, alpha, c, l).map_err(err)?.tau,
                label: "tau_tilde_kN".into(),
            }),
        },
        "switching" => {
            if bounds.lambda_max.is_none() {
                return Err(usage(
                    "tau-strategy switching needs --lambda-max (or an operator with known bounds)"
                        .to_string(),
                ));
            }
            let choice = tau_switching(kf, alpha, need_h()?, bounds).map_err(err)?;
            let family = match choice.regime {
                TauRegime::Unbounded => "tau_k",
                TauRegime::Bounded => "tau_kN",
                TauRegime::ReferenceUnbounded => "tau_tilde_k",
                TauRegime::ReferenceBounded => "tau_tilde_kN",
            };
            let label = match choice.regime_threshold {
                Some(t) => format!("switching:{family}(kbar={t:.3})"),
                None => format!("switching:{family}"),
            };
            Ok(ResolvedTau { tau: choice.tau, label })
        }
        other => Err(usage(format!(
            "tau-strategy must be one of optimal, reference, switching; got {other:?}"
        ))),
    }
}

/// Quadrature rule → rational power approximant → rational resolvent.
pub fn build_form(k: u32, alpha: f64, h: f64, tau: f64) -> Result<ResolventForm> {
    let pade =
        build_pade(k as usize, alpha, tau).map_err(stage("building the power approximant"))?;
    ResolventForm::build(&pade, h).map_err(stage("building the resolvent approximant"))
}

/// Resolve the `--k` flag (after config merge) into an inclusive range.
pub fn k_range(flag: Option<String>) -> Result<(u32, u32)> {
    parse_k_range(&require(flag, "k")?)
}

/// Like [`k_range`] but for commands that print one object per run.
pub fn k_single(flag: Option<String>, cmd: &str) -> Result<u32> {
    let (lo, hi) = k_range(flag)?;
    if lo != hi {
        return Err(usage(format!(
            "{cmd} prints a single order; pass one k, not a range"
        )));
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operators_from_flags() {
        let d = build_operator("diag", Some(3), None, None).unwrap();
        assert_eq!(d.dim(), 3);
        let e = build_operator("diag", None, None, Some("0.5, 2, 8")).unwrap();
        assert_eq!(e.dim(), 3);
        assert!(build_operator("diag", Some(2), None, Some("1")).is_err());
        assert!(build_operator("diag", None, None, Some("-1")).is_err());
        assert!(build_operator("nope", Some(2), None, None).is_err());
        let dense = build_operator("dense", Some(4), None, None).unwrap();
        assert_eq!(dense.dim(), 4);
    }

    #[test]
    fn bounds_override_order() {
        let op = build_operator("diag", Some(5), None, None).unwrap();
        let b = resolve_bounds(Some(&op), None, None, false).unwrap();
        assert_eq!(b.c, 1.0);
        assert_eq!(b.lambda_max, Some(5.0));
        let b = resolve_bounds(Some(&op), Some(0.5), Some(9.0), false).unwrap();
        assert_eq!((b.c, b.lambda_max), (0.5, Some(9.0)));
        assert!(resolve_bounds(None, Some(2.0), Some(1.0), false).is_err());
        let b = resolve_bounds(Some(&op), None, None, true).unwrap();
        assert_eq!((b.c, b.lambda_max), (1.0, None));
    }

    #[test]
    fn strategy_dispatch() {
        let unbounded = SpectrumBounds { c: 1.0, lambda_max: None };
        let bounded = SpectrumBounds { c: 1.0, lambda_max: Some(1e6) };
        let t = resolve_tau(10, 0.6, Some(1e-2), &unbounded, None, "optimal").unwrap();
        assert_eq!(t.label, "tau_k");
        let t = resolve_tau(10, 0.6, Some(1e-2), &bounded, None, "optimal").unwrap();
        assert_eq!(t.label, "tau_kN");
        let t = resolve_tau(10, 0.6, None, &unbounded, None, "reference").unwrap();
        assert_eq!(t.label, "tau_tilde_k");
        let t = resolve_tau(10, 0.6, Some(1e-2), &bounded, None, "switching").unwrap();
        assert!(t.label.starts_with("switching:"));
        assert!(t.label.contains("kbar="), "label records the threshold: {}", t.label);
        assert!(resolve_tau(10, 0.6, Some(1e-2), &unbounded, None, "switching").is_err());
        let t = resolve_tau(10, 0.6, None, &unbounded, Some(2.5), "optimal").unwrap();
        assert_eq!((t.tau, t.label.as_str()), (2.5, "explicit"));
        // h is only demanded once a strategy actually needs it
        assert!(resolve_tau(10, 0.6, None, &unbounded, None, "optimal").is_err());
    }
}
