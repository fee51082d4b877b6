//! The per-subcommand drivers: each one resolves its merged options,
//! runs the relevant library stages, and emits a table and/or CSV.

use std::path::PathBuf;

use fracres::{
    build_pade, build_rule, generalized_residual, measure_sup_error, operator_error_norm,
    project_resolvent, rational_arnoldi, regime_threshold, resolvent_error, resolvent_exact,
    shift_invert_shifts, shifts_from_poles, tau_bounded, tau_reference_bounded,
    tau_reference_unbounded, tau_switching, tau_unbounded, Operator, SpectrumBounds, TauRegime,
};

use crate::config::{check_alpha, check_positive};
use crate::errors::{usage, Result};
use crate::ops::{
    build_form, build_operator, k_range, k_single, l2_diff, require, resolve_bounds, resolve_tau,
    stage,
};
use crate::output::{sci, Csv, Table};

/// Options after merging CLI flags with the config file (flags win).
pub struct Opts {
    pub alpha: Option<f64>,
    pub h: Option<f64>,
    pub c: Option<f64>,
    pub lambda_max: Option<f64>,
    pub unbounded: bool,
    pub k: Option<String>,
    pub tau: Option<f64>,
    pub tau_strategy: String,
    pub operator: Option<String>,
    pub n: Option<u32>,
    pub p: Option<u32>,
    pub entries: Option<String>,
    pub out: Option<PathBuf>,
}

fn emit(csv: &Csv, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            csv.write_to(path)?;
            println!("wrote {} ({} rows)", path.display(), csv.len());
        }
        None => csv.print(),
    }
    Ok(())
}

fn opt_sci(v: Option<f64>) -> String {
    v.map(sci).unwrap_or_else(|| "-".into())
}

/// Nodes and weights of the quadrature rule behind an order-k approximant.
pub fn rule(o: &Opts) -> Result<()> {
    let alpha = check_alpha(require(o.alpha, "alpha")?)?;
    let k = k_single(o.k.clone(), "rule")?;
    let rule = build_rule(k as usize, alpha).map_err(stage("building the quadrature rule"))?;
    let mut csv = Csv::new(format!("cmd=rule k={k} alpha={}", sci(alpha)), "j,node,weight");
    for (j, (&x, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
        csv.row(&[(j + 1).to_string(), sci(x), sci(w)]);
    }
    emit(&csv, &o.out)
}

/// Partial-fraction data of the rational power approximant at one order.
pub fn pade(o: &Opts) -> Result<()> {
    let alpha = check_alpha(require(o.alpha, "alpha")?)?;
    let k = k_single(o.k.clone(), "pade")?;
    let bounds = resolve_bounds(None, o.c, o.lambda_max, o.unbounded)?;
    let rt = resolve_tau(k, alpha, o.h, &bounds, o.tau, &o.tau_strategy)?;
    let form =
        build_pade(k as usize, alpha, rt.tau).map_err(stage("building the power approximant"))?;
    let mut csv = Csv::new(
        format!(
            "cmd=pade k={k} alpha={} tau={} tau_source={} leading_coeff={}",
            sci(alpha),
            sci(rt.tau),
            rt.label,
            sci(form.leading_coeff)
        ),
        "j,coeff,shift,zero",
    );
    for j in 0..k as usize {
        csv.row(&[
            (j + 1).to_string(),
            sci(form.coeffs[j]),
            sci(form.shifts[j]),
            form.zeros.get(j).map(|&z| sci(z)).unwrap_or_default(),
        ]);
    }
    emit(&csv, &o.out)
}

/// Pole/residue data of the rational resolvent approximant at one order.
pub fn poles(o: &Opts) -> Result<()> {
    let alpha = check_alpha(require(o.alpha, "alpha")?)?;
    let h = check_positive(require(o.h, "h")?, "h")?;
    let k = k_single(o.k.clone(), "poles")?;
    let bounds = resolve_bounds(None, o.c, o.lambda_max, o.unbounded)?;
    let rt = resolve_tau(k, alpha, Some(h), &bounds, o.tau, &o.tau_strategy)?;
    let form = build_form(k, alpha, h, rt.tau)?;
    let mut csv = Csv::new(
        format!(
            "cmd=poles k={k} alpha={} h={} tau={} tau_source={}; \
             resolvent poles sit at lambda = -eta_bar",
            sci(alpha),
            sci(h),
            sci(rt.tau),
            rt.label
        ),
        "j,eta_bar,residue",
    );
    for j in 0..k as usize {
        csv.row(&[(j + 1).to_string(), sci(form.poles[j]), sci(form.residues[j])]);
    }
    emit(&csv, &o.out)
}

/// Tabulate center choices and the regime threshold over a k range.
pub fn tau(o: &Opts) -> Result<()> {
    let alpha = check_alpha(require(o.alpha, "alpha")?)?;
    let h = check_positive(require(o.h, "h")?, "h")?;
    let c = check_positive(o.c.unwrap_or(1.0), "c")?;
    let lambda_max = match o.lambda_max {
        Some(l) => {
            check_positive(l, "lambda-max")?;
            if l <= c {
                return Err(usage(format!("lambda-max ({l}) must exceed c ({c})")));
            }
            Some(l)
        }
        None => None,
    };
    let (lo, hi) = k_range(o.k.clone())?;

    let mut header = vec!["k", "tau_k", "tau_tilde_k"];
    if lambda_max.is_some() {
        header.extend(["tau_kN", "tau_tilde_kN", "kbar", "regime"]);
    }
    let kbar = match lambda_max {
        Some(l) => Some(
            regime_threshold(alpha, h, c, l).map_err(stage("computing the regime threshold"))?,
        ),
        None => None,
    };

    let sel = stage("selecting the center");
    let mut table = Table::new(&header);
    let mut csv = Csv::new(
        format!(
            "cmd=tau alpha={} h={} c={} lambda_max={} k={lo}:{hi}",
            sci(alpha),
            sci(h),
            sci(c),
            opt_sci(lambda_max)
        ),
        header.join(","),
    );
    for k in lo..=hi {
        let kf = k as f64;
        let mut cells = vec![
            k.to_string(),
            sci(tau_unbounded(kf, alpha, h, c).map_err(sel)?.tau),
            sci(tau_reference_unbounded(kf, alpha, c).map_err(sel)?.tau),
        ];
        if let Some(l) = lambda_max {
            let bounds = SpectrumBounds { c, lambda_max: Some(l) };
            let sw = tau_switching(kf, alpha, h, &bounds).map_err(sel)?;
            let regime = match sw.regime {
                TauRegime::Unbounded | TauRegime::ReferenceUnbounded => "unbounded",
                TauRegime::Bounded | TauRegime::ReferenceBounded => "bounded",
            };
            cells.extend([
                sci(tau_bounded(kf, alpha, h, c, l).map_err(sel)?.tau),
                sci(tau_reference_bounded(kf, alpha, c, l).map_err(sel)?.tau),
                sci(kbar.unwrap_or(f64::NAN)),
                regime.to_string(),
            ]);
        }
        csv.row(&cells);
        table.row(cells);
    }
    match &o.out {
        Some(path) => {
            csv.write_to(path)?;
            println!("wrote {} ({} rows)", path.display(), csv.len());
        }
        None => table.print(std::io::stdout())?,
    }
    Ok(())
}

/// One row of a full-pipeline sweep over orders.
pub struct SweepRow {
    pub k: u32,
    pub tau: f64,
    pub tau_label: String,
    /// Operator-level error max_j |f(λ_j) − S(λ_j)|; `None` when the
    /// operator has no closed-form eigensystem.
    pub measured: Option<f64>,
    /// Scalar sup error over the spectral interval.
    pub sup: Option<f64>,
    /// A-priori estimate matching the interval regime; `None` when the
    /// spectrum degenerates to a single point.
    pub estimate: Option<f64>,
}

/// Run rule → approximant → resolvent → error measurement for each order.
pub fn sweep(
    op: &Operator,
    bounds: &SpectrumBounds,
    alpha: f64,
    h: f64,
    ks: (u32, u32),
    tau_explicit: Option<f64>,
    strategy: &str,
) -> Result<Vec<SweepRow>> {
    // A one-point spectrum (N = 1) has no interval to scan; fall back to
    // the pointwise error at c.
    let degenerate =
        matches!(bounds.lambda_max, Some(l) if l <= bounds.c * (1.0 + 1e-12));
    let mut rows = Vec::new();
    for k in ks.0..=ks.1 {
        let rt = resolve_tau(k, alpha, Some(h), bounds, tau_explicit, strategy)?;
        let form = build_form(k, alpha, h, rt.tau)?;
        let measured = match operator_error_norm(&form, op) {
            Ok(v) => Some(v),
            Err(fracres::Error::Unsupported { .. }) => None,
            Err(e) => return Err(stage("measuring the operator error")(e)),
        };
        let (sup, estimate) = if degenerate {
            (Some(resolvent_error(bounds.c, &form).abs()), None)
        } else {
            let profile = measure_sup_error(&form, bounds.c, bounds.lambda_max)
                .map_err(stage("measuring the scalar sup error"))?;
            (Some(profile.sup_error), Some(profile.estimate_value))
        };
        rows.push(SweepRow {
            k,
            tau: rt.tau,
            tau_label: rt.label,
            measured,
            sup,
            estimate,
        });
    }
    Ok(rows)
}

/// Apply the full pipeline to an operator and report measured vs
/// estimated errors over a k range.
pub fn approx(o: &Opts) -> Result<()> {
    let alpha = check_alpha(require(o.alpha, "alpha")?)?;
    let h = check_positive(require(o.h, "h")?, "h")?;
    let kind = require(o.operator.clone(), "operator")?;
    let op = build_operator(&kind, o.n, o.p, o.entries.as_deref())?;
    let bounds = resolve_bounds(Some(&op), o.c, o.lambda_max, o.unbounded)?;
    let ks = k_range(o.k.clone())?;
    let rows = sweep(&op, &bounds, alpha, h, ks, o.tau, &o.tau_strategy)?;

    let mut table = Table::new(&[
        "k",
        "tau",
        "tau_source",
        "operator_error",
        "scalar_sup",
        "estimate",
        "error/estimate",
    ]);
    let mut csv = Csv::new(
        format!(
            "cmd=approx operator={kind} n={} alpha={} h={} c={} lambda_max={} k={}:{} \
             tau={} tau_strategy={}",
            op.dim(),
            sci(alpha),
            sci(h),
            sci(bounds.c),
            opt_sci(bounds.lambda_max),
            ks.0,
            ks.1,
            opt_sci(o.tau),
            o.tau_strategy
        ),
        "k,tau,operator_error,scalar_sup,estimate",
    );
    let dash = || "-".to_string();
    for r in &rows {
        let ratio = match (r.measured, r.estimate) {
            (Some(m), Some(e)) if e > 0.0 => sci(m / e),
            _ => dash(),
        };
        table.row(vec![
            r.k.to_string(),
            sci(r.tau),
            r.tau_label.clone(),
            r.measured.map(sci).unwrap_or_else(dash),
            r.sup.map(sci).unwrap_or_else(dash),
            r.estimate.map(sci).unwrap_or_else(dash),
            ratio,
        ]);
        csv.row(&[
            r.k.to_string(),
            sci(r.tau),
            r.measured.map(sci).unwrap_or_default(),
            r.sup.map(sci).unwrap_or_default(),
            r.estimate.map(sci).unwrap_or_default(),
        ]);
    }
    table.print(std::io::stdout())?;
    if let Some(path) = &o.out {
        csv.write_to(path)?;
        println!("wrote {} ({} rows)", path.display(), csv.len());
    }
    Ok(())
}

/// Rational Krylov run against the exact spectral oracle, with a
/// shift-invert baseline and the generalized residual indicator.
pub fn krylov(o: &Opts) -> Result<()> {
    let alpha = check_alpha(require(o.alpha, "alpha")?)?;
    let h = check_positive(require(o.h, "h")?, "h")?;
    let (kind, n_flag) = match o.operator.clone() {
        Some(kd) => (kd, o.n),
        // Default experiment: the Dirichlet Laplacian at desk scale.
        None => ("lap1d".to_string(), o.n.or(Some(1000))),
    };
    let op = build_operator(&kind, n_flag, o.p, o.entries.as_deref())?;
    let bounds = resolve_bounds(Some(&op), o.c, o.lambda_max, o.unbounded)?;
    let (lo, hi) = k_range(o.k.clone())?;

    let n = op.dim();
    let v: Vec<f64> = (1..=n)
        .map(|i| {
            let x = i as f64 / (n as f64 + 1.0);
            x * (1.0 - x)
        })
        .collect();
    let exact = resolvent_exact(&op, h, alpha, &v)
        .map_err(stage("computing the exact resolvent oracle"))?;

    let mut table = Table::new(&["k", "tau", "err_rkm", "err_sikm", "gen_residual"]);
    let mut csv = Csv::new(
        format!(
            "cmd=krylov operator={kind} n={n} alpha={} h={} c={} lambda_max={} k={lo}:{hi} \
             tau={} tau_strategy={} seed=x(1-x)",
            sci(alpha),
            sci(h),
            sci(bounds.c),
            opt_sci(bounds.lambda_max),
            opt_sci(o.tau),
            o.tau_strategy
        ),
        "k,tau,err_rkm,err_sikm,gen_residual",
    );
    for k in lo..=hi {
        let rt = resolve_tau(k, alpha, Some(h), &bounds, o.tau, &o.tau_strategy)?;
        let form = build_form(k, alpha, h, rt.tau)?;
        let shifts = shifts_from_poles(&form);
        let state = rational_arnoldi(&op, &v, &shifts)
            .map_err(stage("building the rational Krylov basis"))?;
        let w = project_resolvent(&state, h, alpha)
            .map_err(stage("extracting the Krylov approximation"))?;
        let err_rkm = l2_diff(&w, &exact);

        let si_shifts = shift_invert_shifts(k as usize, h, alpha)
            .map_err(stage("building shift-invert shifts"))?;
        let si_state = rational_arnoldi(&op, &v, &si_shifts)
            .map_err(stage("building the shift-invert Krylov basis"))?;
        let si_w = project_resolvent(&si_state, h, alpha)
            .map_err(stage("extracting the shift-invert approximation"))?;
        let err_sikm = l2_diff(&si_w, &exact);

        let m = state.basis.len();
        let j = if m >= 2 { m - 1 } else { 1 };
        let residual = generalized_residual(&state, j, h, alpha)
            .map_err(stage("evaluating the generalized residual"))?;

        let cells = vec![k.to_string(), sci(rt.tau), sci(err_rkm), sci(err_sikm), sci(residual)];
        csv.row(&cells);
        table.row(cells);
    }
    table.print(std::io::stdout())?;
    if let Some(path) = &o.out {
        csv.write_to(path)?;
        println!("wrote {} ({} rows)", path.display(), csv.len());
    }
    Ok(())
}
