//! The standard experiments, reproduced as CSV files:
//!
//! * `fig1` — the error kernel g_k over λ for α=0.75, k=15, h=1e−2;
//! * `fig2` — diagonal-power operator (N=100, p=7): operator error with
//!   τ_k vs τ̃_k plus the asymptotic a-priori estimate, per α;
//! * `fig3` — same operator with p=3: τ_{k,N} vs τ̃_{k,N} plus the
//!   endpoint-decay estimate, per α;
//! * `fig4` — 1-D Dirichlet Laplacian (N=1000), α=0.6: τ_{k,N} vs
//!   τ̃_{k,N} plus the endpoint-decay estimate;
//! * `fig5` — rational Krylov on the Laplacian (N=1000, or 3000 with
//!   `--full`): shifts from the resolvent poles at τ_k vs τ̃_k vs the
//!   shift-invert baseline, errors against the exact spectral oracle;
//! * `custom` — a flag-driven sweep in the fig2/fig3 column layout.

use std::path::{Path, PathBuf};

use fracres::{
    error_estimate_bounded, error_estimate_unbounded_asymptotic, error_kernel,
    operator_error_norm, project_resolvent, rational_arnoldi, resolvent_exact,
    shift_invert_shifts, shifts_from_poles, tau_bounded, tau_reference_bounded,
    tau_reference_unbounded, tau_unbounded, upper_peak_estimate, Operator,
};

use crate::commands::{sweep, Opts};
use crate::config::check_alpha;
use crate::config::check_positive;
use crate::errors::{usage, Result};
use crate::ops::{build_form, build_operator, k_range, l2_diff, require, resolve_bounds, stage};
use crate::output::{sci, Csv};

/// Scale parameter shared by all standard experiments.
const H: f64 = 1e-2;
/// Fractional powers swept in the per-α experiments.
const ALPHAS: [f64; 4] = [0.2, 0.4, 0.6, 0.8];
/// Order range for the error-decay experiments.
const KMAX: u32 = 60;

pub fn run(o: &Opts, id: &str, full: bool, plot_script: bool) -> Result<()> {
    let dir = o.out.clone().unwrap_or_else(|| PathBuf::from("."));
    match id {
        "fig1" => fig1(&dir, plot_script),
        "fig2" => example_one(&dir, plot_script, false),
        "fig3" => example_one(&dir, plot_script, true),
        "fig4" => fig4(&dir, plot_script),
        "fig5" => fig5(&dir, full, plot_script),
        "custom" => custom(o, &dir),
        other => Err(usage(format!(
            "figure id must be one of fig1, fig2, fig3, fig4, fig5, custom; got {other:?}"
        ))),
    }
}

fn write_csv(dir: &Path, name: &str, csv: &Csv) -> Result<()> {
    let path = csv.write_to(&dir.join(name))?;
    println!("wrote {} ({} rows)", path.display(), csv.len());
    Ok(())
}

fn write_plot(dir: &Path, name: &str, body: &str) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, body)?;
    println!("wrote {}", path.display());
    Ok(())
}

const GP_PREAMBLE: &str = "set datafile separator ','\n";

/// The error kernel g_k(λ) on a log grid spanning both of its maxima.
fn fig1(dir: &Path, plot: bool) -> Result<()> {
    let (k, alpha, c) = (15.0, 0.75, 1.0);
    let tau = tau_unbounded(k, alpha, H, c)
        .map_err(stage("selecting the center"))?
        .tau;
    let (lambda2, _) = upper_peak_estimate(k, alpha, H, tau)
        .map_err(stage("locating the upper error peak"))?;
    let lo = tau * alpha * alpha / (4.0 * k * k) * 1e-2;
    let hi = 100.0 * lambda2;
    let mut csv = Csv::new(
        format!(
            "figure=fig1 alpha={} k={k} h={} c={} tau={} grid=log[{},{}]x2001",
            sci(alpha),
            sci(H),
            sci(c),
            sci(tau),
            sci(lo),
            sci(hi)
        ),
        "lambda,g_k",
    );
    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
    for i in 0..2001 {
        let lambda = (ln_lo + (ln_hi - ln_lo) * i as f64 / 2000.0).exp();
        csv.row(&[sci(lambda), sci(error_kernel(lambda, k, alpha, H, tau))]);
    }
    write_csv(dir, "fig1.csv", &csv)?;
    if plot {
        let body = format!(
            "{GP_PREAMBLE}set logscale xy\nset xlabel 'lambda'\nset ylabel 'g_k'\n\
             plot 'fig1.csv' every ::1 using 1:2 with lines title 'g_k'\n"
        );
        write_plot(dir, "fig1.gp", &body)?;
    }
    Ok(())
}

/// Diagonal-power operator diag(1..N)^p: error decay under the optimal
/// center vs the damping-free reference center, one CSV per α.
fn example_one(dir: &Path, plot: bool, bounded: bool) -> Result<()> {
    let (figname, p) = if bounded { ("fig3", 3u32) } else { ("fig2", 7u32) };
    let n = 100usize;
    let op = Operator::diagonal_power(n, p)
        .map_err(stage("constructing the diagonal-power operator"))?;
    let c = 1.0;
    let lambda_max = (n as f64).powi(p as i32);
    let sel = stage("selecting the center");
    let meas = stage("measuring the operator error");
    let mut written = Vec::new();
    for &alpha in &ALPHAS {
        let mut csv = Csv::new(
            format!(
                "figure={figname} operator=diagpow n={n} p={p} alpha={} h={} c={} \
                 lambda_max={} k=1:{KMAX} centers={} estimate={}",
                sci(alpha),
                sci(H),
                sci(c),
                sci(lambda_max),
                if bounded { "tau_kN,tau_tilde_kN" } else { "tau_k,tau_tilde_k" },
                if bounded { "endpoint-decay" } else { "asymptotic-peak-balance" },
            ),
            "k,error_tau_k,error_tau_tilde,estimate",
        );
        for k in 1..=KMAX {
            let kf = k as f64;
            let (tau_opt, tau_ref, est) = if bounded {
                (
                    tau_bounded(kf, alpha, H, c, lambda_max).map_err(sel)?.tau,
                    tau_reference_bounded(kf, alpha, c, lambda_max).map_err(sel)?.tau,
                    error_estimate_bounded(kf, alpha, H, c, lambda_max),
                )
            } else {
                (
                    tau_unbounded(kf, alpha, H, c).map_err(sel)?.tau,
                    tau_reference_unbounded(kf, alpha, c).map_err(sel)?.tau,
                    error_estimate_unbounded_asymptotic(kf, alpha, H, c),
                )
            };
            let err_opt = operator_error_norm(&build_form(k, alpha, H, tau_opt)?, &op)
                .map_err(meas)?;
            let err_ref = operator_error_norm(&build_form(k, alpha, H, tau_ref)?, &op)
                .map_err(meas)?;
            csv.row(&[k.to_string(), sci(err_opt), sci(err_ref), sci(est)]);
        }
        let fname = format!("{figname}_alpha_{alpha}.csv");
        write_csv(dir, &fname, &csv)?;
        written.push((fname, alpha));
    }
    if plot {
        let mut body = format!(
            "{GP_PREAMBLE}set logscale y\nset xlabel 'k'\nset ylabel 'error'\nset key outside\nplot \\\n"
        );
        let mut parts = Vec::new();
        for (fname, alpha) in &written {
            parts.push(format!(
                "  '{fname}' every ::1 using 1:2 with lines title 'optimal a={alpha}'"
            ));
            parts.push(format!(
                "  '{fname}' every ::1 using 1:3 with lines dashtype 2 title 'reference a={alpha}'"
            ));
            parts.push(format!(
                "  '{fname}' every ::1 using 1:4 with lines dashtype 3 title 'estimate a={alpha}'"
            ));
        }
        body.push_str(&parts.join(", \\\n"));
        body.push('\n');
        write_plot(dir, &format!("{figname}.gp"), &body)?;
    }
    Ok(())
}

/// 1-D Dirichlet Laplacian, α=0.6: bounded-interval centers against the
/// analytic spectral enclosure [π², 4(N+1)²].
fn fig4(dir: &Path, plot: bool) -> Result<()> {
    let n = 1000usize;
    let alpha = 0.6;
    let op = Operator::laplacian_1d(n).map_err(stage("constructing the 1-D Laplacian"))?;
    let c = std::f64::consts::PI * std::f64::consts::PI;
    let lambda_max = 4.0 * ((n + 1) * (n + 1)) as f64;
    let sel = stage("selecting the center");
    let meas = stage("measuring the operator error");
    let mut csv = Csv::new(
        format!(
            "figure=fig4 operator=lap1d n={n} alpha={} h={} c={} lambda_max={} k=1:{KMAX} \
             centers=tau_kN,tau_tilde_kN estimate=endpoint-decay",
            sci(alpha),
            sci(H),
            sci(c),
            sci(lambda_max)
        ),
        "k,error_tau_k,error_tau_tilde,estimate",
    );
    for k in 1..=KMAX {
        let kf = k as f64;
        let tau_opt = tau_bounded(kf, alpha, H, c, lambda_max).map_err(sel)?.tau;
        let tau_ref = tau_reference_bounded(kf, alpha, c, lambda_max).map_err(sel)?.tau;
        let err_opt =
            operator_error_norm(&build_form(k, alpha, H, tau_opt)?, &op).map_err(meas)?;
        let err_ref =
            operator_error_norm(&build_form(k, alpha, H, tau_ref)?, &op).map_err(meas)?;
        let est = error_estimate_bounded(kf, alpha, H, c, lambda_max);
        csv.row(&[k.to_string(), sci(err_opt), sci(err_ref), sci(est)]);
    }
    write_csv(dir, "fig4.csv", &csv)?;
    if plot {
        let body = format!(
            "{GP_PREAMBLE}set logscale y\nset xlabel 'k'\nset ylabel 'error'\n\
             plot 'fig4.csv' every ::1 using 1:2 with lines title 'tau_kN', \\\n\
             \x20 'fig4.csv' every ::1 using 1:3 with lines dashtype 2 title 'tau_tilde_kN', \\\n\
             \x20 'fig4.csv' every ::1 using 1:4 with lines dashtype 3 title 'estimate'\n"
        );
        write_plot(dir, "fig4.gp", &body)?;
    }
    Ok(())
}

/// Rational Krylov on the Laplacian: per-k subspaces with shifts from
/// the resolvent poles (optimal and reference centers) against the
/// shift-invert baseline, errors in the Euclidean norm.
fn fig5(dir: &Path, full: bool, plot: bool) -> Result<()> {
    let n: usize = if full { 3000 } else { 1000 };
    let alpha = 0.6;
    let op = Operator::laplacian_1d(n).map_err(stage("constructing the 1-D Laplacian"))?;
    let c = std::f64::consts::PI * std::f64::consts::PI;
    let v: Vec<f64> = (1..=n)
        .map(|i| {
            let x = i as f64 / (n as f64 + 1.0);
            x * (1.0 - x)
        })
        .collect();
    let exact = resolvent_exact(&op, H, alpha, &v)
        .map_err(stage("computing the exact resolvent oracle"))?;
    let sel = stage("selecting the center");

    let mut csv = Csv::new(
        format!(
            "figure=fig5 operator=lap1d n={n} alpha={} h={} c={} seed=x(1-x) k=10:30:5 \
             shifts=resolvent-poles(tau_k|tau_tilde_k)|shift-invert",
            sci(alpha),
            sci(H),
            sci(c)
        ),
        "k,err_rkm_tau_k,err_rkm_tau_tilde,err_sikm",
    );
    for &k in &[10u32, 15, 20, 25, 30] {
        let kf = k as f64;
        let run = |tau: f64| -> Result<f64> {
            let form = build_form(k, alpha, H, tau)?;
            let shifts = shifts_from_poles(&form);
            let state = rational_arnoldi(&op, &v, &shifts)
                .map_err(stage("building the rational Krylov basis"))?;
            let w = project_resolvent(&state, H, alpha)
                .map_err(stage("extracting the Krylov approximation"))?;
            Ok(l2_diff(&w, &exact))
        };
        let err_rkm = run(tau_unbounded(kf, alpha, H, c).map_err(sel)?.tau)?;
        let err_ref = run(tau_reference_unbounded(kf, alpha, c).map_err(sel)?.tau)?;

        let si_shifts = shift_invert_shifts(k as usize, H, alpha)
            .map_err(stage("building shift-invert shifts"))?;
        let si_state = rational_arnoldi(&op, &v, &si_shifts)
            .map_err(stage("building the shift-invert Krylov basis"))?;
        let si_w = project_resolvent(&si_state, H, alpha)
            .map_err(stage("extracting the shift-invert approximation"))?;
        let err_sikm = l2_diff(&si_w, &exact);

        csv.row(&[k.to_string(), sci(err_rkm), sci(err_ref), sci(err_sikm)]);
    }
    write_csv(dir, "fig5.csv", &csv)?;
    if plot {
        let body = format!(
            "{GP_PREAMBLE}set logscale y\nset xlabel 'k'\nset ylabel 'error'\n\
             plot 'fig5.csv' every ::1 using 1:2 with linespoints title 'RKM tau_k', \\\n\
             \x20 'fig5.csv' every ::1 using 1:3 with linespoints title 'RKM tau_tilde_k', \\\n\
             \x20 'fig5.csv' every ::1 using 1:4 with linespoints title 'SIKM'\n"
        );
        write_plot(dir, "fig5.gp", &body)?;
    }
    Ok(())
}

/// Flag-driven sweep written in the standard error-decay column layout.
fn custom(o: &Opts, dir: &Path) -> Result<()> {
    let alpha = check_alpha(require(o.alpha, "alpha")?)?;
    let h = check_positive(require(o.h, "h")?, "h")?;
    let kind = require(o.operator.clone(), "operator")?;
    let op = build_operator(&kind, o.n, o.p, o.entries.as_deref())?;
    let bounds = resolve_bounds(Some(&op), o.c, o.lambda_max, o.unbounded)?;
    let ks = k_range(o.k.clone())?;
    let rows = sweep(&op, &bounds, alpha, h, ks, o.tau, &o.tau_strategy)?;
    let mut csv = Csv::new(
        format!(
            "figure=custom operator={kind} n={} alpha={} h={} c={} lambda_max={} k={}:{} \
             tau={} tau_strategy={}",
            op.dim(),
            sci(alpha),
            sci(h),
            sci(bounds.c),
            bounds.lambda_max.map(sci).unwrap_or_else(|| "-".into()),
            ks.0,
            ks.1,
            o.tau.map(sci).unwrap_or_else(|| "-".into()),
            o.tau_strategy
        ),
        "k,tau,error,scalar_sup,estimate",
    );
    for r in &rows {
        csv.row(&[
            r.k.to_string(),
            sci(r.tau),
            r.measured.map(sci).unwrap_or_default(),
            r.sup.map(sci).unwrap_or_default(),
            r.estimate.map(sci).unwrap_or_default(),
        ]);
    }
    write_csv(dir, "custom.csv", &csv)
}
