//! `fracres` — rational approximation of fractional-power resolvents.
//!
//! Exposes every stage of the pipeline (quadrature rule → rational power
//! approximant → rational resolvent → operator application → rational
//! Krylov) as a subcommand, plus a `figure` driver that reproduces the
//! standard experiments as deterministic CSV files.
//!
//! Exit codes: 0 success, 2 usage error (bad flags, bad config, values
//! outside their domains), 3 numerical failure at runtime.

mod commands;
mod config;
mod errors;
mod figures;
mod ops;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use commands::Opts;
use config::FileConfig;
use errors::Result;

#[derive(Parser)]
#[command(
    name = "fracres",
    version,
    about = "Rational approximation of fractional-power resolvents (I + hA^a)^{-1}"
)]
struct Cli {
    /// Plain-text `key = value` defaults; explicit flags override file values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the quadrature nodes and weights behind an order-k approximant.
    Rule(CommonArgs),
    /// Print the partial-fraction data of the rational power approximant.
    Pade(CommonArgs),
    /// Print the pole/residue data of the rational resolvent approximant.
    Poles(CommonArgs),
    /// Tabulate center choices and the regime threshold over a k range.
    Tau(CommonArgs),
    /// Apply the full pipeline to an operator; report measured vs estimated error.
    Approx(CommonArgs),
    /// Rational Krylov run against the exact spectral oracle.
    Krylov(CommonArgs),
    /// Reproduce a standard experiment (fig1..fig5) or a custom sweep as CSV.
    Figure(FigureArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Fractional power, strictly between 0 and 1.
    #[arg(long)]
    alpha: Option<f64>,

    /// Resolvent scale, positive.
    #[arg(long)]
    h: Option<f64>,

    /// Lower spectral bound, positive (defaults to 1 when no operator is involved).
    #[arg(long)]
    c: Option<f64>,

    /// Largest eigenvalue, enabling the bounded-interval center machinery.
    #[arg(long = "lambda-max")]
    lambda_max: Option<f64>,

    /// Treat the spectrum as [c, ∞): ignore any known upper bound when
    /// selecting centers and estimating errors.
    #[arg(long)]
    unbounded: bool,

    /// Approximation order: a single value or an inclusive range `a:b`.
    #[arg(long)]
    k: Option<String>,

    /// Explicit center, bypassing strategy selection.
    #[arg(long)]
    tau: Option<f64>,

    /// Center selection strategy: optimal | reference | switching.
    #[arg(long = "tau-strategy")]
    tau_strategy: Option<String>,

    /// Operator family: diag | diagpow | lap1d | dense.
    #[arg(long)]
    operator: Option<String>,

    /// Operator dimension.
    #[arg(long)]
    n: Option<u32>,

    /// Exponent for the diagpow family.
    #[arg(long)]
    p: Option<u32>,

    /// Explicit diagonal entries for the diag family (comma-separated).
    #[arg(long)]
    entries: Option<String>,

    /// Output CSV file (for `figure`: output directory). Default: stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    /// Experiment id: fig1 | fig2 | fig3 | fig4 | fig5 | custom.
    id: String,

    #[command(flatten)]
    common: CommonArgs,

    /// Full-scale run (figure 5 switches from N=1000 to N=3000).
    #[arg(long)]
    full: bool,

    /// Write a companion gnuplot script next to the CSV files.
    #[arg(long = "plot-script")]
    plot_script: bool,
}

fn merge(a: CommonArgs, cfg: &FileConfig) -> Result<Opts> {
    Ok(Opts {
        alpha: cfg.f64(a.alpha, "alpha")?,
        h: cfg.f64(a.h, "h")?,
        c: cfg.f64(a.c, "c")?,
        lambda_max: cfg.f64(a.lambda_max, "lambda-max")?,
        unbounded: cfg.flag_true(a.unbounded, "unbounded")?,
        k: cfg.string(a.k, "k"),
        tau: cfg.f64(a.tau, "tau")?,
        tau_strategy: cfg
            .string(a.tau_strategy, "tau-strategy")
            .unwrap_or_else(|| "optimal".to_string()),
        operator: cfg.string(a.operator, "operator"),
        n: cfg.u32(a.n, "n")?,
        p: cfg.u32(a.p, "p")?,
        entries: cfg.string(a.entries, "entries"),
        out: a.out.or_else(|| cfg.string(None, "out").map(PathBuf::from)),
    })
}

fn run(cli: Cli) -> Result<()> {
    let cfg = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Cmd::Rule(a) => commands::rule(&merge(a, &cfg)?),
        Cmd::Pade(a) => commands::pade(&merge(a, &cfg)?),
        Cmd::Poles(a) => commands::poles(&merge(a, &cfg)?),
        Cmd::Tau(a) => commands::tau(&merge(a, &cfg)?),
        Cmd::Approx(a) => commands::approx(&merge(a, &cfg)?),
        Cmd::Krylov(a) => commands::krylov(&merge(a, &cfg)?),
        Cmd::Figure(f) => {
            let full = cfg.flag_true(f.full, "full")?;
            let o = merge(f.common, &cfg)?;
            figures::run(&o, &f.id, full, f.plot_script)
        }
    }
}

fn main() {
    // Clap itself exits with code 2 on unparsable flags.
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
