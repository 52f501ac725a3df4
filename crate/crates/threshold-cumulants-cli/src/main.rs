//! Command-line surface for exact threshold-cumulant computation,
//! verification sweeps, and Monte Carlo experiments.
//!
//! Every command writes JSON (or CSV where `--csv` applies) to stdout
//! and diagnostics to stderr.  Exit codes: 0 on success, 1 on
//! verification failure or runtime error, 2 on flag errors.  Outputs are
//! byte-identical for identical inputs; the sampling commands chunk
//! their RNG streams so that `--threads` never changes the result.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::error::ErrorKind;
use clap::{ArgGroup, Args, CommandFactory, Parser, Subcommand};

use threshold_cumulants::cumulants::{cumulant_report, verify_tree_formula_sweep};
use threshold_cumulants::diagram::YoungDiagram;
use threshold_cumulants::graphs::enumerate_nca_trees;
use threshold_cumulants::montecarlo::{
    estimate_threshold, estimate_z, poissonized_samples, rectangle_experiment,
    threshold_samples, z_samples,
};
use threshold_cumulants::rational::{format_rational, parse_rational};
use threshold_cumulants::tableau::PoissonizedTableau;
use threshold_cumulants::Rational;

fn shape_value(s: &str) -> Result<YoungDiagram, String> {
    YoungDiagram::parse(s).map_err(|e| e.to_string())
}

fn rational_value(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Parser)]
#[command(
    name = "threshold-cumulants",
    version,
    about = "Exact cumulants of the Schensted insertion threshold, with Monte Carlo verification"
)]
struct Cli {
    /// Worker threads for sweeps and sampling (0 = all cores); results
    /// do not depend on this.
    #[arg(
        long,
        global = true,
        env = "THRESHOLD_CUMULANTS_THREADS",
        default_value_t = 0,
        value_name = "N"
    )]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ReportArgs {
    /// Diagram as comma-separated row lengths, e.g. "4,2,2,2".
    #[arg(long, value_parser = shape_value)]
    shape: YoungDiagram,

    /// Cutoff u₀, as a fraction "p/q", an integer, or an exact decimal.
    #[arg(long, value_parser = rational_value)]
    u0: Rational,

    /// Highest cumulant/moment order.
    #[arg(long, value_parser = clap::builder::RangedU64ValueParser::<u32>::new().range(1..))]
    order: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Exact threshold cumulants κ₁..κ_order (JSON report).
    Cumulants(ReportArgs),

    /// Exact threshold moments, with the independent growth-path oracle
    /// values included (JSON report).
    Moments(ReportArgs),

    /// Sweep all small diagrams and half-integer cutoffs, comparing
    /// tree-formula cumulants against the moment oracle; exits 1 on any
    /// mismatch.
    Verify {
        /// Largest diagram size to sweep.
        #[arg(long, default_value_t = 6)]
        max_boxes: usize,

        /// Highest moment order to compare.
        #[arg(long, default_value_t = 4, value_parser = clap::builder::RangedU64ValueParser::<u32>::new().range(1..))]
        max_order: u32,
    },

    /// Non-crossing alternating trees on n vertices (JSON array, or just
    /// the count).
    Trees {
        /// Number of vertices.
        #[arg(long, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        n: usize,

        /// Print only how many trees there are.
        #[arg(long)]
        count: bool,
    },

    /// Uniformly random tableaux of a shape, one JSON object per line.
    Sample {
        /// Diagram as comma-separated row lengths.
        #[arg(long, value_parser = shape_value)]
        shape: YoungDiagram,

        /// Number of tableaux to draw.
        #[arg(long, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        samples: usize,

        /// RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Threshold F_T(u₀): exact for a given tableau, or sampled over
    /// random tableaux of a shape.
    Threshold(ThresholdArgs),

    /// Monte Carlo estimate of κ_order via the single-point Z estimator.
    #[command(name = "z-estimate")]
    ZEstimate {
        /// Diagram as comma-separated row lengths.
        #[arg(long, value_parser = shape_value)]
        shape: YoungDiagram,

        /// Cutoff u₀.
        #[arg(long, value_parser = rational_value)]
        u0: Rational,

        /// Cumulant order to estimate.
        #[arg(long, value_parser = clap::builder::RangedU64ValueParser::<u32>::new().range(1..))]
        order: u32,

        /// Number of samples.
        #[arg(long, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(2..))]
        samples: usize,

        /// RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Print the raw Z values as CSV instead of the summary.
        #[arg(long)]
        csv: bool,
    },

    /// Corner-fluctuation experiment on p × q rectangles: samples
    /// Y = (pq)^(1/4) (corner − q/(p+q)).
    Rectangle {
        /// Number of rows.
        #[arg(long, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        p: usize,

        /// Number of columns.
        #[arg(long, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        q: usize,

        /// Number of samples.
        #[arg(long, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(2..))]
        samples: usize,

        /// RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Print the raw Y values as CSV instead of the summary.
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args)]
#[command(group = ArgGroup::new("source").required(true).args(["tableau", "shape"]))]
struct ThresholdArgs {
    /// Tableau JSON file; prints its exact threshold at u₀.
    #[arg(long, value_name = "FILE")]
    tableau: Option<PathBuf>,

    /// Diagram to sample tableaux from (Monte Carlo mode; needs
    /// --samples).
    #[arg(long, value_parser = shape_value)]
    shape: Option<YoungDiagram>,

    /// Cutoff u₀.
    #[arg(long, value_parser = rational_value)]
    u0: Rational,

    /// Number of sampled tableaux (Monte Carlo mode).
    #[arg(long, requires = "shape", conflicts_with = "tableau",
          value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(2..))]
    samples: Option<usize>,

    /// RNG seed (Monte Carlo mode).
    #[arg(long, default_value_t = 0, conflicts_with = "tableau")]
    seed: u64,

    /// Print the raw threshold values as CSV instead of the summary.
    #[arg(long, conflicts_with = "tableau")]
    csv: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            // A reader hanging up mid-output (e.g. `| head`) is not an
            // error worth reporting.
            if let Some(io) = e.root_cause().downcast_ref::<std::io::Error>() {
                if io.kind() == std::io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
            }
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Writes one line to stdout, propagating failures instead of
/// panicking.
fn emit(text: &str) -> anyhow::Result<()> {
    writeln!(std::io::stdout().lock(), "{text}")?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .context("configuring the worker pool")?;

    match cli.command {
        Command::Cumulants(args) => {
            let report = cumulant_report(&args.shape, &args.u0, args.order, false);
            emit(&serde_json::to_string_pretty(&report.to_json())?)?;
        }
        Command::Moments(args) => {
            let report = cumulant_report(&args.shape, &args.u0, args.order, true);
            emit(&serde_json::to_string_pretty(&report.to_json())?)?;
        }
        Command::Verify {
            max_boxes,
            max_order,
        } => {
            let report = verify_tree_formula_sweep(max_boxes, max_order);
            emit(&serde_json::to_string_pretty(&report.to_json())?)?;
            if !report.is_ok() {
                for m in &report.mismatches {
                    eprintln!(
                        "mismatch: shape {:?}, u0 {}, order {}: cumulant route {} vs oracle {}",
                        m.shape,
                        format_rational(&m.u0),
                        m.order,
                        format_rational(&m.from_cumulants),
                        format_rational(&m.oracle),
                    );
                }
                return Ok(ExitCode::from(1));
            }
        }
        Command::Trees { n, count } => {
            let trees = enumerate_nca_trees(n);
            if count {
                emit(&trees.len().to_string())?;
            } else {
                let items: Vec<serde_json::Value> =
                    trees.iter().map(|t| t.to_json()).collect();
                emit(&serde_json::to_string_pretty(&items)?)?;
            }
        }
        Command::Sample {
            shape,
            samples,
            seed,
        } => {
            let mut out = std::io::stdout().lock();
            for tableau in poissonized_samples(&shape, samples, seed) {
                writeln!(out, "{}", tableau.to_json())?;
            }
        }
        Command::Threshold(args) => {
            if let Some(path) = &args.tableau {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let tableau = PoissonizedTableau::from_json(&text)
                    .with_context(|| format!("parsing {}", path.display()))?;
                emit(&format_rational(&tableau.threshold(&args.u0)))?;
            } else {
                let shape = args.shape.expect("clap enforces the source group");
                let Some(samples) = args.samples else {
                    Cli::command()
                        .error(
                            ErrorKind::MissingRequiredArgument,
                            "--samples is required when sampling with --shape",
                        )
                        .exit();
                };
                if args.csv {
                    let mut out = std::io::stdout().lock();
                    writeln!(out, "threshold")?;
                    for value in threshold_samples(&shape, &args.u0, samples, args.seed) {
                        writeln!(out, "{}", format_rational(&value))?;
                    }
                } else {
                    let summary = estimate_threshold(&shape, &args.u0, samples, args.seed);
                    emit(&serde_json::to_string_pretty(&summary)?)?;
                }
            }
        }
        Command::ZEstimate {
            shape,
            u0,
            order,
            samples,
            seed,
            csv,
        } => {
            if csv {
                let mut out = std::io::stdout().lock();
                writeln!(out, "z")?;
                for value in z_samples(&shape, &u0, order, samples, seed) {
                    writeln!(out, "{}", format_rational(&value))?;
                }
            } else {
                let summary = estimate_z(&shape, &u0, order, samples, seed);
                emit(&serde_json::to_string_pretty(&summary)?)?;
            }
        }
        Command::Rectangle {
            p,
            q,
            samples,
            seed,
            csv,
        } => {
            let result = rectangle_experiment(p, q, samples, seed);
            if csv {
                let mut out = std::io::stdout().lock();
                writeln!(out, "y")?;
                for y in &result.y_samples {
                    writeln!(out, "{y}")?;
                }
            } else {
                let json = serde_json::json!({
                    "summary": result.summary,
                    "sigma_alpha_squared": result.sigma_alpha_squared,
                    "corner_mean": format_rational(&result.corner_mean),
                    "corner_variance": format_rational(&result.corner_variance),
                });
                emit(&serde_json::to_string_pretty(&json)?)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
