//! `hyperlie` command-line interface.
//!
//! Exit codes: 0 all requested checks passed, 1 a mathematical check
//! failed, 2 input or usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};

use hyperlie::catalog::CaseId;
use hyperlie_cli::pipeline::{
    catalog_dump, run_curvature, run_verify, Options, PipelineError, PointsSpec, VerifyTarget,
};
use hyperlie_cli::report::EXIT_INPUT_ERROR;

#[derive(Parser)]
#[command(
    name = "hyperlie",
    about = "Verify left-invariant hypercomplex geometry on 4-dimensional Lie groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CommonOpts {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Tolerance for first-order finite-difference checks.
    #[arg(long)]
    tol: Option<f64>,
    /// Finite-difference step (first-order checks for `verify`, the
    /// Richardson base step for `curvature`).
    #[arg(long)]
    step: Option<f64>,
    /// Seed for the deterministic sample points.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification pipeline on a catalog case or a JSON input file.
    Verify {
        /// `abelian`, `case1`..`case4`, or a path to an input document.
        target: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Evaluate the finite-difference curvature oracle on a batch of points.
    Curvature {
        /// Catalog case with a coordinate model (`case1`..`case4`).
        #[arg(long)]
        case: String,
        /// Metric selector: hyperhermitian, hyperkahler-rescaled,
        /// hyperkahler-closed-form.
        #[arg(long, default_value = "hyperhermitian")]
        metric: String,
        /// Explicit points `x,y,z,t;x,y,z,t;...` (default: seeded samples).
        #[arg(long)]
        points: Option<String>,
        /// Number of seeded sample points when `--points` is absent.
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Catalog utilities.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Emit a fixture in the shared JSON input schema.
    Dump {
        /// `abelian` or `case1`..`case4`.
        #[arg(long)]
        case: String,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn options_from(common: &CommonOpts, for_curvature: bool) -> Options {
    let mut opts = Options::default();
    if let Some(tol) = common.tol {
        opts.tol = tol;
    }
    if let Some(step) = common.step {
        if for_curvature {
            opts.curvature_step = step;
        } else {
            opts.step = step;
        }
    }
    if let Some(seed) = common.seed {
        opts.seed = seed;
    }
    opts
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify { target, common } => {
            let opts = options_from(common, false);
            match run_verify(&VerifyTarget::parse(target), &opts) {
                Ok(report) => {
                    match common.format {
                        Format::Json => println!(
                            "{}",
                            serde_json::to_string_pretty(&report).expect("report serializes")
                        ),
                        Format::Text => print!("{}", report.to_text()),
                    }
                    Ok(report.exit_code)
                }
                Err(e) => Err(e),
            }
        }
        Command::Curvature {
            case,
            metric,
            points,
            count,
            common,
        } => {
            let opts = options_from(common, true);
            let parsed = case
                .parse::<CaseId>()
                .map_err(|e| PipelineError::Input(e.to_string()))
                .and_then(|id| {
                    let kind = metric
                        .parse()
                        .map_err(|e: hyperlie::Error| PipelineError::Input(e.to_string()))?;
                    let spec = match points {
                        Some(text) => PointsSpec::parse_explicit(text)?,
                        None => PointsSpec::Seeded(*count),
                    };
                    run_curvature(id, kind, &spec, &opts)
                });
            match parsed {
                Ok(report) => {
                    match common.format {
                        Format::Json => println!(
                            "{}",
                            serde_json::to_string_pretty(&report).expect("report serializes")
                        ),
                        Format::Text => print!("{}", report.to_text()),
                    }
                    Ok(0)
                }
                Err(e) => Err(e),
            }
        }
        Command::Catalog {
            action: CatalogAction::Dump { case, common },
        } => match case.parse::<CaseId>() {
            Ok(id) => {
                let doc = catalog_dump(id);
                match common.format {
                    Format::Json | Format::Text => println!("{}", doc.to_json_pretty()),
                }
                Ok(0)
            }
            Err(e) => Err(PipelineError::Input(e.to_string())),
        },
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            EXIT_INPUT_ERROR
        }
    }
}
