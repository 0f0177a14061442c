//! Batch command-line front end over the `refpoint` library: reads JSON
//! instances, runs the requested solver or reduction, and emits exact
//! rational results as JSON (or CSV for verification reports).

use clap::{Args, Parser, Subcommand};
use refpoint::rational::Rat;
use refpoint::run::{self, CommandOutput, Instance, OutputFormat};

#[derive(Parser)]
#[command(
    name = "refpoint",
    about = "Multicriteria reference point and Pareto set approximation toolkit",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct NormArgs {
    /// Norm family: inf | lp:p | cornered:p
    #[arg(long, default_value = "inf")]
    norm: String,
    /// Comma-separated weights (unit weights when omitted)
    #[arg(long)]
    weights: Option<RatList>,
}

#[derive(Subcommand)]
enum Command {
    /// Reference point solve (explicit, graph or LP instance)
    Rp {
        instance: std::path::PathBuf,
        #[command(flatten)]
        norm: NormArgs,
        /// Comma-separated reference point, e.g. 1,1
        #[arg(long)]
        refpoint: RatList,
        /// Run the scaling FPTAS instead of the exact solver (graphs only)
        #[arg(long)]
        epsilon: Option<Rat>,
    },
    /// Compromise programming solve (the ideal point is computed, not given)
    Cp {
        instance: std::path::PathBuf,
        #[command(flatten)]
        norm: NormArgs,
        #[arg(long)]
        epsilon: Option<Rat>,
    },
    /// Gap query: find a point below y or certify none below y/alpha
    Gap {
        instance: std::path::PathBuf,
        /// Comma-separated query vector
        #[arg(long)]
        y: RatList,
        #[arg(long)]
        alpha: Rat,
        /// Route: exact | rp | rp-pnorm | cp
        #[arg(long, default_value = "exact")]
        via: String,
    },
    /// Pareto set: exact enumeration or the Gap-grid construction
    Pareto {
        instance: std::path::PathBuf,
        #[arg(long)]
        alpha: Option<Rat>,
        #[arg(long)]
        epsilon: Option<Rat>,
        /// Route: exact | gap
        #[arg(long, default_value = "exact")]
        via: String,
        /// Lower bound on attainable objective values (LP instances)
        #[arg(long)]
        positivity: Option<Rat>,
    },
    /// Scaling FPTAS for bicriteria shortest paths
    FptasSp {
        instance: std::path::PathBuf,
        #[command(flatten)]
        norm: NormArgs,
        #[arg(long)]
        epsilon: Rat,
        /// Reference point; compromise mode when omitted
        #[arg(long)]
        refpoint: Option<RatList>,
    },
    /// Exact reference point program over an LP instance
    LpRp {
        instance: std::path::PathBuf,
        #[command(flatten)]
        norm: NormArgs,
        #[arg(long)]
        refpoint: RatList,
    },
    /// LP relaxation plus threshold rounding over a covering instance
    Round {
        instance: std::path::PathBuf,
        #[command(flatten)]
        norm: NormArgs,
        #[arg(long)]
        refpoint: RatList,
    },
    /// Emit a counterexample fixture instance (ws-max | cp-max)
    Fixtures {
        name: String,
        #[arg(long, short = 'M')]
        m: Option<i64>,
        #[arg(long)]
        eps: Option<Rat>,
    },
    /// Run a randomized verification suite (reductions | weights | fptas | lp | max)
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        epsilon: Option<Rat>,
        /// Output format: csv | json
        #[arg(long, default_value = "csv")]
        format: String,
    },
}

/// Comma-separated rational list, e.g. `1,1` or `3/2,0.5`.
#[derive(Clone, Debug)]
struct RatList(Vec<Rat>);

impl std::str::FromStr for RatList {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|part| part.trim().parse::<Rat>().map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()
            .map(RatList)
    }
}

fn load_instance(path: &std::path::Path) -> Result<Instance, CommandOutput> {
    let text = std::fs::read_to_string(path).map_err(|e| CommandOutput {
        document: format!("{{\"error\":\"cannot read {}: {}\"}}", path.display(), e),
        exit_code: run::EXIT_PARSE,
    })?;
    run::parse_instance(&text).map_err(|e| CommandOutput {
        document: format!("{{\"error\":\"{}\"}}", e),
        exit_code: run::EXIT_PARSE,
    })
}

fn threads_from_env() -> usize {
    std::env::var("REFPOINT_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1)
}

fn main() {
    let cli = Cli::parse();
    let output = match cli.command {
        Command::Rp {
            instance,
            norm,
            refpoint,
            epsilon,
        } => match load_instance(&instance) {
            Ok(inst) => run::cmd_rp(
                &inst,
                &norm.norm,
                norm.weights.as_ref().map(|w| w.0.as_slice()),
                &refpoint.0,
                epsilon.as_ref(),
            ),
            Err(out) => out,
        },
        Command::Cp {
            instance,
            norm,
            epsilon,
        } => match load_instance(&instance) {
            Ok(inst) => run::cmd_cp(&inst, &norm.norm, norm.weights.as_ref().map(|w| w.0.as_slice()), epsilon.as_ref()),
            Err(out) => out,
        },
        Command::Gap {
            instance,
            y,
            alpha,
            via,
        } => match load_instance(&instance) {
            Ok(inst) => run::cmd_gap(&inst, &y.0, &alpha, &via),
            Err(out) => out,
        },
        Command::Pareto {
            instance,
            alpha,
            epsilon,
            via,
            positivity,
        } => match load_instance(&instance) {
            Ok(inst) => run::cmd_pareto(
                &inst,
                alpha.as_ref(),
                epsilon.as_ref(),
                &via,
                positivity.as_ref(),
            ),
            Err(out) => out,
        },
        Command::FptasSp {
            instance,
            norm,
            epsilon,
            refpoint,
        } => match load_instance(&instance) {
            Ok(inst) => match refpoint {
                Some(rp) => run::cmd_rp(
                    &inst,
                    &norm.norm,
                    norm.weights.as_ref().map(|w| w.0.as_slice()),
                    &rp.0,
                    Some(&epsilon),
                ),
                None => run::cmd_cp(&inst, &norm.norm, norm.weights.as_ref().map(|w| w.0.as_slice()), Some(&epsilon)),
            },
            Err(out) => out,
        },
        Command::LpRp {
            instance,
            norm,
            refpoint,
        } => match load_instance(&instance) {
            Ok(inst) => run::cmd_rp(&inst, &norm.norm, norm.weights.as_ref().map(|w| w.0.as_slice()), &refpoint.0, None),
            Err(out) => out,
        },
        Command::Round {
            instance,
            norm,
            refpoint,
        } => match load_instance(&instance) {
            Ok(inst) => run::cmd_round(&inst, &norm.norm, norm.weights.as_ref().map(|w| w.0.as_slice()), &refpoint.0),
            Err(out) => out,
        },
        Command::Fixtures { name, m, eps } => run::cmd_fixtures(&name, m, eps.as_ref()),
        Command::Verify {
            suite,
            seed,
            trials,
            epsilon,
            format,
        } => {
            let format = match format.as_str() {
                "json" => OutputFormat::Json,
                _ => OutputFormat::Csv,
            };
            run::cmd_verify(
                &suite,
                seed,
                trials,
                epsilon.as_ref(),
                threads_from_env(),
                format,
            )
        }
    };
    println!("{}", output.document);
    std::process::exit(output.exit_code);
}
