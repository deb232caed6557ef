use clap::{Args, Parser, Subcommand};
use renyi_lab::report::{
    cmd_bounds, cmd_limits, cmd_state, cmd_sweep, env_seed, pair_from_spec, parse_suites, state_from_file, SweepConfig,
    SweepOverrides, DEFAULT_SEED, DEFAULT_TRIALS, EXIT_CONFIG, EXIT_FAIL, EXIT_PASS,
};
use std::path::PathBuf;
use std::process::ExitCode;

/// Randomized checks of Rényi divergence inequalities and entropic
/// uncertainty relations.
#[derive(Parser)]
#[command(name = "renyi-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run theorem suites and write one CSV per suite.
    Sweep(SweepArgs),
    /// Print the uncertainty and exclusion bounds of a basis pair.
    Bounds(BoundsArgs),
    /// Print the entropic quantities of a state read from a file.
    State(StateArgs),
    /// Check the α → 1 and δ → {0, 1} limits.
    Limits(LimitsArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated suites, or all, divergence, uncertainty.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    dim_a: Option<usize>,
    #[arg(long)]
    dim_b: Option<usize>,
    #[arg(long)]
    dim_c: Option<usize>,
    /// Master seed; defaults to $RENYI_LAB_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sample orders outside the admissible sets; the exit code stays 0.
    #[arg(long)]
    explore: bool,
    /// Also write gap histogram data files.
    #[arg(long)]
    emit_plots: bool,
    /// key=value configuration file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// mub, random, or X_FILE,Z_FILE.
    #[arg(long, default_value = "mub")]
    pair: String,
    #[arg(long, default_value_t = 2)]
    dim_a: usize,
    /// Comma-separated δ values.
    #[arg(long, value_delimiter = ',', default_value = "0.5,2")]
    delta: Vec<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct StateArgs {
    /// State file: "dim d" followed by d² lines "re im".
    file: PathBuf,
    /// Dimension of the first subsystem; splits the state as A ⊗ B.
    #[arg(long)]
    dim_a: Option<usize>,
    /// Comma-separated orders.
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,inf")]
    orders: Vec<f64>,
}

#[derive(Args)]
struct LimitsArgs {
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long)]
    seed: Option<u64>,
}

fn seed_or_env(seed: Option<u64>) -> renyi_lab::Result<u64> {
    Ok(match seed {
        Some(s) => s,
        None => env_seed()?.unwrap_or(DEFAULT_SEED),
    })
}

fn sweep(a: SweepArgs) -> renyi_lab::Result<SweepConfig> {
    let cli = SweepOverrides {
        tags: a.suite.as_deref().map(parse_suites).transpose()?,
        trials: a.trials,
        dim_a: a.dim_a,
        dim_b: a.dim_b,
        dim_c: a.dim_c,
        master_seed: a.seed,
        tolerance: a.tol,
        output_path: a.out,
        emit_plots: a.emit_plots.then_some(true),
        explore: a.explore.then_some(true),
    };
    let file = match &a.config {
        Some(p) => SweepOverrides::from_file(p)?,
        None => SweepOverrides::default(),
    };
    SweepConfig::resolve(cli.or(file))
}

fn run(cli: Cli) -> Result<i32, (i32, renyi_lab::Error)> {
    let config = |e| (EXIT_CONFIG, e);
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Sweep(a) => {
            let cfg = sweep(a).map_err(config)?;
            let r = cmd_sweep(&cfg, &mut out).map_err(|e| (EXIT_FAIL, e))?;
            Ok(r.exit_code)
        }
        Command::Bounds(a) => {
            let seed = seed_or_env(a.seed).map_err(config)?;
            let pair = pair_from_spec(&a.pair, a.dim_a, seed).map_err(config)?;
            cmd_bounds(&pair, &a.delta, &mut out).map_err(config)?;
            Ok(EXIT_PASS)
        }
        Command::State(a) => {
            let rho = state_from_file(&a.file, a.dim_a).map_err(config)?;
            cmd_state(&rho, &a.orders, &mut out).map_err(|e| (EXIT_FAIL, e))?;
            Ok(EXIT_PASS)
        }
        Command::Limits(a) => {
            let seed = seed_or_env(a.seed).map_err(config)?;
            let ok = cmd_limits(a.trials, seed, &mut out).map_err(|e| (EXIT_FAIL, e))?;
            Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err((code, e)) => {
            eprintln!("renyi-lab: {e}");
            ExitCode::from(code as u8)
        }
    }
}
