//! Command-line front end: one subcommand per experiment, a `run` subcommand
//! for config-file driven runs, and `verify` subcommands that exit nonzero
//! when their checks fail.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use zetapprox::config::{parse_config, serialize_config, RunConfig};
use zetapprox::runner::{run, RunError, VERIFY_FAILED_EXIT};

#[derive(Parser)]
#[command(
    name = "zetapprox",
    version,
    about = "Truncated Dirichlet-series approximations of L-functions: counting, scanning, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a config document as-is.
    Run {
        /// Path to a TOML config with [model], [command], [output] sections.
        config: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate zeta_N, G, and F_N on a grid of ordinates.
    Eval(CommandArgs),
    /// Count a-values in a rectangle by the argument principle.
    Count(CommandArgs),
    /// Localize every a-value in a rectangle by quadrisection.
    Locate(CommandArgs),
    /// Scan the critical line for zeros (a = 0) or a-value candidates.
    #[command(name = "scan-line")]
    ScanLine(CommandArgs),
    /// Census of a-values inside and outside an epsilon band.
    Cluster(CommandArgs),
    /// Check the strip predicates at one sigma across a t grid.
    Strip(CommandArgs),
    /// Verification suites for the counting and critical-line claims; exit 0
    /// only when every check passes.
    Verify {
        target: VerifyTarget,
        #[command(flatten)]
        args: CommandArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Spira,
    Count,
    Cluster,
    #[value(name = "critical-zero")]
    CriticalZero,
    Critical,
    Strip,
}

impl VerifyTarget {
    fn command_name(self) -> &'static str {
        match self {
            VerifyTarget::Spira => "verify-spira",
            VerifyTarget::Count => "verify-count",
            VerifyTarget::Cluster => "verify-cluster",
            VerifyTarget::CriticalZero => "verify-critical-zero",
            VerifyTarget::Critical => "verify-critical",
            VerifyTarget::Strip => "verify-strip",
        }
    }
}

#[derive(Args, Clone)]
struct CommandArgs {
    /// Base config document; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Model preset (when no config file is given).
    #[arg(long, default_value = "zeta")]
    preset: String,
    /// Truncation length N.
    #[arg(short = 'N', long)]
    truncation: Option<usize>,
    /// Target value a as an x+yi literal.
    #[arg(short, long)]
    a: Option<String>,
    /// Window bottom T.
    #[arg(short = 'T', long)]
    t: Option<f64>,
    /// Window height U.
    #[arg(short = 'U', long)]
    u: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    hit_tol: Option<f64>,
    /// Certification radius for located roots.
    #[arg(long)]
    radius: Option<f64>,
    /// Evaluation / strip abscissa.
    #[arg(long)]
    sigma: Option<f64>,
    /// Strip half-width; calibrated from the strip predicates when absent.
    #[arg(long)]
    sigma_bound: Option<f64>,
    #[arg(long)]
    sigma_left: Option<f64>,
    #[arg(long)]
    sigma_right: Option<f64>,
    /// Strip exponent used in the error scale N^gamma log(T+U).
    #[arg(long)]
    gamma: Option<f64>,
    /// Comma-separated ordinate grid.
    #[arg(long, value_delimiter = ',')]
    t_grid: Option<Vec<f64>>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long)]
    out_dir: Option<String>,
    #[arg(long)]
    prefix: Option<String>,
    /// Worker count; beats ZETAPPROX_WORKERS, which beats the config value.
    #[arg(long)]
    workers: Option<usize>,
}

fn load_base(args: &CommandArgs, name: &str) -> Result<RunConfig, RunError> {
    let text = match &args.config {
        Some(path) => std::fs::read_to_string(path)?,
        None => format!(
            "[model]\npreset = \"{}\"\n\n[command]\nname = \"{}\"\n",
            args.preset, name
        ),
    };
    Ok(parse_config(&text)?)
}

fn apply_overrides(config: &mut RunConfig, name: &str, args: &CommandArgs) {
    config.command.name = name.to_string();
    if let Some(n) = args.truncation {
        config.model.n = Some(n);
    }
    if let Some(a) = &args.a {
        config.command.a = a.clone();
    }
    if let Some(t) = args.t {
        config.command.t = t;
    }
    if let Some(u) = args.u {
        config.command.u = u;
    }
    if let Some(epsilon) = args.epsilon {
        config.command.epsilon = epsilon;
    }
    if let Some(hit_tol) = args.hit_tol {
        config.command.hit_tol = hit_tol;
    }
    if let Some(radius) = args.radius {
        config.command.radius = radius;
    }
    if let Some(sigma) = args.sigma {
        config.command.sigma = sigma;
    }
    if args.sigma_bound.is_some() {
        config.command.sigma_bound = args.sigma_bound;
    }
    if args.sigma_left.is_some() {
        config.command.sigma_left = args.sigma_left;
    }
    if args.sigma_right.is_some() {
        config.command.sigma_right = args.sigma_right;
    }
    if let Some(gamma) = args.gamma {
        config.command.gamma = gamma;
    }
    if let Some(grid) = &args.t_grid {
        config.command.t_grid = grid.clone();
    }
    if let Some(seed) = args.seed {
        config.command.seed = seed;
    }
    if let Some(dir) = &args.output.out_dir {
        config.output.dir = dir.clone();
    }
    if let Some(prefix) = &args.output.prefix {
        config.output.prefix = prefix.clone();
    }
    if let Some(workers) = args.output.workers {
        config.output.workers = workers;
    }
}

/// Subcommand-specific defaults, applied only when neither the config file
/// nor a flag pinned the value.
fn apply_command_defaults(config: &mut RunConfig, name: &str, args: &CommandArgs) {
    let flag_a = args.a.is_some() || args.config.is_some();
    let flag_t = args.t.is_some() || args.config.is_some();
    let flag_u = args.u.is_some() || args.config.is_some();
    match name {
        "verify-count" => {
            if !flag_a {
                config.command.a = "2+0i".into();
            }
            if !flag_u {
                config.command.u = 1000.0;
            }
            if args.gamma.is_none() && args.config.is_none() {
                config.command.gamma = 1.1;
            }
        }
        "verify-critical" => {
            if !flag_a {
                config.command.a = "2+0i".into();
            }
            if !flag_u {
                config.command.u = 1000.0;
            }
        }
        "verify-cluster" => {
            if !flag_a {
                config.command.a = "2+0i".into();
            }
        }
        "count" | "locate" | "cluster" => {
            if !flag_a {
                config.command.a = "2+0i".into();
            }
        }
        _ => {}
    }
    let _ = flag_t;
}

fn execute() -> Result<Option<bool>, RunError> {
    let cli = Cli::parse();
    let (mut config, name, workers_flag) = match cli.command {
        Command::Run { config, output } => {
            let mut parsed = parse_config(&std::fs::read_to_string(config)?)?;
            if let Some(dir) = &output.out_dir {
                parsed.output.dir = dir.clone();
            }
            if let Some(prefix) = &output.prefix {
                parsed.output.prefix = prefix.clone();
            }
            let name = parsed.command.name.clone();
            (parsed, name, output.workers)
        }
        Command::Eval(args) => build(&args, "eval")?,
        Command::Count(args) => build(&args, "count")?,
        Command::Locate(args) => build(&args, "locate")?,
        Command::ScanLine(args) => build(&args, "scan-line")?,
        Command::Cluster(args) => build(&args, "cluster")?,
        Command::Strip(args) => build(&args, "strip")?,
        Command::Verify { target, args } => build(&args, target.command_name())?,
    };
    config.command.name = name;
    // Round-trip through the parser so flag overrides face the same
    // validation as documents.
    let config = parse_config(&serialize_config(&config))?;
    let outcome = run(&config, workers_flag)?;
    for line in &outcome.summary {
        println!("{line}");
    }
    for path in outcome.artifacts.iter().chain([&outcome.manifest]) {
        println!("wrote {}", path.display());
    }
    Ok(outcome.verified)
}

fn build(args: &CommandArgs, name: &str) -> Result<(RunConfig, String, Option<usize>), RunError> {
    let mut config = load_base(args, name)?;
    apply_overrides(&mut config, name, args);
    apply_command_defaults(&mut config, name, args);
    Ok((config, name.to_string(), args.output.workers))
}

fn main() -> ExitCode {
    match execute() {
        Ok(None) | Ok(Some(true)) => ExitCode::SUCCESS,
        Ok(Some(false)) => ExitCode::from(VERIFY_FAILED_EXIT as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
