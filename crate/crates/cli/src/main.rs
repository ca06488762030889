//! `condind`: evaluate and verify conditional indicators on a JSON scenario.
//!
//! Exit status: 0 success, 1 counterexample or alarm, 2 invalid input,
//! 3 internal error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use condind::{CheckConfig, ExtReal, Partition};
use num_rational::BigRational;

use condind_cli::commands::{self, CommandError, Context, Outcome};
use condind_cli::output;
use condind_cli::scenario::{Scenario, ScenarioError};
use condind_cli::Format;

#[derive(Parser, Debug)]
#[command(name = "condind", version, about = "Conditional indicators on finite probability spaces")]
struct Cli {
    /// Scenario file (JSON).
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sampled cases per property (default 1000 for verify-all, 500 otherwise).
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Largest cell count for exhaustive event enumeration.
    #[arg(long, global = true, env = "CONDIND_CAP", default_value_t = 20)]
    cap: usize,
    /// Tolerance of the bisection solver, as `p/q`.
    #[arg(long, global = true, default_value = "1/1099511627776")]
    tol: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Print wall-clock time to stderr.
    #[arg(long, global = true)]
    timing: bool,
    /// Target σ-algebra (defaults to `H`, or the only partition).
    #[arg(long, global = true)]
    sigma: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an indicator on a variable.
    Apply {
        #[arg(long)]
        indicator: String,
        #[arg(long)]
        var: String,
    },
    /// Run one property check (or `all`) against an indicator.
    Check {
        #[arg(long)]
        indicator: String,
        /// axioms, regular, hplus, dual-involution, convex-implies-regular,
        /// additive-implies-regular, additive-self-dual-linear, extension, a flag name, or all.
        #[arg(long, default_value = "all")]
        property: String,
        /// Variables forming the extension list.
        #[arg(long, value_delimiter = ',')]
        evars: Vec<String>,
    },
    /// Tower property of an indicator family along the filtration.
    Tower {
        #[arg(long, default_value = "esssup")]
        family: String,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
    },
    /// All grid solutions of the projection equation at one date.
    Project {
        #[arg(long, default_value = "esssup")]
        family: String,
        #[arg(long)]
        var: String,
        #[arg(long)]
        time: String,
    },
    /// Backward induction of a terminal payoff.
    Envelope {
        #[arg(long, default_value = "esssup")]
        family: String,
        #[arg(long)]
        var: String,
        /// One exercise value per date, for early exercise.
        #[arg(long, value_delimiter = ',')]
        exercise: Vec<String>,
    },
    /// Risk measure induced by an indicator's acceptance set.
    Risk {
        #[arg(long)]
        indicator: String,
        #[arg(long)]
        var: String,
        /// auto (closed form when available) or bisection.
        #[arg(long, default_value = "auto")]
        method: String,
        /// Also check the risk-measure properties.
        #[arg(long)]
        verify: bool,
    },
    /// Extended conditional expectation E(X⁺|ℋ) − E(X⁻|ℋ).
    CondexpExt {
        #[arg(long)]
        var: String,
    },
    /// Cells on which E(X + Y|ℋ) = E(X|ℋ) + E(Y|ℋ) is guaranteed.
    AdditivitySet {
        #[arg(long)]
        var: String,
        #[arg(long)]
        var2: String,
    },
    /// Recover the density of an additive self-dual indicator.
    RecoverDensity {
        #[arg(long)]
        indicator: String,
    },
    /// Run the full verification battery.
    VerifyAll,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Apply { .. } => "apply",
            Command::Check { .. } => "check",
            Command::Tower { .. } => "tower",
            Command::Project { .. } => "project",
            Command::Envelope { .. } => "envelope",
            Command::Risk { .. } => "risk",
            Command::CondexpExt { .. } => "condexp-ext",
            Command::AdditivitySet { .. } => "additivity-set",
            Command::RecoverDensity { .. } => "recover-density",
            Command::VerifyAll => "verify-all",
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Command(#[from] CommandError),
    #[error("validation error: {0}")]
    Usage(String),
}

fn parse_tol(s: &str) -> Result<BigRational, Failure> {
    match s.parse::<ExtReal>() {
        Ok(ExtReal::Finite(r)) if r > BigRational::from_integer(0.into()) => Ok(r),
        _ => Err(Failure::Usage(format!("--tol must be a positive rational, got `{s}`"))),
    }
}

fn pick_sigma(scenario: &Scenario, name: Option<&str>) -> Result<Partition, Failure> {
    if let Some(n) = name {
        return scenario.partition(n).cloned().ok_or_else(|| Failure::Usage(format!("unknown partition `{n}`")));
    }
    if let Some(h) = scenario.partition("H") {
        return Ok(h.clone());
    }
    match scenario.partitions.values().collect::<Vec<_>>().as_slice() {
        [only] => Ok((*only).clone()),
        _ => Err(Failure::Usage("several partitions and no `H`: pass --sigma".into())),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let path = cli.scenario.as_ref().ok_or_else(|| Failure::Usage("--scenario is required".into()))?;
    let scenario = Scenario::load(path)?;
    let default_samples = if matches!(cli.command, Command::VerifyAll) { 1000 } else { 500 };
    let mut cfg = CheckConfig::with_seed(cli.seed).samples(cli.samples.unwrap_or(default_samples));
    cfg.cap = cli.cap;
    let ctx = Context {
        scenario: &scenario,
        sigma: pick_sigma(&scenario, cli.sigma.as_deref())?,
        cfg,
        tol: parse_tol(&cli.tol)?,
    };
    let outcome = match &cli.command {
        Command::Apply { indicator, var } => commands::apply(&ctx, indicator, var),
        Command::Check { indicator, property, evars } => commands::check(&ctx, indicator, property, evars),
        Command::Tower { family, from, to } => commands::tower(&ctx, family, from.as_deref(), to.as_deref()),
        Command::Project { family, var, time } => commands::project(&ctx, family, var, time),
        Command::Envelope { family, var, exercise } => commands::envelope(&ctx, family, var, exercise),
        Command::Risk { indicator, var, method, verify } => commands::risk(&ctx, indicator, var, method, *verify),
        Command::CondexpExt { var } => commands::condexp_ext(&ctx, var),
        Command::AdditivitySet { var, var2 } => commands::additivity(&ctx, var, var2),
        Command::RecoverDensity { indicator } => commands::recover(&ctx, indicator),
        Command::VerifyAll => commands::verify(&ctx),
    }?;
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = std::panic::catch_unwind(|| run(&cli));
    if cli.timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(Ok(outcome)) => {
            let args: Vec<String> = std::env::args().skip(1).collect();
            print!("{}", output::render(cli.format, cli.command.name(), &args, cli.seed, &outcome));
            if outcome.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Err(failure)) => {
            eprintln!("condind: {failure}");
            ExitCode::from(2)
        }
        Err(_) => {
            eprintln!("condind: internal error");
            ExitCode::from(3)
        }
    }
}
