use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pec_advantage::report::{run_command, Command, Format, RunConfig};
use pec_advantage::Error;

/// Worker threads for sweeps and Monte Carlo runs; all cores when unset.
const WORKERS_ENV: &str = "PEC_ADVANTAGE_WORKERS";

#[derive(Parser)]
#[command(version, about = "Decide when error-mitigated sampling beats raw sampling for energy certification")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Pauli norm and trace of the configured Hubbard model.
    Norm(Common),
    /// Success probabilities and winner at one (P, N) point.
    Success(Common),
    /// Winning strategy over a grid of noise levels and shot counts.
    PhaseDiagram(Common),
    /// Relative error of the centred success proxy.
    Centering(Common),
    /// Monte Carlo validation on a small instance.
    Simulate(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Svg,
}

#[derive(Args)]
struct Common {
    /// TOML or JSON run configuration; built-in defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Overrides the seed in the configuration.
    #[arg(long)]
    seed: Option<u64>,
}

fn configure_workers() -> Result<(), Error> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Config(format!("{WORKERS_ENV} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Config(format!("cannot start {n} workers: {e}")))
}

fn run(cli: Cli) -> Result<(), Error> {
    configure_workers()?;
    let (command, args) = match cli.command {
        Cmd::Norm(a) => (Command::Norm, a),
        Cmd::Success(a) => (Command::Success, a),
        Cmd::PhaseDiagram(a) => (Command::PhaseDiagram, a),
        Cmd::Centering(a) => (Command::Centering, a),
        Cmd::Simulate(a) => (Command::Simulate, a),
    };
    let mut cfg = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => command.default_config(),
    };
    if args.seed.is_some() {
        cfg.seed = args.seed;
    }
    let format = match args.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
        FormatArg::Svg => Format::Svg,
    };
    let text = run_command(command, &cfg, format)?;
    match args.output {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
