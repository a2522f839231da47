use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use eigenloc::pipeline::{run, RunConfig, Subcommand};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    Lattice,
    Cover,
    Approximate,
    Synthesize,
    ErrorScan,
    Verify,
    Nodal,
}

impl From<Command> for Subcommand {
    fn from(c: Command) -> Self {
        match c {
            Command::Lattice => Subcommand::Lattice,
            Command::Cover => Subcommand::Cover,
            Command::Approximate => Subcommand::Approximate,
            Command::Synthesize => Subcommand::Synthesize,
            Command::ErrorScan => Subcommand::ErrorScan,
            Command::Verify => Subcommand::Verify,
            Command::Nodal => Subcommand::Nodal,
        }
    }
}

/// Localized eigenfunctions on spheres and tori.
#[derive(Debug, Parser)]
#[command(name = "toolkit", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (defaults to the configured one, then `out`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Configuration overrides `key.path=value`, applied in order.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Further overrides given positionally.
    #[arg(value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let overrides: Vec<String> = cli.set.iter().chain(&cli.overrides).cloned().collect();
    let outcome = RunConfig::load(&cli.config, &overrides).and_then(|cfg| run(cli.command.into(), &cfg, cli.out.as_deref()));
    match outcome {
        Ok(summary) => {
            println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
