//! `mipt`: configuration-driven pipelines for steered monitored circuits.

mod analyze;
mod config;
mod error;
mod layout;
mod oracle;
mod simulate;
mod steer;
mod timeevo;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::{ExperimentConfig, TEMPLATE};
use crate::error::{CliError, CliResult, IoContext};
use crate::oracle::OracleCommand;

#[derive(Debug, Parser)]
#[command(name = "mipt", version, about = "Steered monitored-circuit experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Experiment configuration (TOML).
    #[arg(long, default_value = "experiment.toml")]
    config: PathBuf,
    /// Overrides `experiment.output`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides `experiment.seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a configuration template with every default spelled out.
    Init {
        #[command(flatten)]
        common: Common,
        /// Overwrite an existing file.
        #[arg(long)]
        force: bool,
    },
    /// Run target trajectories and write the exact reference curves.
    Simulate(Common),
    /// Steer every persisted target and write sector-0 fluctuation curves.
    Steer(Common),
    /// Corrected and effective fluctuations, entropies and scaling collapse.
    Analyze(Common),
    /// Cycle-resolved half-chain entropy and fluctuations for two starts.
    Timeevo(Common),
    /// Closed-form reference values.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[command(subcommand)]
        which: OracleCommand,
    },
}

impl Common {
    fn load(&self) -> CliResult<ExperimentConfig> {
        let mut config = ExperimentConfig::load(&self.config)?;
        if let Some(out) = &self.out {
            config.experiment.output = out.clone();
        }
        if let Some(seed) = self.seed {
            config.experiment.seed = seed;
        }
        Ok(config)
    }

    fn init_threads(&self) -> CliResult<()> {
        if let Some(n) = self.threads {
            rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().map_err(|e| {
                CliError::Core(mipt_core::Error::InvalidArgument(format!("thread pool: {e}")))
            })?;
        }
        Ok(())
    }
}

fn init(common: &Common, force: bool) -> CliResult<()> {
    let mut text = TEMPLATE.to_string();
    if let Some(out) = &common.out {
        text = text.replace("output = \"runs\"", &format!("output = {:?}", out.display().to_string()));
    }
    if let Some(seed) = common.seed {
        text = text.replace("seed = 20240501", &format!("seed = {seed}"));
    }
    if common.config.exists() && !force {
        return Err(CliError::Core(mipt_core::Error::InvalidArgument(format!(
            "{} exists; pass --force to overwrite",
            common.config.display()
        ))));
    }
    std::fs::write(&common.config, text).at(&common.config)?;
    eprintln!("wrote {}", common.config.display());
    Ok(())
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Init { common, force } => init(common, *force),
        Command::Simulate(c) => {
            c.init_threads()?;
            simulate::run(&c.load()?)
        }
        Command::Steer(c) => {
            c.init_threads()?;
            steer::run(&c.load()?)
        }
        Command::Analyze(c) => {
            c.init_threads()?;
            analyze::run(&c.load()?)
        }
        Command::Timeevo(c) => {
            c.init_threads()?;
            timeevo::run(&c.load()?)
        }
        Command::Oracle { common, which } => {
            common.init_threads()?;
            oracle::run(which, &mut std::io::stdout().lock())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
