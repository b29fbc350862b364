//! `superres` command-line driver.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use superres::basis::{DEFAULT_GRID_SIZE, DEFAULT_MIN_EIGEN_RATIO};
use superres::experiment::{self, Scenario, SweepAxis};
use superres::{BasisConfig, Error, ProlateBasis, Result};

#[derive(Debug, Parser)]
#[command(name = "superres", version, about = "Prolate-spheroidal superresolution experiments")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Override the scenario's RNG seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the scenario's output directory.
    #[arg(long, global = true, env = "SUPERRES_OUTPUT_DIR")]
    output_dir: Option<PathBuf>,
    /// Worker threads for Monte-Carlo trials (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the eigensystem and print it as JSON.
    Basis {
        /// Space-bandwidth product.
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
        grid_size: usize,
        #[arg(long)]
        num_modes: usize,
        #[arg(long, default_value_t = DEFAULT_MIN_EIGEN_RATIO)]
        min_eigen_ratio: f64,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run a scenario and write its output files.
    Run {
        scenario: PathBuf,
        /// Override the scenario's superresolution threshold.
        #[arg(long)]
        tau: Option<f64>,
    },
    /// Run a scenario once per value of one parameter.
    Sweep {
        scenario: PathBuf,
        /// mean_photons, r or k_reconstruct.
        #[arg(long)]
        axis: String,
        /// Comma-separated values.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        values: Vec<f64>,
        #[arg(long)]
        tau: Option<f64>,
    },
    /// Check a scenario file without running it.
    Validate { scenario: PathBuf },
}

fn load(path: &Path, global: &Global, tau: Option<f64>) -> Result<Scenario> {
    let mut s = Scenario::load(path)?;
    if let Some(seed) = global.seed {
        s.noise.seed = seed;
    }
    if let Some(dir) = &global.output_dir {
        s.output_dir = dir.clone();
    }
    if let Some(tau) = tau {
        s.tau = tau;
    }
    s.validate()?;
    Ok(s)
}

fn execute(cli: Cli) -> Result<()> {
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidConfig(format!("cannot start thread pool: {e}")))?;
    }
    match cli.command {
        Command::Basis {
            c,
            grid_size,
            num_modes,
            min_eigen_ratio,
            output,
        } => {
            let config = BasisConfig {
                min_eigen_ratio,
                ..BasisConfig::new(c, grid_size, num_modes)
            };
            let basis = ProlateBasis::build(config)?;
            let mut text = serde_json::to_string_pretty(&basis.dump())?;
            text.push('\n');
            match output {
                Some(path) => fs::write(path, text)?,
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
        }
        Command::Run { scenario, tau } => {
            let s = load(&scenario, &cli.global, tau)?;
            let summary = experiment::run_scenario(&s)?;
            println!(
                "{} trials, K={}: median factor {:.3} (q25 {:.3}, q75 {:.3}), noiseless {:.3}; wrote {} in {:.2?}",
                summary.trials,
                summary.k_used,
                summary.median_factor,
                summary.q25_factor,
                summary.q75_factor,
                summary.noiseless_factor,
                s.output_dir.display(),
                summary.wall_time,
            );
        }
        Command::Sweep {
            scenario,
            axis,
            values,
            tau,
        } => {
            let axis: SweepAxis = axis.parse()?;
            let s = load(&scenario, &cli.global, tau)?;
            let table = experiment::sweep(&s, axis, &values)?;
            print!("{}", table.to_csv()?);
        }
        Command::Validate { scenario } => {
            load(&scenario, &cli.global, None)?;
            println!("{}: ok", scenario.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
