use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fairness_cli::commands::{self, DEFAULT_GRID, DEFAULT_RESOLUTION};
use fairness_cli::{parse_config, presets, CliError, Config};

/// Score allocations of a shared resource under guiding principles of fairness.
#[derive(Debug, Parser)]
#[command(name = "fairness", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply dispersion metrics or welfare functions to a list of values.
    Metrics {
        /// Comma-separated values, e.g. 1,3,5.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        /// Metric name; repeat or separate with commas.
        #[arg(long = "metric", required = true, value_delimiter = ',')]
        metrics: Vec<String>,
    },
    /// Score and rank the candidate allocations of a problem.
    Evaluate {
        #[command(flatten)]
        source: Source,
        /// Write candidate,principle,score,direction,rank rows to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Frontier grid points for continuous problems.
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
    },
    /// Sample one principle's score over the square [0, total]^2.
    Heatmap {
        #[command(flatten)]
        source: Source,
        /// Principle label or name.
        #[arg(long)]
        principle: Option<String>,
        /// Cells per axis; the CSV has (grid + 1)^2 rows.
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// JSON problem definition.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Built-in problem.
    #[arg(long, value_parser = presets::NAMES)]
    preset: Option<String>,
}

impl Source {
    fn load(&self) -> Result<Config, CliError> {
        let text = match (&self.config, &self.preset) {
            (Some(path), _) => read(path)?,
            (None, Some(name)) => presets::preset(name)
                .ok_or_else(|| CliError::Input(format!("unknown preset {name:?}")))?
                .to_string(),
            (None, None) => unreachable!("clap requires a source"),
        };
        Ok(parse_config(&text)?)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        context: format!("reading {}", path.display()),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        context: format!("writing {}", path.display()),
        source,
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Metrics { values, metrics } => {
            let values = commands::parse_values(&values)?;
            print!("{}", commands::metrics(&values, &metrics)?);
        }
        Command::Evaluate {
            source,
            out,
            resolution,
        } => {
            let config = source.load()?;
            let evaluation = commands::evaluate(&config, resolution)?;
            print!("{}", commands::render_report(&evaluation));
            if let Some(path) = out {
                write(&path, &commands::scores_csv(&evaluation)?)?;
            }
        }
        Command::Heatmap {
            source,
            principle,
            grid,
            out,
        } => {
            let config = source.load()?;
            let csv = commands::heatmap_csv(&config, principle.as_deref(), grid)?;
            match out {
                Some(path) => write(&path, &csv)?,
                None => print!("{csv}"),
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
