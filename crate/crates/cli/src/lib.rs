//! Config loading, presets and report rendering behind the `fairness` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod presets;

pub use commands::{evaluate, heatmap_csv, metrics, ranking_from_csv, render_report, scores_csv};
pub use config::{parse_config, Config, ConfigError, Problem};
pub use error::CliError;
