//! `docscore` command-line tool.
//!
//! Exit codes: 0 on success, 1 when the parse-failure rate of a scan exceeds
//! `--max-failure-rate`, 2 on usage, configuration or I/O errors.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::Overrides;

#[derive(Debug, Parser)]
#[command(name = "docscore", version, about = "Measure how much of each docstring repeats its function signature")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Scan project trees and write CSV reports.
    Scan(ScanArgs),
    /// Score one function and show the word-by-word classification.
    ScoreOne(ScoreOneArgs),
    /// Rebuild CDFs and the summary from an existing functions.csv/files.csv.
    Report(ReportArgs),
    /// Describe the metric and print the effective configuration.
    Explain(ExplainArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Config file (key = value lines). Defaults to $DOCSCORE_CONFIG.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Stop-word file: one word per line, `#` comments.
    #[arg(long, value_name = "FILE")]
    stop_words: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ThresholdArgs {
    /// Flag a project when this share of its docstrings are identical.
    #[arg(long, value_name = "FRACTION")]
    duplicate_threshold: Option<String>,
    /// Flag a project when this share of its scores are exactly zero.
    #[arg(long, value_name = "FRACTION")]
    zero_threshold: Option<String>,
    /// Also render every CDF as SVG.
    #[arg(long)]
    svg: bool,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Directories to scan.
    #[arg(required = true, value_name = "ROOT")]
    roots: Vec<PathBuf>,
    /// Output directory for the reports.
    #[arg(long, short, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Path substrings that exclude a file (comma separated, replaces the
    /// default `test,e2e`).
    #[arg(long, value_name = "MARKERS", value_delimiter = ',')]
    exclude: Option<Vec<String>>,
    /// Extension of analyzed files.
    #[arg(long, value_name = "EXT")]
    extension: Option<String>,
    /// Exit with status 1 when failed/selected files exceeds this.
    #[arg(long, value_name = "FRACTION")]
    max_failure_rate: Option<String>,
    /// Worker threads; 1 scans serially.
    #[arg(long, short, value_name = "N")]
    jobs: Option<usize>,
    #[arg(long)]
    follow_symlinks: bool,
    /// Suppress timing output.
    #[arg(long)]
    deterministic: bool,
    #[command(flatten)]
    thresholds: ThresholdArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct ScoreOneArgs {
    /// Source file.
    file: PathBuf,
    /// Function name or 1-based line number of its `def`.
    function: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Directory holding functions.csv, files.csv and failures.csv.
    dir: PathBuf,
    /// Where to write the rebuilt reports (default: DIR).
    #[arg(long, short, value_name = "DIR")]
    out: Option<PathBuf>,
    #[command(flatten)]
    thresholds: ThresholdArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct ExplainArgs {
    #[arg(long, value_name = "MARKERS", value_delimiter = ',')]
    exclude: Option<Vec<String>>,
    #[command(flatten)]
    common: CommonArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Scan(args) => {
            let overrides = Overrides {
                exclude: args.exclude,
                extension: args.extension,
                stop_words: args.common.stop_words,
                max_failure_rate: args.max_failure_rate,
                jobs: args.jobs,
                follow_symlinks: args.follow_symlinks,
                svg: args.thresholds.svg,
                duplicate_threshold: args.thresholds.duplicate_threshold,
                zero_threshold: args.thresholds.zero_threshold,
                out: args.out,
            };
            commands::scan(&args.roots, args.common.config.as_deref(), &overrides, args.deterministic)
        }
        Command::ScoreOne(args) => {
            let overrides = Overrides {
                stop_words: args.common.stop_words,
                ..Overrides::default()
            };
            commands::score_one(&args.file, &args.function, args.common.config.as_deref(), &overrides)
        }
        Command::Report(args) => {
            let overrides = Overrides {
                stop_words: args.common.stop_words,
                svg: args.thresholds.svg,
                duplicate_threshold: args.thresholds.duplicate_threshold,
                zero_threshold: args.thresholds.zero_threshold,
                out: args.out,
                ..Overrides::default()
            };
            commands::report(&args.dir, args.common.config.as_deref(), &overrides)
        }
        Command::Explain(args) => {
            let overrides = Overrides {
                exclude: args.exclude,
                stop_words: args.common.stop_words,
                ..Overrides::default()
            };
            commands::explain(args.common.config.as_deref(), &overrides)
        }
    };
    match result {
        Ok(status) => status.into(),
        Err(err) => {
            eprintln!("error: {err:#}");
            commands::Status::Usage.into()
        }
    }
}
