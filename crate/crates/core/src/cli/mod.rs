//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage errors, 2 for data errors.
//! Diagnostics go to standard error as `error<TAB>kind<TAB>message` or
//! `warning<TAB>kind<TAB>message` lines.

mod commands;
mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{FileConfig, RunConfig, CONFIG_ENV};

use crate::charvocab::{ReferenceMode, UrnModel};
use crate::corpus::{PartitionSelector, PosTag};
use crate::metrics::TtrBasis;
use crate::output::OutputFormat;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Data {
        context: String,
        #[source]
        source: crate::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data { .. } => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Data { source, .. } => source.kind(),
        }
    }

    pub(crate) fn data(context: impl Into<String>, source: crate::Error) -> Self {
        CliError::Data {
            context: context.into(),
            source,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "rhetorica",
    version,
    about = "Stylometry and characteristic vocabulary over POS-tagged corpora"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand; unset values fall back to the config
/// file named by `RHETORICA_CONFIG`, then to built-in defaults.
#[derive(Debug, Default, Clone, Args)]
pub struct CommonArgs {
    /// Total two-sided significance level [default: 0.01]
    #[arg(long)]
    pub alpha: Option<f64>,
    /// TTR window in tokens [default: 10000]
    #[arg(long)]
    pub window: Option<usize>,
    /// Minimum letters for a big word [default: 6]
    #[arg(long = "bw-threshold")]
    pub bw_threshold: Option<usize>,
    /// Urn model: single | nine-urn [default: nine-urn]
    #[arg(long)]
    pub model: Option<UrnModel>,
    /// Whether the reference index contains the sample: inclusive | exclusive [default: inclusive]
    #[arg(long)]
    pub reference: Option<ReferenceMode>,
    /// Output format: tsv | json [default: tsv]
    #[arg(long)]
    pub format: Option<OutputFormat>,
    /// Type basis for TTR: surface | lemma [default: surface]
    #[arg(long = "ttr-basis")]
    pub ttr_basis: Option<TtrBasis>,
    /// Abbreviation list, one entry per line
    #[arg(long)]
    pub abbrev: Option<PathBuf>,
    /// Alias map, `variant<TAB>canonical` per line
    #[arg(long)]
    pub aliases: Option<PathBuf>,
    /// Write the report here instead of standard output
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse tagged corpora and write one index per partition plus a manifest
    Ingest {
        /// Tagged-TSV corpus files
        #[arg(required = true)]
        corpus: Vec<PathBuf>,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Partition selector `label[:author=..,period=..,from=YYYY-MM-DD,to=YYYY-MM-DD]`;
        /// defaults to one partition per period
        #[arg(long = "partition")]
        partitions: Vec<PartitionSelector>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Overall stylistic measurements, one block per partition
    Metrics {
        /// Index files, or tagged-TSV corpus files (not both)
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Partition selectors for corpus input
        #[arg(long = "partition")]
        partitions: Vec<PartitionSelector>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Over/under-used terms of a sample against a reference index
    Charvocab {
        sample: PathBuf,
        reference_index: PathBuf,
        /// Restrict to these tags, e.g. NOUN,ADJ,VERB
        #[arg(long, value_delimiter = ',')]
        pos: Option<Vec<PosTag>>,
        /// Only the N most overused terms
        #[arg(long, conflicts_with = "names")]
        top: Option<usize>,
        /// Frequency table of the sample's N most frequent names instead
        #[arg(long)]
        names: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Relative frequencies of watched pronouns with over/under-use flags
    Pronouns {
        sample: PathBuf,
        reference_index: PathBuf,
        /// Pronoun lemmas to report [default: nous,je,il,vous]
        #[arg(long, value_delimiter = ',')]
        watch: Option<Vec<String>>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Most overused lemmas among a set of tags
    TopLemmas {
        sample: PathBuf,
        reference_index: PathBuf,
        #[arg(long, default_value_t = 5)]
        top: usize,
        #[arg(long, value_delimiter = ',', default_value = "NOUN,ADJ,VERB")]
        pos: Vec<PosTag>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Side-by-side count metrics and pronoun flags for several indexes
    Compare {
        /// At least two index files
        indexes: Vec<PathBuf>,
        /// Reference index; defaults to the sum of the inputs
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        watch: Option<Vec<String>>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Ingest { common, .. }
            | Command::Metrics { common, .. }
            | Command::Charvocab { common, .. }
            | Command::Pronouns { common, .. }
            | Command::TopLemmas { common, .. }
            | Command::Compare { common, .. } => common,
        }
    }
}

fn report_error(stderr: &mut dyn Write, err: &CliError) {
    let message = err.to_string().replace('\n', " ");
    let _ = writeln!(stderr, "error\t{}\t{}", err.kind(), message.trim_end());
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(
    args: I,
    config_path: Option<PathBuf>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let text = e.to_string();
                    let first = text.lines().next().unwrap_or("invalid arguments");
                    let _ = writeln!(
                        stderr,
                        "error\tusage\t{}",
                        first.trim_start_matches("error: ")
                    );
                    1
                }
            };
        }
    };

    let result = (|| {
        let file = match &config_path {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let config = RunConfig::resolve(cli.command.common(), &file)?;
        let rendered = commands::execute(&cli.command, &config, stderr)?;
        match &cli.command.common().output {
            Some(path) => std::fs::write(path, rendered)
                .map_err(|e| CliError::data(path.display().to_string(), e.into())),
            None => stdout
                .write_all(rendered.as_bytes())
                .map_err(|e| CliError::data("stdout", e.into())),
        }
    })();

    match result {
        Ok(()) => 0,
        Err(err) => {
            report_error(stderr, &err);
            err.exit_code()
        }
    }
}
