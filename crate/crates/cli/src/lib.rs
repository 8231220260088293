//! The `sts` command-line tool, as a library so tests can drive it in-process.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error (including failed
//! verification), 3 node budget exhausted.

mod commands;
mod result;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use sts_core::SearchKind;

pub use commands::resolve_system;
pub use result::{
    BudgetUsage, CatalogSummary, ClassifySummary, RunResult, SearchSummary, SpectraSummary, Status,
    Summary, Timings, VerifySummary,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Environment variable naming a catalog file to use instead of the embedded one.
pub const CATALOG_ENV: &str = "STS_CATALOG";

#[derive(Debug, Parser)]
#[command(
    name = "sts",
    version,
    about = "Steiner triple systems and defining sets of their weak 3-colourings"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Node limit per search (default: ample for any v <= 15 system).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// STS(15) catalog file (overrides $STS_CATALOG and the embedded copy).
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a system and write it in the text format.
    Construct(ConstructArgs),
    /// Find a minimum or largest minimal defining set.
    Search(SearchArgs),
    /// Check transcribed defining-set rows.
    Verify(VerifyArgs),
    /// Defining-number spectra over all systems of one order.
    Spectra(SpectraArgs),
    /// Validate the STS(15) catalog.
    CatalogCheck(CatalogCheckArgs),
    /// Decide whether a partial colouring is a (strong or weak) defining set.
    Classify(ClassifyArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["cyclic", "bose", "skolem", "builtin"])))]
pub struct ConstructArgs {
    /// Cyclic development: order, then base blocks such as `0,1,3`.
    #[arg(long, num_args = 2.., value_names = ["V", "BASE"])]
    pub cyclic: Option<Vec<String>>,
    /// Bose construction of order 6n+3.
    #[arg(long, value_name = "N")]
    pub bose: Option<usize>,
    /// Skolem construction of order 6n+1.
    #[arg(long, value_name = "N")]
    pub skolem: Option<usize>,
    /// A built-in system: sts7, sts9, sts13-1, sts13-2.
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// A file, a built-in name, `cat:N`, `bose:N` or `skolem:N`.
    pub system: String,
    /// `min` or `largest-minimal`.
    #[arg(long, default_value = "min", value_parser = parse_kind)]
    pub mode: SearchKind,
    /// Only colourings with this pattern, e.g. `5,4,4`.
    #[arg(long, value_parser = parse_pattern)]
    pub pattern: Option<sts_core::ColorPattern>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Fixture file; defaults to the rows shipped with the library.
    pub tables: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectraArgs {
    /// Order: 7, 9, 13 or 15.
    #[arg(long)]
    pub v: usize,
}

#[derive(Debug, Args)]
pub struct CatalogCheckArgs {
    /// Skip the pairwise isomorphism check.
    #[arg(long)]
    pub skip_isomorphism: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    pub system: String,
    /// One character per point: a capital colour is in the set; a lowercase
    /// colour, `.` or `-` is not.
    pub partial: String,
}

fn parse_kind(s: &str) -> Result<SearchKind, String> {
    s.parse().map_err(|e: sts_core::Error| e.to_string())
}

fn parse_pattern(s: &str) -> Result<sts_core::ColorPattern, String> {
    s.parse().map_err(|e: sts_core::Error| e.to_string())
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    /// The structured result, for subcommands that produce one.
    pub result: Option<RunResult>,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => commands::dispatch(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Output {
                    code,
                    stderr: text,
                    ..Output::default()
                }
            } else {
                Output {
                    code,
                    stdout: text,
                    ..Output::default()
                }
            }
        }
    }
}
