use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "locale-forge", version, about = "Presentations of locale quotients")]
pub struct Cli {
    /// Output format
    #[arg(long, short, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    /// mathematical notation
    Text,
    /// plain ASCII notation
    Ascii,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that every relation is stable for the presentation's kind
    Check {
        file: PathBuf,
        #[command(flatten)]
        grid: GridArg,
        /// decide instances the syntactic check cannot settle in the presented structure
        #[arg(long)]
        oracle: bool,
    },
    /// Present the quotient described by a spec file
    Transform {
        file: PathBuf,
        spec: PathBuf,
        /// override the spec's quotient mode
        #[arg(long)]
        mode: Option<String>,
    },
    /// Evaluate the presented frame of a finite (or grid-instantiated) presentation
    Eval {
        file: PathBuf,
        #[command(flatten)]
        grid: GridArg,
        /// keep only finite endpoints when instantiating
        #[arg(long, requires = "grid")]
        bounded: bool,
        /// maximal frame size
        #[arg(long, default_value_t = 100_000)]
        limit: usize,
    },
    /// Run a randomized suite or check one presentation
    Verify(VerifyArgs),
    /// Emit a built-in worked example
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        /// circle-proper only: apply the two-rule simplification
        #[arg(long)]
        simplify: bool,
        /// z2-swap only: quotient mode
        #[arg(long, default_value = "open")]
        mode: String,
    },
    /// Compute a quotient spec from finite coinserter or coequaliser data
    Derive {
        file: PathBuf,
        /// JSON with the maps `fstar`, `gstar` and optionally their `target`
        data: PathBuf,
        #[arg(long)]
        mode: String,
        #[arg(long, value_enum, default_value_t = ColimitArg::Coinserter)]
        colimit: ColimitArg,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GridArg {
    /// comma-separated rationals, e.g. 0,1/2,1
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// presentation whose coverage isomorphism is checked
    pub file: Option<PathBuf>,
    /// oracle-equivalence suite for `--mode`
    #[arg(long, conflicts_with_all = ["coverage", "kleene", "file"], requires = "mode")]
    pub oracle: bool,
    /// coverage suite for `--kind`, or the coverage check of FILE
    #[arg(long, conflicts_with = "kleene")]
    pub coverage: bool,
    /// closure-construction suite
    #[arg(long, conflicts_with = "file")]
    pub kleene: bool,
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub kind: Option<String>,
    /// defaults to LOCALE_FORGE_SEED, then a fixed seed
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    CircleOpen,
    CircleProper,
    Z2Swap,
    NatReverse,
    EndpointGluing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ColimitArg {
    Coinserter,
    Coequaliser,
}
