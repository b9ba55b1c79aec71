use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frc_core::io::Format;

#[derive(Debug, Parser)]
#[command(name = "frc", version, about = "Fractional repetition codes: feasibility, construction, verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether an FR code exists for the given parameters.
    Feasible {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Construct an FR code and write it in `frc v1` format.
    Construct {
        #[command(flatten)]
        params: ParamArgs,
        /// Write the code here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify a code file.
    Verify {
        path: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List cyclic orbits of d-subsets of {1..theta}.
    Orbits {
        #[arg(short = 'd', long = "degree", value_parser = clap::value_parser!(u64).range(1..))]
        d: u64,
        #[arg(short = 't', long = "theta", value_parser = clap::value_parser!(u64).range(1..))]
        theta: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate feasibility (and optionally construction) over a grid.
    Sweep {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        theta_min: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        theta_max: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        d_min: u64,
        /// Defaults to theta at each grid point.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        d_max: Option<u64>,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        n_cap: u64,
        #[arg(long, value_enum, default_value_t = SweepMode::Feasibility)]
        mode: SweepMode,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ParamArgs {
    /// Number of subsets (storage nodes).
    #[arg(short = 'n', long = "sets", value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Size of each subset.
    #[arg(short = 'd', long = "degree", value_parser = clap::value_parser!(u64).range(1..))]
    pub d: u64,
    /// Size of the ground set {1..theta}.
    #[arg(short = 't', long = "theta", value_parser = clap::value_parser!(u64).range(1..))]
    pub theta: u64,
    /// Repetition degree.
    #[arg(short = 'r', long = "rho", value_parser = clap::value_parser!(u64).range(1..))]
    pub rho: u64,
    /// Reconstruction degree; recorded in the output, otherwise unused.
    #[arg(short = 'k', long = "k", value_parser = clap::value_parser!(u64).range(1..))]
    pub k: Option<u64>,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    Feasibility,
    ConstructAndVerify,
}
