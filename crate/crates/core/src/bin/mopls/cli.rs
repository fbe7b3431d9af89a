use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "mopls", version, about = "Maximal orthogonal partial Latin squares")]
pub struct Cli {
    /// Print the structured record instead of the text report.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads (defaults to MOPLS_THREADS, then the core count).
    #[arg(long, global = true, env = "MOPLS_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Build squares.
    #[command(subcommand)]
    Construct(Construct),
    /// Check properties of a square file.
    #[command(subcommand)]
    Verify(Verify),
    /// Exhaustive searches.
    #[command(subcommand)]
    Search(Search),
    /// The square as a code.
    #[command(subcommand)]
    Code(Code),
    /// Other representations.
    #[command(subcommand)]
    Export(Export),
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SquareFormat {
    Grid,
    Json,
}

#[derive(Debug, Args, Serialize)]
pub struct OutputArgs {
    /// Write the square here (a manifest is written next to it).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Square file format; by default `.json` paths get the record format.
    #[arg(long, value_enum)]
    pub format: Option<SquareFormat>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construct {
    /// Minimum maximal orthogonal pair of order n.
    MinMopls {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Minimum maximal partial Latin square of order n.
    MinMpls {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Block-diagonal maximal k-wise square.
    KMopls {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Block orders, comma separated, summing to n.
        #[arg(long, value_delimiter = ',', required = true)]
        blocks: Vec<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// k mutually orthogonal Latin squares of order n.
    KOls {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Random maximal square grown from empty.
    RandomMaximal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verify {
    /// Maximality, with an insertable cell if there is one.
    Maximal { file: PathBuf },
    /// The size bound for a maximal orthogonal pair.
    Bound { file: PathBuf },
    /// Three-block structure of a minimum maximal orthogonal pair.
    Structure { file: PathBuf },
    /// Two-block structure of a minimum maximal partial Latin square.
    Hr { file: PathBuf },
    /// Empty-transversal lemma on a region.
    Lemma2 {
        file: PathBuf,
        /// Region rows (0-based); defaults to the region used by the bound.
        #[arg(long, value_delimiter = ',', requires = "cols")]
        rows: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', requires = "rows")]
        cols: Option<Vec<usize>>,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Search {
    /// Least size of a maximal square of order n.
    Min {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Maximum number of expanded squares.
        #[arg(long)]
        budget: Option<u64>,
        /// Checkpoint file, resumed from when it exists.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Enumerate labelled squares instead of symmetry classes.
        #[arg(long)]
        no_symmetry: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check every maximal orthogonal pair of order n against the bound.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Code {
    /// Size, minimum distance and covering radius.
    Analyze { file: PathBuf },
    /// One word per line, 1-based symbols.
    Export {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    EdgeList,
    Dot,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Export {
    /// Complement graph of the square.
    Graph {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "edge-list")]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
