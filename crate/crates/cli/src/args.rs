use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use extform::bounds::DEFAULT_BUDGET;

#[derive(Debug, Parser)]
#[command(name = "extform", version, about = "Exact extended formulations and extension-complexity bounds")]
pub struct Cli {
    /// Print the JSON report on stdout instead of the summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a polytope from the zoo. Without --hrep/--vrep the
    /// inequality description goes to stdout.
    Zoo(ZooArgs),
    /// Build an extended formulation. Without -o the .ext text goes to stdout.
    Construct(ConstructArgs),
    /// Check exactly that an extension projects onto a target polytope.
    Verify {
        /// Target as .hpoly or .vpoly.
        target: PathBuf,
        /// Extension as .ext.
        ext: PathBuf,
        /// Vertex list to pair with an .hpoly target instead of enumerating it.
        #[arg(long)]
        vrep: Option<PathBuf>,
    },
    /// Lower and upper bounds on extension complexity.
    Bounds {
        hpoly: PathBuf,
        vpoly: PathBuf,
        /// Known extension; repeatable. Only verified ones count.
        #[arg(long = "ext")]
        exts: Vec<PathBuf>,
        /// Node budget for each exact search.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Slack matrix of an inequality description and a point list.
    Slack {
        hpoly: PathBuf,
        vpoly: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Nonnegative factorization of the slack matrix read off an extension.
    Factorize {
        ext: PathBuf,
        hpoly: PathBuf,
        vpoly: PathBuf,
        /// File for the left factor T; stdout if neither file is given.
        #[arg(long)]
        t: Option<PathBuf>,
        /// File for the right factor S.
        #[arg(long)]
        s: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Matching,
    Permutahedron,
    Birkhoff,
    SpanningTree,
    Knapsack,
    Cube,
    Cross,
    Simplex,
}

#[derive(Debug, Args)]
pub struct ZooArgs {
    pub family: Family,
    /// Size parameter (nodes, coordinates or dimension).
    pub n: Option<usize>,
    /// Matching size k: only matchings with exactly k edges.
    #[arg(long)]
    pub size: Option<usize>,
    /// Knapsack weights, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub w: Vec<u64>,
    /// Knapsack capacity.
    #[arg(long = "W")]
    pub cap: Option<u64>,
    #[arg(long)]
    pub hrep: Option<PathBuf>,
    #[arg(long)]
    pub vrep: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Birkhoff,
    Martin,
    Balas,
    Knapsack,
    Sortnet,
    Colorful,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Network {
    Bubble,
    Batcher,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    pub kind: Kind,
    pub n: Option<usize>,
    /// Matching size for `colorful`.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub w: Vec<u64>,
    #[arg(long = "W")]
    pub cap: Option<u64>,
    #[arg(long, value_enum, default_value_t = Network::Batcher)]
    pub network: Network,
    /// Parts of a Balas union, as .hpoly or .vpoly; repeatable.
    #[arg(long = "part")]
    pub parts: Vec<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}
