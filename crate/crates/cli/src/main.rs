//! `trigroup`: triangle presentations, normal forms, building balls and
//! double cosets from the command line.
//!
//! Exit status is 0 on success, 1 when a check fails or the input is
//! rejected, and 2 on a usage error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Default seed for every randomized check.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser, Debug)]
#[command(
    name = "trigroup",
    version,
    about = "Exact computations with triangle presentations"
)]
pub struct Cli {
    /// Worker threads (output does not depend on this).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Structured JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the Desarguesian plane of a prime order and check its axioms.
    Plane {
        #[arg(long)]
        order: usize,
    },
    /// Search for triangle presentations over the plane of a given order.
    Search(SearchArgs),
    /// Check a presentation file; prints OK when it is valid.
    Validate { file: PathBuf },
    /// Normal form of a word.
    Normalize {
        file: PathBuf,
        /// Letters such as "a0 a1^-1".
        #[arg(long)]
        word: String,
        /// Print the right normal form (inverse letters last) instead.
        #[arg(long)]
        right: bool,
    },
    /// Commuting generators, strips, line-central generators and
    /// normalizer scans.
    Analyze {
        file: PathBuf,
        /// Also scan for elements normalizing each flat subgroup.
        #[arg(long)]
        normalizer_radius: Option<usize>,
    },
    /// Ball in the Cayley graph with its triangles and the link of its center.
    Ball(BallArgs),
    /// Double cosets of a flat subgroup, or of the free-product fixture.
    Cosets(CosetArgs),
    /// Check that the rewriting system has unique normal forms.
    Confluence {
        file: PathBuf,
        /// Also run this many seeded random termination and associativity
        /// checks.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum LambdaFamily {
    All,
    Singer,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub order: usize,
    /// Which point-line correspondences to try.
    #[arg(long, value_enum, default_value_t = LambdaFamily::Singer)]
    pub lambda: LambdaFamily,
    /// Stop after this many presentations.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub max: u64,
    /// A triple "x y z" every result must contain (repeatable).
    #[arg(long)]
    pub forced: Vec<String>,
    /// Permit enumerating every bijection for orders above 2.
    #[arg(long)]
    pub allow_large: bool,
    /// Give up on a correspondence after this many search nodes.
    #[arg(long)]
    pub node_budget: Option<u64>,
    /// Write each presentation to its own file here instead of stdout.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BallArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub radius: usize,
    /// Center of the ball, as a word.
    #[arg(long)]
    pub center: Option<String>,
    /// Emit the ball as a Graphviz digraph, to the given file or stdout.
    #[arg(long, value_name = "OUT", conflicts_with = "json")]
    pub dot: Option<Option<PathBuf>>,
    /// Write the DOT or JSON rendering here and print the summary instead.
    #[arg(long, value_name = "OUT")]
    pub output: Option<PathBuf>,
    /// Refuse balls estimated to exceed this many vertices.
    #[arg(long, default_value_t = trigroup_core::building::DEFAULT_VERTEX_CAP)]
    pub cap: usize,
}

#[derive(Args, Debug)]
pub struct CosetArgs {
    /// Presentation file (omit with --free-product).
    #[arg(required_unless_present = "free_product")]
    pub file: Option<PathBuf>,
    /// Commuting triple "x,y,z", or "auto" for the first one found.
    #[arg(long, default_value = "auto")]
    pub triple: String,
    /// Use the free product of s infinite cyclic and t order-two groups,
    /// given as "s,t", with the subgroup generated by the first factor.
    #[arg(long, conflicts_with = "file")]
    pub free_product: Option<String>,
    #[arg(long)]
    pub radius: usize,
    /// Length bound on subgroup elements used to merge cosets.
    #[arg(long)]
    pub bound: Option<usize>,
    /// Number of free double cosets required; fails with status 1 when
    /// fewer are found.
    #[arg(long)]
    pub target: Option<usize>,
    /// Also build and verify a sequence of this many elements in distinct
    /// free double cosets.
    #[arg(long)]
    pub sequence: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<commands::UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
