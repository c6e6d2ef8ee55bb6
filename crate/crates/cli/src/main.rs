mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coxeter_core::enumeration::{DEFAULT_RADIUS, DEFAULT_SIZE_CAP};
use coxeter_core::Limits;

use report::Failure;

/// Coxeter groups: word problem, spherical subsets, Davis complexes and reflection rigidity.
#[derive(Debug, Parser)]
#[command(name = "coxeter", version)]
pub struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Print `{"ok", "result", "warnings"}` JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Longest word the braid-move engine accepts
    #[arg(long, global = true, default_value_t = Limits::default().word_cap, value_parser = positive)]
    word_cap: usize,
    /// Largest number of states explored by conjugation descent and subgroup closures
    #[arg(long, global = true, default_value_t = Limits::default().closure_cap, value_parser = positive)]
    closure_cap: usize,
    /// Radius of enumerated Cayley balls
    #[arg(long, global = true, default_value_t = DEFAULT_RADIUS, value_parser = positive)]
    enum_radius: usize,
    /// Most elements an enumeration may produce
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_CAP, value_parser = positive)]
    size_cap: usize,
    /// Radius of conjugator searches in the target group
    #[arg(long, global = true, default_value_t = 8, value_parser = positive)]
    search_radius: usize,
}

impl RunConfig {
    fn limits(&self) -> Limits {
        Limits {
            word_cap: self.word_cap,
            closure_cap: self.closure_cap,
        }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DavisView {
    /// Cell poset with covering relations
    Hasse,
    /// Vertices and edges only
    Skeleton,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a presentation is a valid Coxeter matrix
    Validate {
        #[arg(long = "m")]
        m: PathBuf,
    },
    /// Shortlex normal form of a word
    Reduce {
        #[arg(long = "m")]
        m: PathBuf,
        /// Comma-separated generator names; `1` or empty for the identity
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Whether two words represent the same element
    Equal {
        #[arg(long = "m")]
        m: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Order of the group, or of an element when a word is given
    Order {
        #[arg(long = "m")]
        m: PathBuf,
        #[arg(long)]
        word: Option<String>,
    },
    /// Whether a parabolic subgroup (default: the whole group) is finite, with a witness
    Spherical {
        #[arg(long = "m")]
        m: PathBuf,
        /// Comma-separated generator names
        #[arg(long)]
        subset: Option<String>,
    },
    /// Dimension of the Davis complex
    Dimension {
        #[arg(long = "m")]
        m: PathBuf,
    },
    /// Davis complex truncations
    Davis {
        #[command(subcommand)]
        command: DavisCommand,
    },
    /// Whether an element is conjugate to a generator
    IsReflection {
        #[arg(long = "m")]
        m: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Conjugate an involution to the longest element of a finite parabolic
    NormalForm {
        #[arg(long = "m")]
        m: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Replace s by st, where m(s,t) = 2 and all other labels at s are infinite
    Twist {
        #[arg(long = "m")]
        m: PathBuf,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
    },
    /// Twist a generating set until a map sends every generator to a reflection
    Align {
        #[arg(long)]
        map: PathBuf,
        /// Conjugator search radius (defaults to --search-radius)
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Vertex count, edge count and edge labels of the diagram
    Invariants {
        #[arg(long = "m")]
        m: PathBuf,
    },
    /// Compare diagram invariants, group orders and dimensions of two presentations
    Compare {
        #[arg(long = "m")]
        m: PathBuf,
        #[arg(long)]
        against: PathBuf,
        /// Also search for an isomorphism (finite groups only)
        #[arg(long)]
        search_iso: bool,
    },
    /// Enumeration tables
    Table {
        #[command(subcommand)]
        command: TableCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum DavisCommand {
    /// Build the truncation of the given radius and export it
    Build {
        #[arg(long = "m")]
        m: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, value_enum, default_value_t = DavisView::Hasse)]
        view: DavisView,
    },
}

#[derive(Debug, Subcommand)]
pub enum TableCommand {
    /// Export the Cayley ball of radius --enum-radius
    Export {
        #[arg(long = "m")]
        m: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.config.json;
    match commands::run(&cli.command, &cli.config) {
        Ok(outcome) => {
            outcome.print(json);
            ExitCode::from(if outcome.verdict { 0 } else { 1 })
        }
        Err(failure) => {
            failure.print(json);
            ExitCode::from(match failure {
                Failure::Cap(_) => 3,
                Failure::Input(_) => 2,
            })
        }
    }
}
