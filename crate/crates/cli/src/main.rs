use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

/// Window size, level and product-size limits applied before any library call.
pub const MAX_WINDOW: usize = 6;
pub const MAX_ENUMERATION_EDGES: usize = 7;
pub const MAX_LEVEL: usize = 4;
pub const MAX_PRODUCT_EDGES: usize = 64;
pub const MAX_OPTIONAL_EDGES: usize = 20;

#[derive(Parser, Debug)]
#[command(name = "dessin", version, about = "Dessin filtrations workbench")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,

    /// Directory for enumeration caches (created on demand).
    #[arg(long, global = true, env = "DESSIN_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Leave the empty dessin out of basis windows.
    #[arg(long, global = true)]
    pub no_empty: bool,

    /// Worker threads for generator production; 1 runs sequentially.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Dessin,
    Belyi,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the isomorphism classes with a given number of edges.
    Enumerate {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        connected: bool,
    },
    /// Canonical key and representative of a dessin.
    Canon { file: PathBuf },
    /// Passport, components, genus and monodromy order.
    Invariants { file: PathBuf },
    /// Delete edges and report the survivor map.
    Delete {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        edges: Vec<usize>,
    },
    /// Expansion with the given optional edges.
    Expand {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        optional: Vec<usize>,
    },
    /// Product of two dessins.
    Product { a: PathBuf, b: PathBuf },
    /// Rank of one filtration level inside a window.
    Filtration {
        #[arg(long)]
        window: usize,
        #[arg(long)]
        level: usize,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Compare both filtrations at one level.
    Compare {
        #[arg(long)]
        window: usize,
        #[arg(long)]
        level: usize,
    },
    /// Successive quotient dimensions of the dessin filtration.
    Quotients {
        #[arg(long)]
        window: usize,
        #[arg(long)]
        max_level: usize,
    },
    /// Graphviz description of a dessin.
    ExportDot { file: PathBuf },
    /// Randomized invariant checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
