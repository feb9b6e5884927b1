//! `sforest`: generate complexes, compute Laplacian polynomials, enumerate
//! rooted forests and orientations, and verify the identities relating them.
//!
//! Every subcommand except `gen` prints a JSON report on stdout.
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 enumeration cap exceeded.

mod report;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use simplicial_forests::format::{parse_complex, write_complex};
use simplicial_forests::{generators, Caps, Complex, Error};

/// Seed used by `verify` when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Parser)]
#[command(
    name = "sforest",
    version,
    about = "Rooted forests of simplicial and cell complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated complex as JSON.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Output file (stdout when absent).
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Shifted characteristic polynomial det(L + x Id) of the top Laplacian.
    Charpoly { file: PathBuf },
    /// Enumerate rooted forests and compare with the characteristic polynomial.
    Forests {
        file: PathBuf,
        /// Also check the weighted identities at three points drawn from this seed.
        #[arg(long)]
        weights_seed: Option<u64>,
        /// Refuse enumeration above this many facets or ridges.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Fitting orientations, signs and strips of one rooted forest.
    Orientations {
        file: PathBuf,
        /// Facet indices of the forest, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        forest: Vec<usize>,
        /// Ridge indices of the root, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        root: Vec<usize>,
    },
    /// Check the forest identities; exits 1 if any fails.
    Verify {
        file: PathBuf,
        /// Include per-forest and per-root checks.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Subcommand, Clone)]
enum GenKind {
    /// All faces of dimension <= d on n vertices.
    Complete { n: usize, d: usize },
    /// d-skeleton of the n-cube.
    Hypercube { n: usize, d: usize },
    /// Six-vertex projective plane.
    Rp2,
    /// Triangular bipyramid.
    Bipyramid,
    /// Boundary of the simplex on n vertices.
    SimplexBoundary { n: usize },
}

/// What went wrong, mapped onto an exit code.
pub enum Failure {
    Input(String),
    Cap(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn load(path: &PathBuf) -> Result<Complex, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_complex(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn caps(cap: Option<usize>) -> Caps {
    cap.map_or_else(Caps::default, |c| Caps {
        max_facets: c,
        max_ridges: c,
    })
}

fn generate(kind: &GenKind) -> Result<Complex, Failure> {
    Ok(match *kind {
        GenKind::Complete { n, d } => generators::complete(n, d)?.into(),
        GenKind::Hypercube { n, d } => generators::hypercube(n, d)?.into(),
        GenKind::Rp2 => generators::projective_plane_6().into(),
        GenKind::Bipyramid => generators::bipyramid().into(),
        GenKind::SimplexBoundary { n } => generators::simplex_boundary(n)?.into(),
    })
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> Result<(), Failure> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            Err(Failure::Input(format!("writing output: {e}")))
        }
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (report, passed) = match cli.command {
        Command::Gen { kind, output } => {
            let text = write_complex(&generate(&kind)?) + "\n";
            return match output {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
                None => emit(&text),
            };
        }
        Command::Charpoly { file } => (report::charpoly(&file, &load(&file)?)?, true),
        Command::Forests {
            file,
            weights_seed,
            cap,
        } => report::forests(&file, &load(&file)?, caps(cap), weights_seed)?,
        Command::Orientations { file, forest, root } => (
            report::orientations(&file, &load(&file)?, &forest, &root)?,
            true,
        ),
        Command::Verify {
            file,
            all,
            seed,
            cap,
        } => report::verify(&file, &load(&file)?, caps(cap), all, seed)?,
    };
    emit(&(serde_json::to_string_pretty(&report).expect("serializable") + "\n"))?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => {
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
