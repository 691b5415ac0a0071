mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Failure;

const EXIT_CODES: &str = "Exit codes:
  0  success
  2  input error (bad parameters, unreadable or invalid file)
  3  decoupling failure (unfolded stabilizers differ from the toric codes)
  4  verification failure (first failing check is named)
  5  gate failure (code space not preserved, or wrong logical action)";

#[derive(Parser)]
#[command(
    name = "colortoric",
    version,
    about = "Build color-code lattices, unfold them into toric codes and check transversal gates"
)]
#[command(after_help = EXIT_CODES)]
struct Cli {
    /// Output file (build, verify, gates) or directory (unfold, report).
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,
    /// Per-cell detail.
    #[arg(short, long, global = true)]
    verbose: bool,
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Default directory for unfold and report output.
    #[arg(
        long,
        env = "COLORTORIC_REPORT_DIR",
        global = true,
        hide_env_values = true
    )]
    report_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a lattice from a named family.
    Build {
        /// One of hex_torus, triangular_666, square_like_2d, cube_3torus, tetrahedron_like_3d, hypercube_like.
        family: String,
        params: Vec<usize>,
    },
    /// Unfold the color code on a lattice into toric codes.
    Unfold { lattice: PathBuf },
    /// Run structural, counting and boundary checks.
    Verify {
        lattice: PathBuf,
        /// Face-count identities and overlap-group counts for every cell.
        #[arg(long)]
        counts: bool,
        /// Unfolding and boundary condensation table.
        #[arg(long)]
        boundaries: bool,
        /// All checks (the default when none is selected).
        #[arg(long)]
        all: bool,
    },
    /// Logical action of transversal R_level.
    Gates {
        lattice: PathBuf,
        /// Defaults to the lattice dimension.
        #[arg(long)]
        level: Option<u32>,
        /// Also run the commutator chain for every ordering of the logicals.
        #[arg(long)]
        permutations: bool,
    },
    /// Unfold, verify and, where applicable, check gates, writing one report.
    Report { lattice: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = commands::Options {
        out: cli.out,
        verbose: cli.verbose,
        json: cli.json,
        report_dir: cli.report_dir,
    };
    let result = match cli.command {
        Command::Build { family, params } => commands::build(&opts, &family, &params),
        Command::Unfold { lattice } => commands::unfold(&opts, &lattice),
        Command::Verify {
            lattice,
            counts,
            boundaries,
            all,
        } => {
            let none = !(counts || boundaries || all);
            commands::verify(
                &opts,
                &lattice,
                counts || all || none,
                boundaries || all || none,
            )
        }
        Command::Gates {
            lattice,
            level,
            permutations,
        } => commands::gates(&opts, &lattice, level, permutations),
        Command::Report { lattice } => commands::report(&opts, &lattice),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "{m}"),
            Failure::Decoupling(m) => write!(f, "decoupling failed: {m}"),
            Failure::Verification(m) => write!(f, "check `{m}` failed"),
            Failure::Gate(m) => write!(f, "gate check failed: {m}"),
        }
    }
}
