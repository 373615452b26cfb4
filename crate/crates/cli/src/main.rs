//! Command-line driver: root-system diagnostics, Steinberg module
//! construction and condensation, character-table validation, module
//! chopping, decomposition runbooks, and verification of the bundled
//! reference tables.
//!
//! Exit codes: 0 success, 1 usage, 2 data validation, 3 mathematical
//! refusal, 4 resource gate.

mod commands;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "decmat", version, about = "exact modular representation toolkit")]
struct Cli {
    /// cap the number of worker threads
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Root system and Weyl group diagnostics
    Grp {
        #[command(subcommand)]
        sub: commands::GrpCmd,
    },
    /// Steinberg module construction and condensation
    St {
        #[command(subcommand)]
        sub: commands::StCmd,
    },
    /// Character table tools
    Ct {
        #[command(subcommand)]
        sub: commands::CtCmd,
    },
    /// Packed-matrix module tools
    Mtx {
        #[command(subcommand)]
        sub: commands::MtxCmd,
    },
    /// Decomposition-matrix runbooks
    Decomp {
        #[command(subcommand)]
        sub: commands::DecompCmd,
    },
    /// Compare pipeline outputs against the bundled reference tables
    VerifyPaper(commands::VerifyPaperArgs),
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let code = match cli.command {
        Command::Grp { sub } => commands::run_grp(sub),
        Command::St { sub } => commands::run_st(sub),
        Command::Ct { sub } => commands::run_ct(sub),
        Command::Mtx { sub } => commands::run_mtx(sub),
        Command::Decomp { sub } => commands::run_decomp(sub),
        Command::VerifyPaper(args) => commands::run_verify(args),
    };
    std::process::exit(code);
}
