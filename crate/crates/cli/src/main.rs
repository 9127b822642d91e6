use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kato_cli::{run, Command, RunConfig};

/// Hodge, Betti, Bott–Chern and Aeppli numbers of Kato manifolds, toric
/// Kato data and jet-level checks for contraction germs.
#[derive(Parser)]
#[command(name = "kato", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Io {
    #[arg(long)]
    input: PathBuf,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Numbers of the Kato manifold defined by a modification sequence.
    Hodge {
        #[command(flatten)]
        io: Io,
        /// Include the diamond as text.
        #[arg(long)]
        render: bool,
    },
    /// Numbers of the toric Kato manifold defined by a fan or subdivision script.
    Toric {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        render: bool,
    },
    /// Analyse `Id − γ*` on truncated forms for a polynomial germ.
    Germ {
        #[command(flatten)]
        io: Io,
        /// Form degree; all degrees when omitted.
        #[arg(long)]
        p: Option<usize>,
        /// Truncation order of the coefficients.
        #[arg(long, default_value_t = 3)]
        d: u32,
        /// Neumann series terms.
        #[arg(long, default_value_t = 60)]
        terms: usize,
    },
    /// Run the cross-check suite; one PASS/FAIL line per check.
    Verify {
        #[arg(long)]
        output: Option<PathBuf>,
        /// Directory of extra JSON inputs with expected values.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        germ_count: usize,
        #[arg(long, default_value_t = 60)]
        terms: usize,
    },
}

fn config(cmd: Cmd) -> RunConfig {
    match cmd {
        Cmd::Hodge { io, render } => RunConfig {
            input: Some(io.input),
            output: io.output,
            render,
            ..RunConfig::new(Command::Hodge)
        },
        Cmd::Toric { io, render } => RunConfig {
            input: Some(io.input),
            output: io.output,
            render,
            ..RunConfig::new(Command::Toric)
        },
        Cmd::Germ { io, p, d, terms } => RunConfig {
            input: Some(io.input),
            output: io.output,
            p,
            d,
            terms,
            ..RunConfig::new(Command::Germ)
        },
        Cmd::Verify {
            output,
            corpus,
            seed,
            germ_count,
            terms,
        } => RunConfig {
            output,
            corpus,
            seed,
            germ_count,
            terms,
            ..RunConfig::new(Command::Verify)
        },
    }
}

fn main() -> ExitCode {
    let outcome = run(&config(Cli::parse().command));
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
