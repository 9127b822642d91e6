//! Batch front end: read a JSON input, run one analysis, write a JSON report.
//!
//! Exit codes are `0` when every check passes, `1` when some check fails and
//! `2` when the input cannot be read, parsed or is outside the supported
//! range. Reports carry no timestamps, so identical inputs give identical
//! bytes.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

mod germ;
mod hodge;
mod toric;
mod verify;

pub use germ::{EXACT_DIM_CAP, ITERATE_POWER, MAX_D, MAX_N, MAX_TERMS};
pub use verify::MAX_GERM_COUNT;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECKS_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Hodge,
    Toric,
    Germ,
    Verify,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    /// Report destination; standard output when absent.
    pub output: Option<PathBuf>,
    pub render: bool,
    /// Form degree for `germ`; every `0 <= p <= n` when absent.
    pub p: Option<usize>,
    pub d: u32,
    pub terms: usize,
    pub seed: u64,
    pub germ_count: usize,
    /// Extra `verify` inputs with expected values.
    pub corpus: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            input: None,
            output: None,
            render: false,
            p: None,
            d: 3,
            terms: 60,
            seed: 42,
            germ_count: 20,
            corpus: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutcome {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Result of an analysis before it is written out.
pub(crate) struct Produced {
    pub payload: String,
    pub pass: bool,
    /// Printed to standard output even when the payload goes to a file.
    pub extra_stdout: String,
    pub stderr: String,
}

pub fn run(config: &RunConfig) -> RunOutcome {
    let produced = match config.command {
        Command::Hodge => hodge::run_hodge(config),
        Command::Toric => toric::run_toric(config),
        Command::Germ => germ::run_germ(config),
        Command::Verify => verify::run_verify(config),
    };
    match produced {
        Ok(p) => finish(config, p),
        Err(msg) => RunOutcome::input_error(msg),
    }
}

fn finish(config: &RunConfig, p: Produced) -> RunOutcome {
    let mut stdout = String::new();
    match &config.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &p.payload) {
                return RunOutcome::input_error(format!("cannot write {}: {e}", path.display()));
            }
            stdout.push_str(&p.extra_stdout);
        }
        None => stdout.push_str(&p.payload),
    }
    RunOutcome {
        code: if p.pass { EXIT_OK } else { EXIT_CHECKS_FAILED },
        stdout,
        stderr: p.stderr,
    }
}

pub(crate) fn read_input(config: &RunConfig) -> Result<String, String> {
    let path = config
        .input
        .as_deref()
        .ok_or_else(|| "--input is required".to_string())?;
    read_file(path)
}

pub(crate) fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
