//! Command-line front end for the numeracy probing toolkit.
//!
//! [`execute`] runs one invocation against an arbitrary writer so the same
//! code path serves the binary and in-process callers.

pub mod args;
mod data;
mod metrics;
mod probe;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use anyhow::Result;
use clap::Parser;
use numprobe_core::Error;

pub use args::Cli;
use args::Command;

/// Usage problems detected after argument parsing.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    Usage,
    Data,
    Capacity,
}

impl FailureKind {
    pub fn code(self) -> u8 {
        match self {
            FailureKind::Usage => 1,
            FailureKind::Data => 2,
            FailureKind::Capacity => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FailureKind::Usage => "usage",
            FailureKind::Data => "data",
            FailureKind::Capacity => "capacity",
        }
    }
}

/// A failed invocation, already reduced to its exit class and one-line message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: FailureKind,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.kind.label(), self.message)
    }
}

impl std::error::Error for Failure {}

fn classify(err: &anyhow::Error) -> FailureKind {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return FailureKind::Usage;
        }
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::Capacity { .. } | Error::Synthesis { .. } => FailureKind::Capacity,
                Error::UnsupportedLanguage(_) | Error::InvalidConfig(_) => FailureKind::Usage,
                _ => FailureKind::Data,
            };
        }
    }
    FailureKind::Data
}

fn one_line(err: &anyhow::Error) -> String {
    let text = err.chain().map(ToString::to_string).collect::<Vec<_>>().join(": ");
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|c| {
        c.downcast_ref::<std::io::Error>()
            .is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
    })
}

/// Runs an already parsed command.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::GenData(a) => data::gen_data(a, out),
        Command::Check(a) => data::check(a, out),
        Command::SynthUngrammatical(a) => data::synth(a, out),
        Command::ExtractManifest(a) => data::manifest(a, out),
        Command::Lexicon(a) => data::lexicon(a, out),
        Command::TrainProbe(a) => probe::train(a, out),
        Command::EvalProbe(a) => probe::eval(a, out),
        Command::Report(a) => metrics::report(a, out),
    }
}

/// Parses `args` (including the program name) and runs the command.
///
/// Help and version text go to `out` and count as success, as does a
/// closed output pipe.
pub fn execute<I, T>(args: I, out: &mut dyn Write) -> std::result::Result<(), Failure>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{rendered}");
                return Ok(());
            }
            let first = rendered
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            return Err(Failure {
                kind: FailureKind::Usage,
                message: first.to_string(),
            });
        }
    };
    match run(cli, out) {
        Ok(()) => Ok(()),
        Err(err) if is_broken_pipe(&err) => Ok(()),
        Err(err) => Err(Failure {
            kind: classify(&err),
            message: one_line(&err),
        }),
    }
}
