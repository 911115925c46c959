use std::path::PathBuf;

use clap::{Parser, Subcommand};
use numprobe_core::dataset::{Task, Variant};
use numprobe_core::Language;

/// Multilingual numeracy probing: number-word grammars, probing datasets and
/// MLP probes over frozen embeddings.
///
/// Every flag can also be set through an environment variable named
/// `NUMPROBE_<FLAG>` (e.g. `NUMPROBE_LANG=fr`).
#[derive(Debug, Parser)]
#[command(name = "numprobe", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a dataset bundle and write its train/val/test files.
    GenData(GenData),
    /// Print the canonical form of a value, or judge a number word.
    Check(Check),
    /// Print synthesized ungrammatical number words, one per line.
    SynthUngrammatical(Synth),
    /// List `id, y, x0, x1` for every row of a dataset file.
    ExtractManifest(Manifest),
    /// Train a probe on an embedding file; prints metrics as JSON.
    TrainProbe(TrainProbe),
    /// Evaluate a saved probe on an embedding file; prints metrics as JSON.
    EvalProbe(EvalProbe),
    /// Aggregate metric files into a TSV table.
    Report(Report),
    /// Dump a language's lexicon as `token, role, weight` lines.
    Lexicon(Lexicon),
}

#[derive(Debug, clap::Args)]
pub struct GenData {
    #[arg(long, env = "NUMPROBE_LANG")]
    pub lang: Language,
    /// 1 (grammaticality) or 2 (comparison).
    #[arg(long, env = "NUMPROBE_TASK")]
    pub task: Task,
    /// bare or sentence.
    #[arg(long, env = "NUMPROBE_VARIANT")]
    pub variant: Variant,
    #[arg(long, env = "NUMPROBE_SEED", default_value_t = 1)]
    pub seed: u64,
    #[arg(long, env = "NUMPROBE_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,
    /// Total rows, split 60/20/20.
    #[arg(long, env = "NUMPROBE_TOTAL", default_value_t = 50_000)]
    pub total: usize,
    /// Largest value drawn.
    #[arg(long, env = "NUMPROBE_MAX_VALUE", default_value_t = 999)]
    pub max_value: u64,
    /// Let grammatical task 1 inputs repeat when distinct ones run out.
    #[arg(long, env = "NUMPROBE_ALLOW_REPEATS")]
    pub allow_repeats: bool,
    /// Keep generation order instead of shuffling.
    #[arg(long, env = "NUMPROBE_NO_SHUFFLE")]
    pub no_shuffle: bool,
    /// Tab-separated template file replacing the built-in templates.
    #[arg(long, env = "NUMPROBE_TEMPLATES")]
    pub templates: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct Check {
    #[arg(long, env = "NUMPROBE_LANG")]
    pub lang: Language,
    /// A non-negative integer or a number word.
    #[arg(env = "NUMPROBE_INPUT")]
    pub input: String,
}

#[derive(Debug, clap::Args)]
pub struct Synth {
    #[arg(long, env = "NUMPROBE_LANG")]
    pub lang: Language,
    #[arg(long, env = "NUMPROBE_COUNT", default_value_t = 10)]
    pub count: usize,
    #[arg(long, env = "NUMPROBE_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Largest source value.
    #[arg(long, env = "NUMPROBE_MAX_VALUE", default_value_t = 999)]
    pub max_value: u64,
    /// Length bound in characters; defaults to the longest canonical form.
    #[arg(long, env = "NUMPROBE_MAX_LEN")]
    pub max_len: Option<usize>,
}

#[derive(Debug, clap::Args)]
pub struct Manifest {
    /// A split file written by gen-data.
    #[arg(long, env = "NUMPROBE_DATASET")]
    pub dataset: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long, env = "NUMPROBE_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct TrainProbe {
    #[arg(long, env = "NUMPROBE_EMBEDDINGS")]
    pub embeddings: PathBuf,
    /// Validation embeddings; without it a seeded quarter of the training
    /// records is held out.
    #[arg(long, env = "NUMPROBE_VAL_EMBEDDINGS")]
    pub val_embeddings: Option<PathBuf>,
    /// JSON probe configuration; omitted fields take their defaults.
    #[arg(long, env = "NUMPROBE_CONFIG")]
    pub config: Option<PathBuf>,
    #[arg(long, env = "NUMPROBE_MODEL_OUT")]
    pub model_out: PathBuf,
    /// Also write the metrics JSON here.
    #[arg(long, env = "NUMPROBE_METRICS_OUT")]
    pub metrics_out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct EvalProbe {
    #[arg(long, env = "NUMPROBE_EMBEDDINGS")]
    pub embeddings: PathBuf,
    #[arg(long, env = "NUMPROBE_MODEL_IN")]
    pub model_in: PathBuf,
    #[arg(long, env = "NUMPROBE_METRICS_OUT")]
    pub metrics_out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct Report {
    #[arg(long, env = "NUMPROBE_METRICS_DIR")]
    pub metrics_dir: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct Lexicon {
    #[arg(long, env = "NUMPROBE_LANG")]
    pub lang: Language,
}
