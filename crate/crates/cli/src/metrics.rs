use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::SystemTime;

use anyhow::{Context, Result};
use numprobe_core::dataset::parse_split_file_name;
use numprobe_core::probe::EpochStats;
use serde::{Deserialize, Serialize};

use crate::args::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunKind {
    Train,
    Eval,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Epoch {
    pub epoch: usize,
    pub train_loss: f64,
    pub val_accuracy: f64,
}

impl From<&EpochStats> for Epoch {
    fn from(e: &EpochStats) -> Self {
        Epoch {
            epoch: e.epoch,
            train_loss: e.train_loss,
            val_accuracy: e.val_accuracy,
        }
    }
}

/// One run's metrics, printed to standard output and optionally saved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub kind: RunKind,
    /// Best validation accuracy for training runs, accuracy on the given
    /// records for evaluation runs.
    pub accuracy: f64,
    pub epochs: usize,
    pub seed: u64,
    pub count: usize,
    pub model: String,
    pub dataset: String,
    pub language: Option<String>,
    pub task: Option<String>,
    pub variant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best_epoch: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub history: Vec<Epoch>,
}

/// `(language, task, variant)` from a dataset name such as `en_1_bare_test`.
pub fn dataset_labels(dataset: &str) -> (Option<String>, Option<String>, Option<String>) {
    match parse_split_file_name(dataset) {
        Some((lang, kind, _)) => (
            Some(lang.to_string()),
            Some(kind.task.to_string()),
            Some(kind.variant.to_string()),
        ),
        None => (None, None, None),
    }
}

pub fn emit(metrics: &Metrics, file: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let json = serde_json::to_string(metrics)?;
    writeln!(out, "{json}")?;
    if let Some(path) = file {
        fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

type Key = (String, String, String, String);

struct Cell {
    accuracy: f64,
    mtime: SystemTime,
    path: PathBuf,
}

pub fn report(a: Report, out: &mut dyn Write) -> Result<()> {
    let table = aggregate(&a.metrics_dir)?;
    writeln!(out, "language\tmodel\ttask\tvariant\tval_accuracy\ttest_accuracy")?;
    for ((lang, model, task, variant), cells) in &table {
        let fmt = |kind| {
            cells
                .get(&kind)
                .map_or_else(|| "-".to_string(), |c: &Cell| format!("{:.4}", c.accuracy))
        };
        writeln!(
            out,
            "{lang}\t{model}\t{task}\t{variant}\t{}\t{}",
            fmt(RunKind::Train),
            fmt(RunKind::Eval)
        )?;
    }
    Ok(())
}

fn aggregate(dir: &Path) -> Result<BTreeMap<Key, BTreeMap<RunKind, Cell>>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading metrics directory {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()
        .with_context(|| format!("reading metrics directory {}", dir.display()))?;
    files.retain(|p| p.extension().is_some_and(|e| e == "json"));
    files.sort();

    let mut table: BTreeMap<Key, BTreeMap<RunKind, Cell>> = BTreeMap::new();
    for path in files {
        let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let m: Metrics = serde_json::from_str(&text)
            .with_context(|| format!("malformed metrics file {}", path.display()))?;
        let mtime = fs::metadata(&path)
            .and_then(|md| md.modified())
            .with_context(|| format!("reading {}", path.display()))?;
        let dash = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let key = (dash(m.language), m.model, dash(m.task), dash(m.variant));
        let cell = Cell {
            accuracy: m.accuracy,
            mtime,
            path,
        };
        let cells = table.entry(key.clone()).or_default();
        match cells.get(&m.kind) {
            Some(old) => {
                let (keep, drop) = if cell.mtime >= old.mtime { (&cell, old) } else { (old, &cell) };
                eprintln!(
                    "warning: {} and {} both report {:?} for {}/{}/{}/{}; keeping the newer {}",
                    drop.path.display(),
                    keep.path.display(),
                    m.kind,
                    key.0,
                    key.1,
                    key.2,
                    key.3,
                    keep.path.display()
                );
                if cell.mtime >= old.mtime {
                    cells.insert(m.kind, cell);
                }
            }
            None => {
                cells.insert(m.kind, cell);
            }
        }
    }
    Ok(table)
}
