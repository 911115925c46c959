use std::fs;
use std::io::Write;

use anyhow::{Context, Result};
use numprobe_core::probe::{
    evaluate, read_checkpoint, read_embeddings, train_probe, write_checkpoint, CheckpointHeader,
    EmbeddingRecord, EmbeddingSet, ProbeConfig, CHECKPOINT_DTYPE, OUTPUT_DIM,
};
use numprobe_core::Error;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{EvalProbe, TrainProbe};
use crate::metrics::{dataset_labels, emit, Metrics, RunKind};

fn load_config(a: &TrainProbe) -> Result<ProbeConfig> {
    let Some(path) = &a.config else {
        return Ok(ProbeConfig::default());
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cfg: ProbeConfig = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
    cfg.validate()?;
    Ok(cfg)
}

// Seeded 75/25 split of the training records.
fn hold_out(records: &[EmbeddingRecord], seed: u64) -> Result<(Vec<EmbeddingRecord>, Vec<EmbeddingRecord>)> {
    if records.len() < 2 {
        return Err(Error::Empty("training set too small to hold out validation records").into());
    }
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n_val = (records.len() / 4).max(1);
    let val = order[..n_val].iter().map(|&i| records[i].clone()).collect();
    let train = order[n_val..].iter().map(|&i| records[i].clone()).collect();
    Ok((train, val))
}

pub fn train(a: TrainProbe, out: &mut dyn Write) -> Result<()> {
    let cfg = load_config(&a)?;
    let set: EmbeddingSet = read_embeddings(&a.embeddings)?;
    let (train, val) = match &a.val_embeddings {
        Some(path) => {
            let val = read_embeddings(path)?;
            if val.header.dim != set.header.dim {
                return Err(Error::Format {
                    path: path.clone(),
                    line: 1,
                    message: format!(
                        "dim {} does not match training dim {}",
                        val.header.dim, set.header.dim
                    ),
                }
                .into());
            }
            (set.records.clone(), val.records)
        }
        None => hold_out(&set.records, cfg.seed)?,
    };
    let outcome = train_probe(&train, &val, &cfg)?;

    let header = CheckpointHeader {
        dtype: CHECKPOINT_DTYPE.to_string(),
        input_dim: outcome.model.input_dim,
        hidden_dim: outcome.model.hidden_dim,
        output_dim: OUTPUT_DIM,
        activation: outcome.model.activation,
        epochs_run: outcome.history.len(),
        best_epoch: outcome.best_epoch,
        seed: cfg.seed,
    };
    write_checkpoint(&a.model_out, &outcome.model, &header)?;

    let (language, task, variant) = dataset_labels(&set.header.dataset);
    let metrics = Metrics {
        kind: RunKind::Train,
        accuracy: outcome.best_val_accuracy(),
        epochs: outcome.history.len(),
        seed: cfg.seed,
        count: train.len(),
        model: set.header.source_model.clone(),
        dataset: set.header.dataset.clone(),
        language,
        task,
        variant,
        best_epoch: Some(outcome.best_epoch),
        history: outcome.history.iter().map(Into::into).collect(),
    };
    emit(&metrics, a.metrics_out.as_deref(), out)
}

pub fn eval(a: EvalProbe, out: &mut dyn Write) -> Result<()> {
    let (model, header) = read_checkpoint(&a.model_in)?;
    let set = read_embeddings(&a.embeddings)?;
    if set.header.dim != model.input_dim {
        return Err(Error::Format {
            path: a.embeddings.clone(),
            line: 1,
            message: format!(
                "dim {} does not match the probe's input dim {}",
                set.header.dim, model.input_dim
            ),
        }
        .into());
    }
    let accuracy = evaluate(&model, &set.records)?;
    let (language, task, variant) = dataset_labels(&set.header.dataset);
    let metrics = Metrics {
        kind: RunKind::Eval,
        accuracy,
        epochs: header.epochs_run,
        seed: header.seed,
        count: set.records.len(),
        model: set.header.source_model,
        dataset: set.header.dataset,
        language,
        task,
        variant,
        best_epoch: Some(header.best_epoch),
        history: Vec::new(),
    };
    emit(&metrics, a.metrics_out.as_deref(), out)
}
