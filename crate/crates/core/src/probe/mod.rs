//! Single-hidden-layer MLP probe over frozen embeddings.
//!
//! `x (d) -> W1 x + b1 (hidden) -> activation -> W2 h + b2 (2) -> softmax`.
//! Parameters and all loss/gradient arithmetic are `f64`; embeddings are
//! stored as `f32`.

mod io;
mod model;
mod train;

use serde::{Deserialize, Serialize};

pub use io::{
    read_checkpoint, read_embeddings, write_checkpoint, write_embeddings, CheckpointHeader,
    EmbeddingHeader, EmbeddingSet, CHECKPOINT_DTYPE, EMBEDDING_DTYPE,
};
pub use model::{forward, loss_and_grad, predict, Gradients, ProbeModel};
pub use train::{evaluate, train_probe, Adam, EpochStats, TrainOutcome};

use crate::error::{Error, Result};

/// Number of output classes.
pub const OUTPUT_DIM: usize = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingRecord {
    pub id: u64,
    pub label: u8,
    pub vector: Vec<f32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    #[default]
    Relu,
    Tanh,
}

impl Activation {
    pub(crate) fn apply(self, z: f64) -> f64 {
        match self {
            Activation::Relu => z.max(0.0),
            Activation::Tanh => z.tanh(),
        }
    }

    /// Derivative at pre-activation `z`, given `a = apply(z)`.
    pub(crate) fn derivative(self, z: f64, a: f64) -> f64 {
        match self {
            Activation::Relu => {
                if z > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Tanh => 1.0 - a * a,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProbeConfig {
    /// Embedding dimension; `None` takes it from the training records.
    pub input_dim: Option<usize>,
    pub hidden_dim: usize,
    pub activation: Activation,
    pub epochs: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    pub seed: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            input_dim: None,
            hidden_dim: 256,
            activation: Activation::Relu,
            epochs: 20,
            learning_rate: 1e-5,
            batch_size: 32,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            seed: 1,
        }
    }
}

impl ProbeConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.epochs < 1 {
            return bad("epochs must be at least 1");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad("learning rate must be positive and finite");
        }
        if self.batch_size < 1 {
            return bad("minibatch size must be at least 1");
        }
        if self.hidden_dim < 1 || self.input_dim == Some(0) {
            return bad("layer widths must be at least 1");
        }
        if !((0.0..1.0).contains(&self.beta1) && (0.0..1.0).contains(&self.beta2)) {
            return bad("moment decay rates must lie in [0, 1)");
        }
        if !(self.epsilon > 0.0) {
            return bad("epsilon must be positive");
        }
        Ok(())
    }
}

/// Checks the shared-dimension, label and finiteness invariants; returns `d`.
pub fn check_records(records: &[EmbeddingRecord], what: &'static str) -> Result<usize> {
    let first = records.first().ok_or(Error::Empty(what))?;
    let dim = first.vector.len();
    for r in records {
        if r.vector.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: r.vector.len(),
            });
        }
        if r.label > 1 {
            return Err(Error::InvalidConfig(format!(
                "record {} has label {}, expected 0 or 1",
                r.id, r.label
            )));
        }
        if r.vector.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("record {} has a non-finite component", r.id)));
        }
    }
    Ok(dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: u64, label: u8, vector: Vec<f32>) -> EmbeddingRecord {
        EmbeddingRecord { id, label, vector }
    }

    #[test]
    fn default_config() {
        let cfg = ProbeConfig::default();
        assert_eq!(cfg.hidden_dim, 256);
        assert_eq!(cfg.epochs, 20);
        assert_eq!(cfg.learning_rate, 1e-5);
        assert_eq!(cfg.batch_size, 32);
        assert_eq!(cfg.activation, Activation::Relu);
        cfg.validate().unwrap();
    }

    #[test]
    fn config_validation() {
        for cfg in [
            ProbeConfig { epochs: 0, ..Default::default() },
            ProbeConfig { learning_rate: 0.0, ..Default::default() },
            ProbeConfig { learning_rate: f64::NAN, ..Default::default() },
            ProbeConfig { batch_size: 0, ..Default::default() },
            ProbeConfig { hidden_dim: 0, ..Default::default() },
            ProbeConfig { beta2: 1.0, ..Default::default() },
        ] {
            assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))), "{cfg:?}");
        }
    }

    #[test]
    fn config_json_fills_defaults() {
        let cfg: ProbeConfig = serde_json::from_str(r#"{"hidden_dim": 8, "activation": "tanh"}"#).unwrap();
        assert_eq!(cfg.hidden_dim, 8);
        assert_eq!(cfg.activation, Activation::Tanh);
        assert_eq!(cfg.epochs, 20);
        assert!(serde_json::from_str::<ProbeConfig>(r#"{"hiden_dim": 8}"#).is_err());
    }

    #[test]
    fn record_checks() {
        assert!(matches!(check_records(&[], "train"), Err(Error::Empty("train"))));
        let mixed = [rec(0, 0, vec![1.0, 2.0]), rec(1, 1, vec![1.0])];
        assert!(matches!(
            check_records(&mixed, "train"),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
        assert!(check_records(&[rec(0, 2, vec![1.0])], "train").is_err());
        assert!(matches!(
            check_records(&[rec(0, 0, vec![f32::INFINITY])], "train"),
            Err(Error::NonFinite(_))
        ));
        assert_eq!(check_records(&[rec(0, 1, vec![0.0; 3])], "train").unwrap(), 3);
    }
}
