use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::model::{loss_and_grad_of, predict, Gradients, ProbeModel};
use super::{check_records, EmbeddingRecord, ProbeConfig};
use crate::error::{Error, Result};

/// Adam optimizer state for one [`ProbeModel`].
#[derive(Debug, Clone)]
pub struct Adam {
    lr: f64,
    beta1: f64,
    beta2: f64,
    eps: f64,
    step: i32,
    m: [Vec<f64>; 4],
    v: [Vec<f64>; 4],
}

impl Adam {
    pub fn new(model: &ProbeModel, cfg: &ProbeConfig) -> Self {
        let zeros = || model.tensors().map(|t| vec![0.0; t.len()]);
        Adam {
            lr: cfg.learning_rate,
            beta1: cfg.beta1,
            beta2: cfg.beta2,
            eps: cfg.epsilon,
            step: 0,
            m: zeros(),
            v: zeros(),
        }
    }

    pub fn step(&mut self, model: &mut ProbeModel, grads: &Gradients) {
        self.step += 1;
        let c1 = 1.0 - self.beta1.powi(self.step);
        let c2 = 1.0 - self.beta2.powi(self.step);
        let params = model.tensors_mut();
        let grads = grads.tensors();
        for (k, (p, g)) in params.into_iter().zip(grads).enumerate() {
            let (m, v) = (&mut self.m[k], &mut self.v[k]);
            for i in 0..p.len() {
                m[i] = self.beta1 * m[i] + (1.0 - self.beta1) * g[i];
                v[i] = self.beta2 * v[i] + (1.0 - self.beta2) * g[i] * g[i];
                let m_hat = m[i] / c1;
                let v_hat = v[i] / c2;
                p[i] -= self.lr * m_hat / (v_hat.sqrt() + self.eps);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpochStats {
    /// 1-based.
    pub epoch: usize,
    /// Mean minibatch loss over the epoch, weighted by batch size.
    pub train_loss: f64,
    pub val_accuracy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    /// Snapshot from the epoch with the best validation accuracy.
    pub model: ProbeModel,
    /// Epoch that produced `model`; the earliest wins ties.
    pub best_epoch: usize,
    pub history: Vec<EpochStats>,
}

impl TrainOutcome {
    pub fn best_val_accuracy(&self) -> f64 {
        self.history[self.best_epoch - 1].val_accuracy
    }
}

/// Trains a fresh probe for `cfg.epochs` epochs of shuffled minibatch Adam
/// updates. The records are only read.
pub fn train_probe(
    train: &[EmbeddingRecord],
    val: &[EmbeddingRecord],
    cfg: &ProbeConfig,
) -> Result<TrainOutcome> {
    cfg.validate()?;
    let d = check_records(train, "training set")?;
    let dv = check_records(val, "validation set")?;
    if dv != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: dv,
        });
    }
    if let Some(expected) = cfg.input_dim {
        if expected != d {
            return Err(Error::DimensionMismatch { expected, found: d });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut model = ProbeModel::init(d, cfg.hidden_dim, cfg.activation, &mut rng);
    let mut adam = Adam::new(&model, cfg);
    let mut order: Vec<usize> = (0..train.len()).collect();

    let mut history = Vec::with_capacity(cfg.epochs);
    let mut best: Option<(f64, usize, ProbeModel)> = None;
    for epoch in 1..=cfg.epochs {
        order.shuffle(&mut rng);
        let mut loss_sum = 0.0;
        for chunk in order.chunks(cfg.batch_size) {
            let (loss, grads) = loss_and_grad_of(&model, chunk.iter().map(|&i| &train[i]))?;
            if !loss.is_finite() {
                return Err(Error::NonFinite(format!(
                    "training loss became {loss} in epoch {epoch}"
                )));
            }
            adam.step(&mut model, &grads);
            if !model.is_finite() {
                return Err(Error::NonFinite(format!(
                    "parameters became non-finite in epoch {epoch}"
                )));
            }
            loss_sum += loss * chunk.len() as f64;
        }
        let val_accuracy = evaluate(&model, val)?;
        history.push(EpochStats {
            epoch,
            train_loss: loss_sum / train.len() as f64,
            val_accuracy,
        });
        if best.as_ref().map_or(true, |(acc, _, _)| val_accuracy > *acc) {
            best = Some((val_accuracy, epoch, model.clone()));
        }
    }
    let (_, best_epoch, model) = best.expect("at least one epoch");
    Ok(TrainOutcome {
        model,
        best_epoch,
        history,
    })
}

/// Fraction of records whose argmax prediction equals the label.
pub fn evaluate(model: &ProbeModel, records: &[EmbeddingRecord]) -> Result<f64> {
    if records.is_empty() {
        return Err(Error::Empty("evaluation set"));
    }
    let mut correct = 0usize;
    for r in records {
        if predict(model, &r.vector)? == r.label {
            correct += 1;
        }
    }
    Ok(correct as f64 / records.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probe::Activation;

    fn rec(id: u64, label: u8, x: f32) -> EmbeddingRecord {
        EmbeddingRecord {
            id,
            label,
            vector: vec![x],
        }
    }

    // Predicts class 1 exactly when x > 0.
    fn sign_model() -> ProbeModel {
        let mut m = ProbeModel::zeros(1, 1, Activation::Relu);
        m.w1 = vec![1.0];
        m.w2 = vec![0.0, 1.0];
        m
    }

    #[test]
    fn evaluate_examples() {
        let m = sign_model();
        let right = [rec(0, 1, 1.0), rec(1, 0, -1.0), rec(2, 1, 3.0)];
        assert_eq!(evaluate(&m, &right).unwrap(), 1.0);
        let wrong = [rec(0, 0, 1.0), rec(1, 1, -1.0)];
        assert_eq!(evaluate(&m, &wrong).unwrap(), 0.0);
        let mixed = [rec(0, 1, 1.0), rec(1, 0, -1.0), rec(2, 1, 2.0), rec(3, 1, -2.0)];
        assert_eq!(evaluate(&m, &mixed).unwrap(), 0.75);
        assert!(matches!(evaluate(&m, &[]), Err(Error::Empty(_))));
    }

    #[test]
    fn ties_go_to_class_zero() {
        let m = sign_model();
        assert_eq!(evaluate(&m, &[rec(0, 0, 0.0)]).unwrap(), 1.0);
        assert_eq!(evaluate(&m, &[rec(0, 1, 0.0)]).unwrap(), 0.0);
    }

    #[test]
    fn adam_first_step_moves_each_parameter_by_lr() {
        let mut m = sign_model();
        let before = m.clone();
        let cfg = ProbeConfig {
            learning_rate: 0.1,
            ..Default::default()
        };
        let mut adam = Adam::new(&m, &cfg);
        let g = Gradients {
            w1: vec![3.0],
            b1: vec![-0.5],
            w2: vec![0.0, 2.0],
            b2: vec![1e-3, -7.0],
        };
        adam.step(&mut m, &g);
        assert!((m.w1[0] - (before.w1[0] - 0.1)).abs() < 1e-7);
        assert!((m.b1[0] - (before.b1[0] + 0.1)).abs() < 1e-7);
        assert_eq!(m.w2[0], before.w2[0]);
        assert!((m.w2[1] - (before.w2[1] - 0.1)).abs() < 1e-7);
        assert!((m.b2[0] - (before.b2[0] - 0.1)).abs() < 1e-5);
        assert!((m.b2[1] - (before.b2[1] + 0.1)).abs() < 1e-7);
    }

    #[test]
    fn mismatched_sets_are_rejected() {
        let cfg = ProbeConfig::default();
        let train = [rec(0, 0, 1.0)];
        let val = [EmbeddingRecord {
            id: 1,
            label: 0,
            vector: vec![1.0, 2.0],
        }];
        assert!(matches!(
            train_probe(&train, &val, &cfg),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(train_probe(&[], &val, &cfg), Err(Error::Empty(_))));
        let cfg = ProbeConfig {
            input_dim: Some(4),
            ..Default::default()
        };
        assert!(matches!(
            train_probe(&train, &train, &cfg),
            Err(Error::DimensionMismatch { expected: 4, found: 1 })
        ));
    }

    #[test]
    fn divergent_training_aborts() {
        let cfg = ProbeConfig {
            learning_rate: f64::MAX,
            hidden_dim: 4,
            epochs: 3,
            ..Default::default()
        };
        let train: Vec<_> = (0..64).map(|i| rec(i, (i % 2) as u8, (i as f32) - 32.0)).collect();
        assert!(matches!(train_probe(&train, &train, &cfg), Err(Error::NonFinite(_))));
    }
}
