use rand::Rng;

use super::{Activation, EmbeddingRecord, OUTPUT_DIM};
use crate::error::{Error, Result};

/// Probe parameters. Weight matrices are row-major: `w1` is
/// `hidden_dim x input_dim`, `w2` is `2 x hidden_dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeModel {
    pub input_dim: usize,
    pub hidden_dim: usize,
    pub activation: Activation,
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: Vec<f64>,
}

/// Gradients of the mean loss, shaped like [`ProbeModel`]'s parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: Vec<f64>,
}

impl Gradients {
    fn zeros(model: &ProbeModel) -> Self {
        Gradients {
            w1: vec![0.0; model.w1.len()],
            b1: vec![0.0; model.b1.len()],
            w2: vec![0.0; model.w2.len()],
            b2: vec![0.0; model.b2.len()],
        }
    }

    pub fn tensors(&self) -> [&[f64]; 4] {
        [&self.w1, &self.b1, &self.w2, &self.b2]
    }
}

impl ProbeModel {
    /// All-zero parameters.
    pub fn zeros(input_dim: usize, hidden_dim: usize, activation: Activation) -> Self {
        ProbeModel {
            input_dim,
            hidden_dim,
            activation,
            w1: vec![0.0; hidden_dim * input_dim],
            b1: vec![0.0; hidden_dim],
            w2: vec![0.0; OUTPUT_DIM * hidden_dim],
            b2: vec![0.0; OUTPUT_DIM],
        }
    }

    /// Each layer's weights and biases drawn from `U(-1/sqrt(fan_in), 1/sqrt(fan_in))`.
    pub fn init<R: Rng + ?Sized>(
        input_dim: usize,
        hidden_dim: usize,
        activation: Activation,
        rng: &mut R,
    ) -> Self {
        let mut m = Self::zeros(input_dim, hidden_dim, activation);
        let k1 = 1.0 / (input_dim as f64).sqrt();
        let k2 = 1.0 / (hidden_dim as f64).sqrt();
        for (params, k) in [(&mut m.w1, k1), (&mut m.b1, k1), (&mut m.w2, k2), (&mut m.b2, k2)] {
            for p in params.iter_mut() {
                *p = rng.gen_range(-k..=k);
            }
        }
        m
    }

    pub fn tensors(&self) -> [&[f64]; 4] {
        [&self.w1, &self.b1, &self.w2, &self.b2]
    }

    pub fn tensors_mut(&mut self) -> [&mut [f64]; 4] {
        [&mut self.w1, &mut self.b1, &mut self.w2, &mut self.b2]
    }

    pub fn parameter_count(&self) -> usize {
        self.tensors().iter().map(|t| t.len()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.tensors().iter().all(|t| t.iter().all(|p| p.is_finite()))
    }

    fn check_input(&self, x: &[f32]) -> Result<()> {
        if x.len() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    // Pre-activations, activations and logits for one input.
    fn pass(&self, x: &[f32], z1: &mut [f64], h: &mut [f64]) -> [f64; OUTPUT_DIM] {
        let d = self.input_dim;
        for j in 0..self.hidden_dim {
            let row = &self.w1[j * d..(j + 1) * d];
            let z = self.b1[j] + row.iter().zip(x).map(|(w, &v)| w * v as f64).sum::<f64>();
            z1[j] = z;
            h[j] = self.activation.apply(z);
        }
        let mut logits = [0.0; OUTPUT_DIM];
        for (c, logit) in logits.iter_mut().enumerate() {
            let row = &self.w2[c * self.hidden_dim..(c + 1) * self.hidden_dim];
            *logit = self.b2[c] + row.iter().zip(h.iter()).map(|(w, a)| w * a).sum::<f64>();
        }
        logits
    }
}

fn softmax(logits: [f64; OUTPUT_DIM]) -> [f64; OUTPUT_DIM] {
    let m = logits[0].max(logits[1]);
    let e = logits.map(|z| (z - m).exp());
    let s: f64 = e.iter().sum();
    e.map(|v| v / s)
}

fn log_sum_exp(logits: [f64; OUTPUT_DIM]) -> f64 {
    let m = logits[0].max(logits[1]);
    m + logits.iter().map(|z| (z - m).exp()).sum::<f64>().ln()
}

/// Class probabilities for one embedding.
pub fn forward(model: &ProbeModel, x: &[f32]) -> Result<[f64; OUTPUT_DIM]> {
    model.check_input(x)?;
    let mut z1 = vec![0.0; model.hidden_dim];
    let mut h = vec![0.0; model.hidden_dim];
    Ok(softmax(model.pass(x, &mut z1, &mut h)))
}

/// Predicted class; ties go to class 0.
pub fn predict(model: &ProbeModel, x: &[f32]) -> Result<u8> {
    let p = forward(model, x)?;
    Ok(u8::from(p[1] > p[0]))
}

/// Mean cross-entropy over `batch` and its gradient.
pub fn loss_and_grad(model: &ProbeModel, batch: &[EmbeddingRecord]) -> Result<(f64, Gradients)> {
    loss_and_grad_of(model, batch.iter())
}

pub(crate) fn loss_and_grad_of<'r>(
    model: &ProbeModel,
    batch: impl Iterator<Item = &'r EmbeddingRecord>,
) -> Result<(f64, Gradients)> {
    let (d, hd) = (model.input_dim, model.hidden_dim);
    let mut g = Gradients::zeros(model);
    let mut z1 = vec![0.0; hd];
    let mut h = vec![0.0; hd];
    let mut dz1 = vec![0.0; hd];
    let mut total = 0.0;
    let mut count = 0usize;
    for r in batch {
        count += 1;
        model.check_input(&r.vector)?;
        if r.vector.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("record {} has a non-finite component", r.id)));
        }
        if r.label as usize >= OUTPUT_DIM {
            return Err(Error::InvalidConfig(format!("record {} has label {}", r.id, r.label)));
        }
        let y = r.label as usize;
        let logits = model.pass(&r.vector, &mut z1, &mut h);
        total += log_sum_exp(logits) - logits[y];

        let mut dlogits = softmax(logits);
        dlogits[y] -= 1.0;
        for (c, &dl) in dlogits.iter().enumerate() {
            g.b2[c] += dl;
            let row = &mut g.w2[c * hd..(c + 1) * hd];
            for (gw, a) in row.iter_mut().zip(&h) {
                *gw += dl * a;
            }
        }
        for j in 0..hd {
            let back = (0..OUTPUT_DIM).map(|c| dlogits[c] * model.w2[c * hd + j]).sum::<f64>();
            dz1[j] = back * model.activation.derivative(z1[j], h[j]);
        }
        for (j, &dz) in dz1.iter().enumerate() {
            if dz == 0.0 {
                continue;
            }
            g.b1[j] += dz;
            let row = &mut g.w1[j * d..(j + 1) * d];
            for (gw, &v) in row.iter_mut().zip(&r.vector) {
                *gw += dz * v as f64;
            }
        }
    }
    if count == 0 {
        return Err(Error::Empty("batch"));
    }
    let n = count as f64;
    for t in [&mut g.w1, &mut g.b1, &mut g.w2, &mut g.b2] {
        t.iter_mut().for_each(|v| *v /= n);
    }
    Ok((total / n, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    // w1 = [[1, -1], [0.5, 2]], b1 = [0, -1], w2 = [[1, 0], [-1, 1]], b2 = [0.5, 0].
    fn tiny() -> ProbeModel {
        ProbeModel {
            input_dim: 2,
            hidden_dim: 2,
            activation: Activation::Relu,
            w1: vec![1.0, -1.0, 0.5, 2.0],
            b1: vec![0.0, -1.0],
            w2: vec![1.0, 0.0, -1.0, 1.0],
            b2: vec![0.5, 0.0],
        }
    }

    #[test]
    fn hand_computed_forward() {
        // x = (2, 1): z1 = (1, 2), h = (1, 2), logits = (1.5, 1),
        // p1 = 1 / (1 + e^0.5) = 0.377540668798145...
        let p = forward(&tiny(), &[2.0, 1.0]).unwrap();
        assert!((p[1] - 0.377_540_668_798_145_4).abs() < 1e-12, "{p:?}");
        assert!((p[0] - 0.622_459_331_201_854_6).abs() < 1e-12);

        // x = (-1, 0.5): z1 = (-1.5, -0.5), h = (0, 0), logits = (0.5, 0).
        let p = forward(&tiny(), &[-1.0, 0.5]).unwrap();
        assert!((p[0] - 0.622_459_331_201_854_6).abs() < 1e-12);
    }

    #[test]
    fn hand_computed_tanh_forward() {
        let m = ProbeModel {
            activation: Activation::Tanh,
            ..tiny()
        };
        // z1 = (1, 2), h = (tanh 1, tanh 2), logits = (0.5 + tanh 1, tanh 2 - tanh 1).
        let p = forward(&m, &[2.0, 1.0]).unwrap();
        let (t1, t2) = (1f64.tanh(), 2f64.tanh());
        let expected = 1.0 / (1.0 + ((0.5 + t1) - (t2 - t1)).exp());
        assert!((p[1] - expected).abs() < 1e-12);
    }

    #[test]
    fn zero_model_is_uniform() {
        let m = ProbeModel::zeros(5, 3, Activation::Relu);
        assert_eq!(forward(&m, &[1.0, -2.0, 3.0, 0.5, 9.0]).unwrap(), [0.5, 0.5]);
        let batch = [EmbeddingRecord {
            id: 0,
            label: 1,
            vector: vec![1.0; 5],
        }];
        let (loss, _) = loss_and_grad(&m, &batch).unwrap();
        assert!((loss - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(predict(&m, &[0.0; 5]).unwrap(), 0);
    }

    #[test]
    fn confident_correct_prediction_has_near_zero_loss() {
        let mut m = ProbeModel::zeros(1, 1, Activation::Relu);
        m.b2 = vec![-40.0, 40.0];
        let batch = [EmbeddingRecord {
            id: 0,
            label: 1,
            vector: vec![0.0],
        }];
        let (loss, _) = loss_and_grad(&m, &batch).unwrap();
        assert!(loss < 1e-30);
        m.b2 = vec![400.0, -400.0];
        let (loss, _) = loss_and_grad(&m, &batch).unwrap();
        assert!((loss - 800.0).abs() < 1e-9);
    }

    #[test]
    fn dimension_and_value_errors() {
        let m = tiny();
        assert!(matches!(
            forward(&m, &[1.0]),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
        assert!(matches!(loss_and_grad(&m, &[]), Err(Error::Empty(_))));
        let nan = [EmbeddingRecord {
            id: 3,
            label: 0,
            vector: vec![f32::NAN, 0.0],
        }];
        assert!(matches!(loss_and_grad(&m, &nan), Err(Error::NonFinite(_))));
    }
}
