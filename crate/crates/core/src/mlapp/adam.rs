//! Full-batch adaptive-moment baseline for the training-time comparison.
//!
//! The update keeps exponential moving averages of the gradient and its
//! square with bias correction:
//!
//! ```text
//! m <- b1 m + (1-b1) g        mhat = m / (1 - b1^t)
//! v <- b2 v + (1-b2) g^2      vhat = v / (1 - b2^t)
//! w <- w - lr * mhat / (sqrt(vhat) + eps)
//! ```
//!
//! Deterministic for a fixed step count; no stochasticity enters anywhere.

use std::sync::Arc;
use std::time::{Duration, Instant};

use super::features::FeatureMap;
use super::model::{LinearTagModel, TokenExamples};
use super::TokenDataset;

#[derive(Debug, Clone, Copy)]
pub struct AdamParams {
    pub steps: usize,
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl Default for AdamParams {
    fn default() -> Self {
        Self {
            steps: 300,
            lr: 0.3,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

/// Run the update for a fixed step count on an arbitrary gradient callback.
pub fn adam_minimize(
    grad: impl Fn(&[f64]) -> Vec<f64>,
    x0: &[f64],
    params: &AdamParams,
) -> Vec<f64> {
    assert!(params.steps >= 1, "need at least one step");
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut m = vec![0.0; n];
    let mut v = vec![0.0; n];
    for step in 1..=params.steps {
        let g = grad(&x);
        assert_eq!(g.len(), n);
        let bc1 = 1.0 - params.beta1.powi(step as i32);
        let bc2 = 1.0 - params.beta2.powi(step as i32);
        for i in 0..n {
            m[i] = params.beta1 * m[i] + (1.0 - params.beta1) * g[i];
            v[i] = params.beta2 * v[i] + (1.0 - params.beta2) * g[i] * g[i];
            let mhat = m[i] / bc1;
            let vhat = v[i] / bc2;
            x[i] -= params.lr * mhat / (vhat.sqrt() + params.eps);
        }
    }
    x
}

/// Train the tagger on the dataset's train split with the adaptive-moment
/// update, returning the model and the wall time spent.
pub fn baseline_adam(
    data: &TokenDataset,
    l2: f64,
    params: &AdamParams,
) -> (LinearTagModel, Duration) {
    let fm = FeatureMap::default();
    let examples = Arc::new(TokenExamples::featurize(&data.train_sentences(), &fm));
    let start = Instant::now();
    let x0 = vec![0.0; super::Tag::COUNT * fm.buckets];
    let weights = adam_minimize(
        |w| examples.loss_and_grad(w, l2).1,
        &x0,
        params,
    );
    let elapsed = start.elapsed();
    (LinearTagModel::from_weights(weights, fm), elapsed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlapp::generate_synthetic;

    #[test]
    fn zero_learning_rate_leaves_weights_unchanged() {
        let params = AdamParams {
            lr: 0.0,
            steps: 10,
            ..AdamParams::default()
        };
        let x = adam_minimize(|w| w.to_vec(), &[1.0, -2.0, 3.0], &params);
        assert_eq!(x, vec![1.0, -2.0, 3.0]);
    }

    #[test]
    fn matches_hand_simulated_steps_on_1d_quadratic() {
        // f(w) = (w - 3)^2, grad = 2(w - 3), from w = 0 with lr = 0.5 and the
        // default moment coefficients. Expected iterates frozen from an
        // independent step-by-step simulation of the published update.
        let expect = [
            0.49999999916666665,
            0.9955864355743378,
            1.4822918697676717,
            1.954084531098864,
            2.403092543067627,
        ];
        for (k, want) in expect.iter().enumerate() {
            let params = AdamParams {
                steps: k + 1,
                lr: 0.5,
                ..AdamParams::default()
            };
            let x = adam_minimize(|w| vec![2.0 * (w[0] - 3.0)], &[0.0], &params);
            assert!(
                (x[0] - want).abs() <= 1e-12,
                "step {}: {} vs {}",
                k + 1,
                x[0],
                want
            );
        }
        // Iterates move monotonically toward the minimizer here.
        let mut prev = 0.0;
        for w in expect {
            assert!(w > prev && w < 3.0);
            prev = w;
        }
    }

    #[test]
    fn full_run_is_deterministic() {
        let data = generate_synthetic(7, 30);
        let params = AdamParams {
            steps: 25,
            ..AdamParams::default()
        };
        let (a, _) = baseline_adam(&data, 1e-4, &params);
        let (b, _) = baseline_adam(&data, 1e-4, &params);
        assert_eq!(a.weights, b.weights);
    }
}
