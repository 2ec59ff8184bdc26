//! Linear softmax tagger: multinomial logistic loss with L2 over hashed
//! token features. The loss is convex in the flattened weight matrix, so the
//! CG solver consumes it through the ordinary problem contract.

use std::sync::Arc;

use crate::error::Result;
use crate::objective::ObjectiveProblem;
use crate::solver::{solve_traced, SolveResult, SolverConfig};

use super::features::FeatureMap;
use super::{Sentence, Tag, TokenDataset};

/// Weight matrix (num_tags x buckets, row-major) plus the featurizer that
/// defines its columns.
#[derive(Debug, Clone)]
pub struct LinearTagModel {
    pub weights: Vec<f64>,
    pub features: FeatureMap,
}

impl LinearTagModel {
    pub fn zeros(features: FeatureMap) -> Self {
        Self {
            weights: vec![0.0; Tag::COUNT * features.buckets],
            features,
        }
    }

    pub fn from_weights(weights: Vec<f64>, features: FeatureMap) -> Self {
        assert_eq!(weights.len(), Tag::COUNT * features.buckets);
        Self { weights, features }
    }

    /// Tag scores for one token.
    pub fn scores(&self, token: &str) -> [f64; Tag::COUNT] {
        let feats = self.features.features(token);
        let mut z = [0.0; Tag::COUNT];
        for (t, zt) in z.iter_mut().enumerate() {
            let row = &self.weights[t * self.features.buckets..(t + 1) * self.features.buckets];
            *zt = feats.iter().map(|&(j, c)| row[j] * c).sum();
        }
        z
    }

    /// Argmax tag; ties break toward the lowest tag index.
    pub fn predict_tag(&self, token: &str) -> Tag {
        let z = self.scores(token);
        let mut best = 0usize;
        for (i, &v) in z.iter().enumerate().skip(1) {
            if v > z[best] {
                best = i;
            }
        }
        Tag::from_index(best)
    }
}

/// Featurized corpus: one sparse row per token plus its gold tag index.
#[derive(Debug, Clone)]
pub struct TokenExamples {
    pub rows: Vec<Vec<(usize, f64)>>,
    pub labels: Vec<usize>,
    pub buckets: usize,
}

impl TokenExamples {
    pub fn featurize(sentences: &[Sentence], fm: &FeatureMap) -> Self {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for s in sentences {
            for (tok, tag) in s.tokens.iter().zip(&s.tags) {
                rows.push(fm.features(tok));
                labels.push(tag.index());
            }
        }
        Self {
            rows,
            labels,
            buckets: fm.buckets,
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Mean cross-entropy plus (l2/2)||w||^2, and its gradient.
    pub fn loss_and_grad(&self, w: &[f64], l2: f64) -> (f64, Vec<f64>) {
        assert_eq!(w.len(), Tag::COUNT * self.buckets);
        assert!(!self.is_empty(), "no tokens to score");
        let n = self.len() as f64;
        let mut loss = 0.0;
        let mut grad = vec![0.0; w.len()];
        let mut z = [0.0f64; Tag::COUNT];
        for (row, &label) in self.rows.iter().zip(&self.labels) {
            for (t, zt) in z.iter_mut().enumerate() {
                let base = t * self.buckets;
                *zt = row.iter().map(|&(j, c)| w[base + j] * c).sum();
            }
            let m = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let lse = m + z.iter().map(|v| (v - m).exp()).sum::<f64>().ln();
            loss -= z[label] - lse;
            for (t, &zt) in z.iter().enumerate() {
                let p = (zt - lse).exp();
                let coef = (p - if t == label { 1.0 } else { 0.0 }) / n;
                let base = t * self.buckets;
                for &(j, c) in row {
                    grad[base + j] += coef * c;
                }
            }
        }
        loss /= n;
        for (gi, wi) in grad.iter_mut().zip(w) {
            *gi += l2 * wi;
        }
        loss += 0.5 * l2 * w.iter().map(|v| v * v).sum::<f64>();
        (loss, grad)
    }
}

/// Convenience form of the objective on raw sentences.
pub fn loss_and_grad(
    model: &LinearTagModel,
    sentences: &[Sentence],
    l2: f64,
) -> (f64, Vec<f64>) {
    TokenExamples::featurize(sentences, &model.features).loss_and_grad(&model.weights, l2)
}

/// Wrap a featurized corpus as a solver problem over the flattened weights,
/// starting from zero.
pub fn ner_problem(examples: Arc<TokenExamples>, l2: f64) -> ObjectiveProblem {
    let n = Tag::COUNT * examples.buckets;
    let ex_f = Arc::clone(&examples);
    let ex_g = Arc::clone(&examples);
    ObjectiveProblem::new(
        "ner_softmax",
        n,
        vec![0.0; n],
        Arc::new(move |w: &[f64]| ex_f.loss_and_grad(w, l2).0),
        Arc::new(move |w: &[f64]| ex_g.loss_and_grad(w, l2).1),
    )
}

pub struct TrainOutcome {
    pub model: LinearTagModel,
    pub result: SolveResult,
}

/// Train on the dataset's train split from zero weights with the given
/// solver configuration.
pub fn train(data: &TokenDataset, config: &SolverConfig, l2: f64) -> Result<TrainOutcome> {
    let fm = FeatureMap::default();
    let examples = Arc::new(TokenExamples::featurize(&data.train_sentences(), &fm));
    let problem = ner_problem(examples, l2);
    let result = solve_traced(&problem, config, None)?;
    Ok(TrainOutcome {
        model: LinearTagModel::from_weights(result.x_final.clone(), fm),
        result,
    })
}
