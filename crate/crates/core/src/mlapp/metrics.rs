//! Token-level precision/recall/F1 per entity class.
//!
//! Tags collapse to their entity class (B- and I- merged, O excluded); a
//! token counts as a true positive for class c when both prediction and gold
//! map to c. Zero denominators yield 0 by convention.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{EntityClass, LinearTagModel, Sentence};

#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct ClassMetrics {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl ClassMetrics {
    pub fn from_counts(tp: u64, fp: u64, fn_: u64) -> Self {
        let precision = if tp + fp > 0 {
            tp as f64 / (tp + fp) as f64
        } else {
            0.0
        };
        let recall = if tp + fn_ > 0 {
            tp as f64 / (tp + fn_) as f64
        } else {
            0.0
        };
        Self {
            tp,
            fp,
            fn_,
            precision,
            recall,
            f1: f1_from_counts(precision, recall),
        }
    }
}

/// Harmonic mean of precision and recall; 0 when both vanish.
pub fn f1_from_counts(precision: f64, recall: f64) -> f64 {
    if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    }
}

/// Per-class counts and scores plus the unweighted mean F1 over the four
/// entity classes.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct NerMetrics {
    pub per_class: BTreeMap<String, ClassMetrics>,
    pub macro_f1: f64,
}

/// Score a model on a set of sentences.
pub fn evaluate(model: &LinearTagModel, sentences: &[Sentence]) -> NerMetrics {
    let mut tp = [0u64; 4];
    let mut fp = [0u64; 4];
    let mut fn_ = [0u64; 4];
    for s in sentences {
        for (tok, gold) in s.tokens.iter().zip(&s.tags) {
            let pred = model.predict_tag(tok).class();
            let gold = gold.class();
            for (c_idx, class) in EntityClass::ALL.into_iter().enumerate() {
                match (pred == Some(class), gold == Some(class)) {
                    (true, true) => tp[c_idx] += 1,
                    (true, false) => fp[c_idx] += 1,
                    (false, true) => fn_[c_idx] += 1,
                    (false, false) => {}
                }
            }
        }
    }
    let mut per_class = BTreeMap::new();
    let mut f1_sum = 0.0;
    for (c_idx, class) in EntityClass::ALL.into_iter().enumerate() {
        let m = ClassMetrics::from_counts(tp[c_idx], fp[c_idx], fn_[c_idx]);
        f1_sum += m.f1;
        per_class.insert(class.as_str().to_string(), m);
    }
    NerMetrics {
        per_class,
        macro_f1: f1_sum / 4.0,
    }
}
