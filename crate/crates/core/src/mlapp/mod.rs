//! Convex token-classification demo: synthetic BIO-tagged medical-style
//! sentences, a hashed-feature softmax model trained by the solver, and
//! token-level precision/recall/F1 scoring against an adaptive-moment
//! baseline.

mod adam;
mod features;
mod metrics;
mod model;

pub use adam::{adam_minimize, baseline_adam, AdamParams};
pub use features::FeatureMap;
pub use metrics::{evaluate, f1_from_counts, ClassMetrics, NerMetrics};
pub use model::{loss_and_grad, ner_problem, train, LinearTagModel, TokenExamples, TrainOutcome};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Entity classes of the tag inventory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityClass {
    Disease,
    Organ,
    Symptom,
    Drug,
}

impl EntityClass {
    pub const ALL: [EntityClass; 4] = [
        EntityClass::Disease,
        EntityClass::Organ,
        EntityClass::Symptom,
        EntityClass::Drug,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            EntityClass::Disease => "DISEASE",
            EntityClass::Organ => "ORGAN",
            EntityClass::Symptom => "SYMPTOM",
            EntityClass::Drug => "DRUG",
        }
    }
}

/// BIO tag: outside, or begin/inside of one entity class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    O,
    B(EntityClass),
    I(EntityClass),
}

impl Tag {
    pub const COUNT: usize = 9;

    pub fn index(self) -> usize {
        match self {
            Tag::O => 0,
            Tag::B(c) => 1 + 2 * c as usize,
            Tag::I(c) => 2 + 2 * c as usize,
        }
    }

    pub fn from_index(i: usize) -> Tag {
        match i {
            0 => Tag::O,
            _ => {
                let class = EntityClass::ALL[(i - 1) / 2];
                if (i - 1).is_multiple_of(2) {
                    Tag::B(class)
                } else {
                    Tag::I(class)
                }
            }
        }
    }

    pub fn as_str(&self) -> String {
        match self {
            Tag::O => "O".into(),
            Tag::B(c) => format!("B-{}", c.as_str()),
            Tag::I(c) => format!("I-{}", c.as_str()),
        }
    }

    pub fn parse(s: &str) -> Result<Tag> {
        if s == "O" {
            return Ok(Tag::O);
        }
        let (prefix, class) = s
            .split_once('-')
            .ok_or_else(|| Error::InvalidConfig(format!("bad tag `{s}`")))?;
        let class = EntityClass::ALL
            .into_iter()
            .find(|c| c.as_str() == class)
            .ok_or_else(|| Error::InvalidConfig(format!("bad tag class `{s}`")))?;
        match prefix {
            "B" => Ok(Tag::B(class)),
            "I" => Ok(Tag::I(class)),
            _ => Err(Error::InvalidConfig(format!("bad tag prefix `{s}`"))),
        }
    }

    /// The entity class this tag belongs to, if any.
    pub fn class(&self) -> Option<EntityClass> {
        match self {
            Tag::O => None,
            Tag::B(c) | Tag::I(c) => Some(*c),
        }
    }
}

/// One tokenized sentence with aligned tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub tokens: Vec<String>,
    pub tags: Vec<Tag>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    Train,
    Test,
}

/// Sentences plus a per-sentence train/test assignment.
#[derive(Debug, Clone)]
pub struct TokenDataset {
    pub sentences: Vec<Sentence>,
    pub split: Vec<Split>,
}

impl TokenDataset {
    pub fn train_sentences(&self) -> Vec<Sentence> {
        self.select(Split::Train)
    }

    pub fn test_sentences(&self) -> Vec<Sentence> {
        self.select(Split::Test)
    }

    fn select(&self, which: Split) -> Vec<Sentence> {
        self.sentences
            .iter()
            .zip(&self.split)
            .filter(|(_, s)| **s == which)
            .map(|(s, _)| s.clone())
            .collect()
    }

    /// Check the BIO discipline: every I-tag continues a span of its own
    /// class, and tokens align with tags.
    pub fn validate_bio(&self) -> Result<()> {
        for sent in &self.sentences {
            if sent.tokens.len() != sent.tags.len() {
                return Err(Error::InvalidConfig(
                    "tokens and tags must align 1:1".into(),
                ));
            }
            let mut prev: Option<Tag> = None;
            for &tag in &sent.tags {
                if let Tag::I(c) = tag {
                    let ok = matches!(prev, Some(Tag::B(p)) | Some(Tag::I(p)) if p == c);
                    if !ok {
                        return Err(Error::InvalidConfig(format!(
                            "dangling I-{} tag",
                            c.as_str()
                        )));
                    }
                }
                prev = Some(tag);
            }
        }
        Ok(())
    }
}

// Invented lexicons; head words open a span, tail words continue it. Words
// deliberately share long stems across classes so most character n-grams
// are uninformative and the class signal rides on the rare leading grams:
// still perfectly separable, but a much harder optimization surface.
const DISEASE_HEADS: [&str; 8] = [
    "moraveritis", "quaveritis", "draveritis", "velaveritis", "sonaveritis", "plumaveritis",
    "febraveritis", "gastraveritis",
];
const DISEASE_TAILS: [&str; 4] = ["sopraxula", "tepraxula", "chropraxula", "varipraxula"];
const ORGAN_HEADS: [&str; 8] = [
    "cardaveritis", "pulmaveritis", "hepaveritis", "renaveritis", "dermaveritis",
    "neuraveritis", "gavestritis", "splenaveritis",
];
const ORGAN_TAILS: [&str; 4] = ["lopraxula", "mempraxula", "ducpraxula", "segpraxula"];
const SYMPTOM_HEADS: [&str; 8] = [
    "achaveritis", "burnaveritis", "tremaveritis", "dizaveritis", "swelaveritis",
    "numbaveritis", "coughveritis", "palaveritis",
];
const SYMPTOM_TAILS: [&str; 4] = ["epipraxula", "flapraxula", "undupraxula", "recupraxula"];
const DRUG_HEADS: [&str; 8] = [
    "zelpaveritis", "mivaveritis", "orthaveritis", "dulcaveritis", "feraveritis",
    "axomaveritis", "lenaveritis", "brivaveritis",
];
const DRUG_TAILS: [&str; 4] = ["forpraxula", "retapraxula", "compraxula", "minopraxula"];
const FILLERS: [&str; 36] = [
    "the", "patient", "shows", "signs", "of", "treated", "with", "daily", "dose", "after",
    "onset", "in", "severe", "cases", "doctors", "recommend", "monitoring", "and", "rest",
    "improves", "under", "therapy", "followed", "by", "review", "chronic", "stage", "requires",
    "careful", "observation", "during", "recovery", "period", "mild", "response", "noted",
];

fn lexicon(class: EntityClass) -> (&'static [&'static str], &'static [&'static str]) {
    match class {
        EntityClass::Disease => (&DISEASE_HEADS, &DISEASE_TAILS),
        EntityClass::Organ => (&ORGAN_HEADS, &ORGAN_TAILS),
        EntityClass::Symptom => (&SYMPTOM_HEADS, &SYMPTOM_TAILS),
        EntityClass::Drug => (&DRUG_HEADS, &DRUG_TAILS),
    }
}

/// Deterministic synthetic corpus: every sentence interleaves filler runs
/// with 2-3 entity spans; classes rotate so each ends up well above the 5%
/// token floor. Every fourth sentence lands in the test split.
pub fn generate_synthetic(seed: u64, num_sentences: usize) -> TokenDataset {
    assert!(num_sentences >= 10, "need at least 10 sentences");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sentences = Vec::with_capacity(num_sentences);
    let mut split = Vec::with_capacity(num_sentences);
    let mut class_cursor = 0usize;

    for idx in 0..num_sentences {
        let mut tokens: Vec<String> = Vec::new();
        let mut tags: Vec<Tag> = Vec::new();
        let spans = rng.random_range(2..=3);
        let fill = |tokens: &mut Vec<String>, tags: &mut Vec<Tag>, rng: &mut ChaCha8Rng| {
            for _ in 0..rng.random_range(1..=3) {
                tokens.push(FILLERS.choose(rng).unwrap().to_string());
                tags.push(Tag::O);
            }
        };
        fill(&mut tokens, &mut tags, &mut rng);
        for _ in 0..spans {
            let class = EntityClass::ALL[class_cursor % 4];
            class_cursor += 1;
            let (heads, tails) = lexicon(class);
            tokens.push(heads.choose(&mut rng).unwrap().to_string());
            tags.push(Tag::B(class));
            for _ in 0..rng.random_range(0..=2) {
                tokens.push(tails.choose(&mut rng).unwrap().to_string());
                tags.push(Tag::I(class));
            }
            fill(&mut tokens, &mut tags, &mut rng);
        }
        sentences.push(Sentence { tokens, tags });
        split.push(if idx % 4 == 3 { Split::Test } else { Split::Train });
    }

    TokenDataset { sentences, split }
}

/// Serialize sentences as token<TAB>tag lines with blank lines between
/// sentences.
pub fn to_tsv(sentences: &[Sentence]) -> String {
    let mut out = String::new();
    for (i, s) in sentences.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for (tok, tag) in s.tokens.iter().zip(&s.tags) {
            out.push_str(tok);
            out.push('\t');
            out.push_str(&tag.as_str());
            out.push('\n');
        }
    }
    out
}

/// Parse the TSV shape produced by [`to_tsv`].
pub fn from_tsv(text: &str) -> Result<Vec<Sentence>> {
    let mut sentences = Vec::new();
    let mut tokens = Vec::new();
    let mut tags = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            if !tokens.is_empty() {
                sentences.push(Sentence {
                    tokens: std::mem::take(&mut tokens),
                    tags: std::mem::take(&mut tags),
                });
            }
            continue;
        }
        let (tok, tag) = line
            .split_once('\t')
            .ok_or_else(|| Error::InvalidConfig(format!("bad TSV line `{line}`")))?;
        tokens.push(tok.to_string());
        tags.push(Tag::parse(tag.trim())?);
    }
    if !tokens.is_empty() {
        sentences.push(Sentence { tokens, tags });
    }
    Ok(sentences)
}
