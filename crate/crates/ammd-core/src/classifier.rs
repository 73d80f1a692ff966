//! Nearest-manifold activity classification over a labeled reference gallery.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::distance::{manifold_distance, DescriptorSequence, MeasureKind};
use crate::error::{Error, Result};
use crate::posture::PostureSequence;
use crate::scalar::Real;

/// Decomposition parameters a gallery was built with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitParams<R> {
    pub delta: R,
    pub k: usize,
}

/// Per-class reference descriptor sequences. Classes iterate in sorted label
/// order, which fixes the tie-break in `predict`.
#[derive(Debug, Clone)]
pub struct ReferenceGallery<R> {
    entries: BTreeMap<String, Vec<DescriptorSequence<R>>>,
    params: FitParams<R>,
}

impl<R: Real> ReferenceGallery<R> {
    /// Decompose and describe every training sequence, grouped by label.
    /// Every sequence must be labeled.
    pub fn fit(training: &[PostureSequence<R>], delta: R, k: usize) -> Result<Self> {
        if training.is_empty() {
            return Err(Error::EmptyInput("training set"));
        }
        let mut described = Vec::with_capacity(training.len());
        for seq in training {
            if seq.label().is_none() {
                return Err(Error::UnlabeledSequence {
                    name: seq.name().to_string(),
                });
            }
            described.push(DescriptorSequence::from_sequence(seq, delta, k)?);
        }
        Self::from_descriptor_sequences(described, FitParams { delta, k })
    }

    /// Build a gallery from already-described sequences (descriptor caches).
    /// All sequences must carry labels and stem from identical parameters.
    pub fn from_descriptor_sequences(
        sequences: Vec<DescriptorSequence<R>>,
        params: FitParams<R>,
    ) -> Result<Self> {
        if sequences.is_empty() {
            return Err(Error::EmptyInput("gallery sequences"));
        }
        let mut entries: BTreeMap<String, Vec<DescriptorSequence<R>>> = BTreeMap::new();
        for seq in sequences {
            let label = seq
                .label()
                .ok_or_else(|| Error::UnlabeledSequence {
                    name: seq.source().to_string(),
                })?
                .to_string();
            entries.entry(label).or_default().push(seq);
        }
        Ok(Self { entries, params })
    }

    pub fn params(&self) -> FitParams<R> {
        self.params
    }

    pub fn num_classes(&self) -> usize {
        self.entries.len()
    }

    pub fn classes(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn sequences_of(&self, label: &str) -> Option<&[DescriptorSequence<R>]> {
        self.entries.get(label).map(Vec::as_slice)
    }
}

/// Predicted label plus the full per-class score list, sorted by label.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prediction<R> {
    pub label: String,
    pub scores: Vec<(String, R)>,
}

/// Classify an already-described test sequence: each class scores the minimum
/// manifold distance over its reference sequences (reference first, test
/// second); the smallest score wins, ties broken by smallest label.
pub fn predict_descriptors<R: Real>(
    gallery: &ReferenceGallery<R>,
    test: &DescriptorSequence<R>,
    measure: MeasureKind,
) -> Result<Prediction<R>> {
    let mut scores = Vec::with_capacity(gallery.num_classes());
    let mut best: Option<(R, &str)> = None;
    for (label, refs) in &gallery.entries {
        let mut class_score = R::infinity();
        for r in refs {
            let d = manifold_distance(measure, r, test)?;
            if d < class_score {
                class_score = d;
            }
        }
        // Strict comparison keeps the first (smallest) label on ties.
        if best.is_none_or(|(s, _)| class_score < s) {
            best = Some((class_score, label));
        }
        scores.push((label.clone(), class_score));
    }
    let (_, label) = best.expect("gallery has at least one class");
    Ok(Prediction {
        label: label.to_string(),
        scores,
    })
}

/// Decompose, describe, and classify a raw test sequence.
pub fn predict<R: Real>(
    gallery: &ReferenceGallery<R>,
    test: &PostureSequence<R>,
    measure: MeasureKind,
) -> Result<Prediction<R>> {
    let FitParams { delta, k } = gallery.params;
    let described = DescriptorSequence::from_sequence(test, delta, k)?;
    predict_descriptors(gallery, &described, measure)
}

/// Confusion matrix and derived metrics; rows are true labels, columns
/// predicted, both in the order of `labels`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub labels: Vec<String>,
    pub confusion: Vec<Vec<usize>>,
    pub accuracy: f64,
    pub per_class_recall: Vec<Option<f64>>,
    pub total: usize,
}

impl EvaluationReport {
    /// Build from (true, predicted) label pairs over the given label set.
    pub fn from_pairs(pairs: &[(String, String)], labels: Vec<String>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyInput("evaluation pairs"));
        }
        let index: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let n = labels.len();
        let mut confusion = vec![vec![0usize; n]; n];
        for (truth, predicted) in pairs {
            let row = *index.get(truth.as_str()).ok_or_else(|| {
                Error::InvalidConfig(format!("true label '{truth}' missing from label set"))
            })?;
            let col = *index.get(predicted.as_str()).ok_or_else(|| {
                Error::InvalidConfig(format!("predicted label '{predicted}' missing from label set"))
            })?;
            confusion[row][col] += 1;
        }
        let total = pairs.len();
        let correct: usize = (0..n).map(|i| confusion[i][i]).sum();
        let per_class_recall = confusion
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let seen: usize = row.iter().sum();
                (seen > 0).then(|| confusion[i][i] as f64 / seen as f64)
            })
            .collect();
        Ok(Self {
            labels,
            confusion,
            accuracy: correct as f64 / total as f64,
            per_class_recall,
            total,
        })
    }
}

/// Predict every labeled test sequence and tabulate the confusion matrix.
pub fn evaluate<R: Real>(
    gallery: &ReferenceGallery<R>,
    tests: &[PostureSequence<R>],
    measure: MeasureKind,
) -> Result<EvaluationReport> {
    if tests.is_empty() {
        return Err(Error::EmptyInput("test set"));
    }
    let mut labels: Vec<String> = gallery.classes().map(String::from).collect();
    let mut pairs = Vec::with_capacity(tests.len());
    for seq in tests {
        let truth = seq
            .label()
            .ok_or_else(|| Error::UnlabeledSequence {
                name: seq.name().to_string(),
            })?
            .to_string();
        if !labels.iter().any(|l| l == &truth) {
            labels.push(truth.clone());
        }
        let predicted = predict(gallery, seq, measure)?;
        pairs.push((truth, predicted.label));
    }
    labels.sort();
    EvaluationReport::from_pairs(&pairs, labels)
}
