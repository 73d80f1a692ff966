//! Dataset loading and protocol evaluation with a per-(δ, k) descriptor cache:
//! sequences are decomposed and described once, then every split, repetition,
//! and measure reuses the cache. Results are identical to evaluating each
//! split from scratch.

use std::path::Path;

use ammd_core::classifier::{predict_descriptors, FitParams, ReferenceGallery};
use ammd_core::dataset::{
    load_manifest_sequences, make_splits, normalize_handedness, DatasetManifest, Grouping,
    HandednessPairs, SequenceFormat, SplitKind, SplitProtocol,
};
use ammd_core::distance::{DescriptorSequence, MeasureKind};
use ammd_core::PostureSequence;
use anyhow::{bail, Context, Result};

use crate::report::SplitResult;

/// Stderr progress logging, enabled by a non-empty `AMMD_LOG`.
pub fn verbose() -> bool {
    std::env::var("AMMD_LOG").map(|v| !v.is_empty() && v != "0").unwrap_or(false)
}

macro_rules! vlog {
    ($($arg:tt)*) => {
        if $crate::experiment::verbose() {
            eprintln!($($arg)*);
        }
    };
}

pub struct Dataset {
    pub manifest: DatasetManifest,
    pub sequences: Vec<PostureSequence<f64>>,
}

pub fn load_dataset(
    manifest_path: &Path,
    joints: usize,
    joint_per_line: bool,
    columns: Option<&str>,
    handedness: Option<&str>,
    handedness_axis: usize,
) -> Result<Dataset> {
    let manifest = DatasetManifest::load(manifest_path, joints)?;
    let format = SequenceFormat {
        joints,
        columns: columns.map(parse_columns).transpose()?,
        joint_per_line,
    };
    let mut sequences = load_manifest_sequences::<f64>(&manifest, &format)
        .with_context(|| format!("loading sequences of {}", manifest_path.display()))?;
    if let Some(spec) = handedness {
        let pairs = parse_handedness_pairs(spec)?;
        sequences = sequences
            .iter()
            .map(|s| normalize_handedness(s, &pairs, handedness_axis).map_err(Into::into))
            .collect::<Result<_>>()?;
        vlog!("normalized handedness on {} sequences", sequences.len());
    }
    vlog!(
        "loaded {} sequences ({} classes, {} subjects)",
        sequences.len(),
        manifest.labels().len(),
        manifest.subjects().len()
    );
    Ok(Dataset {
        manifest,
        sequences,
    })
}

fn parse_columns(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .with_context(|| format!("bad column index '{t}'"))
        })
        .collect()
}

/// `"lh:rh,la:ra,ls:rs"` → joint index pairs (hands, ankles, shoulders).
pub fn parse_handedness_pairs(spec: &str) -> Result<HandednessPairs> {
    let mut pairs = Vec::new();
    for part in spec.split(',') {
        let Some((l, r)) = part.split_once(':') else {
            bail!("handedness pair '{part}' is not of the form left:right");
        };
        pairs.push((
            l.trim().parse::<usize>().with_context(|| format!("bad index '{l}'"))?,
            r.trim().parse::<usize>().with_context(|| format!("bad index '{r}'"))?,
        ));
    }
    if pairs.len() != 3 {
        bail!(
            "expected three handedness pairs (hands, ankles, shoulders), got {}",
            pairs.len()
        );
    }
    Ok(HandednessPairs {
        hands: pairs[0],
        ankles: pairs[1],
        shoulders: pairs[2],
    })
}

pub fn describe_all(
    sequences: &[PostureSequence<f64>],
    delta: f64,
    k: usize,
) -> Result<Vec<DescriptorSequence<f64>>> {
    sequences
        .iter()
        .map(|s| DescriptorSequence::from_sequence(s, delta, k).map_err(Into::into))
        .collect()
}

/// Per-measure outcome of one protocol run: per-split accuracies plus all
/// (true, predicted) pairs for the aggregate confusion matrix.
pub struct MeasureOutcome {
    pub measure: MeasureKind,
    pub splits: Vec<SplitResult>,
    pub pairs: Vec<(String, String)>,
}

/// Run a protocol for `reps` repetitions (derived seeds `seed + rep`) and
/// evaluate every requested measure on shared galleries.
#[allow(clippy::too_many_arguments)]
pub fn run_protocol(
    dataset: &Dataset,
    kind: SplitKind,
    grouping: Grouping,
    seed: u64,
    reps: u64,
    delta: f64,
    k: usize,
    measures: &[MeasureKind],
) -> Result<Vec<MeasureOutcome>> {
    let cache = describe_all(&dataset.sequences, delta, k)?;
    let params = FitParams { delta, k };
    let mut outcomes: Vec<MeasureOutcome> = measures
        .iter()
        .map(|&measure| MeasureOutcome {
            measure,
            splits: Vec::new(),
            pairs: Vec::new(),
        })
        .collect();

    for rep in 0..reps {
        let protocol = SplitProtocol {
            kind,
            grouping,
            seed: seed + rep,
        };
        let splits = make_splits(&dataset.manifest, &protocol)?;
        for split in &splits {
            let train: Vec<_> = split.train.iter().map(|&i| cache[i].clone()).collect();
            let gallery = ReferenceGallery::from_descriptor_sequences(train, params)?;
            for outcome in outcomes.iter_mut() {
                let mut correct = 0usize;
                for &i in &split.test {
                    let truth = cache[i]
                        .label()
                        .expect("manifest sequences are labeled")
                        .to_string();
                    let predicted =
                        predict_descriptors(&gallery, &cache[i], outcome.measure)?;
                    if predicted.label == truth {
                        correct += 1;
                    }
                    outcome.pairs.push((truth, predicted.label));
                }
                let name = if reps > 1 {
                    format!("rep{rep}-{}", split.name)
                } else {
                    split.name.clone()
                };
                outcome.splits.push(SplitResult {
                    name,
                    train_size: split.train.len(),
                    test_size: split.test.len(),
                    accuracy: correct as f64 / split.test.len() as f64,
                });
            }
            vlog!(
                "rep {rep}: split {} done ({} train / {} test)",
                split.name,
                split.train.len(),
                split.test.len()
            );
        }
    }
    Ok(outcomes)
}

pub fn mean_accuracy(splits: &[SplitResult]) -> f64 {
    splits.iter().map(|s| s.accuracy).sum::<f64>() / splits.len() as f64
}

pub fn parse_protocol(s: &str) -> Result<SplitKind> {
    Ok(match s {
        "setupA" => SplitKind::SetupA,
        "setupB" => SplitKind::SetupB,
        "setupC" => SplitKind::SetupC,
        "new-person" => SplitKind::NewPerson,
        "cross-person-env" => SplitKind::CrossPersonEnv,
        other => bail!(
            "unknown protocol '{other}': expected setupA|setupB|setupC|new-person|cross-person-env"
        ),
    })
}

pub fn parse_grouping(s: &str) -> Result<Grouping> {
    Ok(match s {
        "gestures" => Grouping::Gestures,
        "actions" => Grouping::Actions,
        "subset1" => Grouping::Subset1,
        "subset2" => Grouping::Subset2,
        "subset3" => Grouping::Subset3,
        "all" => Grouping::All,
        other => bail!(
            "unknown grouping '{other}': expected gestures|actions|subset1|subset2|subset3|all"
        ),
    })
}

pub fn parse_measures(s: &str) -> Result<Vec<MeasureKind>> {
    s.split(',')
        .map(|m| m.trim().parse::<MeasureKind>().map_err(Into::into))
        .collect()
}
