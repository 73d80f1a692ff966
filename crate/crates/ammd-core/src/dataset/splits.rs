//! Train/test split protocols: seeded stratified setups, leave-one-subject-out,
//! per-environment leave-one-person-out, and KARD activity groupings.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::DatasetManifest;
use crate::error::{Error, Result};

/// How training and test sets are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitKind {
    /// One third of each class for training, seeded.
    SetupA,
    /// Two thirds of each class for training, seeded.
    SetupB,
    /// Half of each class for training, seeded.
    SetupC,
    /// Leave-one-subject-out: one split per subject.
    NewPerson,
    /// Leave-one-person-out within each environment: one split per
    /// (environment, subject) pair.
    CrossPersonEnv,
}

/// Which activity classes participate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Grouping {
    Gestures,
    Actions,
    Subset1,
    Subset2,
    Subset3,
    All,
}

/// A split protocol with its recorded seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitProtocol {
    pub kind: SplitKind,
    pub grouping: Grouping,
    pub seed: u64,
}

/// One train/test split: indices into the manifest's entry list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub name: String,
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

const GESTURES: [&str; 10] = [
    "horizontal arm wave",
    "high arm wave",
    "two hand wave",
    "high throw",
    "draw x",
    "draw tick",
    "forward kick",
    "side kick",
    "bend",
    "hand clap",
];

const ACTIONS: [&str; 8] = [
    "catch cap",
    "toss paper",
    "take umbrella",
    "walk",
    "phone call",
    "drink",
    "sit down",
    "stand up",
];

const SUBSET_1: [&str; 8] = [
    "horizontal arm wave",
    "two hand wave",
    "bend",
    "phone call",
    "stand up",
    "forward kick",
    "draw x",
    "walk",
];

const SUBSET_2: [&str; 8] = [
    "high arm wave",
    "side kick",
    "catch cap",
    "draw tick",
    "hand clap",
    "forward kick",
    "bend",
    "sit down",
];

const SUBSET_3: [&str; 8] = [
    "draw tick",
    "drink",
    "sit down",
    "phone call",
    "take umbrella",
    "toss paper",
    "high throw",
    "horizontal arm wave",
];

/// Lowercase a label and collapse runs of non-alphanumeric characters into
/// single spaces, so `Draw_X`, `draw-x`, and `Draw X` all match.
pub fn normalize_label(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    let mut pending_space = false;
    for c in label.chars() {
        if c.is_alphanumeric() {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.extend(c.to_lowercase());
        } else {
            pending_space = true;
        }
    }
    out
}

fn group_members(grouping: Grouping) -> Option<&'static [&'static str]> {
    match grouping {
        Grouping::Gestures => Some(&GESTURES),
        Grouping::Actions => Some(&ACTIONS),
        Grouping::Subset1 => Some(&SUBSET_1),
        Grouping::Subset2 => Some(&SUBSET_2),
        Grouping::Subset3 => Some(&SUBSET_3),
        Grouping::All => None,
    }
}

fn train_fraction(kind: SplitKind) -> Option<f64> {
    match kind {
        SplitKind::SetupA => Some(1.0 / 3.0),
        SplitKind::SetupB => Some(2.0 / 3.0),
        SplitKind::SetupC => Some(0.5),
        _ => None,
    }
}

/// Produce the protocol's splits over the (grouping-filtered) manifest.
///
/// Every split satisfies: train and test are disjoint, and together they
/// cover exactly the filtered entries.
pub fn make_splits(manifest: &DatasetManifest, protocol: &SplitProtocol) -> Result<Vec<Split>> {
    let members = group_members(protocol.grouping);
    let selected: Vec<usize> = manifest
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, e)| match members {
            None => true,
            Some(set) => set.contains(&normalize_label(&e.label).as_str()),
        })
        .map(|(i, _)| i)
        .collect();
    if selected.is_empty() {
        return Err(Error::ProtocolMismatch(format!(
            "grouping {:?} matched no manifest entries",
            protocol.grouping
        )));
    }

    match protocol.kind {
        SplitKind::SetupA | SplitKind::SetupB | SplitKind::SetupC => {
            let frac = train_fraction(protocol.kind).unwrap();
            let mut by_class: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
            for &i in &selected {
                by_class
                    .entry(manifest.entries()[i].label.as_str())
                    .or_default()
                    .push(i);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(protocol.seed);
            let mut train = Vec::new();
            let mut test = Vec::new();
            for (_, mut indices) in by_class {
                indices.shuffle(&mut rng);
                let n = indices.len();
                let take = if n == 1 {
                    1
                } else {
                    (((n as f64) * frac).round() as usize).clamp(1, n - 1)
                };
                train.extend_from_slice(&indices[..take]);
                test.extend_from_slice(&indices[take..]);
            }
            train.sort_unstable();
            test.sort_unstable();
            Ok(vec![Split {
                name: format!("{:?}-seed{}", protocol.kind, protocol.seed),
                train,
                test,
            }])
        }
        SplitKind::NewPerson => {
            let mut splits = Vec::new();
            for subject in subjects_of(manifest, &selected) {
                let (test, train): (Vec<usize>, Vec<usize>) = selected
                    .iter()
                    .copied()
                    .partition(|&i| manifest.entries()[i].subject == subject);
                if !test.is_empty() && !train.is_empty() {
                    splits.push(Split {
                        name: format!("subject-{subject}"),
                        train,
                        test,
                    });
                }
            }
            if splits.is_empty() {
                return Err(Error::ProtocolMismatch(
                    "leave-one-subject-out needs at least two subjects".into(),
                ));
            }
            Ok(splits)
        }
        SplitKind::CrossPersonEnv => {
            for &i in &selected {
                if manifest.entries()[i].environment.is_none() {
                    return Err(Error::ProtocolMismatch(format!(
                        "entry '{}' has no environment tag",
                        manifest.entries()[i].path
                    )));
                }
            }
            let mut envs: Vec<String> = selected
                .iter()
                .map(|&i| manifest.entries()[i].environment.clone().unwrap())
                .collect();
            envs.sort();
            envs.dedup();
            let mut splits = Vec::new();
            for env in &envs {
                let in_env: Vec<usize> = selected
                    .iter()
                    .copied()
                    .filter(|&i| manifest.entries()[i].environment.as_deref() == Some(env))
                    .collect();
                for subject in subjects_of(manifest, &in_env) {
                    let (test, train): (Vec<usize>, Vec<usize>) = in_env
                        .iter()
                        .copied()
                        .partition(|&i| manifest.entries()[i].subject == subject);
                    if !test.is_empty() && !train.is_empty() {
                        splits.push(Split {
                            name: format!("env-{env}-subject-{subject}"),
                            train,
                            test,
                        });
                    }
                }
            }
            if splits.is_empty() {
                return Err(Error::ProtocolMismatch(
                    "cross-person protocol produced no usable splits".into(),
                ));
            }
            Ok(splits)
        }
    }
}

fn subjects_of(manifest: &DatasetManifest, indices: &[usize]) -> Vec<String> {
    let mut subjects: Vec<String> = indices
        .iter()
        .map(|&i| manifest.entries()[i].subject.clone())
        .collect();
    subjects.sort();
    subjects.dedup();
    subjects
}
