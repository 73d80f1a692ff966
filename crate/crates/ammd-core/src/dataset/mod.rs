//! Dataset manifests, sequence file IO, protocol splits, handedness
//! normalization, and synthetic data generation.

mod handedness;
mod loader;
mod splits;
mod synth;

pub use handedness::{normalize_handedness, HandednessPairs};
pub use loader::{load_sequence_file, write_sequence_file, SequenceFormat};
pub use splits::{make_splits, normalize_label, Grouping, Split, SplitKind, SplitProtocol};
pub use synth::{synthesize_dataset, SynthConfig, WAYPOINT_SPREAD};

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::posture::PostureSequence;
use crate::scalar::Real;

/// One dataset file with its class label, subject id, and optional
/// environment tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: String,
    pub label: String,
    pub subject: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub environment: Option<String>,
}

/// Default coordinate-convention note attached to manifests.
pub const DEFAULT_CONVENTION: &str = "joint-major x y z per frame, dataset-native units";

/// A dataset description: entries plus the joint count shared by all files
/// and a free-text coordinate convention note. On disk this is a JSON array
/// of entries; paths are relative to the manifest's directory.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetManifest {
    entries: Vec<ManifestEntry>,
    joints: usize,
    convention: String,
    base_dir: PathBuf,
}

impl DatasetManifest {
    pub fn new(entries: Vec<ManifestEntry>, joints: usize, base_dir: PathBuf) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyInput("manifest entries"));
        }
        if joints == 0 {
            return Err(Error::InvalidConfig("joint count must be positive".into()));
        }
        for e in &entries {
            if e.label.is_empty() || e.subject.is_empty() {
                return Err(Error::Manifest {
                    path: e.path.clone(),
                    message: "label and subject must be non-empty".into(),
                });
            }
        }
        Ok(Self {
            entries,
            joints,
            convention: DEFAULT_CONVENTION.to_string(),
            base_dir,
        })
    }

    /// Replace the coordinate-convention note (documentation only; echoed by
    /// accessors, never interpreted).
    pub fn with_convention(mut self, note: impl Into<String>) -> Self {
        self.convention = note.into();
        self
    }

    pub fn convention(&self) -> &str {
        &self.convention
    }

    /// Load a JSON-array manifest from disk.
    pub fn load(path: &Path, joints: usize) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::File {
            path: path.display().to_string(),
            source,
        })?;
        let entries: Vec<ManifestEntry> =
            serde_json::from_str(&text).map_err(|e| Error::Manifest {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
        let base_dir = path.parent().unwrap_or_else(|| Path::new(".")).to_path_buf();
        Self::new(entries, joints, base_dir)
    }

    /// Write the JSON-array form.
    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.entries).expect("entries serialize");
        fs::write(path, text + "\n").map_err(|source| Error::File {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn entries(&self) -> &[ManifestEntry] {
        &self.entries
    }

    pub fn joints(&self) -> usize {
        self.joints
    }

    pub fn base_dir(&self) -> &Path {
        &self.base_dir
    }

    /// Absolute path of entry `i`.
    pub fn entry_path(&self, i: usize) -> PathBuf {
        self.base_dir.join(&self.entries[i].path)
    }

    /// Sorted unique labels.
    pub fn labels(&self) -> Vec<String> {
        let mut v: Vec<String> = self.entries.iter().map(|e| e.label.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Sorted unique subjects.
    pub fn subjects(&self) -> Vec<String> {
        let mut v: Vec<String> = self.entries.iter().map(|e| e.subject.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Sorted unique environment tags of entries that carry one.
    pub fn environments(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .entries
            .iter()
            .filter_map(|e| e.environment.clone())
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Write sequences and their manifest into `dir`; returns the manifest path.
pub fn write_dataset<R: Real>(
    dir: &Path,
    manifest: &DatasetManifest,
    sequences: &[PostureSequence<R>],
) -> Result<PathBuf> {
    if manifest.entries.len() != sequences.len() {
        return Err(Error::DimensionMismatch {
            left: manifest.entries.len(),
            right: sequences.len(),
        });
    }
    fs::create_dir_all(dir).map_err(|source| Error::File {
        path: dir.display().to_string(),
        source,
    })?;
    for (entry, seq) in manifest.entries.iter().zip(sequences) {
        write_sequence_file(seq, &dir.join(&entry.path))?;
    }
    let manifest_path = dir.join("manifest.json");
    let rebased = DatasetManifest {
        entries: manifest.entries.clone(),
        joints: manifest.joints,
        convention: manifest.convention.clone(),
        base_dir: dir.to_path_buf(),
    };
    rebased.save(&manifest_path)?;
    Ok(manifest_path)
}

/// Load every sequence named by a manifest, attaching label and subject.
pub fn load_manifest_sequences<R: Real>(
    manifest: &DatasetManifest,
    format: &SequenceFormat,
) -> Result<Vec<PostureSequence<R>>> {
    manifest
        .entries
        .iter()
        .enumerate()
        .map(|(i, entry)| {
            let seq: PostureSequence<R> =
                load_sequence_file(&manifest.entry_path(i), format)?;
            let expected = 3 * manifest.joints;
            if seq.dim() != expected {
                return Err(Error::Parse {
                    path: entry.path.clone(),
                    line: 0,
                    message: format!(
                        "dimension {} does not match manifest joints {} (expected {})",
                        seq.dim(),
                        manifest.joints,
                        expected
                    ),
                });
            }
            // The manifest-relative path becomes the sequence name.
            Ok(PostureSequence::new(entry.path.clone(), seq.postures().to_vec())?
                .with_label(&entry.label)
                .with_subject(&entry.subject))
        })
        .collect()
}
