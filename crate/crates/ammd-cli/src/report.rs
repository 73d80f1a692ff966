//! JSON report payloads. Field order is the serialization order, which keeps
//! reruns of the same configuration byte-identical.

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct PatchReport {
    pub start: usize,
    pub end: usize,
    pub frames: usize,
    pub score: f64,
    pub mean: Vec<f64>,
    pub direction: Vec<f64>,
    pub tie_degenerate: bool,
}

#[derive(Debug, Serialize)]
pub struct DecomposeReport {
    pub source: String,
    pub delta: f64,
    pub k: usize,
    pub frames: usize,
    pub patch_count: usize,
    pub patches: Vec<PatchReport>,
}

#[derive(Debug, Serialize)]
pub struct ClassifyConfig {
    pub manifest: String,
    pub protocol: String,
    pub grouping: String,
    pub measure: String,
    pub delta: f64,
    pub k: usize,
    pub repetitions: u64,
    pub seed: u64,
    pub joints: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalize_handedness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitResult {
    pub name: String,
    pub train_size: usize,
    pub test_size: usize,
    pub accuracy: f64,
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub config: ClassifyConfig,
    pub splits: Vec<SplitResult>,
    pub mean_accuracy: f64,
    pub labels: Vec<String>,
    pub confusion: Vec<Vec<usize>>,
    pub per_class_recall: Vec<Option<f64>>,
    pub total_predictions: usize,
}
