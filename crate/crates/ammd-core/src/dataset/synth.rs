//! Seeded synthetic activity generator for dataset-free experiments.
//!
//! Each class gets a random piecewise-linear prototype trajectory (random
//! waypoints, linear interpolation); each sequence is the prototype plus
//! i.i.d. Gaussian noise. Every sequence carries a unique subject id, so the
//! leave-one-subject-out protocol degenerates to leave-one-sequence-out on
//! synthetic data.

use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{DatasetManifest, ManifestEntry};
use crate::error::{Error, Result};
use crate::posture::{Posture, PostureSequence};
use crate::scalar::{real, Real};

/// Standard deviation of prototype waypoint coordinates.
pub const WAYPOINT_SPREAD: f64 = 1.0;

/// Waypoints per prototype trajectory.
const WAYPOINTS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub classes: usize,
    pub sequences_per_class: usize,
    pub frames: usize,
    pub joints: usize,
    /// Noise standard deviation in the same units as `WAYPOINT_SPREAD`.
    pub noise_scale: f64,
    pub seed: u64,
}

/// Generate a labeled dataset; bit-identical for a fixed config.
pub fn synthesize_dataset<R: Real>(
    cfg: &SynthConfig,
) -> Result<(DatasetManifest, Vec<PostureSequence<R>>)> {
    if cfg.classes == 0 || cfg.sequences_per_class == 0 || cfg.frames == 0 || cfg.joints == 0 {
        return Err(Error::InvalidConfig(
            "classes, sequences per class, frames, and joints must all be positive".into(),
        ));
    }
    if cfg.noise_scale < 0.0 {
        return Err(Error::InvalidConfig("noise scale must be non-negative".into()));
    }

    let dim = 3 * cfg.joints;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut gauss = || -> f64 { StandardNormal.sample(&mut rng) };

    let mut entries = Vec::new();
    let mut sequences = Vec::new();
    for class in 0..cfg.classes {
        let waypoints: Vec<Vec<f64>> = (0..WAYPOINTS)
            .map(|_| (0..dim).map(|_| gauss() * WAYPOINT_SPREAD).collect())
            .collect();
        for seq_idx in 0..cfg.sequences_per_class {
            let mut postures = Vec::with_capacity(cfg.frames);
            for f in 0..cfg.frames {
                let t = if cfg.frames == 1 {
                    0.0
                } else {
                    f as f64 / (cfg.frames - 1) as f64
                };
                let proto = interpolate(&waypoints, t);
                let coords: Vec<R> = proto
                    .iter()
                    .map(|&p| real::<R>(p + gauss() * cfg.noise_scale))
                    .collect();
                postures.push(Posture::new(coords)?);
            }
            let label = format!("class{class:02}");
            let subject = format!("subj{:03}", class * cfg.sequences_per_class + seq_idx);
            let path = format!("{label}_seq{seq_idx:02}.txt");
            sequences.push(
                PostureSequence::new(path.clone(), postures)?
                    .with_label(&label)
                    .with_subject(&subject),
            );
            entries.push(ManifestEntry {
                path,
                label,
                subject,
                environment: None,
            });
        }
    }
    let manifest = DatasetManifest::new(entries, cfg.joints, PathBuf::from("."))?;
    Ok((manifest, sequences))
}

/// Sample the waypoint polyline at parameter `t ∈ [0, 1]`, with equal
/// parameter time per segment.
fn interpolate(waypoints: &[Vec<f64>], t: f64) -> Vec<f64> {
    let segments = waypoints.len() - 1;
    let scaled = t * segments as f64;
    let seg = (scaled.floor() as usize).min(segments - 1);
    let local = scaled - seg as f64;
    waypoints[seg]
        .iter()
        .zip(&waypoints[seg + 1])
        .map(|(&a, &b)| (1.0 - local) * a + local * b)
        .collect()
}
