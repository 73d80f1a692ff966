//! Division of a posture sequence into continuous maximal linear patches.
//!
//! The current patch grows one frame at a time; after each append the
//! nonlinearity score is recomputed on the patch-local distance tables. Once
//! the score exceeds the threshold the patch is closed — the violating frame
//! stays inside it — and a fresh patch starts at the next frame. Whatever is
//! left after the final frame becomes the residual patch.

use crate::error::{Error, Result};
use crate::geometry::GrowingGeometry;
use crate::posture::{Posture, PostureSequence};
use crate::scalar::Real;

/// A contiguous action snippet: frames `start..=end` of the parent sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct Cmlp<R> {
    start: usize,
    end: usize,
    postures: Vec<Posture<R>>,
    score: R,
}

impl<R: Real> Cmlp<R> {
    /// First frame index (inclusive).
    pub fn start(&self) -> usize {
        self.start
    }

    /// Last frame index (inclusive).
    pub fn end(&self) -> usize {
        self.end
    }

    /// Number of frames `F_i`.
    pub fn len(&self) -> usize {
        self.postures.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a patch holds at least one frame by construction
    }

    pub fn postures(&self) -> &[Posture<R>] {
        &self.postures
    }

    /// Final nonlinearity score of the closed patch.
    pub fn score(&self) -> R {
        self.score
    }

    /// A free-standing patch over the given frames (indexed from 0), scored
    /// with neighbor count `k`. Useful for describing arbitrary spans outside
    /// the decomposition loop.
    pub fn from_postures(postures: Vec<Posture<R>>, k: usize) -> Result<Self> {
        let score = crate::geometry::nonlinearity_score(&postures, k)?;
        Ok(Self {
            start: 0,
            end: postures.len() - 1,
            postures,
            score,
        })
    }
}

/// Ordered decomposition of one sequence: patches are contiguous,
/// non-overlapping, and cover every frame.
#[derive(Debug, Clone, PartialEq)]
pub struct CmlpSequence<R> {
    patches: Vec<Cmlp<R>>,
    delta: R,
    k: usize,
    source: String,
}

impl<R: Real> CmlpSequence<R> {
    pub fn patches(&self) -> &[Cmlp<R>] {
        &self.patches
    }

    /// Number of patches `m`.
    pub fn len(&self) -> usize {
        self.patches.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a decomposition holds at least one patch
    }

    pub fn delta(&self) -> R {
        self.delta
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

/// Decompose a sequence with nonlinearity threshold `delta` and neighbor
/// count `k`. Deterministic for a fixed input.
pub fn decompose<R: Real>(
    sequence: &PostureSequence<R>,
    delta: R,
    k: usize,
) -> Result<CmlpSequence<R>> {
    if delta <= R::one() {
        return Err(Error::InvalidConfig(format!(
            "delta must be larger than 1, got {delta}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidConfig(
            "neighbor count k must be at least 1".into(),
        ));
    }

    let mut patches = Vec::new();
    let mut current: Vec<Posture<R>> = Vec::new();
    let mut geometry = GrowingGeometry::new(k)?;
    let mut start = 0usize;
    let mut score = R::one();
    for (f, p) in sequence.postures().iter().enumerate() {
        current.push(p.clone());
        score = geometry.push(p)?;
        if score > delta {
            patches.push(Cmlp {
                start,
                end: f,
                postures: std::mem::take(&mut current),
                score,
            });
            geometry = GrowingGeometry::new(k)?;
            start = f + 1;
        }
    }
    if !current.is_empty() {
        patches.push(Cmlp {
            start,
            end: sequence.len() - 1,
            postures: current,
            score,
        });
    }
    Ok(CmlpSequence {
        patches,
        delta,
        k,
        source: sequence.name().to_string(),
    })
}
