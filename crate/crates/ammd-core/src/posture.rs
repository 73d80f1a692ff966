//! Skeleton postures and labeled posture sequences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// One skeleton frame flattened to a `D = 3·J` coordinate vector
/// (joint-major: `x0 y0 z0 x1 y1 z1 …`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Posture<R> {
    coords: Vec<R>,
}

impl<R: Real> Posture<R> {
    /// Validates that the frame is non-empty and every coordinate is finite.
    pub fn new(coords: Vec<R>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput("posture coordinates"));
        }
        if let Some(index) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[R] {
        &self.coords
    }
}

/// A temporally ordered activity sample: the storage order of frames is the
/// temporal order and is never re-sorted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PostureSequence<R> {
    name: String,
    postures: Vec<Posture<R>>,
    label: Option<String>,
    subject: Option<String>,
}

impl<R: Real> PostureSequence<R> {
    /// Requires at least one frame and a single dimension shared by all frames.
    pub fn new(name: impl Into<String>, postures: Vec<Posture<R>>) -> Result<Self> {
        if postures.is_empty() {
            return Err(Error::EmptyInput("posture sequence"));
        }
        let dim = postures[0].dim();
        for p in &postures {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: p.dim(),
                });
            }
        }
        Ok(Self {
            name: name.into(),
            postures,
            label: None,
            subject: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_subject(mut self, subject: impl Into<String>) -> Self {
        self.subject = Some(subject.into());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn postures(&self) -> &[Posture<R>] {
        &self.postures
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn subject(&self) -> Option<&str> {
        self.subject.as_deref()
    }

    /// Number of frames `F`.
    pub fn len(&self) -> usize {
        self.postures.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least one frame by construction
    }

    /// Coordinate dimension `D`.
    pub fn dim(&self) -> usize {
        self.postures[0].dim()
    }

    /// Same metadata, transformed frames. Used by normalization and test
    /// transforms; the frame count is preserved.
    pub fn map_postures(&self, f: impl FnMut(&Posture<R>) -> Posture<R>) -> Self {
        Self {
            name: self.name.clone(),
            postures: self.postures.iter().map(f).collect(),
            label: self.label.clone(),
            subject: self.subject.clone(),
        }
    }
}
