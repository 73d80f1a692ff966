//! Left/right normalization for mixed-handedness subjects.
//!
//! When the right hand starts below the left on the lateral axis, the
//! left/right coordinate of each listed joint pair is interchanged in every
//! frame, mapping left-handed recordings onto right-handed ones. The test is
//! evaluated once per sequence on the first frame.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::posture::{Posture, PostureSequence};
use crate::scalar::Real;

/// (left, right) joint indices for the three swapped pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandednessPairs {
    pub hands: (usize, usize),
    pub ankles: (usize, usize),
    pub shoulders: (usize, usize),
}

impl HandednessPairs {
    fn all(&self) -> [(usize, usize); 3] {
        [self.hands, self.ankles, self.shoulders]
    }
}

/// Swap the `axis` coordinate of each joint pair in every frame when the
/// first frame's right hand sits below the left hand on that axis. Applying
/// the operation to its own output changes nothing.
pub fn normalize_handedness<R: Real>(
    seq: &PostureSequence<R>,
    pairs: &HandednessPairs,
    axis: usize,
) -> Result<PostureSequence<R>> {
    if axis >= 3 {
        return Err(Error::InvalidConfig(format!(
            "axis index {axis} out of range (0..3)"
        )));
    }
    let dim = seq.dim();
    for (left, right) in pairs.all() {
        for joint in [left, right] {
            if 3 * joint + axis >= dim {
                return Err(Error::InvalidConfig(format!(
                    "joint index {joint} out of range for {} joints",
                    dim / 3
                )));
            }
        }
    }

    let coord = |p: &Posture<R>, joint: usize| p.coords()[3 * joint + axis];
    let first = &seq.postures()[0];
    let (left_hand, right_hand) = pairs.hands;
    if coord(first, right_hand) >= coord(first, left_hand) {
        return Ok(seq.clone());
    }

    Ok(seq.map_postures(|p| {
        let mut coords = p.coords().to_vec();
        for (left, right) in pairs.all() {
            coords.swap(3 * left + axis, 3 * right + axis);
        }
        Posture::new(coords).expect("swap preserves validity")
    }))
}
