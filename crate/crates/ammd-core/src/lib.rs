//! Activity recognition for 3D skeleton sequences.
//!
//! A recorded activity is a sequence of skeleton postures, each flattened to
//! a `D = 3·J` vector of joint coordinates. This crate decomposes such a
//! sequence into *continuous maximal linear patches* — contiguous spans whose
//! geodesic-to-Euclidean distance ratio stays under a threshold, read as
//! action snippets — summarizes every patch by its major posture and main
//! evolution direction, and compares whole sequences with an order-preserving
//! manifold-to-manifold distance. A nearest-manifold classifier and dataset
//! tooling (file parsing, protocol splits, synthetic generation) sit on top.
//!
//! All numeric code is generic over the scalar type via [`scalar::Real`]
//! (`f32` or `f64`); the `*64`/`*32` aliases below pick a concrete precision.
//!
//! ```
//! use ammd_core::{decompose, Posture64, PostureSequence64};
//!
//! let frames: Vec<Posture64> = (0..8)
//!     .map(|t| Posture64::new(vec![t as f64, 0.0, 0.0]).unwrap())
//!     .collect();
//! let seq = PostureSequence64::new("line", frames).unwrap();
//! let patches = decompose(&seq, 1.04, 1).unwrap();
//! assert_eq!(patches.len(), 1); // a straight line is one patch
//! ```

pub mod classifier;
pub mod dataset;
pub mod decompose;
pub mod descriptor;
pub mod distance;
pub mod error;
pub mod geometry;
pub mod matrix;
pub mod posture;
pub mod scalar;

pub use classifier::{
    evaluate, predict, predict_descriptors, EvaluationReport, FitParams, Prediction,
    ReferenceGallery,
};
pub use decompose::{decompose, Cmlp, CmlpSequence};
pub use descriptor::{covariance, describe, major_posture, principal_direction, SnippetDescriptor};
pub use distance::{
    ammd, cmlp_distance, dtw_distance, manifold_distance, mdd, mmd_closest_pair, mmd_equal_weight,
    mpd, DescriptorSequence, MeasureKind, SequenceMatcher, SnippetMetric,
};
pub use error::{Error, Result};
pub use geometry::{
    euclidean_distance, geodesic_distances, nonlinearity_score, sequential_graph_edges,
    PatchGeometry,
};
pub use posture::{Posture, PostureSequence};
pub use scalar::Real;

/// `f64` aliases: the default precision for dataset work.
pub type Posture64 = Posture<f64>;
pub type PostureSequence64 = PostureSequence<f64>;
pub type Cmlp64 = Cmlp<f64>;
pub type CmlpSequence64 = CmlpSequence<f64>;
pub type SnippetDescriptor64 = SnippetDescriptor<f64>;
pub type DescriptorSequence64 = DescriptorSequence<f64>;
pub type ReferenceGallery64 = ReferenceGallery<f64>;

/// `f32` aliases for memory-constrained pipelines.
pub type Posture32 = Posture<f32>;
pub type PostureSequence32 = PostureSequence<f32>;
pub type Cmlp32 = Cmlp<f32>;
pub type CmlpSequence32 = CmlpSequence<f32>;
pub type SnippetDescriptor32 = SnippetDescriptor<f32>;
pub type DescriptorSequence32 = DescriptorSequence<f32>;
pub type ReferenceGallery32 = ReferenceGallery<f32>;
