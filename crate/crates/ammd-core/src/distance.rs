//! Snippet-level and sequence-level distance measures.
//!
//! Snippets are compared by the sine distance of their major postures (MPD),
//! of their main directions (MDD), or by the combination of both. Whole
//! sequences are compared with the order-preserving adjacent-pair matching
//! distance, with two unordered baselines, or with dynamic time warping.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::decompose::CmlpSequence;
use crate::descriptor::{describe, dot, SnippetDescriptor};
use crate::error::{Error, Result};
use crate::posture::PostureSequence;
use crate::scalar::{real, Real};

/// Means with norm at or below this are rejected as degenerate.
pub const ZERO_NORM_EPS: f64 = 1e-12;

/// Ordered snippet descriptors of one sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptorSequence<R> {
    descriptors: Vec<SnippetDescriptor<R>>,
    source: String,
    label: Option<String>,
}

impl<R: Real> DescriptorSequence<R> {
    pub fn new(
        descriptors: Vec<SnippetDescriptor<R>>,
        source: impl Into<String>,
    ) -> Result<Self> {
        if descriptors.is_empty() {
            return Err(Error::EmptyInput("descriptor sequence"));
        }
        Ok(Self {
            descriptors,
            source: source.into(),
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Describe every patch of a decomposition, preserving patch order.
    pub fn from_cmlps(cmlps: &CmlpSequence<R>) -> Self {
        Self {
            descriptors: cmlps.patches().iter().map(describe).collect(),
            source: cmlps.source().to_string(),
            label: None,
        }
    }

    /// Decompose and describe a posture sequence in one step, carrying the
    /// sequence label over.
    pub fn from_sequence(sequence: &PostureSequence<R>, delta: R, k: usize) -> Result<Self> {
        let cmlps = crate::decompose::decompose(sequence, delta, k)?;
        let mut out = Self::from_cmlps(&cmlps);
        out.label = sequence.label().map(String::from);
        Ok(out)
    }

    pub fn descriptors(&self) -> &[SnippetDescriptor<R>] {
        &self.descriptors
    }

    pub fn len(&self) -> usize {
        self.descriptors.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Same descriptors in reverse temporal order (order-sensitivity checks).
    pub fn reversed(&self) -> Self {
        let mut descriptors = self.descriptors.clone();
        descriptors.reverse();
        Self {
            descriptors,
            source: self.source.clone(),
            label: self.label.clone(),
        }
    }
}

/// Which snippet-level distance feeds the sequence matcher.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SnippetMetric {
    PostureOnly,
    DirectionOnly,
    Combined,
}

/// How snippet distances are aggregated across two sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SequenceMatcher {
    /// Order-preserving adjacent-pair matching.
    Ammd,
    /// Mean over all snippet pairs.
    EqualWeight,
    /// Minimum over all snippet pairs.
    ClosestPair,
    /// Dynamic time warping over descriptor sequences.
    Dtw,
}

/// A snippet metric combined with a sequence matcher.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MeasureKind {
    pub metric: SnippetMetric,
    pub matcher: SequenceMatcher,
}

impl MeasureKind {
    pub const fn new(metric: SnippetMetric, matcher: SequenceMatcher) -> Self {
        Self { metric, matcher }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let metric = match self.metric {
            SnippetMetric::PostureOnly => "mpd",
            SnippetMetric::DirectionOnly => "mdd",
            SnippetMetric::Combined => "combined",
        };
        let matcher = match self.matcher {
            SequenceMatcher::Ammd => "ammd",
            SequenceMatcher::EqualWeight => "equal",
            SequenceMatcher::ClosestPair => "closest",
            SequenceMatcher::Dtw => "dtw",
        };
        write!(f, "{metric}x{matcher}")
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    /// Parses `<metric>x<matcher>` such as `combinedxammd` or `mpdxdtw`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidConfig(format!(
                "unknown measure '{s}': expected {{mpd|mdd|combined}}x{{ammd|equal|closest|dtw}}"
            ))
        };
        let (metric, matcher) = s.split_once('x').ok_or_else(bad)?;
        let metric = match metric {
            "mpd" => SnippetMetric::PostureOnly,
            "mdd" => SnippetMetric::DirectionOnly,
            "combined" => SnippetMetric::Combined,
            _ => return Err(bad()),
        };
        let matcher = match matcher {
            "ammd" => SequenceMatcher::Ammd,
            "equal" => SequenceMatcher::EqualWeight,
            "closest" => SequenceMatcher::ClosestPair,
            "dtw" => SequenceMatcher::Dtw,
            _ => return Err(bad()),
        };
        Ok(Self { metric, matcher })
    }
}

/// sin of the angle between two vectors, computed from cos² so that identical
/// inputs give exactly zero. `None` when either vector has (near-)zero norm.
fn sine_distance<R: Real>(a: &[R], b: &[R]) -> Option<R> {
    let eps = real::<R>(ZERO_NORM_EPS);
    let nsq_a = dot(a, a);
    let nsq_b = dot(b, b);
    if nsq_a <= eps * eps || nsq_b <= eps * eps {
        return None;
    }
    let d = dot(a, b);
    let cos_sq = (d * d) / (nsq_a * nsq_b);
    Some((R::one() - cos_sq).max(R::zero()).sqrt())
}

/// Major posture distance: sine of the angle between the two means.
pub fn mpd<R: Real>(a: &SnippetDescriptor<R>, b: &SnippetDescriptor<R>) -> Result<R> {
    sine_distance(a.mean(), b.mean()).ok_or_else(|| {
        Error::DegenerateInput("zero-norm major posture in posture distance".into())
    })
}

/// Main direction distance: sine of the angle between the two directions;
/// zero when either direction carries the degeneracy flag.
pub fn mdd<R: Real>(a: &SnippetDescriptor<R>, b: &SnippetDescriptor<R>) -> R {
    if !a.has_direction() || !b.has_direction() {
        return R::zero();
    }
    sine_distance(a.direction(), b.direction()).unwrap_or(R::zero())
}

/// Combined snippet distance √(mpd² + mdd²), in [0, √2].
pub fn cmlp_distance<R: Real>(a: &SnippetDescriptor<R>, b: &SnippetDescriptor<R>) -> Result<R> {
    let p = mpd(a, b)?;
    let d = mdd(a, b);
    Ok((p * p + d * d).sqrt())
}

/// Snippet distance under the selected metric.
pub fn snippet_distance<R: Real>(
    metric: SnippetMetric,
    a: &SnippetDescriptor<R>,
    b: &SnippetDescriptor<R>,
) -> Result<R> {
    match metric {
        SnippetMetric::PostureOnly => mpd(a, b),
        SnippetMetric::DirectionOnly => Ok(mdd(a, b)),
        SnippetMetric::Combined => cmlp_distance(a, b),
    }
}

/// All snippet distances between two sequences, row `i` = reference snippet.
fn pairwise<R: Real>(
    metric: SnippetMetric,
    reference: &DescriptorSequence<R>,
    test: &DescriptorSequence<R>,
) -> Result<Vec<Vec<R>>> {
    reference
        .descriptors()
        .iter()
        .map(|r| {
            test.descriptors()
                .iter()
                .map(|t| snippet_distance(metric, r, t))
                .collect()
        })
        .collect()
}

/// Order-preserving sequence distance: for every adjacent snippet pair of the
/// test sequence, the best-matching adjacent pair of the reference sequence;
/// summed over test pairs. Not symmetric in general.
///
/// Degenerate lengths: a single-snippet test matches its closest reference
/// snippet; a single-snippet reference is duplicated for every test pair.
pub fn ammd<R: Real>(
    reference: &DescriptorSequence<R>,
    test: &DescriptorSequence<R>,
    metric: SnippetMetric,
) -> Result<R> {
    let d = pairwise(metric, reference, test)?;
    let m = reference.len();
    let n = test.len();
    if n == 1 {
        let mut best = R::infinity();
        for row in &d {
            if row[0] < best {
                best = row[0];
            }
        }
        return Ok(best);
    }
    if m == 1 {
        let mut total = R::zero();
        for j in 0..n - 1 {
            total = total + (d[0][j] + d[0][j + 1]);
        }
        return Ok(total);
    }
    let mut total = R::zero();
    for j in 0..n - 1 {
        let mut best = R::infinity();
        for i in 0..m - 1 {
            let cost = d[i][j] + d[i + 1][j + 1];
            if cost < best {
                best = cost;
            }
        }
        total = total + best;
    }
    Ok(total)
}

/// Unordered baseline: mean snippet distance over all pairs. Symmetric.
pub fn mmd_equal_weight<R: Real>(
    reference: &DescriptorSequence<R>,
    test: &DescriptorSequence<R>,
    metric: SnippetMetric,
) -> Result<R> {
    let d = pairwise(metric, reference, test)?;
    let mut total = R::zero();
    for row in &d {
        for &v in row {
            total = total + v;
        }
    }
    Ok(total / real::<R>((reference.len() * test.len()) as f64))
}

/// Unordered baseline: distance of the closest snippet pair. Symmetric.
pub fn mmd_closest_pair<R: Real>(
    reference: &DescriptorSequence<R>,
    test: &DescriptorSequence<R>,
    metric: SnippetMetric,
) -> Result<R> {
    let d = pairwise(metric, reference, test)?;
    let mut best = R::infinity();
    for row in &d {
        for &v in row {
            if v < best {
                best = v;
            }
        }
    }
    Ok(best)
}

/// Dynamic time warping over descriptor sequences: boundary-anchored, unit
/// step moves (1,0), (0,1), (1,1), no band constraint; the cost is the sum of
/// snippet distances along the optimal path. Symmetric.
pub fn dtw_distance<R: Real>(
    reference: &DescriptorSequence<R>,
    test: &DescriptorSequence<R>,
    metric: SnippetMetric,
) -> Result<R> {
    let d = pairwise(metric, reference, test)?;
    let m = reference.len();
    let n = test.len();
    let mut dp = vec![vec![R::infinity(); n]; m];
    for i in 0..m {
        for j in 0..n {
            let prev = if i == 0 && j == 0 {
                R::zero()
            } else {
                let mut best = R::infinity();
                if i > 0 {
                    best = best.min(dp[i - 1][j]);
                }
                if j > 0 {
                    best = best.min(dp[i][j - 1]);
                }
                if i > 0 && j > 0 {
                    best = best.min(dp[i - 1][j - 1]);
                }
                best
            };
            dp[i][j] = prev + d[i][j];
        }
    }
    Ok(dp[m - 1][n - 1])
}

/// Sequence distance under the selected metric and matcher.
pub fn manifold_distance<R: Real>(
    kind: MeasureKind,
    reference: &DescriptorSequence<R>,
    test: &DescriptorSequence<R>,
) -> Result<R> {
    match kind.matcher {
        SequenceMatcher::Ammd => ammd(reference, test, kind.metric),
        SequenceMatcher::EqualWeight => mmd_equal_weight(reference, test, kind.metric),
        SequenceMatcher::ClosestPair => mmd_closest_pair(reference, test, kind.metric),
        SequenceMatcher::Dtw => dtw_distance(reference, test, kind.metric),
    }
}
