//! Major-posture / main-direction summaries of action snippets.
//!
//! A patch is summarized by the mean of its postures and by the unit top
//! eigenvector of the patch covariance. Patches without spread (single or
//! repeated frames) get the all-zero direction as a degeneracy flag.

use serde::Serialize;

use crate::decompose::Cmlp;
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{real, Real};

/// Relative floor under which the top eigenvalue counts as rank-deficient.
pub const RANK_EPS: f64 = 1e-12;

/// Convergence threshold on the norm difference of successive iterates.
const POWER_TOL: f64 = 1e-12;

/// Iteration cap for the dominant eigenvector.
const POWER_MAX_ITERS: usize = 10_000;

/// Iteration cap for the second-eigenvalue probe (diagnostics only).
const GAP_PROBE_ITERS: usize = 500;

/// Relative eigenvalue gap below which the direction is flagged as a tie.
pub const TIE_GAP: f64 = 1e-6;

/// Summary of one patch: major posture, main evolution direction, length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SnippetDescriptor<R> {
    mean: Vec<R>,
    direction: Vec<R>,
    frames: usize,
    tie_degenerate: bool,
}

impl<R: Real> SnippetDescriptor<R> {
    /// Major posture `u`: arithmetic mean of the patch.
    pub fn mean(&self) -> &[R] {
        &self.mean
    }

    /// Main direction `v`: unit top eigenvector of the covariance,
    /// sign-canonicalized, or exactly zero when the patch has no spread.
    pub fn direction(&self) -> &[R] {
        &self.direction
    }

    pub fn frames(&self) -> usize {
        self.frames
    }

    /// True when the direction is the all-zero degeneracy flag.
    pub fn has_direction(&self) -> bool {
        self.direction.iter().any(|&x| x != R::zero())
    }

    /// True when the top two eigenvalues were too close to call.
    pub fn tie_degenerate(&self) -> bool {
        self.tie_degenerate
    }

    /// Build a descriptor from raw parts (gallery plumbing and tests).
    pub fn from_parts(mean: Vec<R>, direction: Vec<R>, frames: usize) -> Result<Self> {
        if mean.is_empty() {
            return Err(Error::EmptyInput("descriptor mean"));
        }
        if mean.len() != direction.len() {
            return Err(Error::DimensionMismatch {
                left: mean.len(),
                right: direction.len(),
            });
        }
        Ok(Self {
            mean,
            direction,
            frames,
            tie_degenerate: false,
        })
    }
}

/// Mean posture of a patch.
pub fn major_posture<R: Real>(cmlp: &Cmlp<R>) -> Vec<R> {
    let dim = cmlp.postures()[0].dim();
    let mut mean = vec![R::zero(); dim];
    for p in cmlp.postures() {
        for (m, &c) in mean.iter_mut().zip(p.coords()) {
            *m = *m + c;
        }
    }
    let inv = R::one() / real::<R>(cmlp.len() as f64);
    for m in &mut mean {
        *m = *m * inv;
    }
    mean
}

/// Sample covariance of a patch with 1/F normalization.
pub fn covariance<R: Real>(cmlp: &Cmlp<R>) -> SquareMatrix<R> {
    let mean = major_posture(cmlp);
    let dim = mean.len();
    let mut cov = SquareMatrix::zeros(dim);
    for p in cmlp.postures() {
        let centered: Vec<R> = p
            .coords()
            .iter()
            .zip(&mean)
            .map(|(&c, &m)| c - m)
            .collect();
        for i in 0..dim {
            for j in i..dim {
                let v = cov.get(i, j) + centered[i] * centered[j];
                cov.set(i, j, v);
            }
        }
    }
    let inv = R::one() / real::<R>(cmlp.len() as f64);
    for i in 0..dim {
        for j in i..dim {
            let v = cov.get(i, j) * inv;
            cov.set(i, j, v);
            cov.set(j, i, v);
        }
    }
    cov
}

/// Unit eigenvector of the largest eigenvalue of a symmetric PSD matrix,
/// sign-canonicalized; `None` when the matrix is (numerically) rank zero.
pub fn principal_direction<R: Real>(cov: &SquareMatrix<R>) -> Result<Option<Vec<R>>> {
    Ok(top_eigenpair(cov)?.map(|(_, v, _)| v))
}

/// Power iteration for the dominant eigenpair plus a deflated probe of the
/// second eigenvalue. Returns `(λ1, v1, λ2 estimate)`.
fn top_eigenpair<R: Real>(cov: &SquareMatrix<R>) -> Result<Option<(R, Vec<R>, R)>> {
    let dim = cov.dim();
    let scale = R::one().max(cov.trace());
    if !cov.is_symmetric(real::<R>(1e-9) * scale) {
        return Err(Error::AsymmetricInput);
    }
    let rank_eps = real::<R>(RANK_EPS) * scale;

    // Deterministic start: normalized all-ones, falling back to e1 when the
    // start is annihilated by the matrix.
    let inv_sqrt = R::one() / real::<R>(dim as f64).sqrt();
    let mut v = vec![inv_sqrt; dim];
    let first = cov.matvec(&v);
    if norm(&first) <= real::<R>(1e-12) * scale {
        v = vec![R::zero(); dim];
        v[0] = R::one();
    }

    let v = iterate(|x| cov.matvec(x), v, rank_eps, POWER_MAX_ITERS);
    let av = cov.matvec(&v);
    let lambda1 = dot(&v, &av);
    if lambda1 < rank_eps {
        return Ok(None);
    }

    let mut v = v;
    canonicalize_sign(&mut v);

    let lambda2 = second_eigenvalue(cov, &v, lambda1, rank_eps);
    Ok(Some((lambda1, v, lambda2)))
}

/// Power iteration of `apply` from `start`, normalized each step, stopping
/// when successive iterates differ by less than the convergence threshold.
fn iterate<R: Real>(
    apply: impl Fn(&[R]) -> Vec<R>,
    start: Vec<R>,
    collapse_eps: R,
    max_iters: usize,
) -> Vec<R> {
    let tol = real::<R>(POWER_TOL).max(R::epsilon() * real::<R>(8.0));
    let mut v = start;
    for _ in 0..max_iters {
        let mut w = apply(&v);
        let n = norm(&w);
        if n <= collapse_eps {
            break;
        }
        let inv = R::one() / n;
        for x in &mut w {
            *x = *x * inv;
        }
        let diff = v
            .iter()
            .zip(&w)
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum::<R>()
            .sqrt();
        v = w;
        if diff < tol {
            break;
        }
    }
    v
}

/// Rayleigh quotient of the deflated matrix: an estimate of λ2 good enough to
/// flag near-ties.
fn second_eigenvalue<R: Real>(cov: &SquareMatrix<R>, v1: &[R], lambda1: R, rank_eps: R) -> R {
    let dim = cov.dim();
    if dim < 2 {
        return R::zero();
    }
    let deflated = |x: &[R]| -> Vec<R> {
        let mut ax = cov.matvec(x);
        let c = lambda1 * dot(v1, x);
        for (a, &b) in ax.iter_mut().zip(v1) {
            *a = *a - c * b;
        }
        ax
    };
    let inv_sqrt = R::one() / real::<R>(dim as f64).sqrt();
    let w = iterate(deflated, vec![inv_sqrt; dim], rank_eps, GAP_PROBE_ITERS);
    dot(&w, &deflated(&w)).max(R::zero())
}

/// Descriptor of one patch: mean, direction, frame count, tie flag.
pub fn describe<R: Real>(cmlp: &Cmlp<R>) -> SnippetDescriptor<R> {
    let mean = major_posture(cmlp);
    let cov = covariance(cmlp);
    // Covariance is symmetric by construction, so the eigen step cannot fail.
    let pair = top_eigenpair(&cov).expect("covariance is symmetric");
    let dim = mean.len();
    let (direction, tie_degenerate) = match pair {
        None => (vec![R::zero(); dim], false),
        Some((l1, v, l2)) => {
            let tie = (l1 - l2) < real::<R>(TIE_GAP) * l1;
            (v, tie)
        }
    };
    SnippetDescriptor {
        mean,
        direction,
        frames: cmlp.len(),
        tie_degenerate,
    }
}

fn canonicalize_sign<R: Real>(v: &mut [R]) {
    if let Some(&first) = v.iter().find(|&&x| x != R::zero()) {
        if first < R::zero() {
            for x in v {
                *x = -*x;
            }
        }
    }
}

#[inline]
pub(crate) fn dot<R: Real>(a: &[R], b: &[R]) -> R {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

#[inline]
pub(crate) fn norm<R: Real>(v: &[R]) -> R {
    dot(v, v).sqrt()
}
