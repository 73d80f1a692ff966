//! Independent oracles and random-instance generators shared by the
//! integration suites. Everything here deliberately avoids the library's
//! shortest-path, eigen, and matcher implementations.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use ammd_core::descriptor::SnippetDescriptor;
use ammd_core::distance::{cmlp_distance, snippet_distance, DescriptorSequence, SnippetMetric};
use ammd_core::matrix::SquareMatrix;
use ammd_core::posture::Posture;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

// ---------------------------------------------------------------------------
// Floyd–Warshall oracle for geodesic distances
// ---------------------------------------------------------------------------

/// All-pairs shortest paths on the k-sequential graph by Floyd–Warshall over
/// an explicit adjacency initialization.
pub fn floyd_warshall_oracle(patch: &[Posture<f64>], k: usize) -> Vec<Vec<f64>> {
    let n = patch.len();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for t in 0..n {
        for s in (t + 1)..n.min(t + k + 1) {
            let w: f64 = patch[t]
                .coords()
                .iter()
                .zip(patch[s].coords())
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            d[t][s] = w;
            d[s][t] = w;
        }
    }
    for mid in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][mid] + d[mid][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

// ---------------------------------------------------------------------------
// Dense eigen-decomposition oracle (cyclic Jacobi)
// ---------------------------------------------------------------------------

/// Eigenpairs of a symmetric matrix by cyclic Jacobi rotations, sorted by
/// descending eigenvalue. Columns of the accumulated rotation are the
/// eigenvectors.
pub fn jacobi_eigen_oracle(m: &SquareMatrix<f64>) -> Vec<(f64, Vec<f64>)> {
    let n = m.dim();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j)).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off <= 1e-28 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for j in 0..n {
                    let apj = a[p][j];
                    let aqj = a[q][j];
                    a[p][j] = c * apj - s * aqj;
                    a[q][j] = s * apj + c * aqj;
                }
                for i in 0..n {
                    let vip = v[i][p];
                    let viq = v[i][q];
                    v[i][p] = c * vip - s * viq;
                    v[i][q] = s * vip + c * viq;
                }
            }
        }
    }

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|j| (a[j][j], (0..n).map(|i| v[i][j]).collect()))
        .collect();
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
    pairs
}

// ---------------------------------------------------------------------------
// Exhaustive matcher oracles
// ---------------------------------------------------------------------------

/// Adjacent-pair matching by direct enumeration, mirroring the degenerate
/// single-snippet rules.
pub fn ammd_oracle(
    r: &DescriptorSequence<f64>,
    t: &DescriptorSequence<f64>,
    metric: SnippetMetric,
) -> f64 {
    let rd = r.descriptors();
    let td = t.descriptors();
    let d = |i: usize, j: usize| snippet_distance(metric, &rd[i], &td[j]).unwrap();
    if td.len() == 1 {
        return (0..rd.len()).map(|i| d(i, 0)).fold(f64::INFINITY, f64::min);
    }
    if rd.len() == 1 {
        let mut total = 0.0;
        for j in 0..td.len() - 1 {
            total += d(0, j) + d(0, j + 1);
        }
        return total;
    }
    let mut total = 0.0;
    for j in 0..td.len() - 1 {
        let mut best = f64::INFINITY;
        for i in 0..rd.len() - 1 {
            let cost = d(i, j) + d(i + 1, j + 1);
            if cost < best {
                best = cost;
            }
        }
        total += best;
    }
    total
}

pub fn equal_weight_oracle(
    r: &DescriptorSequence<f64>,
    t: &DescriptorSequence<f64>,
    metric: SnippetMetric,
) -> f64 {
    let mut total = 0.0;
    for rd in r.descriptors() {
        for td in t.descriptors() {
            total += snippet_distance(metric, rd, td).unwrap();
        }
    }
    total / (r.len() * t.len()) as f64
}

pub fn closest_pair_oracle(
    r: &DescriptorSequence<f64>,
    t: &DescriptorSequence<f64>,
    metric: SnippetMetric,
) -> f64 {
    let mut best = f64::INFINITY;
    for rd in r.descriptors() {
        for td in t.descriptors() {
            let d = snippet_distance(metric, rd, td).unwrap();
            if d < best {
                best = d;
            }
        }
    }
    best
}

/// DTW by recursive enumeration of every monotone boundary-anchored path.
pub fn dtw_path_enumeration_oracle(
    r: &DescriptorSequence<f64>,
    t: &DescriptorSequence<f64>,
    metric: SnippetMetric,
) -> f64 {
    let d: Vec<Vec<f64>> = r
        .descriptors()
        .iter()
        .map(|rd| {
            t.descriptors()
                .iter()
                .map(|td| snippet_distance(metric, rd, td).unwrap())
                .collect()
        })
        .collect();

    fn walk(d: &[Vec<f64>], i: usize, j: usize, acc: f64) -> f64 {
        let acc = acc + d[i][j];
        let m = d.len();
        let n = d[0].len();
        if i == m - 1 && j == n - 1 {
            return acc;
        }
        let mut best = f64::INFINITY;
        for (di, dj) in [(1, 0), (0, 1), (1, 1)] {
            if i + di < m && j + dj < n {
                best = best.min(walk(d, i + di, j + dj, acc));
            }
        }
        best
    }
    walk(&d, 0, 0, 0.0)
}

// ---------------------------------------------------------------------------
// Random-instance generators
// ---------------------------------------------------------------------------

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_patch(rng: &mut ChaCha8Rng, frames: usize, dim: usize) -> Vec<Posture<f64>> {
    (0..frames)
        .map(|_| {
            Posture::new((0..dim).map(|_| rng.random_range(-2.0..2.0)).collect()).unwrap()
        })
        .collect()
}

pub fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Descriptor with a safely non-degenerate mean; ~15% of directions carry the
/// zero flag.
pub fn random_descriptor(rng: &mut ChaCha8Rng, dim: usize) -> SnippetDescriptor<f64> {
    let mean: Vec<f64> = loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-2.0..2.0)).collect();
        if v.iter().map(|x| x * x).sum::<f64>().sqrt() > 0.1 {
            break v;
        }
    };
    let direction = if rng.random_range(0.0..1.0) < 0.15 {
        vec![0.0; dim]
    } else {
        random_unit(rng, dim)
    };
    SnippetDescriptor::from_parts(mean, direction, rng.random_range(1..10)).unwrap()
}

pub fn random_descriptor_sequence(
    rng: &mut ChaCha8Rng,
    len: usize,
    dim: usize,
) -> DescriptorSequence<f64> {
    DescriptorSequence::new(
        (0..len).map(|_| random_descriptor(rng, dim)).collect(),
        "random",
    )
    .unwrap()
}

/// Random orthogonal matrix by Gram–Schmidt on a Gaussian-ish sample.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Vec<f64>> {
    loop {
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim);
        'rows: for _ in 0..dim {
            for _attempt in 0..20 {
                let mut v: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
                for b in &basis {
                    let proj: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                    for (x, y) in v.iter_mut().zip(b) {
                        *x -= proj * y;
                    }
                }
                let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if n > 1e-6 {
                    basis.push(v.into_iter().map(|x| x / n).collect());
                    continue 'rows;
                }
            }
            break;
        }
        if basis.len() == dim {
            return basis;
        }
    }
}

pub fn apply_orthogonal(q: &[Vec<f64>], p: &Posture<f64>) -> Posture<f64> {
    let coords: Vec<f64> = q
        .iter()
        .map(|row| row.iter().zip(p.coords()).map(|(a, b)| a * b).sum())
        .collect();
    Posture::new(coords).unwrap()
}

/// Distance matrix check used by several suites.
pub fn pairwise_cmlp_distances(
    r: &DescriptorSequence<f64>,
    t: &DescriptorSequence<f64>,
) -> Vec<Vec<f64>> {
    r.descriptors()
        .iter()
        .map(|rd| {
            t.descriptors()
                .iter()
                .map(|td| cmlp_distance(rd, td).unwrap())
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Protocol evaluation with a shared descriptor cache
// ---------------------------------------------------------------------------

use ammd_core::classifier::{predict_descriptors, FitParams, ReferenceGallery};
use ammd_core::dataset::{make_splits, DatasetManifest, SplitProtocol};
use ammd_core::distance::MeasureKind;
use ammd_core::posture::PostureSequence;

/// Decompose/describe every sequence once, then evaluate the protocol's
/// splits (with `reps` derived-seed repetitions); returns the mean of the
/// per-split accuracies.
pub fn protocol_mean_accuracy(
    sequences: &[PostureSequence<f64>],
    manifest: &DatasetManifest,
    protocol: &SplitProtocol,
    reps: u64,
    delta: f64,
    k: usize,
    measure: MeasureKind,
) -> f64 {
    let cache: Vec<DescriptorSequence<f64>> = sequences
        .iter()
        .map(|s| DescriptorSequence::from_sequence(s, delta, k).unwrap())
        .collect();
    let params = FitParams { delta, k };
    let mut accuracies = Vec::new();
    for rep in 0..reps {
        let p = SplitProtocol {
            seed: protocol.seed + rep,
            ..*protocol
        };
        for split in make_splits(manifest, &p).unwrap() {
            let train: Vec<_> = split.train.iter().map(|&i| cache[i].clone()).collect();
            let gallery = ReferenceGallery::from_descriptor_sequences(train, params).unwrap();
            let mut correct = 0usize;
            for &i in &split.test {
                let pred = predict_descriptors(&gallery, &cache[i], measure).unwrap();
                if Some(pred.label.as_str()) == cache[i].label() {
                    correct += 1;
                }
            }
            accuracies.push(correct as f64 / split.test.len() as f64);
        }
    }
    accuracies.iter().sum::<f64>() / accuracies.len() as f64
}

/// Leave-one-sequence-out accuracy over a descriptor cache.
pub fn loo_accuracy(
    cache: &[DescriptorSequence<f64>],
    params: FitParams<f64>,
    measure: MeasureKind,
) -> f64 {
    let mut correct = 0usize;
    for i in 0..cache.len() {
        let train: Vec<_> = cache
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, d)| d.clone())
            .collect();
        let gallery = ReferenceGallery::from_descriptor_sequences(train, params).unwrap();
        let pred = predict_descriptors(&gallery, &cache[i], measure).unwrap();
        if Some(pred.label.as_str()) == cache[i].label() {
            correct += 1;
        }
    }
    correct as f64 / cache.len() as f64
}
