//! Euclidean and graph-geodesic geometry of posture patches.
//!
//! Frames of a patch form a *k sequential neighbors graph*: each vertex is
//! connected to its previous and next `k` vertices in temporal order, with
//! Euclidean edge weights. The deviation of shortest-path (geodesic) distances
//! from straight-line distances measures how nonlinear the patch is.

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::posture::Posture;
use crate::scalar::{real, Real};

/// Postures closer than this (in sequence units) count as coincident and
/// contribute a unit distance ratio.
pub const COINCIDENT_EPS: f64 = 1e-9;

/// l2 distance between two postures of the same dimension.
pub fn euclidean_distance<R: Real>(p: &Posture<R>, q: &Posture<R>) -> Result<R> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    Ok(l2(p.coords(), q.coords()))
}

#[inline]
pub(crate) fn l2<R: Real>(a: &[R], b: &[R]) -> R {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum::<R>()
        .sqrt()
}

/// Undirected edges of the k-sequential-neighbors graph on `patch_length`
/// vertices: every pair `(t, s)` with `0 < s − t ≤ k`, reported once with
/// `t < s`. Edge weights are implied (Euclidean distance between endpoints).
pub fn sequential_graph_edges(patch_length: usize, k: usize) -> Result<Vec<(usize, usize)>> {
    if k == 0 {
        return Err(Error::InvalidConfig(
            "neighbor count k must be at least 1".into(),
        ));
    }
    if patch_length == 0 {
        return Err(Error::EmptyInput("patch"));
    }
    let mut edges = Vec::new();
    for t in 0..patch_length {
        for s in (t + 1)..patch_length.min(t + k + 1) {
            edges.push((t, s));
        }
    }
    Ok(edges)
}

/// Pairwise Euclidean distance table for a patch.
pub fn euclidean_matrix<R: Real>(patch: &[Posture<R>]) -> Result<SquareMatrix<R>> {
    if patch.is_empty() {
        return Err(Error::EmptyInput("patch"));
    }
    let dim = patch[0].dim();
    for p in patch {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: p.dim(),
            });
        }
    }
    let n = patch.len();
    let mut m = SquareMatrix::zeros(n);
    for t in 0..n {
        for s in (t + 1)..n {
            let d = l2(patch[t].coords(), patch[s].coords());
            m.set(t, s, d);
            m.set(s, t, d);
        }
    }
    Ok(m)
}

/// All-pairs shortest-path distances on the k-sequential-neighbors graph whose
/// edge weights are taken from `euclid`. The chain edges guarantee
/// connectivity, so every entry is finite.
pub(crate) fn geodesic_from_euclidean<R: Real>(euclid: &SquareMatrix<R>, k: usize) -> SquareMatrix<R> {
    let n = euclid.dim();
    let mut geo = SquareMatrix::zeros(n);
    for source in 0..n {
        let row = dijkstra_row(euclid, k, source);
        for (t, d) in row.into_iter().enumerate() {
            geo.set(source, t, d);
        }
    }
    // Opposite-direction path sums can differ by rounding; keep the table
    // exactly symmetric by taking the smaller of the two.
    for t in 0..n {
        for s in (t + 1)..n {
            let d = geo.get(t, s).min(geo.get(s, t));
            geo.set(t, s, d);
            geo.set(s, t, d);
        }
    }
    geo
}

/// Dijkstra over the k-sequential graph from one source. Neighbor sets are
/// contiguous index ranges, so a flat scan beats a heap at these sizes.
fn dijkstra_row<R: Real>(euclid: &SquareMatrix<R>, k: usize, source: usize) -> Vec<R> {
    let n = euclid.dim();
    let mut dist = vec![R::infinity(); n];
    let mut done = vec![false; n];
    dist[source] = R::zero();
    for _ in 0..n {
        let mut u = usize::MAX;
        let mut best = R::infinity();
        for v in 0..n {
            if !done[v] && dist[v] < best {
                best = dist[v];
                u = v;
            }
        }
        if u == usize::MAX {
            break;
        }
        done[u] = true;
        let lo = u.saturating_sub(k);
        let hi = (u + k).min(n - 1);
        for v in lo..=hi {
            if v == u || done[v] {
                continue;
            }
            let candidate = dist[u] + euclid.get(u, v);
            if candidate < dist[v] {
                dist[v] = candidate;
            }
        }
    }
    dist
}

/// Geodesic distance table of a patch (shortest paths over the
/// k-sequential-neighbors graph restricted to the patch).
pub fn geodesic_distances<R: Real>(patch: &[Posture<R>], k: usize) -> Result<SquareMatrix<R>> {
    if k == 0 {
        return Err(Error::InvalidConfig(
            "neighbor count k must be at least 1".into(),
        ));
    }
    let euclid = euclidean_matrix(patch)?;
    Ok(geodesic_from_euclidean(&euclid, k))
}

/// Pairwise Euclidean, geodesic, and ratio tables for one patch.
///
/// The ratio diagonal is 1 by convention, coincident postures contribute 1,
/// and every off-diagonal ratio is floored at 1 (the triangle inequality
/// guarantees the true value is never below it).
#[derive(Debug, Clone)]
pub struct PatchGeometry<R> {
    pub euclidean: SquareMatrix<R>,
    pub geodesic: SquareMatrix<R>,
    pub ratio: SquareMatrix<R>,
}

impl<R: Real> PatchGeometry<R> {
    pub fn compute(patch: &[Posture<R>], k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidConfig(
                "neighbor count k must be at least 1".into(),
            ));
        }
        let euclidean = euclidean_matrix(patch)?;
        let geodesic = geodesic_from_euclidean(&euclidean, k);
        let eps = real::<R>(COINCIDENT_EPS);
        let one = R::one();
        let n = euclidean.dim();
        let ratio = SquareMatrix::from_fn(n, |t, s| {
            if t == s {
                return one;
            }
            let de = euclidean.get(t, s);
            if de < eps {
                one
            } else {
                (geodesic.get(t, s) / de).max(one)
            }
        });
        Ok(Self {
            euclidean,
            geodesic,
            ratio,
        })
    }

    /// Mean of the ratio table over all ordered pairs including the diagonal;
    /// 1 means the patch is perfectly linear.
    pub fn nonlinearity_score(&self) -> R {
        let n = self.ratio.dim();
        let total: R = self.ratio.values().sum();
        total / real::<R>((n * n) as f64)
    }
}

/// Nonlinearity score of a patch: always ≥ 1, equal to 1 exactly when every
/// geodesic equals its Euclidean counterpart.
pub fn nonlinearity_score<R: Real>(patch: &[Posture<R>], k: usize) -> Result<R> {
    Ok(PatchGeometry::compute(patch, k)?.nonlinearity_score())
}

/// Incrementally grown patch geometry for the decomposition loop.
///
/// Appending a vertex can shorten existing shortest paths (the new vertex
/// links back to its k predecessors), so each push runs Dijkstra from the new
/// vertex and relaxes every existing pair through it; that reproduces full
/// APSP on the grown patch up to rounding. Distance tables never leave the
/// current patch.
#[derive(Debug)]
pub(crate) struct GrowingGeometry<R> {
    k: usize,
    coords: Vec<Vec<R>>,
    /// Lower-triangular Euclidean rows: `euclid[t][s]` valid for `s ≤ t`.
    euclid: Vec<Vec<R>>,
    /// Full symmetric geodesic rows.
    geodesic: Vec<Vec<R>>,
}

impl<R: Real> GrowingGeometry<R> {
    pub(crate) fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidConfig(
                "neighbor count k must be at least 1".into(),
            ));
        }
        Ok(Self {
            k,
            coords: Vec::new(),
            euclid: Vec::new(),
            geodesic: Vec::new(),
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    fn edge(&self, u: usize, v: usize) -> R {
        if u >= v {
            self.euclid[u][v]
        } else {
            self.euclid[v][u]
        }
    }

    /// Append one posture and return the nonlinearity score of the grown patch.
    pub(crate) fn push(&mut self, posture: &Posture<R>) -> Result<R> {
        if let Some(first) = self.coords.first() {
            if first.len() != posture.dim() {
                return Err(Error::DimensionMismatch {
                    left: first.len(),
                    right: posture.dim(),
                });
            }
        }
        let t = self.len();
        let mut e_row: Vec<R> = self
            .coords
            .iter()
            .map(|c| l2(c, posture.coords()))
            .collect();
        e_row.push(R::zero());
        self.coords.push(posture.coords().to_vec());
        self.euclid.push(e_row);

        let row_t = self.dijkstra_from_last();
        for i in 0..t {
            for j in (i + 1)..t {
                let via = row_t[i] + row_t[j];
                if via < self.geodesic[i][j] {
                    self.geodesic[i][j] = via;
                    self.geodesic[j][i] = via;
                }
            }
        }
        for (row, &d) in self.geodesic.iter_mut().zip(&row_t) {
            row.push(d);
        }
        self.geodesic.push(row_t);

        Ok(self.score())
    }

    fn dijkstra_from_last(&self) -> Vec<R> {
        let n = self.len();
        let source = n - 1;
        let mut dist = vec![R::infinity(); n];
        let mut done = vec![false; n];
        dist[source] = R::zero();
        for _ in 0..n {
            let mut u = usize::MAX;
            let mut best = R::infinity();
            for v in 0..n {
                if !done[v] && dist[v] < best {
                    best = dist[v];
                    u = v;
                }
            }
            if u == usize::MAX {
                break;
            }
            done[u] = true;
            let lo = u.saturating_sub(self.k);
            let hi = (u + self.k).min(n - 1);
            for v in lo..=hi {
                if v == u || done[v] {
                    continue;
                }
                let candidate = dist[u] + self.edge(u, v);
                if candidate < dist[v] {
                    dist[v] = candidate;
                }
            }
        }
        dist
    }

    fn score(&self) -> R {
        let n = self.len();
        let eps = real::<R>(COINCIDENT_EPS);
        let one = R::one();
        let mut total = real::<R>(n as f64); // diagonal contributes n ones
        for i in 0..n {
            for j in (i + 1)..n {
                let de = self.edge(j, i);
                let r = if de < eps {
                    one
                } else {
                    (self.geodesic[i][j] / de).max(one)
                };
                total = total + r + r;
            }
        }
        total / real::<R>((n * n) as f64)
    }
}
