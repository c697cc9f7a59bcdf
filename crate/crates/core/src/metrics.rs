//! Distance matrices on the nodes of a graph.
//!
//! Effective resistance and Euclidean embedding distances are both metrics
//! of negative type, so `exp(-k D)` built from them certifies for every
//! `k > 0`. Hop distances ([`Graph::shortest_paths`]) generally do not.

use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{check_symmetric, eig_sym};

/// Where a distance matrix came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistanceKind {
    ShortestPath,
    Resistance,
    Embedding,
    External,
}

impl DistanceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DistanceKind::ShortestPath => "shortest-path",
            DistanceKind::Resistance => "resistance",
            DistanceKind::Embedding => "embedding",
            DistanceKind::External => "external",
        }
    }
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Symmetric matrix of pairwise node distances with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    values: DMatrix<f64>,
    kind: DistanceKind,
    labels: Vec<String>,
}

impl DistanceMatrix {
    pub(crate) fn from_parts(
        values: DMatrix<f64>,
        kind: DistanceKind,
        labels: Vec<String>,
    ) -> Self {
        Self {
            values,
            kind,
            labels,
        }
    }

    /// Wrap an externally supplied distance matrix.
    ///
    /// Requires a square finite matrix, symmetric to 1e-10 relative, with a
    /// zero diagonal and strictly positive off-diagonal entries.
    pub fn external(values: DMatrix<f64>, labels: Vec<String>) -> Result<Self> {
        let n = check_square(&values)?;
        if labels.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: labels.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("distance matrix entry".into()));
        }
        check_symmetric(&values)?;
        for i in 0..n {
            if values[(i, i)] != 0.0 {
                return Err(Error::InvalidDistance(format!(
                    "diagonal entry {i} is {} (must be 0)",
                    values[(i, i)]
                )));
            }
            for j in 0..n {
                if i != j && values[(i, j)] <= 0.0 {
                    return Err(Error::InvalidDistance(format!(
                        "entry ({i}, {j}) is {} (must be > 0)",
                        values[(i, j)]
                    )));
                }
            }
        }
        let values = (&values + values.transpose()) * 0.5;
        Ok(Self::from_parts(values, DistanceKind::External, labels))
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn kind(&self) -> DistanceKind {
        self.kind
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.values.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[(i, j)]
    }

    /// Off-diagonal pairs `(i, j)`, `i < j`, at distance zero. Only
    /// embedding distances can have these (coincident embedded nodes).
    pub fn coincident_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.values[(i, j)] == 0.0)
            .collect()
    }

    /// Checks `d(i,j) <= d(i,k) + d(k,j) + tol` over all triples.
    pub fn satisfies_triangle_inequality(&self, tol: f64) -> bool {
        let n = self.len();
        let d = &self.values;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| d[(i, j)] <= d[(i, k)] + d[(k, j)] + tol)))
    }
}

/// Node coordinates in Euclidean space, one row per node.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    coordinates: DMatrix<f64>,
    labels: Vec<String>,
}

impl Embedding {
    pub fn new(coordinates: DMatrix<f64>, labels: Vec<String>) -> Result<Self> {
        if coordinates.nrows() < 2 {
            return Err(Error::TooFewNodes(coordinates.nrows()));
        }
        if coordinates.ncols() == 0 {
            return Err(Error::InvalidArgument(
                "embedding dimension must be >= 1".into(),
            ));
        }
        if labels.len() != coordinates.nrows() {
            return Err(Error::LengthMismatch {
                expected: coordinates.nrows(),
                found: labels.len(),
            });
        }
        if coordinates.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("embedding coordinate".into()));
        }
        Ok(Self {
            coordinates,
            labels,
        })
    }

    /// Embedding with nodes labelled `0..n`.
    pub fn from_rows(coordinates: DMatrix<f64>) -> Result<Self> {
        let labels = (0..coordinates.nrows()).map(|i| i.to_string()).collect();
        Self::new(coordinates, labels)
    }

    pub fn coordinates(&self) -> &DMatrix<f64> {
        &self.coordinates
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_count(&self) -> usize {
        self.coordinates.nrows()
    }

    pub fn dimension(&self) -> usize {
        self.coordinates.ncols()
    }

    /// Reorder rows to follow `order`, which must be a permutation of this
    /// embedding's labels.
    pub fn reordered(&self, order: &[String]) -> Result<Self> {
        if order.len() != self.node_count() {
            return Err(Error::LengthMismatch {
                expected: order.len(),
                found: self.node_count(),
            });
        }
        let mut rows = Vec::with_capacity(order.len());
        for label in order {
            let pos = self
                .labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::UnknownNode(label.clone()))?;
            rows.push(pos);
        }
        let coords = DMatrix::from_fn(order.len(), self.dimension(), |i, c| {
            self.coordinates[(rows[i], c)]
        });
        Self::new(coords, order.to_vec())
    }
}

/// Pairwise straight-line distances between embedded nodes.
///
/// Coincident rows give zero off-diagonal entries; those are kept and can
/// be listed with [`DistanceMatrix::coincident_pairs`].
pub fn embedding_distances(e: &Embedding) -> DistanceMatrix {
    let n = e.node_count();
    let x = e.coordinates();
    let mut values = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let d = (x.row(i) - x.row(j)).norm();
            values[(i, j)] = d;
            values[(j, i)] = d;
        }
    }
    DistanceMatrix::from_parts(values, DistanceKind::Embedding, e.labels().to_vec())
}

/// Nonzero Laplacian eigenpairs of a connected graph, eigenvalues ascending.
///
/// Eigenvalues at or below `1e-9 * lambda_max` count as zero; a connected
/// graph must have exactly one.
fn laplacian_spectrum(g: &Graph) -> Result<(Vec<f64>, DMatrix<f64>)> {
    g.require_connected()?;
    let eig = eig_sym(&g.laplacian())?;
    let lambda_max = eig.values.last().copied().unwrap_or_default().max(0.0);
    let cutoff = 1e-9 * lambda_max;
    let zeros = eig.values.iter().filter(|&&l| l <= cutoff).count();
    if zeros != 1 {
        return Err(Error::Internal(format!(
            "connected graph Laplacian has {zeros} eigenvalues below {cutoff:e}, expected 1"
        )));
    }
    let values = eig.values[1..].to_vec();
    let vectors = eig.vectors.columns(1, values.len()).into_owned();
    Ok((values, vectors))
}

/// Moore-Penrose pseudoinverse of the Laplacian of a connected graph.
pub fn laplacian_pseudoinverse(g: &Graph) -> Result<DMatrix<f64>> {
    let (values, vectors) = laplacian_spectrum(g)?;
    let n = g.node_count();
    let mut pinv = DMatrix::zeros(n, n);
    for (k, &lambda) in values.iter().enumerate() {
        let v = vectors.column(k);
        pinv += (v * v.transpose()) / lambda;
    }
    Ok(pinv)
}

/// Effective resistance between every node pair, each edge a 1 Ohm resistor:
/// `R_ij = L+_ii + L+_jj - 2 L+_ij`.
pub fn effective_resistance(g: &Graph) -> Result<DistanceMatrix> {
    let pinv = laplacian_pseudoinverse(g)?;
    let n = g.node_count();
    let mut values = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let r = pinv[(i, i)] + pinv[(j, j)] - 2.0 * pinv[(i, j)];
            values[(i, j)] = r;
            values[(j, i)] = r;
        }
    }
    Ok(DistanceMatrix::from_parts(
        values,
        DistanceKind::Resistance,
        g.labels().to_vec(),
    ))
}

/// Euclidean placement whose squared pairwise distances equal the effective
/// resistances: each nonzero-eigenvalue Laplacian eigenvector scaled by
/// `1/sqrt(lambda)`. Dimension is `n - 1`.
pub fn commute_time_embedding(g: &Graph) -> Result<Embedding> {
    let (values, vectors) = laplacian_spectrum(g)?;
    let coords = DMatrix::from_fn(g.node_count(), values.len(), |i, k| {
        vectors[(i, k)] / values[k].sqrt()
    });
    Embedding::new(coords, g.labels().to_vec())
}

pub(crate) fn check_square(m: &DMatrix<f64>) -> Result<usize> {
    if m.nrows() != m.ncols() || m.nrows() < 2 {
        return Err(Error::BadShape {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}
