//! Spectral certificates for weight and distance matrices.
//!
//! A symmetric `W` gives a real, finite correlation in `[-1, 1]` for all
//! non-constant signals iff `v^T W v > 0` for every nonzero `v` orthogonal
//! to the all-ones vector. With `J = I - 11^T/n`, that is the same as the
//! double-centered matrix `JWJ` having `n-1` strictly positive eigenvalues
//! besides the zero it always has on `1`.
//!
//! A distance matrix `D` is of negative type iff `-JDJ` is positive
//! semidefinite; then `exp(-k D)` certifies for every `k > 0`.

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::metrics::DistanceMatrix;
use crate::weights::WeightMatrix;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors
/// as columns.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

/// Largest entry of `|m - m^T|`.
pub fn max_asymmetry(m: &DMatrix<f64>) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    (m - m.transpose()).amax()
}

/// Rejects non-square matrices and asymmetry above `1e-10 * max|m_ij|`.
pub fn check_symmetric(m: &DMatrix<f64>) -> Result<()> {
    if !m.is_square() {
        return Err(Error::BadShape {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let asym = max_asymmetry(m);
    if asym > 1e-10 * m.amax() {
        return Err(Error::NotSymmetric {
            max_asymmetry: asym,
        });
    }
    Ok(())
}

/// Full symmetric eigendecomposition, eigenvalues ascending.
pub fn eig_sym(m: &DMatrix<f64>) -> Result<SymmetricEigen> {
    check_symmetric(m)?;
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("matrix entry".into()));
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    Ok(SymmetricEigen { values, vectors })
}

/// `J m J` with `J = I - 11^T/n`, evaluated entrywise as
/// `m_ij - rowmean_i - colmean_j + mean`.
pub fn double_center(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_symmetric(m)?;
    let n = m.nrows();
    if n < 2 {
        return Err(Error::BadShape { rows: n, cols: n });
    }
    let nf = n as f64;
    let row_means: Vec<f64> = (0..n).map(|i| m.row(i).sum() / nf).collect();
    let col_means: Vec<f64> = (0..n).map(|j| m.column(j).sum() / nf).collect();
    let grand = m.sum() / (nf * nf);
    let c = DMatrix::from_fn(n, n, |i, j| m[(i, j)] - row_means[i] - col_means[j] + grand);
    Ok((&c + c.transpose()) * 0.5)
}

/// Which property a verdict certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// `W` positive definite on the complement of the constant vector.
    PositiveDefinite,
    /// `D` negative semidefinite on the complement of the constant vector.
    NegativeType,
}

impl Certificate {
    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::PositiveDefinite => "positive-definite-on-complement-of-ones",
            Certificate::NegativeType => "negative-type",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid,
}

impl Verdict {
    pub fn is_valid(self) -> bool {
        self == Verdict::Valid
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Valid => "valid",
            Verdict::Invalid => "invalid",
        })
    }
}

/// Eigenvalue evidence for a certificate.
///
/// `eigenvalues` are those of `JWJ` (or `-JDJ` for [`Certificate::NegativeType`]),
/// ascending. The one at `zero_index` is the zero forced by centering; the
/// verdict only looks at the others.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralVerdict {
    pub certificate: Certificate,
    pub eigenvalues: Vec<f64>,
    pub zero_index: usize,
    pub min_nonforced: f64,
    /// Unit eigenvector for `min_nonforced`. When the verdict is invalid this
    /// is a signal whose network variance is negative (or zero).
    pub min_eigenvector: Vec<f64>,
    pub verdict: Verdict,
    pub rel_tolerance: f64,
    /// Absolute zero threshold, `rel_tolerance * max(1, max |eigenvalue|)`.
    pub tolerance: f64,
    pub provenance: String,
}

impl SpectralVerdict {
    pub fn is_valid(&self) -> bool {
        self.verdict.is_valid()
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

fn certify(
    centered: &DMatrix<f64>,
    certificate: Certificate,
    rel_tol: f64,
    provenance: String,
) -> Result<SpectralVerdict> {
    if !(rel_tol.is_finite() && rel_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be finite and > 0, got {rel_tol}"
        )));
    }
    let eig = eig_sym(centered)?;
    let n = eig.values.len();
    let scale = eig.values.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let tolerance = rel_tol * scale;

    let zero_index = (0..n)
        .min_by(|&a, &b| eig.values[a].abs().total_cmp(&eig.values[b].abs()))
        .unwrap_or_default();
    let zero = eig.values[zero_index];
    if zero.abs() > tolerance {
        return Err(Error::Internal(format!(
            "centered matrix has no zero eigenvalue (smallest |lambda| = {zero:e} > {tolerance:e})"
        )));
    }

    // The forced zero must belong to the constant vector whenever it is not
    // degenerate with a neighbouring eigenvalue.
    let gap = eig
        .values
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != zero_index)
        .map(|(_, v)| (v - zero).abs())
        .fold(f64::INFINITY, f64::min);
    if gap > 1e-6 * scale {
        let ones = DVector::from_element(n, 1.0 / (n as f64).sqrt());
        let overlap = eig.vectors.column(zero_index).dot(&ones).abs();
        if overlap < 0.99 {
            return Err(Error::Internal(format!(
                "zero eigenvector overlaps the constant vector by only {overlap:.4}"
            )));
        }
    }

    let (min_index, min_nonforced) = eig
        .values
        .iter()
        .copied()
        .enumerate()
        .filter(|&(i, _)| i != zero_index)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((zero_index, zero));
    let valid = match certificate {
        Certificate::PositiveDefinite => min_nonforced > tolerance,
        Certificate::NegativeType => min_nonforced >= -tolerance,
    };
    Ok(SpectralVerdict {
        certificate,
        min_eigenvector: eig.vectors.column(min_index).iter().copied().collect(),
        eigenvalues: eig.values,
        zero_index,
        min_nonforced,
        verdict: if valid {
            Verdict::Valid
        } else {
            Verdict::Invalid
        },
        rel_tolerance: rel_tol,
        tolerance,
        provenance,
    })
}

/// Is `w` positive definite on the complement of the constant vector?
/// `rel_tol` scales by `max(1, max |eigenvalue|)`.
pub fn certify_weight(w: &WeightMatrix, rel_tol: f64) -> Result<SpectralVerdict> {
    let provenance = match w.k() {
        Some(k) => format!("W={}, k={}", w.source(), k),
        None => format!("W={}", w.source()),
    };
    certify(
        &double_center(w.values())?,
        Certificate::PositiveDefinite,
        rel_tol,
        provenance,
    )
}

/// Is `d` of negative type, i.e. `-JDJ` positive semidefinite?
pub fn certify_negative_type(d: &DistanceMatrix, rel_tol: f64) -> Result<SpectralVerdict> {
    let centered = -double_center(d.values())?;
    certify(
        &centered,
        Certificate::NegativeType,
        rel_tol,
        format!("D={}", d.kind()),
    )
}

/// Certificate for a raw symmetric matrix treated as a weight matrix.
pub fn certify_matrix(m: &DMatrix<f64>, rel_tol: f64, provenance: &str) -> Result<SpectralVerdict> {
    certify(
        &double_center(m)?,
        Certificate::PositiveDefinite,
        rel_tol,
        provenance.to_owned(),
    )
}
