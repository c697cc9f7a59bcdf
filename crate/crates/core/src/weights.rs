//! Weight matrices for the network correlation.

use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::metrics::{check_square, DistanceKind, DistanceMatrix};
use crate::spectral::check_symmetric;

/// Origin of a weight matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSource {
    /// `exp(-k D)` for a distance matrix of this kind.
    Distance(DistanceKind),
    Identity,
    External,
}

impl fmt::Display for WeightSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSource::Distance(kind) => write!(f, "exp(-k*D), D={kind}"),
            WeightSource::Identity => f.write_str("identity"),
            WeightSource::External => f.write_str("external"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    values: DMatrix<f64>,
    k: Option<f64>,
    source: WeightSource,
    labels: Vec<String>,
}

impl WeightMatrix {
    /// Wrap an arbitrary symmetric matrix (symmetric to 1e-10 relative).
    pub fn external(values: DMatrix<f64>, labels: Vec<String>) -> Result<Self> {
        let n = check_square(&values)?;
        if labels.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: labels.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("weight matrix entry".into()));
        }
        check_symmetric(&values)?;
        let values = (&values + values.transpose()) * 0.5;
        Ok(Self {
            values,
            k: None,
            source: WeightSource::External,
            labels,
        })
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    /// Scale used by the exponential kernel, if any.
    pub fn k(&self) -> Option<f64> {
        self.k
    }

    pub fn source(&self) -> WeightSource {
        self.source
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
}

/// Entrywise `W_ij = exp(-k d_ij)`.
pub fn exp_weight(d: &DistanceMatrix, k: f64) -> Result<WeightMatrix> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::InvalidScale(k));
    }
    Ok(WeightMatrix {
        values: d.values().map(|x| (-k * x).exp()),
        k: Some(k),
        source: WeightSource::Distance(d.kind()),
        labels: d.labels().to_vec(),
    })
}

/// `W = I`; the network correlation then equals the classical Pearson.
pub fn identity_weight(n: usize) -> Result<WeightMatrix> {
    identity_weight_labelled((0..n).map(|i| i.to_string()).collect())
}

pub fn identity_weight_labelled(labels: Vec<String>) -> Result<WeightMatrix> {
    let n = labels.len();
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    Ok(WeightMatrix {
        values: DMatrix::identity(n, n),
        k: None,
        source: WeightSource::Identity,
        labels,
    })
}
