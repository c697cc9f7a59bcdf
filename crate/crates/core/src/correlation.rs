//! Classical and network Pearson correlation.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{Certificate, SpectralVerdict};
use crate::weights::WeightMatrix;

/// One real value per node.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    values: Vec<f64>,
}

impl Signal {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("signal entry {i}")));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }
}

/// `x - mean(x)`.
pub fn center_signal(x: &Signal) -> Signal {
    if x.is_empty() {
        return x.clone();
    }
    let mean = x.mean();
    Signal {
        values: x.values.iter().map(|v| v - mean).collect(),
    }
}

/// Classical Pearson correlation.
pub fn pearson(x: &Signal, y: &Signal) -> Result<f64> {
    check_len(x.len(), y.len())?;
    if x.len() < 2 {
        return Err(Error::TooFewNodes(x.len()));
    }
    if x.is_constant() || y.is_constant() {
        return Err(Error::ZeroVariance);
    }
    let (xc, yc) = (center_signal(x), center_signal(y));
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(p, q)| p * q).sum::<f64>();
    let cov = dot(&xc.values, &yc.values);
    let sx = dot(&xc.values, &xc.values).sqrt();
    let sy = dot(&yc.values, &yc.values).sqrt();
    Ok(cov / (sx * sy))
}

/// `sum_ij W_ij x̂_i ŷ_j` for centered `x̂`, `ŷ`, evaluated as
/// `(x̂·Wŷ + ŷ·Wx̂) / 2` so swapping `x` and `y` gives a bit-identical result.
pub fn weighted_covariance(x: &Signal, y: &Signal, w: &DMatrix<f64>) -> Result<f64> {
    check_len(w.nrows(), x.len())?;
    check_len(w.nrows(), y.len())?;
    let xc = DVector::from_vec(center_signal(x).values);
    let yc = DVector::from_vec(center_signal(y).values);
    let wx = w * &xc;
    let wy = w * &yc;
    let mut acc = 0.0;
    for i in 0..xc.len() {
        acc += xc[i] * wy[i] + yc[i] * wx[i];
    }
    Ok(0.5 * acc)
}

/// Network variance `sum_ij W_ij x̂_i x̂_j`; the caller takes the square root.
///
/// A negative value is an error: an internal one if `verdict` certifies `w`,
/// [`Error::NegativeVariance`] otherwise.
pub fn network_variance(x: &Signal, w: &WeightMatrix, verdict: &SpectralVerdict) -> Result<f64> {
    let v = weighted_covariance(x, x, w.values())?;
    if v < 0.0 {
        if verdict.is_valid() {
            return Err(Error::Internal(format!(
                "negative network variance {v:e} under a valid certificate"
            )));
        }
        return Err(Error::NegativeVariance(v));
    }
    Ok(v)
}

/// Network correlation with the quantities that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationResult {
    pub rho: f64,
    /// `sum_ij W_ij x̂_i ŷ_j`.
    pub numerator: f64,
    pub variance_x: f64,
    pub variance_y: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub verdict: SpectralVerdict,
}

fn check_verdict(w: &WeightMatrix, verdict: &SpectralVerdict) -> Result<()> {
    if verdict.certificate != Certificate::PositiveDefinite || verdict.len() != w.len() {
        return Err(Error::InvalidArgument(
            "verdict does not certify a weight matrix of this size".into(),
        ));
    }
    Ok(())
}

/// Network Pearson correlation of `x` and `y` under `w`.
///
/// Refuses to run unless `verdict` certifies `w` positive definite on the
/// complement of the constant vector; under that certificate the result is
/// real and in `[-1, 1]`.
pub fn network_pearson(
    x: &Signal,
    y: &Signal,
    w: &WeightMatrix,
    verdict: &SpectralVerdict,
) -> Result<CorrelationResult> {
    check_verdict(w, verdict)?;
    check_len(w.len(), x.len())?;
    check_len(w.len(), y.len())?;
    if !verdict.is_valid() {
        return Err(Error::Uncertified {
            min_nonforced: verdict.min_nonforced,
        });
    }
    if x.is_constant() || y.is_constant() {
        return Err(Error::ZeroVariance);
    }
    let variance_x = network_variance(x, w, verdict)?;
    let variance_y = network_variance(y, w, verdict)?;
    if variance_x == 0.0 || variance_y == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let numerator = weighted_covariance(x, y, w.values())?;
    let (sigma_x, sigma_y) = (variance_x.sqrt(), variance_y.sqrt());
    Ok(CorrelationResult {
        rho: numerator / (sigma_x * sigma_y),
        numerator,
        variance_x,
        variance_y,
        sigma_x,
        sigma_y,
        verdict: verdict.clone(),
    })
}

/// Value of the correlation formula when evaluated without a certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CorrelationValue {
    Real(f64),
    /// At least one network variance is negative, so a standard deviation
    /// is imaginary.
    Imaginary(Complex64),
    /// A network variance is zero.
    DivisionByZero,
}

impl CorrelationValue {
    pub fn is_real(&self) -> bool {
        matches!(self, CorrelationValue::Real(_))
    }
}

impl fmt::Display for CorrelationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorrelationValue::Real(r) => write!(f, "{r:.16e}"),
            CorrelationValue::Imaginary(c) => {
                write!(f, "imaginary correlation ({:.16e} {:+.16e}i)", c.re, c.im)
            }
            CorrelationValue::DivisionByZero => {
                f.write_str("infinite correlation (division by zero)")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OverrideResult {
    pub value: CorrelationValue,
    pub numerator: f64,
    pub variance_x: f64,
    pub variance_y: f64,
    pub certified: bool,
}

/// Evaluate the correlation formula even when `w` is not certified, with
/// principal complex square roots for negative variances.
///
/// Only meant to exhibit the failure modes of an invalid weight matrix.
pub fn network_pearson_override(
    x: &Signal,
    y: &Signal,
    w: &WeightMatrix,
    verdict: &SpectralVerdict,
) -> Result<OverrideResult> {
    check_verdict(w, verdict)?;
    let variance_x = weighted_covariance(x, x, w.values())?;
    let variance_y = weighted_covariance(y, y, w.values())?;
    let numerator = weighted_covariance(x, y, w.values())?;
    let value = if variance_x == 0.0 || variance_y == 0.0 || x.is_constant() || y.is_constant() {
        CorrelationValue::DivisionByZero
    } else if variance_x < 0.0 || variance_y < 0.0 {
        let sx = Complex64::new(variance_x, 0.0).sqrt();
        let sy = Complex64::new(variance_y, 0.0).sqrt();
        CorrelationValue::Imaginary(Complex64::new(numerator, 0.0) / (sx * sy))
    } else {
        CorrelationValue::Real(numerator / (variance_x.sqrt() * variance_y.sqrt()))
    };
    Ok(OverrideResult {
        value,
        numerator,
        variance_x,
        variance_y,
        certified: verdict.is_valid(),
    })
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::LengthMismatch { expected, found });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::metrics::effective_resistance;
    use crate::spectral::certify_weight;
    use crate::weights::{exp_weight, identity_weight};
    use crate::DEFAULT_REL_TOL;
    use approx::assert_abs_diff_eq;

    fn sig(v: &[f64]) -> Signal {
        Signal::new(v.to_vec()).unwrap()
    }

    /// sum_i sum_j W_ij a_i b_j over centered copies, plain double loop.
    fn naive_form(w: &DMatrix<f64>, a: &[f64], b: &[f64]) -> f64 {
        let n = a.len() as f64;
        let ma = a.iter().sum::<f64>() / n;
        let mb = b.iter().sum::<f64>() / n;
        let mut s = 0.0;
        for i in 0..a.len() {
            for j in 0..b.len() {
                s += w[(i, j)] * (a[i] - ma) * (b[j] - mb);
            }
        }
        s
    }

    #[test]
    fn centering_examples() {
        assert_eq!(center_signal(&sig(&[1., 2., 3.])).values(), [-1., 0., 1.]);
        assert_eq!(center_signal(&sig(&[5., 5., 5.])).values(), [0., 0., 0.]);
        assert_eq!(center_signal(&sig(&[2., -2.])).values(), [2., -2.]);
    }

    #[test]
    fn rejects_non_finite_signal() {
        assert!(Signal::new(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn pearson_examples() {
        let x = sig(&[1., 2., 3., 4.]);
        assert_abs_diff_eq!(pearson(&x, &x).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            pearson(&x, &sig(&[-1., -2., -3., -4.])).unwrap(),
            -1.0,
            epsilon = 1e-15
        );
        // n*Sxy - Sx*Sy = 4*34 - 10*11 = 26; n*Sxx - Sx^2 = 20; n*Syy - Sy^2 = 4*39 - 121 = 35
        let expected = 26.0 / (20.0f64 * 35.0).sqrt();
        assert_abs_diff_eq!(
            pearson(&x, &sig(&[1., 2., 3., 5.])).unwrap(),
            expected,
            epsilon = 1e-15
        );
        assert!(matches!(
            pearson(&x, &sig(&[2., 2., 2., 2.])),
            Err(Error::ZeroVariance)
        ));
        assert!(matches!(
            pearson(&x, &sig(&[1., 2.])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn identity_variance_is_sum_of_squares() {
        let w = identity_weight(4).unwrap();
        let v = certify_weight(&w, DEFAULT_REL_TOL).unwrap();
        let x = sig(&[1., 2., 3., 6.]);
        assert_abs_diff_eq!(network_variance(&x, &w, &v).unwrap(), 14.0, epsilon = 1e-12);
        assert_eq!(
            network_variance(&sig(&[3., 3., 3., 3.]), &w, &v).unwrap(),
            0.0
        );
    }

    fn k23_quarter() -> (WeightMatrix, SpectralVerdict) {
        let p = Graph::complete_bipartite(2, 3)
            .unwrap()
            .shortest_paths()
            .unwrap();
        let w = exp_weight(&p, 0.25).unwrap();
        let v = certify_weight(&w, DEFAULT_REL_TOL).unwrap();
        (w, v)
    }

    #[test]
    fn negative_variance_on_invalid_weight() {
        let (w, v) = k23_quarter();
        let x = Signal::new(v.min_eigenvector.clone()).unwrap();
        let q = weighted_covariance(&x, &x, w.values()).unwrap();
        let closed_form = 1.0 + 1.4 * (-0.5f64).exp() - 2.4 * (-0.25f64).exp();
        assert_abs_diff_eq!(q, closed_form, epsilon = 1e-12);
        assert!(q < 0.0);
        assert!(matches!(
            network_variance(&x, &w, &v),
            Err(Error::NegativeVariance(_))
        ));
    }

    #[test]
    fn gate_refuses_invalid_weight() {
        let (w, v) = k23_quarter();
        let x = sig(&[1., 0., 0., 0., 0.]);
        let y = sig(&[0., 1., 0., 0., 0.]);
        assert!(matches!(
            network_pearson(&x, &y, &w, &v),
            Err(Error::Uncertified { .. })
        ));
    }

    #[test]
    fn override_labels_imaginary() {
        let (w, v) = k23_quarter();
        let x = Signal::new(v.min_eigenvector.clone()).unwrap();
        let y = sig(&[1., 0., 0., 0., 0.]);
        let r = network_pearson_override(&x, &y, &w, &v).unwrap();
        assert!(!r.certified);
        assert!(matches!(r.value, CorrelationValue::Imaginary(_)));
        assert!(r.value.to_string().starts_with("imaginary correlation"));

        let c = sig(&[2., 2., 2., 2., 2.]);
        let r = network_pearson_override(&c, &y, &w, &v).unwrap();
        assert_eq!(r.value, CorrelationValue::DivisionByZero);
    }

    #[test]
    fn identity_matches_classical() {
        let w = identity_weight(5).unwrap();
        let v = certify_weight(&w, DEFAULT_REL_TOL).unwrap();
        let x = sig(&[0.3, -1.2, 4.0, 2.2, 0.0]);
        let y = sig(&[1.0, 0.5, -0.7, 3.3, 2.0]);
        let r = network_pearson(&x, &y, &w, &v).unwrap();
        assert_abs_diff_eq!(r.rho, pearson(&x, &y).unwrap(), epsilon = 1e-12);
        let r = network_pearson(&x, &x, &w, &v).unwrap();
        assert_abs_diff_eq!(r.rho, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn k23_resistance_matches_double_sum() {
        let r = effective_resistance(&Graph::complete_bipartite(2, 3).unwrap()).unwrap();
        let w = exp_weight(&r, 1.0).unwrap();
        let v = certify_weight(&w, DEFAULT_REL_TOL).unwrap();
        let (xa, ya) = ([1., 1., 0., 0., 0.], [0., 0., 1., 1., 1.]);
        let res = network_pearson(&sig(&xa), &sig(&ya), &w, &v).unwrap();
        let num = naive_form(w.values(), &xa, &ya);
        let expected = num
            / (naive_form(w.values(), &xa, &xa).sqrt() * naive_form(w.values(), &ya, &ya).sqrt());
        assert_abs_diff_eq!(res.rho, expected, epsilon = 1e-12);
        assert!(res.rho.abs() <= 1.0);
        assert_abs_diff_eq!(
            res.rho * res.sigma_x * res.sigma_y,
            res.numerator,
            epsilon = 1e-12
        );
    }

    #[test]
    fn constant_signal_is_division_by_zero() {
        let w = identity_weight(3).unwrap();
        let v = certify_weight(&w, DEFAULT_REL_TOL).unwrap();
        assert!(matches!(
            network_pearson(&sig(&[1., 1., 1.]), &sig(&[1., 2., 3.]), &w, &v),
            Err(Error::ZeroVariance)
        ));
    }

    #[test]
    fn verdict_must_match_weight() {
        let w = identity_weight(3).unwrap();
        let v = certify_weight(&identity_weight(4).unwrap(), DEFAULT_REL_TOL).unwrap();
        assert!(matches!(
            network_pearson(&sig(&[1., 2., 3.]), &sig(&[3., 1., 2.]), &w, &v),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn small_graphs_match_naive_double_loop() {
        // every graph on up to 5 nodes by edge-subset enumeration, a sample of the 6-node ones
        for n in 2..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            let total = 1u32 << pairs.len();
            let step = if n == 6 { 97 } else { 1 };
            for mask in (0..total).step_by(step) {
                let edges = pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask & (1 << b) != 0)
                    .map(|(_, &e)| e);
                let g = Graph::from_indexed_edges(n, edges).unwrap();
                let Ok(r) = effective_resistance(&g) else {
                    continue;
                };
                let w = exp_weight(&r, 0.7).unwrap();
                let x: Vec<f64> = (0..n)
                    .map(|i| ((i * 7 + mask as usize) % 5) as f64 - 1.3)
                    .collect();
                let y: Vec<f64> = (0..n).map(|i| ((i * i + 3) % 4) as f64 * 0.5).collect();
                let fast = weighted_covariance(&sig(&x), &sig(&y), w.values()).unwrap();
                assert!((fast - naive_form(w.values(), &x, &y)).abs() <= 1e-12);
            }
        }
    }
}
