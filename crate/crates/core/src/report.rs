//! Plain-text reports: `key = value` lines grouped in `[sections]`, with
//! CSV blocks for vectors. Floats use 17 significant digits so a report is
//! byte-stable for a fixed input.

use std::fmt::{self, Display, Write as _};

use crate::correlation::{CorrelationResult, OverrideResult};
use crate::spectral::SpectralVerdict;

/// `x` in scientific notation with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    text: String,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn section(&mut self, name: &str) -> &mut Self {
        if !self.text.is_empty() && !self.text.ends_with("\n\n") {
            self.text.push('\n');
        }
        let _ = writeln!(self.text, "[{name}]");
        self
    }

    pub fn field(&mut self, key: &str, value: impl Display) -> &mut Self {
        let _ = writeln!(self.text, "{key} = {value}");
        self
    }

    pub fn float(&mut self, key: &str, value: f64) -> &mut Self {
        self.field(key, fmt_float(value))
    }

    /// A CSV block introduced by `name:` and terminated by a blank line.
    pub fn csv<I, R>(&mut self, name: &str, header: &[&str], rows: I) -> &mut Self
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = String>,
    {
        let _ = writeln!(self.text, "{name}:");
        let _ = writeln!(self.text, "{}", header.join(","));
        for row in rows {
            let _ = writeln!(
                self.text,
                "{}",
                row.into_iter().collect::<Vec<_>>().join(",")
            );
        }
        self.text.push('\n');
        self
    }

    /// Full spectral evidence for a certificate.
    pub fn verdict(&mut self, v: &SpectralVerdict) -> &mut Self {
        self.field("certificate", v.certificate.as_str())
            .field("provenance", &v.provenance)
            .field("verdict", v.verdict)
            .field("n", v.len())
            .float("relative_tolerance", v.rel_tolerance)
            .float("tolerance", v.tolerance)
            .field("zero_index", v.zero_index)
            .float("forced_zero", v.eigenvalues[v.zero_index])
            .float("min_nonforced", v.min_nonforced)
            .csv(
                "eigenvalues",
                &["index", "value"],
                v.eigenvalues
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| [i.to_string(), fmt_float(x)]),
            )
    }

    pub fn correlation(&mut self, r: &CorrelationResult) -> &mut Self {
        self.float("rho", r.rho)
            .float("numerator", r.numerator)
            .float("variance_x", r.variance_x)
            .float("variance_y", r.variance_y)
            .float("sigma_x", r.sigma_x)
            .float("sigma_y", r.sigma_y)
            .field("certified", r.verdict.verdict)
    }

    pub fn override_correlation(&mut self, r: &OverrideResult) -> &mut Self {
        self.field("rho", r.value)
            .field("real", r.value.is_real())
            .float("numerator", r.numerator)
            .float("variance_x", r.variance_x)
            .float("variance_y", r.variance_y)
            .field("certified", if r.certified { "valid" } else { "invalid" });
        if r.variance_x < 0.0 || r.variance_y < 0.0 {
            self.field("warning", "negative variance: imaginary standard deviation");
        }
        self
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}
