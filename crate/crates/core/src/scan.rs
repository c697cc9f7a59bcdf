//! Random-graph search for graphs whose hop-distance kernel `exp(-k P)`
//! fails certification.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! which produces the same stream on every platform. Uniform draws in
//! `[0, 1)` take the top 53 bits of `next_u64`. An Erdős–Rényi graph visits
//! pairs `(i, j)`, `i < j`, in lexicographic order and keeps the edge when
//! its draw is `< p`.

use std::fmt;

use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::report::{fmt_float, Report};
use crate::spectral::certify_weight;
use crate::weights::exp_weight;

fn unit_draw(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Erdős–Rényi `G(n, p)` on nodes `0..n`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "edge probability must be in (0, 1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if unit_draw(&mut rng) < p {
                edges.push((i, j));
            }
        }
    }
    Graph::from_indexed_edges(n, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFamily {
    ErdosRenyi,
    Complete,
    Path,
}

/// Everything needed to rebuild a scanned graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphSpec {
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    Complete { n: usize },
    Path { n: usize },
    CompleteBipartite { a: usize, b: usize },
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            GraphSpec::ErdosRenyi { n, p, seed } => random_graph(n, p, seed),
            GraphSpec::Complete { n } => Graph::complete(n),
            GraphSpec::Path { n } => Graph::path(n),
            GraphSpec::CompleteBipartite { a, b } => Graph::complete_bipartite(a, b),
        }
    }

    pub fn node_count(&self) -> usize {
        match *self {
            GraphSpec::ErdosRenyi { n, .. } | GraphSpec::Complete { n } | GraphSpec::Path { n } => {
                n
            }
            GraphSpec::CompleteBipartite { a, b } => a + b,
        }
    }

    fn seed(&self) -> Option<u64> {
        match *self {
            GraphSpec::ErdosRenyi { seed, .. } => Some(seed),
            _ => None,
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::ErdosRenyi { .. } => f.write_str("gnp"),
            GraphSpec::Complete { .. } => f.write_str("complete"),
            GraphSpec::Path { .. } => f.write_str("path"),
            GraphSpec::CompleteBipartite { a, b } => write!(f, "complete-bipartite-{a}-{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub k: f64,
    pub trials: usize,
    pub seed: u64,
    pub family: GraphFamily,
    /// Also certify the complete bipartite graph on 2 + 3 nodes.
    pub inject_k23: bool,
    pub rel_tol: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            n_min: 5,
            n_max: 30,
            p_min: 0.1,
            p_max: 0.5,
            k: 1.0,
            trials: 100,
            seed: 0,
            family: GraphFamily::ErdosRenyi,
            inject_k23: false,
            rel_tol: crate::DEFAULT_REL_TOL,
        }
    }
}

impl ScanConfig {
    fn validate(&self) -> Result<()> {
        if self.n_min < 2 || self.n_max < self.n_min {
            return Err(Error::InvalidArgument(format!(
                "node range must satisfy 2 <= n_min <= n_max, got {}..={}",
                self.n_min, self.n_max
            )));
        }
        if !(self.p_min > 0.0 && self.p_min <= self.p_max && self.p_max <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "probability range must satisfy 0 < p_min <= p_max <= 1, got {}..={}",
                self.p_min, self.p_max
            )));
        }
        if !(self.k.is_finite() && self.k > 0.0) {
            return Err(Error::InvalidScale(self.k));
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be >= 1".into()));
        }
        Ok(())
    }

    /// Graph specs for every trial, drawn sequentially from the master seed.
    pub fn sample_specs(&self) -> Vec<GraphSpec> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let span = (self.n_max - self.n_min + 1) as u64;
        (0..self.trials)
            .map(|_| {
                let n = self.n_min + (rng.next_u64() % span) as usize;
                let p = self.p_min + unit_draw(&mut rng) * (self.p_max - self.p_min);
                let seed = rng.next_u64();
                match self.family {
                    GraphFamily::ErdosRenyi => GraphSpec::ErdosRenyi { n, p, seed },
                    GraphFamily::Complete => GraphSpec::Complete { n },
                    GraphFamily::Path => GraphSpec::Path { n },
                }
            })
            .collect()
    }
}

/// A graph whose kernel `exp(-k P)` is not positive definite on the
/// complement of the constant vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    /// Trial index, `None` for the injected graph.
    pub trial: Option<usize>,
    pub spec: GraphSpec,
    pub k: f64,
    pub min_nonforced: f64,
}

impl Failure {
    /// Rebuild the graph from its spec and certify again.
    pub fn recertify(&self, rel_tol: f64) -> Result<bool> {
        let g = self.spec.build()?;
        let w = exp_weight(&g.shortest_paths()?, self.k)?;
        Ok(!certify_weight(&w, rel_tol)?.is_valid())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub trials: usize,
    pub connected: usize,
    pub skipped_disconnected: usize,
    /// Sorted by graph seed, then trial; the injected graph first.
    pub failures: Vec<Failure>,
}

impl ScanReport {
    /// Failures among connected sampled graphs, injected graph excluded.
    pub fn failure_rate(&self) -> f64 {
        if self.connected == 0 {
            return 0.0;
        }
        let sampled = self.failures.iter().filter(|f| f.trial.is_some()).count();
        sampled as f64 / self.connected as f64
    }

    pub fn to_report(&self) -> Report {
        let c = &self.config;
        let mut r = Report::new();
        r.section("scan")
            .field("rng", "chacha8")
            .field("seed", c.seed)
            .field("family", format!("{:?}", c.family))
            .field("n_min", c.n_min)
            .field("n_max", c.n_max)
            .float("p_min", c.p_min)
            .float("p_max", c.p_max)
            .float("k", c.k)
            .float("relative_tolerance", c.rel_tol)
            .field("inject_k23", c.inject_k23)
            .field("trials", self.trials)
            .field("connected", self.connected)
            .field("skipped_disconnected", self.skipped_disconnected)
            .field("failures", self.failures.len())
            .float("failure_rate", self.failure_rate())
            .csv(
                "failure_records",
                &[
                    "trial",
                    "graph",
                    "n",
                    "p",
                    "graph_seed",
                    "k",
                    "min_nonforced",
                ],
                self.failures.iter().map(|f| {
                    let (p, seed) = match f.spec {
                        GraphSpec::ErdosRenyi { p, seed, .. } => (fmt_float(p), seed.to_string()),
                        _ => (String::new(), String::new()),
                    };
                    [
                        f.trial
                            .map(|t| t.to_string())
                            .unwrap_or_else(|| "injected".into()),
                        f.spec.to_string(),
                        f.spec.node_count().to_string(),
                        p,
                        seed,
                        fmt_float(f.k),
                        fmt_float(f.min_nonforced),
                    ]
                }),
            );
        r
    }
}

enum Outcome {
    Disconnected,
    Passed,
    Failed(Failure),
}

fn check(trial: Option<usize>, spec: GraphSpec, k: f64, rel_tol: f64) -> Result<Outcome> {
    let g = spec.build()?;
    if !g.is_connected() {
        return Ok(Outcome::Disconnected);
    }
    let w = exp_weight(&g.shortest_paths()?, k)?;
    let v = certify_weight(&w, rel_tol)?;
    Ok(if v.is_valid() {
        Outcome::Passed
    } else {
        Outcome::Failed(Failure {
            trial,
            spec,
            k,
            min_nonforced: v.min_nonforced,
        })
    })
}

/// Certify `exp(-k P)` on `config.trials` sampled graphs. Disconnected
/// samples are counted and skipped. The result does not depend on the
/// number of worker threads.
pub fn find_counterexamples(config: &ScanConfig) -> Result<ScanReport> {
    config.validate()?;
    let outcomes: Vec<Outcome> = config
        .sample_specs()
        .into_par_iter()
        .enumerate()
        .map(|(t, spec)| check(Some(t), spec, config.k, config.rel_tol))
        .collect::<Result<_>>()?;

    let mut report = ScanReport {
        config: config.clone(),
        trials: outcomes.len(),
        connected: 0,
        skipped_disconnected: 0,
        failures: Vec::new(),
    };
    for outcome in outcomes {
        match outcome {
            Outcome::Disconnected => report.skipped_disconnected += 1,
            Outcome::Passed => report.connected += 1,
            Outcome::Failed(f) => {
                report.connected += 1;
                report.failures.push(f);
            }
        }
    }
    report
        .failures
        .sort_by_key(|f| (f.spec.seed().unwrap_or_default(), f.trial));
    if config.inject_k23 {
        let spec = GraphSpec::CompleteBipartite { a: 2, b: 3 };
        if let Outcome::Failed(f) = check(None, spec, config.k, config.rel_tol)? {
            report.failures.insert(0, f);
        }
    }
    Ok(report)
}
