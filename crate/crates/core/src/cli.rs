//! `netcorr` command-line front end.
//!
//! Exit codes: 0 success (weight matrix valid), 2 weight matrix certified
//! invalid, 1 usage or data error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::correlation::{network_pearson, network_pearson_override};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io;
use crate::metrics::{
    commute_time_embedding, effective_resistance, embedding_distances, DistanceMatrix,
};
use crate::report::{fmt_float, Report};
use crate::scan::{find_counterexamples, GraphFamily, ScanConfig};
use crate::spectral::{certify_negative_type, certify_weight};
use crate::weights::{exp_weight, identity_weight_labelled, WeightMatrix};
use crate::DEFAULT_REL_TOL;

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "netcorr",
    version,
    about = "Certified network Pearson correlation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify the weight matrix (and the distance's negative type)
    Validate(WeightArgs),
    /// Network Pearson correlation of two node signals
    Corr(CorrArgs),
    /// Effective resistance matrix as CSV
    Resistance(GraphArgs),
    /// Commute-time embedding as CSV
    Embed(GraphArgs),
    /// Search random graphs for invalid shortest-path kernels
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    ShortestPath,
    Resistance,
    Embedding,
    /// W = I (classical Pearson)
    Identity,
    /// W read from --weights
    External,
}

impl Metric {
    fn name(self) -> &'static str {
        match self {
            Metric::ShortestPath => "shortest-path",
            Metric::Resistance => "resistance",
            Metric::Embedding => "embedding",
            Metric::Identity => "identity",
            Metric::External => "external",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    /// Edge-list file
    #[arg(long)]
    pub graph: PathBuf,
    /// Write output here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct WeightArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum, default_value = "resistance")]
    pub metric: Metric,
    /// Scale of the kernel exp(-k D)
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    /// Relative zero threshold for eigenvalues
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    pub tol: f64,
    /// Embedding CSV (node,c1,...,cd) for --metric embedding
    #[arg(long, conflicts_with = "commute_time")]
    pub embedding: Option<PathBuf>,
    /// Use the built-in commute-time embedding for --metric embedding
    #[arg(long)]
    pub commute_time: bool,
    /// Weight matrix CSV for --metric external
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CorrArgs {
    #[command(flatten)]
    pub weight: WeightArgs,
    /// Signal CSV (node,value)
    #[arg(long)]
    pub x: PathBuf,
    #[arg(long)]
    pub y: PathBuf,
    /// Evaluate even with an uncertified weight matrix and label non-real results
    #[arg(long)]
    pub unsafe_override: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Gnp,
    Complete,
    Path,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = 5)]
    pub n_min: usize,
    #[arg(long, default_value_t = 30)]
    pub n_max: usize,
    #[arg(long, default_value_t = 0.1)]
    pub p_min: f64,
    #[arg(long, default_value_t = 0.5)]
    pub p_max: f64,
    #[arg(long, value_enum, default_value = "gnp")]
    pub family: Family,
    /// Also certify the complete bipartite graph K(2,3)
    #[arg(long)]
    pub include_k23: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Output of a successful invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub text: String,
    pub output: Option<PathBuf>,
    /// Extra message for stderr.
    pub message: Option<String>,
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Validate(args) => validate(&args),
        Command::Corr(args) => corr(&args),
        Command::Resistance(args) => resistance(&args),
        Command::Embed(args) => embed(&args),
        Command::Scan(args) => scan(&args),
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    let g = Graph::parse_edge_list(&io::read_text(path)?)?;
    Ok(g)
}

fn describe_components(g: &Graph) -> String {
    g.components()
        .iter()
        .map(|c| {
            let names: Vec<&str> = c.iter().map(|&i| g.labels()[i].as_str()).collect();
            format!("{{{}}}", names.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Distance-dependent steps fail on disconnected graphs; list the components.
fn with_components<T>(g: &Graph, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Disconnected { components } => Error::InvalidArgument(format!(
            "graph is disconnected ({components} components: {}); distances are infinite between components",
            describe_components(g)
        )),
        other => other,
    })
}

fn graph_section(r: &mut Report, g: &Graph) {
    r.section("graph")
        .field("nodes", g.node_count())
        .field("edges", g.edge_count())
        .field("connected", g.is_connected())
        .field("components", g.components().len());
}

fn config_section(r: &mut Report, command: &str, a: &WeightArgs) {
    r.section("config")
        .field("command", command)
        .field("graph", a.graph.graph.display())
        .field("metric", a.metric.name())
        .float("k", a.k)
        .float("relative_tolerance", a.tol);
    if let Some(e) = &a.embedding {
        r.field("embedding", e.display());
    }
    if a.commute_time {
        r.field("embedding", "commute-time");
    }
    if let Some(w) = &a.weights {
        r.field("weights", w.display());
    }
}

fn distance_for(g: &Graph, a: &WeightArgs) -> Result<Option<DistanceMatrix>> {
    let d = match a.metric {
        Metric::ShortestPath => g.shortest_paths()?,
        Metric::Resistance => effective_resistance(g)?,
        Metric::Embedding => {
            let e = match (&a.embedding, a.commute_time) {
                (Some(path), _) => {
                    io::read_embedding_csv(&io::read_text(path)?)?.reordered(g.labels())?
                }
                (None, true) => commute_time_embedding(g)?,
                (None, false) => {
                    return Err(Error::InvalidArgument(
                        "--metric embedding needs --embedding <csv> or --commute-time".into(),
                    ))
                }
            };
            embedding_distances(&e)
        }
        Metric::Identity | Metric::External => return Ok(None),
    };
    Ok(Some(d))
}

fn weight_for(g: &Graph, a: &WeightArgs, d: Option<&DistanceMatrix>) -> Result<WeightMatrix> {
    match (a.metric, d) {
        (Metric::Identity, _) => identity_weight_labelled(g.labels().to_vec()),
        (Metric::External, _) => {
            let path = a.weights.as_ref().ok_or_else(|| {
                Error::InvalidArgument("--metric external needs --weights <csv>".into())
            })?;
            let (labels, m) = io::read_matrix_csv(&io::read_text(path)?)?;
            let perm: Vec<usize> = g
                .labels()
                .iter()
                .map(|l| {
                    labels
                        .iter()
                        .position(|x| x == l)
                        .ok_or_else(|| Error::UnknownNode(l.clone()))
                })
                .collect::<Result<_>>()?;
            if labels.len() != g.node_count() {
                return Err(Error::LengthMismatch {
                    expected: g.node_count(),
                    found: labels.len(),
                });
            }
            let m =
                nalgebra::DMatrix::from_fn(perm.len(), perm.len(), |i, j| m[(perm[i], perm[j])]);
            WeightMatrix::external(m, g.labels().to_vec())
        }
        (_, Some(d)) => exp_weight(d, a.k),
        (_, None) => Err(Error::Internal("missing distance matrix".into())),
    }
}

fn validate(a: &WeightArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph.graph)?;
    let mut r = Report::new();
    config_section(&mut r, "validate", a);
    graph_section(&mut r, &g);

    let d = with_components(&g, distance_for(&g, a))?;
    if let Some(d) = &d {
        let nt = certify_negative_type(d, a.tol)?;
        r.section("distance").field("kind", d.kind());
        let coincident = d.coincident_pairs();
        if !coincident.is_empty() {
            r.field("coincident_pairs", coincident.len()).field(
                "warning",
                "zero off-diagonal distances (coincident embedded nodes)",
            );
        }
        r.section("negative_type").verdict(&nt);
    }
    let w = weight_for(&g, a, d.as_ref())?;
    let v = certify_weight(&w, a.tol)?;
    r.section("weight").verdict(&v);
    if !v.is_valid() {
        r.section("witness")
            .field(
                "note",
                "unit signal with network variance equal to min_nonforced",
            )
            .csv(
                "signal",
                &["node", "value"],
                g.labels()
                    .iter()
                    .zip(&v.min_eigenvector)
                    .map(|(l, &x)| [l.clone(), fmt_float(x)]),
            );
    }
    Ok(Outcome {
        code: if v.is_valid() { EXIT_OK } else { EXIT_INVALID },
        text: r.into_string(),
        output: a.graph.output.clone(),
        message: None,
    })
}

fn corr(a: &CorrArgs) -> Result<Outcome> {
    let wa = &a.weight;
    let g = load_graph(&wa.graph.graph)?;
    let x = io::read_signal_csv(&io::read_text(&a.x)?, g.labels())?;
    let y = io::read_signal_csv(&io::read_text(&a.y)?, g.labels())?;

    let mut r = Report::new();
    config_section(&mut r, "corr", wa);
    r.field("x", a.x.display())
        .field("y", a.y.display())
        .field("unsafe_override", a.unsafe_override);
    graph_section(&mut r, &g);

    let d = with_components(&g, distance_for(&g, wa))?;
    let w = weight_for(&g, wa, d.as_ref())?;
    let v = certify_weight(&w, wa.tol)?;
    r.section("weight").verdict(&v);

    if !v.is_valid() && !a.unsafe_override {
        r.section("correlation").field("status", "refused");
        return Ok(Outcome {
            code: EXIT_INVALID,
            text: r.into_string(),
            output: wa.graph.output.clone(),
            message: Some(
                Error::Uncertified {
                    min_nonforced: v.min_nonforced,
                }
                .to_string(),
            ),
        });
    }
    if a.unsafe_override {
        let res = network_pearson_override(&x, &y, &w, &v)?;
        r.section("correlation")
            .field("status", "computed-with-override")
            .override_correlation(&res);
        return Ok(Outcome {
            code: if v.is_valid() { EXIT_OK } else { EXIT_INVALID },
            text: r.into_string(),
            output: wa.graph.output.clone(),
            message: None,
        });
    }
    let res = network_pearson(&x, &y, &w, &v)?;
    r.section("correlation")
        .field("status", "certified")
        .correlation(&res);
    Ok(Outcome {
        code: EXIT_OK,
        text: r.into_string(),
        output: wa.graph.output.clone(),
        message: None,
    })
}

fn resistance(a: &GraphArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph)?;
    let d = with_components(&g, effective_resistance(&g))?;
    let text = format!(
        "# netcorr resistance graph={}\n{}",
        a.graph.display(),
        io::write_matrix_csv(d.labels(), d.values())
    );
    Ok(Outcome {
        code: EXIT_OK,
        text,
        output: a.output.clone(),
        message: None,
    })
}

fn embed(a: &GraphArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph)?;
    let e = with_components(&g, commute_time_embedding(&g))?;
    let text = format!(
        "# netcorr embed commute-time graph={}\n{}",
        a.graph.display(),
        io::write_embedding_csv(&e)
    );
    Ok(Outcome {
        code: EXIT_OK,
        text,
        output: a.output.clone(),
        message: None,
    })
}

fn scan(a: &ScanArgs) -> Result<Outcome> {
    let config = ScanConfig {
        n_min: a.n_min,
        n_max: a.n_max,
        p_min: a.p_min,
        p_max: a.p_max,
        k: a.k,
        trials: a.trials,
        seed: a.seed,
        family: match a.family {
            Family::Gnp => GraphFamily::ErdosRenyi,
            Family::Complete => GraphFamily::Complete,
            Family::Path => GraphFamily::Path,
        },
        inject_k23: a.include_k23,
        rel_tol: a.tol,
    };
    let report = find_counterexamples(&config)?;
    Ok(Outcome {
        code: EXIT_OK,
        text: report.to_report().into_string(),
        output: a.output.clone(),
        message: None,
    })
}
