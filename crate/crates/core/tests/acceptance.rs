//! Acceptance criteria. Runs without the libtest harness and prints one
//! `PASS`/`FAIL` line per criterion, followed by indented detail lines.
//! Exits nonzero if any criterion fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::{double_sum, textbook_pearson, TestRng, K_GRID};
use netcorr::correlation::{network_pearson, network_pearson_override, network_variance};
use netcorr::metrics::{commute_time_embedding, effective_resistance, embedding_distances};
use netcorr::spectral::certify_weight;
use netcorr::weights::{exp_weight, identity_weight};
use netcorr::{Embedding, Graph, Signal};

const REL_TOL: f64 = 1e-9;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            pass: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.pass &= ok;
        self.details
            .push(format!("{} {detail}", if ok { "ok  " } else { "FAIL" }));
    }
}

fn k23_quarter() -> (Graph, netcorr::WeightMatrix) {
    let g = Graph::complete_bipartite(2, 3).unwrap();
    let w = exp_weight(&g.shortest_paths().unwrap(), 0.25).unwrap();
    (g, w)
}

fn k23_reproduction() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let (_, w) = k23_quarter();
    let v = certify_weight(&w, REL_TOL).unwrap();
    let elapsed = start.elapsed();

    let expected = [-0.2, 0.0, 0.3935, 0.3935, 0.3935];
    for (i, (&got, &want)) in v.eigenvalues.iter().zip(&expected).enumerate() {
        out.check(
            (got - want).abs() <= 5e-4,
            format!(
                "eigenvalue[{i}] = {got:.7} expected {want} (|diff| = {:.3e}, tol 5e-4)",
                (got - want).abs()
            ),
        );
    }
    out.check(!v.is_valid(), format!("verdict = {}", v.verdict));
    out.check(
        elapsed < Duration::from_secs(1),
        format!("runtime {elapsed:?} < 1s"),
    );
    out
}

fn valid_kernels() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let mut rng = TestRng::new(0xac2);
    let mut failures = Vec::new();
    let mut checks = 0;

    for t in 0..200 {
        let g = rng.connected_graph(2, 30);
        let d = effective_resistance(&g).unwrap();
        for k in K_GRID {
            let v = certify_weight(&exp_weight(&d, k).unwrap(), REL_TOL).unwrap();
            checks += 1;
            if !v.is_valid() {
                failures.push(format!(
                    "graph {t} n={} k={k} min={:e}",
                    g.node_count(),
                    v.min_nonforced
                ));
            }
        }
    }
    for t in 0..100 {
        let n = rng.int(2, 30);
        let dim = rng.int(1, 10);
        let d = embedding_distances(&Embedding::from_rows(rng.points(n, dim, 3.0)).unwrap());
        for k in K_GRID {
            let v = certify_weight(&exp_weight(&d, k).unwrap(), REL_TOL).unwrap();
            checks += 1;
            if !v.is_valid() {
                failures.push(format!(
                    "cloud {t} n={n} d={dim} k={k} min={:e}",
                    v.min_nonforced
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    out.check(
        failures.is_empty(),
        format!("{} of {checks} certifications invalid", failures.len()),
    );
    for f in failures.iter().take(5) {
        out.details.push(format!("     {f}"));
    }
    out.check(
        elapsed < Duration::from_secs(60),
        format!("runtime {elapsed:?} < 60s"),
    );
    out
}

fn identity_oracle() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = TestRng::new(0xac3);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.int(2, 40);
        let (x, y) = (rng.signal(n), rng.signal(n));
        let w = identity_weight(n).unwrap();
        let v = certify_weight(&w, REL_TOL).unwrap();
        let rho = network_pearson(&x, &y, &w, &v).unwrap().rho;
        worst = worst.max((rho - textbook_pearson(x.values(), y.values())).abs());
    }
    out.check(
        worst <= 1e-12,
        format!("max |drho| = {worst:.3e} over 1000 pairs (tol 1e-12)"),
    );
    out
}

fn range_and_cauchy_schwarz() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = TestRng::new(0xac4);
    let (mut worst_range, mut worst_cs, mut worst_self) = (0.0f64, f64::NEG_INFINITY, 0.0f64);
    let mut uncertified = 0;
    let mut cases = 0;
    while cases < 1000 {
        let g = rng.connected_graph(2, 30);
        let n = g.node_count();
        let w = exp_weight(&effective_resistance(&g).unwrap(), rng.range(0.05, 5.0)).unwrap();
        let v = certify_weight(&w, REL_TOL).unwrap();
        if !v.is_valid() {
            uncertified += 1;
            continue;
        }
        cases += 1;
        let (x, y) = (rng.signal(n), rng.signal(n));
        let r = network_pearson(&x, &y, &w, &v).unwrap();
        worst_range = worst_range.max(r.rho.abs());
        let vx = network_variance(&x, &w, &v).unwrap();
        let vy = network_variance(&y, &w, &v).unwrap();
        worst_cs = worst_cs.max(r.numerator * r.numerator - vx * vy);
        let own = network_pearson(&x, &x, &w, &v).unwrap().rho;
        worst_self = worst_self.max((own - 1.0).abs());
    }
    out.check(
        worst_range <= 1.0 + 1e-12,
        format!("max |rho| = {worst_range:.17}"),
    );
    out.check(
        worst_cs <= 1e-10,
        format!("max num^2 - var_x var_y = {worst_cs:.3e} (tol 1e-10)"),
    );
    out.check(
        worst_self <= 1e-12,
        format!("max |rho(x,x) - 1| = {worst_self:.3e} (tol 1e-12)"),
    );
    out.details.push(format!(
        "     {cases} cases, {uncertified} weights skipped as uncertified"
    ));
    out
}

fn commute_time_identity() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = TestRng::new(0xac5);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let g = rng.connected_graph(2, 30);
        let r = effective_resistance(&g).unwrap();
        let d = embedding_distances(&commute_time_embedding(&g).unwrap());
        for i in 0..r.len() {
            for j in 0..r.len() {
                worst = worst.max((d.get(i, j).powi(2) - r.get(i, j)).abs());
            }
        }
    }
    out.check(
        worst <= 1e-8,
        format!("max |d^2 - omega| = {worst:.3e} over 100 graphs (tol 1e-8)"),
    );
    out
}

fn negative_variance() -> Outcome {
    let mut out = Outcome::new();
    let (g, w) = k23_quarter();
    let v = certify_weight(&w, REL_TOL).unwrap();
    let x = v.min_eigenvector.clone();
    let norm = x.iter().map(|t| t * t).sum::<f64>().sqrt();
    let q = double_sum(w.values(), &x, &x);

    out.check(
        (norm - 1.0).abs() <= 1e-12,
        format!("eigenvector norm = {norm:.15}"),
    );
    out.check(q < 0.0, format!("quadratic form = {q:.10} < 0"));
    out.check(
        (q + 0.2).abs() <= 1e-6,
        format!(
            "quadratic form = {q:.10} expected -0.2 (|diff| = {:.3e}, tol 1e-6)",
            (q + 0.2).abs()
        ),
    );

    let xs = Signal::new(x).unwrap();
    let y = Signal::new((0..g.node_count()).map(|i| i as f64).collect()).unwrap();
    let r = network_pearson_override(&xs, &y, &w, &v).unwrap();
    out.check(!r.value.is_real(), format!("override value = {}", r.value));
    out
}

fn scan_determinism() -> Outcome {
    let mut out = Outcome::new();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_netcorr"))
            .args([
                "scan",
                "--seed",
                "20240601",
                "--trials",
                "100",
                "--include-k23",
                "--k",
                "0.25",
            ])
            .output()
            .expect("run netcorr scan")
    };
    let (a, b) = (run(), run());
    out.check(
        !a.stdout.is_empty() && a.stdout == b.stdout,
        format!("two runs byte-identical ({} bytes)", a.stdout.len()),
    );
    let text = String::from_utf8_lossy(&a.stdout);
    let failures: usize = text
        .lines()
        .find_map(|l| l.strip_prefix("failures = "))
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    out.check(failures >= 1, format!("failures = {failures}"));
    out.check(
        text.contains("injected,complete-bipartite-2-3"),
        "injected K(2,3) reported".to_owned(),
    );
    out
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("k23-reproduction", k23_reproduction),
        ("valid-kernels-on-negative-type-distances", valid_kernels),
        ("identity-weight-matches-classical-pearson", identity_oracle),
        ("range-and-cauchy-schwarz", range_and_cauchy_schwarz),
        (
            "commute-time-embedding-equals-resistance",
            commute_time_identity,
        ),
        ("negative-variance-demonstration", negative_variance),
        ("scan-determinism", scan_determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let o = f();
        println!("{} {name}", if o.pass { "PASS" } else { "FAIL" });
        for d in &o.details {
            println!("    {d}");
        }
        failed += usize::from(!o.pass);
    }
    println!("\n{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
