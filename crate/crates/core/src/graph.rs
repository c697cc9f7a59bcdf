//! Undirected simple graphs: edge-list ingestion, connectivity, hop
//! distances and the combinatorial Laplacian.
//!
//! Nodes are indexed in first-appearance order of the input; every matrix
//! produced downstream uses that order.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metrics::{DistanceKind, DistanceMatrix};

/// An unweighted, undirected graph without self-loops or multi-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    neighbors: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Build a graph from node labels and index pairs. Duplicate edges are
    /// collapsed; `(i, j)` and `(j, i)` are the same edge.
    pub fn new<I>(labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if labels.len() < 2 {
            return Err(Error::TooFewNodes(labels.len()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            check_label(label)?;
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateNode(label.clone()));
            }
        }
        let n = labels.len();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownNode(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(Error::SelfLoop {
                    line: 0,
                    label: labels[a].clone(),
                });
            }
            set.insert((a.min(b), a.max(b)));
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(a, b) in &set {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Self {
            labels,
            index,
            neighbors,
            edges: set,
        })
    }

    /// Graph on nodes labelled `0..n` with the given edges.
    pub fn from_indexed_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    /// Complete graph on `n` nodes.
    pub fn complete(n: usize) -> Result<Self> {
        Self::from_indexed_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        Self::from_indexed_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Complete bipartite graph with parts `u1..ua` and `v1..vb`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let labels = (1..=a)
            .map(|i| format!("u{i}"))
            .chain((1..=b).map(|j| format!("v{j}")))
            .collect();
        Self::new(labels, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
    }

    /// Parse a whitespace-separated edge list.
    ///
    /// Blank lines and lines starting with `#` are skipped. A line with one
    /// label declares a (possibly isolated) node; a line with two labels
    /// declares an edge. Anything else is rejected, as are self-loops.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut intern = |label: &str, labels: &mut Vec<String>| -> usize {
            *index.entry(label.to_owned()).or_insert_with(|| {
                labels.push(label.to_owned());
                labels.len() - 1
            })
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                [a] => {
                    intern(a, &mut labels);
                }
                [a, b] => {
                    if a == b {
                        return Err(Error::SelfLoop {
                            line: lineno + 1,
                            label: (*a).to_owned(),
                        });
                    }
                    let i = intern(a, &mut labels);
                    let j = intern(b, &mut labels);
                    edges.push((i, j));
                }
                _ => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: format!(
                            "expected 1 or 2 node labels, found {} (weighted or directed edges are not supported)",
                            tokens.len()
                        ),
                    })
                }
            }
        }
        Self::new(labels, edges)
    }

    /// Serialize to the edge-list format accepted by [`Graph::parse_edge_list`].
    ///
    /// All nodes are declared first so node order survives a round trip.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for label in &self.labels {
            out.push_str(label);
            out.push('\n');
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "{} {}", self.labels[a], self.labels[b]);
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    /// 0/1 symmetric adjacency matrix.
    pub fn adjacency(&self) -> DMatrix<f64> {
        let n = self.node_count();
        let mut a = DMatrix::zeros(n, n);
        for &(i, j) in &self.edges {
            a[(i, j)] = 1.0;
            a[(j, i)] = 1.0;
        }
        a
    }

    /// `L = Deg - A`.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let mut l = -self.adjacency();
        for i in 0..self.node_count() {
            l[(i, i)] = self.degree(i) as f64;
        }
        l
    }

    /// Hop distances from `source`; `None` for unreachable nodes.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or_default();
            for &v in &self.neighbors[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(Option::is_some)
    }

    /// Connected components as sorted index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp: Vec<usize> = self
                .bfs(start)
                .iter()
                .enumerate()
                .filter_map(|(i, d)| d.map(|_| i))
                .collect();
            comp.sort_unstable();
            for &i in &comp {
                seen[i] = true;
            }
            out.push(comp);
        }
        out
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected {
                components: self.components().len(),
            })
        }
    }

    /// All-pairs hop distances by one BFS per source.
    pub fn shortest_paths(&self) -> Result<DistanceMatrix> {
        self.require_connected()?;
        let n = self.node_count();
        let rows: Vec<Vec<Option<usize>>> = (0..n).into_par_iter().map(|s| self.bfs(s)).collect();
        let values = DMatrix::from_fn(n, n, |i, j| rows[i][j].unwrap_or_default() as f64);
        Ok(DistanceMatrix::from_parts(
            values,
            DistanceKind::ShortestPath,
            self.labels.clone(),
        ))
    }
}

fn check_label(label: &str) -> Result<()> {
    if label.is_empty() || label.starts_with('#') || label.chars().any(char::is_whitespace) {
        return Err(Error::InvalidArgument(format!(
            "node label {label:?} must be non-empty, contain no whitespace and not start with '#'"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    // node declarations fix the order u1, u2, v1, v2, v3
    const K23: &str = "u1\nu2\nv1\nv2\nv3\nu1 v1\nu1 v2\nu1 v3\nu2 v1\nu2 v2\nu2 v3\n";

    fn matrix(rows: &[&[f64]]) -> DMatrix<f64> {
        DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j])
    }

    #[test]
    fn path_from_text() {
        let g = Graph::parse_edge_list("a b\nb c").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.labels(), ["a", "b", "c"]);
    }

    #[test]
    fn k23_adjacency_matches_printed_matrix() {
        let g = Graph::parse_edge_list(K23).unwrap();
        let expected = matrix(&[
            &[0., 0., 1., 1., 1.],
            &[0., 0., 1., 1., 1.],
            &[1., 1., 0., 0., 0.],
            &[1., 1., 0., 0., 0.],
            &[1., 1., 0., 0., 0.],
        ]);
        assert_eq!(g.adjacency(), expected);
        assert_eq!(g, Graph::complete_bipartite(2, 3).unwrap());
    }

    #[test]
    fn bare_edge_lines_use_first_appearance_order() {
        let g = Graph::parse_edge_list("u1 v1\nu1 v2\nu1 v3\nu2 v1\nu2 v2\nu2 v3").unwrap();
        assert_eq!(g.labels(), ["u1", "v1", "v2", "v3", "u2"]);
        assert_eq!(g.edge_count(), 6);
        let reparsed = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(reparsed, g);
    }

    #[test]
    fn rejects_self_loop() {
        let err = Graph::parse_edge_list("a a").unwrap_err();
        assert!(matches!(err, Error::SelfLoop { line: 1, .. }), "{err}");
    }

    #[test]
    fn rejects_empty_and_single_node() {
        assert!(matches!(
            Graph::parse_edge_list("# nothing\n\n"),
            Err(Error::TooFewNodes(0))
        ));
        assert!(matches!(
            Graph::parse_edge_list("a"),
            Err(Error::TooFewNodes(1))
        ));
    }

    #[test]
    fn rejects_three_tokens() {
        assert!(matches!(
            Graph::parse_edge_list("a b 2.5"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn comments_duplicates_and_isolated_nodes() {
        let g = Graph::parse_edge_list("# header\na b\n  # indented\nb a\na b\nz\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 1);
        assert!(!g.is_connected());
        assert_eq!(g.components(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn edge_count_is_half_adjacency_sum() {
        let g = Graph::parse_edge_list(K23).unwrap();
        assert_eq!(g.adjacency().sum(), 2.0 * g.edge_count() as f64);
    }

    #[test]
    fn k23_shortest_paths_match_printed_matrix() {
        let g = Graph::complete_bipartite(2, 3).unwrap();
        let p = g.shortest_paths().unwrap();
        let expected = matrix(&[
            &[0., 2., 1., 1., 1.],
            &[2., 0., 1., 1., 1.],
            &[1., 1., 0., 2., 2.],
            &[1., 1., 2., 0., 2.],
            &[1., 1., 2., 2., 0.],
        ]);
        assert_eq!(p.values(), &expected);
        assert_eq!(p.kind(), DistanceKind::ShortestPath);
    }

    #[test]
    fn small_shortest_paths() {
        let edge = Graph::path(2).unwrap().shortest_paths().unwrap();
        assert_eq!(edge.values(), &matrix(&[&[0., 1.], &[1., 0.]]));
        let path = Graph::parse_edge_list("a b\nb c").unwrap();
        assert_eq!(path.shortest_paths().unwrap().values()[(0, 2)], 2.0);
    }

    #[test]
    fn disconnected_distance_is_an_error() {
        let g = Graph::parse_edge_list("a\nb").unwrap();
        assert!(!g.is_connected());
        assert!(matches!(
            g.shortest_paths(),
            Err(Error::Disconnected { components: 2 })
        ));
    }

    #[test]
    fn connectivity_examples() {
        assert!(Graph::complete_bipartite(2, 3).unwrap().is_connected());
        assert!(Graph::path(10).unwrap().is_connected());
    }

    #[test]
    fn laplacians() {
        let edge = Graph::path(2).unwrap().laplacian();
        assert_eq!(edge, matrix(&[&[1., -1.], &[-1., 1.]]));

        let tri = Graph::complete(3).unwrap().laplacian();
        assert_eq!(
            tri,
            matrix(&[&[2., -1., -1.], &[-1., 2., -1.], &[-1., -1., 2.]])
        );

        let g = Graph::complete_bipartite(2, 3).unwrap();
        let l = g.laplacian();
        let diag: Vec<f64> = l.diagonal().iter().copied().collect();
        assert_eq!(diag, vec![3., 3., 2., 2., 2.]);
        let a = g.adjacency();
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    assert_eq!(l[(i, j)], -a[(i, j)]);
                }
            }
        }
    }
}
