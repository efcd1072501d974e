//! Immutable simple undirected graphs with dense `0..n` vertex ids.
//!
//! Adjacency is kept as sorted neighbour arrays for iteration and, for graphs
//! up to [`DEFAULT_BITSET_THRESHOLD`] vertices, as a bit matrix so that
//! `has_edge` is a single word lookup. The structural code performs a lot of
//! pairwise adjacency queries on small reduced graphs, which is where the bit
//! matrix pays off.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::io::BufRead;

use thiserror::Error;

/// Vertex id. Always dense in `0..vertex_count`.
pub type Vertex = usize;

/// Graphs with at most this many vertices get a bit-matrix adjacency index.
pub const DEFAULT_BITSET_THRESHOLD: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("malformed DIMACS header on line {line}")]
    MalformedHeader { line: usize },
    #[error("edge before `p` header on line {line}")]
    EdgeBeforeHeader { line: usize },
    #[error("malformed DIMACS line {line}: {content}")]
    MalformedLine { line: usize, content: String },
    #[error("missing `p edge` header")]
    MissingHeader,
    #[error("i/o error: {0}")]
    Io(String),
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_sorted_unchecked(v: Vec<Vertex>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        v.into_iter().collect()
    }
}

#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    bits: Option<Vec<u64>>,
    words: usize,
    edge_count: usize,
    labels: Option<Vec<u64>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list. Duplicate and reversed entries are
    /// merged; self-loops are rejected.
    pub fn from_edge_list(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        Self::from_edges_with_threshold(n, edges.iter().copied(), DEFAULT_BITSET_THRESHOLD)
    }

    pub fn from_edges_with_threshold(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
        bitset_threshold: usize,
    ) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        let mut g = Graph {
            adj,
            bits: None,
            words: 0,
            edge_count: edge_count / 2,
            labels: None,
        };
        if n <= bitset_threshold {
            g.build_bits();
        }
        Ok(g)
    }

    /// Empty graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph::from_edges_with_threshold(n, std::iter::empty(), DEFAULT_BITSET_THRESHOLD)
            .expect("no edges")
    }

    fn build_bits(&mut self) {
        let n = self.adj.len();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                bits[u * words + v / 64] |= 1 << (v % 64);
            }
        }
        self.bits = Some(bits);
        self.words = words;
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    /// Sorted neighbours of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn checked_neighbours(&self, v: Vertex) -> Result<VertexSet, GraphError> {
        self.adj
            .get(v)
            .map(|l| VertexSet::from_sorted_unchecked(l.clone()))
            .ok_or(GraphError::VertexOutOfRange(v))
    }

    /// `N(A)`: neighbours of the set `a` that lie outside `a`.
    pub fn neighbourhood_of_set(&self, a: &VertexSet) -> Result<VertexSet, GraphError> {
        if let Some(bad) = a.iter().find(|&v| v >= self.vertex_count()) {
            return Err(GraphError::VertexOutOfRange(bad));
        }
        Ok(a.iter()
            .flat_map(|v| self.adj[v].iter().copied())
            .filter(|&w| !a.contains(w))
            .collect())
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        match &self.bits {
            Some(bits) => bits[u * self.words + v / 64] & (1 << (v % 64)) != 0,
            None => {
                let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
                    (u, v)
                } else {
                    (v, u)
                };
                self.adj[a].binary_search(&b).is_ok()
            }
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// External label of `v`, defaulting to the 1-based DIMACS id.
    pub fn label(&self, v: Vertex) -> u64 {
        match &self.labels {
            Some(l) => l[v],
            None => v as u64 + 1,
        }
    }

    pub fn with_labels(mut self, labels: Vec<u64>) -> Graph {
        assert_eq!(labels.len(), self.vertex_count());
        self.labels = Some(labels);
        self
    }

    /// The subgraph induced by `keep`, relabelled densely in the order given.
    /// Returns the graph and the map from new ids to old ids.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = Vec::with_capacity(keep.len());
        let mut edge_count = 0;
        for &v in keep {
            let mut list: Vec<Vertex> = self.adj[v]
                .iter()
                .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                .collect();
            list.sort_unstable();
            edge_count += list.len();
            adj.push(list);
        }
        let labels = keep.iter().map(|&v| self.label(v)).collect();
        let mut g = Graph {
            adj,
            bits: None,
            words: 0,
            edge_count: edge_count / 2,
            labels: Some(labels),
        };
        if keep.len() <= DEFAULT_BITSET_THRESHOLD {
            g.build_bits();
        }
        (g, keep.to_vec())
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    /// Serializes as DIMACS `.col`: `p edge n m` then `e u v` with `u < v`, 1-based.
    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        writeln!(s, "p edge {} {}", self.vertex_count(), self.edge_count()).unwrap();
        for (u, v) in self.edges() {
            writeln!(s, "e {} {}", u + 1, v + 1).unwrap();
        }
        s
    }
}

/// Parses DIMACS `.col` text. Vertex ids are converted from 1-based to 0-based.
pub fn parse_dimacs(input: impl BufRead) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| GraphError::Io(e.to_string()))?;
        let mut tok = line.split_ascii_whitespace();
        let Some(kind) = tok.next() else { continue };
        match kind {
            "c" => {}
            "p" => {
                if n.is_some() {
                    return Err(GraphError::MalformedHeader { line: lineno });
                }
                let format = tok.next();
                let nv = tok.next().and_then(|x| x.parse::<usize>().ok());
                let ne = tok.next().and_then(|x| x.parse::<usize>().ok());
                match (format, nv, ne, tok.next()) {
                    (Some("edge") | Some("col"), Some(nv), Some(_), None) => n = Some(nv),
                    _ => return Err(GraphError::MalformedHeader { line: lineno }),
                }
            }
            "e" => {
                let Some(nv) = n else {
                    return Err(GraphError::EdgeBeforeHeader { line: lineno });
                };
                let u = tok.next().and_then(|x| x.parse::<usize>().ok());
                let v = tok.next().and_then(|x| x.parse::<usize>().ok());
                let (Some(u), Some(v), None) = (u, v, tok.next()) else {
                    return Err(GraphError::MalformedLine {
                        line: lineno,
                        content: line.clone(),
                    });
                };
                for x in [u, v] {
                    if x == 0 || x > nv {
                        return Err(GraphError::VertexOutOfRange(x));
                    }
                }
                edges.push((u - 1, v - 1));
            }
            _ => {
                return Err(GraphError::MalformedLine {
                    line: lineno,
                    content: line.clone(),
                })
            }
        }
    }
    let n = n.ok_or(GraphError::MissingHeader)?;
    Graph::from_edge_list(n, &edges)
}

/// Convenience constructors for named graphs used throughout the tests.
pub mod named {
    use super::{Graph, Vertex};

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<(Vertex, Vertex)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<(Vertex, Vertex)> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edge_list(n, &edges).unwrap()
    }

    /// `K_{1,k}` with the centre at vertex 0.
    pub fn star(k: usize) -> Graph {
        let edges: Vec<(Vertex, Vertex)> = (1..=k).map(|i| (0, i)).collect();
        Graph::from_edge_list(k + 1, &edges).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edge_list(10, &edges).unwrap()
    }
}
