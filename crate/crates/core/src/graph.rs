//! Simple undirected graphs and the plain-text edge-list format.
//!
//! The edge-list format is `n m` on the first line followed by `m` lines of
//! `u v`. Blank lines and lines starting with `#` are ignored.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::{CombinatorialComplex, ComplexError};
use crate::invariants::Distance;
use crate::matrix::SparseBinaryMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(usize, usize),
    #[error("edge ({u}, {v}) references a node outside 0..{num_nodes}")]
    OutOfRange { u: usize, v: usize, num_nodes: usize },
    #[error("edge ({0}, {1}) appears twice")]
    DuplicateEdge(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// An undirected graph without loops or multi-edges.
///
/// Edges are stored canonically as `(u, v)` with `u < v`, sorted
/// lexicographically. That order matches the 1-skeleton of
/// [`SimpleGraph::to_complex`], so incidence matrices line up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    num_nodes: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(num_nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u, v));
            }
            if u >= num_nodes || v >= num_nodes {
                return Err(GraphError::OutOfRange { u, v, num_nodes });
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); num_nodes];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self { num_nodes, edges, adjacency })
    }

    /// Graph on `num_nodes` nodes with no edges.
    pub fn empty(num_nodes: usize) -> Self {
        Self { num_nodes, edges: Vec::new(), adjacency: vec![Vec::new(); num_nodes] }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.num_nodes && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Single-source BFS distances.
    pub fn bfs(&self, source: usize) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.num_nodes];
        let mut queue = VecDeque::new();
        dist[source] = Distance::Finite(0);
        queue.push_back((source, 0u32));
        while let Some((v, d)) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if dist[w] == Distance::Infinite {
                    dist[w] = Distance::Finite(d + 1);
                    queue.push_back((w, d + 1));
                }
            }
        }
        dist
    }

    /// All-pairs distance matrix, one BFS per source.
    pub fn all_pairs_distances(&self) -> Vec<Vec<Distance>> {
        (0..self.num_nodes).map(|s| self.bfs(s)).collect()
    }

    /// Component label per node, labels assigned in order of first node.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.num_nodes];
        let mut count = 0;
        for start in 0..self.num_nodes {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &self.adjacency[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    /// Subgraph induced by `nodes`, relabelled to `0..nodes.len()` in the
    /// given order.
    pub fn induced(&self, nodes: &[usize]) -> SimpleGraph {
        let mut pos = vec![usize::MAX; self.num_nodes];
        for (i, &v) in nodes.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        SimpleGraph::new(nodes.len(), edges).expect("induced subgraph of a simple graph is simple")
    }

    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let shift = self.num_nodes;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        SimpleGraph::new(self.num_nodes + other.num_nodes, edges).expect("union of simple graphs is simple")
    }

    /// Same graph with node `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> SimpleGraph {
        SimpleGraph::new(self.num_nodes, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabelling by a permutation keeps the graph simple")
    }

    pub fn adjacency_matrix(&self) -> SparseBinaryMatrix {
        let mut m = SparseBinaryMatrix::new(self.num_nodes, self.num_nodes);
        for &(u, v) in &self.edges {
            m.insert(u, v);
            m.insert(v, u);
        }
        m
    }

    /// Node-by-edge incidence matrix, columns in canonical edge order.
    pub fn incidence_matrix(&self) -> SparseBinaryMatrix {
        let mut m = SparseBinaryMatrix::new(self.num_nodes, self.edges.len());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            m.insert(u, j);
            m.insert(v, j);
        }
        m
    }

    /// The graph viewed as a complex: singletons at rank 0, edges at rank 1.
    pub fn to_complex(&self) -> Result<CombinatorialComplex, ComplexError> {
        let cells = self.edges.iter().map(|&(u, v)| (vec![u, v], 1));
        CombinatorialComplex::build(cells, self.num_nodes)
    }

    /// Number of triangles, counted once each.
    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for &(u, v) in &self.edges {
            for &w in &self.adjacency[u] {
                if w > v && self.has_edge(v, w) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.num_nodes, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses exactly one graph in edge-list format.
    pub fn from_edge_list(text: &str) -> Result<SimpleGraph, GraphError> {
        let mut reader = EdgeListReader::new(text);
        match reader.next() {
            Some(result) => {
                let graph = result?;
                if let Some((line, _)) = reader.peek_content() {
                    return Err(GraphError::Parse { line, msg: "trailing content after graph".into() });
                }
                Ok(graph)
            }
            None => Err(GraphError::Parse { line: 1, msg: "missing header line `n m`".into() }),
        }
    }
}

/// Streams consecutive edge-list records out of one text.
///
/// A malformed record yields an error and the reader resumes at the next
/// blank line, so one bad record does not poison the rest of the stream.
pub struct EdgeListReader<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> EdgeListReader<'a> {
    pub fn new(text: &'a str) -> Self {
        let lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).collect();
        Self { lines, pos: 0 }
    }

    fn is_skippable(line: &str) -> bool {
        line.is_empty() || line.starts_with('#')
    }

    fn peek_content(&mut self) -> Option<(usize, &'a str)> {
        while self.pos < self.lines.len() && Self::is_skippable(self.lines[self.pos].1) {
            self.pos += 1;
        }
        self.lines.get(self.pos).copied()
    }

    fn skip_record(&mut self) {
        while self.pos < self.lines.len() && !self.lines[self.pos].1.is_empty() {
            self.pos += 1;
        }
    }

    fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), GraphError> {
        let mut it = text.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize, GraphError> {
            tok.ok_or_else(|| GraphError::Parse { line, msg: "expected two integers".into() })?
                .parse::<usize>()
                .map_err(|e| GraphError::Parse { line, msg: e.to_string() })
        };
        let a = parse(it.next())?;
        let b = parse(it.next())?;
        if it.next().is_some() {
            return Err(GraphError::Parse { line, msg: "expected exactly two integers".into() });
        }
        Ok((a, b))
    }

    fn read_record(&mut self) -> Result<SimpleGraph, GraphError> {
        let (line, header) = self.lines[self.pos];
        self.pos += 1;
        let (n, m) = Self::parse_pair(line, header)?;
        let mut edges = Vec::with_capacity(m);
        while edges.len() < m {
            match self.lines.get(self.pos) {
                None => {
                    return Err(GraphError::Parse {
                        line,
                        msg: format!("expected {m} edges, found {}", edges.len()),
                    })
                }
                Some(&(_, l)) if l.starts_with('#') => self.pos += 1,
                Some(&(ln, "")) => {
                    return Err(GraphError::Parse {
                        line: ln,
                        msg: format!("expected {m} edges, found {}", edges.len()),
                    })
                }
                Some(&(ln, l)) => {
                    self.pos += 1;
                    edges.push(Self::parse_pair(ln, l)?);
                }
            }
        }
        SimpleGraph::new(n, edges)
    }
}

impl Iterator for EdgeListReader<'_> {
    type Item = Result<SimpleGraph, GraphError>;

    fn next(&mut self) -> Option<Self::Item> {
        self.peek_content()?;
        let result = self.read_record();
        if result.is_err() {
            self.skip_record();
        }
        Some(result)
    }
}
