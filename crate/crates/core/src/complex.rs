//! Combinatorial complexes: ranked cells over integer nodes, the natural
//! neighborhood functions, Hasse graphs and the JSON exchange format.
//!
//! A complex over `n` nodes always holds the singletons `{0}..{n-1}` as its
//! rank-0 cells, in node order, so the index of a 0-cell is its node id.
//! Cells are keyed by `(vertex set, rank)`: the same vertex set may appear
//! at two different ranks (Mapper pooling produces such 2-cells). Rank
//! monotonicity is enforced for strict inclusions.
//!
//! Every skeleton is sorted lexicographically by vertex list, and all matrix
//! rows, graph nodes and color arrays are indexed in that order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::matrix::SparseBinaryMatrix;

pub type NodeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("cell {smaller:?} (rank {smaller_rank}) is contained in {larger:?} of lower rank {larger_rank}")]
    RankViolation { smaller: Vec<NodeId>, smaller_rank: usize, larger: Vec<NodeId>, larger_rank: usize },
    #[error("cell {vertices:?} appears twice at rank {rank}")]
    DuplicateCell { vertices: Vec<NodeId>, rank: usize },
    #[error("empty cell at rank {0}")]
    EmptyCell(usize),
    #[error("cell {vertices:?} references node {node} but the complex has {num_nodes} nodes")]
    OutOfRangeNode { vertices: Vec<NodeId>, node: NodeId, num_nodes: usize },
    #[error("rank-0 cell {0:?} is not a singleton")]
    NonSingletonVertex(Vec<NodeId>),
    #[error("complex has no nodes")]
    EmptyComplex,
    #[error("cell {0:?} is not in the complex")]
    UnknownCell(Cell),
    #[error("rank {rank} exceeds the complex dimension {dimension}")]
    RankOutOfRange { rank: usize, dimension: usize },
    #[error("{0} is not an adjacency or co-adjacency neighborhood")]
    WrongKind(NeighborhoodSpec),
    #[error("declared dimension {declared} does not match the cells (dimension {actual})")]
    DimensionMismatch { declared: usize, actual: usize },
    #[error("JSON parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
}

/// A cell as a canonical (sorted, duplicate-free) vertex list plus rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    vertices: Vec<NodeId>,
    rank: usize,
}

impl Cell {
    pub fn new(vertices: impl IntoIterator<Item = NodeId>, rank: usize) -> Self {
        let mut vertices: Vec<_> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        Self { vertices, rank }
    }

    pub fn vertices(&self) -> &[NodeId] {
        &self.vertices
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Position of a cell: its rank and its index within that skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellId {
    pub rank: usize,
    pub index: usize,
}

impl CellId {
    pub fn new(rank: usize, index: usize) -> Self {
        Self { rank, index }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NeighborhoodKind {
    Adjacency,
    CoAdjacency,
    IncidenceUp,
    IncidenceDown,
}

impl NeighborhoodKind {
    pub const ALL: [NeighborhoodKind; 4] = [
        NeighborhoodKind::Adjacency,
        NeighborhoodKind::CoAdjacency,
        NeighborhoodKind::IncidenceUp,
        NeighborhoodKind::IncidenceDown,
    ];

    fn code(self) -> u32 {
        match self {
            NeighborhoodKind::Adjacency => 0,
            NeighborhoodKind::CoAdjacency => 1,
            NeighborhoodKind::IncidenceUp => 2,
            NeighborhoodKind::IncidenceDown => 3,
        }
    }
}

/// One natural neighborhood function: A, coA, B or Bᵀ with its rank pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NeighborhoodSpec {
    pub kind: NeighborhoodKind,
    pub r1: usize,
    pub r2: usize,
}

impl NeighborhoodSpec {
    pub fn new(kind: NeighborhoodKind, r1: usize, r2: usize) -> Self {
        Self { kind, r1, r2 }
    }

    pub fn adjacency(r1: usize, r2: usize) -> Self {
        Self::new(NeighborhoodKind::Adjacency, r1, r2)
    }

    pub fn coadjacency(r1: usize, r2: usize) -> Self {
        Self::new(NeighborhoodKind::CoAdjacency, r1, r2)
    }

    pub fn incidence_up(r1: usize, r2: usize) -> Self {
        Self::new(NeighborhoodKind::IncidenceUp, r1, r2)
    }

    pub fn incidence_down(r1: usize, r2: usize) -> Self {
        Self::new(NeighborhoodKind::IncidenceDown, r1, r2)
    }

    pub fn is_adjacency_type(&self) -> bool {
        matches!(self.kind, NeighborhoodKind::Adjacency | NeighborhoodKind::CoAdjacency)
    }

    /// Rank of the cells this neighborhood returns.
    pub fn target_rank(&self) -> usize {
        if self.is_adjacency_type() {
            self.r1
        } else {
            self.r2
        }
    }

    /// Every natural neighborhood over ranks `0..=dimension`.
    pub fn all_natural(dimension: usize) -> Vec<NeighborhoodSpec> {
        let mut out = Vec::with_capacity(4 * (dimension + 1) * (dimension + 1));
        for r1 in 0..=dimension {
            for r2 in 0..=dimension {
                for kind in NeighborhoodKind::ALL {
                    out.push(Self::new(kind, r1, r2));
                }
            }
        }
        out
    }

    /// Injective integer code, used inside refinement signatures.
    pub fn code(&self) -> u32 {
        (self.kind.code() << 24) | ((self.r1 as u32) << 12) | self.r2 as u32
    }
}

impl fmt::Display for NeighborhoodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            NeighborhoodKind::Adjacency => "A",
            NeighborhoodKind::CoAdjacency => "coA",
            NeighborhoodKind::IncidenceUp => "B",
            NeighborhoodKind::IncidenceDown => "Bt",
        };
        write!(f, "{name}:{},{}", self.r1, self.r2)
    }
}

impl FromStr for NeighborhoodSpec {
    type Err = String;

    /// Parses `A:0,1`, `coA:2,1`, `B:0,2` or `Bt:2,0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, ranks) = s.split_once(':').ok_or_else(|| format!("expected KIND:r1,r2, got `{s}`"))?;
        let kind = match name {
            "A" => NeighborhoodKind::Adjacency,
            "coA" => NeighborhoodKind::CoAdjacency,
            "B" => NeighborhoodKind::IncidenceUp,
            "Bt" | "BT" => NeighborhoodKind::IncidenceDown,
            other => return Err(format!("unknown neighborhood kind `{other}`")),
        };
        let (a, b) = ranks.split_once(',').ok_or_else(|| format!("expected r1,r2, got `{ranks}`"))?;
        let r1 = a.trim().parse().map_err(|e| format!("bad rank `{a}`: {e}"))?;
        let r2 = b.trim().parse().map_err(|e| format!("bad rank `{b}`: {e}"))?;
        Ok(Self::new(kind, r1, r2))
    }
}

/// A validated, immutable combinatorial complex.
#[derive(Debug, Clone)]
pub struct CombinatorialComplex {
    num_nodes: usize,
    skeletons: Vec<Vec<Vec<NodeId>>>,
    index: Vec<HashMap<Vec<NodeId>, usize>>,
    // supersets[r1][r2][i]: cells of rank r2 whose vertex set contains cell i of rank r1
    supersets: Vec<Vec<Vec<Vec<u32>>>>,
    // subsets[r1][r2][i]: cells of rank r2 whose vertex set is contained in cell i of rank r1
    subsets: Vec<Vec<Vec<Vec<u32>>>>,
}

impl PartialEq for CombinatorialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.num_nodes == other.num_nodes && self.skeletons == other.skeletons
    }
}

impl Eq for CombinatorialComplex {}

fn is_subset(small: &[NodeId], large: &[NodeId]) -> bool {
    if small.len() > large.len() {
        return false;
    }
    let mut it = large.iter();
    'outer: for s in small {
        for l in it.by_ref() {
            if l == s {
                continue 'outer;
            }
            if l > s {
                return false;
            }
        }
        return false;
    }
    true
}

impl CombinatorialComplex {
    /// Validates raw `(vertex set, rank)` cells and builds the complex.
    ///
    /// Missing rank-0 singletons are inserted. Vertex lists are canonicalised
    /// (sorted, deduplicated) before validation.
    pub fn build<I, V>(raw_cells: I, num_nodes: usize) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = (V, usize)>,
        V: IntoIterator<Item = NodeId>,
    {
        if num_nodes == 0 {
            return Err(ComplexError::EmptyComplex);
        }
        let mut skeletons: Vec<Vec<Vec<NodeId>>> = vec![Vec::new()];
        for (vertices, rank) in raw_cells {
            let mut vertices: Vec<NodeId> = vertices.into_iter().collect();
            vertices.sort_unstable();
            vertices.dedup();
            if vertices.is_empty() {
                return Err(ComplexError::EmptyCell(rank));
            }
            if let Some(&node) = vertices.iter().find(|&&v| v >= num_nodes) {
                return Err(ComplexError::OutOfRangeNode { vertices, node, num_nodes });
            }
            if rank == 0 && vertices.len() != 1 {
                return Err(ComplexError::NonSingletonVertex(vertices));
            }
            if skeletons.len() <= rank {
                skeletons.resize(rank + 1, Vec::new());
            }
            skeletons[rank].push(vertices);
        }
        for (rank, skeleton) in skeletons.iter_mut().enumerate() {
            skeleton.sort_unstable();
            if let Some(w) = skeleton.windows(2).find(|w| w[0] == w[1]) {
                return Err(ComplexError::DuplicateCell { vertices: w[0].clone(), rank });
            }
        }
        skeletons[0] = (0..num_nodes).map(|v| vec![v]).collect();
        Self::from_sorted_skeletons(num_nodes, skeletons)
    }

    fn from_sorted_skeletons(num_nodes: usize, skeletons: Vec<Vec<Vec<NodeId>>>) -> Result<Self, ComplexError> {
        let dim = skeletons.len() - 1;
        let index: Vec<HashMap<Vec<NodeId>, usize>> = skeletons
            .iter()
            .map(|sk| sk.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect())
            .collect();

        // node -> cells of each rank containing it
        let mut node_cells: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new(); num_nodes]; dim + 1];
        for (r, sk) in skeletons.iter().enumerate() {
            for (i, cell) in sk.iter().enumerate() {
                for &v in cell {
                    node_cells[r][v].push(i as u32);
                }
            }
        }

        let mut supersets = vec![vec![Vec::new(); dim + 1]; dim + 1];
        for r1 in 0..=dim {
            for r2 in 0..=dim {
                let lists: Vec<Vec<u32>> = skeletons[r1]
                    .iter()
                    .map(|x| {
                        node_cells[r2][x[0]]
                            .iter()
                            .copied()
                            .filter(|&j| is_subset(x, &skeletons[r2][j as usize]))
                            .collect()
                    })
                    .collect();
                supersets[r1][r2] = lists;
            }
        }

        for r1 in 0..=dim {
            for r2 in 0..r1 {
                for (i, x) in skeletons[r1].iter().enumerate() {
                    if let Some(&j) = supersets[r1][r2][i].iter().find(|&&j| skeletons[r2][j as usize].len() > x.len()) {
                        return Err(ComplexError::RankViolation {
                            smaller: x.clone(),
                            smaller_rank: r1,
                            larger: skeletons[r2][j as usize].clone(),
                            larger_rank: r2,
                        });
                    }
                }
            }
        }

        let mut subsets = vec![vec![Vec::new(); dim + 1]; dim + 1];
        for r1 in 0..=dim {
            for r2 in 0..=dim {
                let mut lists = vec![Vec::new(); skeletons[r1].len()];
                for (j, sups) in supersets[r2][r1].iter().enumerate() {
                    for &i in sups {
                        lists[i as usize].push(j as u32);
                    }
                }
                subsets[r1][r2] = lists;
            }
        }

        Ok(Self { num_nodes, skeletons, index, supersets, subsets })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    /// Highest rank `ℓ`; the rank-`ℓ` skeleton is non-empty.
    pub fn dimension(&self) -> usize {
        self.skeletons.len() - 1
    }

    /// Cells of rank `r` as vertex lists; empty beyond the dimension.
    pub fn skeleton(&self, r: usize) -> &[Vec<NodeId>] {
        self.skeletons.get(r).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn skeleton_sizes(&self) -> Vec<usize> {
        self.skeletons.iter().map(Vec::len).collect()
    }

    pub fn num_cells(&self) -> usize {
        self.skeletons.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self, id: CellId) -> &[NodeId] {
        &self.skeletons[id.rank][id.index]
    }

    pub fn cell(&self, id: CellId) -> Cell {
        Cell { vertices: self.vertices(id).to_vec(), rank: id.rank }
    }

    pub fn find(&self, vertices: &[NodeId], rank: usize) -> Option<usize> {
        self.index.get(rank)?.get(vertices).copied()
    }

    pub fn cell_id(&self, cell: &Cell) -> Result<CellId, ComplexError> {
        self.find(&cell.vertices, cell.rank)
            .map(|index| CellId::new(cell.rank, index))
            .ok_or_else(|| ComplexError::UnknownCell(cell.clone()))
    }

    /// Iterates all cells in (rank, index) order.
    pub fn cell_ids(&self) -> impl Iterator<Item = CellId> + '_ {
        self.skeletons
            .iter()
            .enumerate()
            .flat_map(|(r, sk)| (0..sk.len()).map(move |i| CellId::new(r, i)))
    }

    /// Rank-`r2` cells containing cell `i` of rank `r1` (including equal vertex sets).
    pub fn supersets(&self, r1: usize, r2: usize, i: usize) -> &[u32] {
        match self.supersets.get(r1).and_then(|v| v.get(r2)) {
            Some(lists) => &lists[i],
            None => &[],
        }
    }

    /// Rank-`r2` cells contained in cell `i` of rank `r1` (including equal vertex sets).
    pub fn subsets(&self, r1: usize, r2: usize, i: usize) -> &[u32] {
        match self.subsets.get(r1).and_then(|v| v.get(r2)) {
            Some(lists) => &lists[i],
            None => &[],
        }
    }

    /// Indices (in the target skeleton) of `N(x)` for the cell `x = (spec.r1, i)`.
    ///
    /// (Co)adjacency excludes `x` itself. The result is sorted.
    pub fn neighbor_indices(&self, spec: NeighborhoodSpec, i: usize) -> Vec<u32> {
        let (r1, r2) = (spec.r1, spec.r2);
        if r1 > self.dimension() || r2 > self.dimension() {
            return Vec::new();
        }
        let mut out: Vec<u32> = match spec.kind {
            NeighborhoodKind::IncidenceUp => return self.supersets(r1, r2, i).to_vec(),
            NeighborhoodKind::IncidenceDown => return self.subsets(r1, r2, i).to_vec(),
            NeighborhoodKind::Adjacency => self
                .supersets(r1, r2, i)
                .iter()
                .flat_map(|&z| self.subsets(r2, r1, z as usize).iter().copied())
                .collect(),
            NeighborhoodKind::CoAdjacency => self
                .subsets(r1, r2, i)
                .iter()
                .flat_map(|&z| self.supersets(r2, r1, z as usize).iter().copied())
                .collect(),
        };
        out.sort_unstable();
        out.dedup();
        out.retain(|&y| y as usize != i);
        out
    }

    /// `N(x)` for a cell given by value. Cells whose rank differs from
    /// `spec.r1` have an empty neighborhood.
    pub fn neighborhood(&self, spec: NeighborhoodSpec, x: &Cell) -> Result<Vec<Cell>, ComplexError> {
        let id = self.cell_id(x)?;
        if id.rank != spec.r1 {
            return Ok(Vec::new());
        }
        let target = spec.target_rank();
        Ok(self
            .neighbor_indices(spec, id.index)
            .into_iter()
            .map(|j| self.cell(CellId::new(target, j as usize)))
            .collect())
    }

    /// Matrix form of a neighborhood: rows over `X_{r1}`, columns over the
    /// target skeleton.
    pub fn neighborhood_matrix(&self, spec: NeighborhoodSpec) -> Result<SparseBinaryMatrix, ComplexError> {
        let dimension = self.dimension();
        for rank in [spec.r1, spec.r2] {
            if rank > dimension {
                return Err(ComplexError::RankOutOfRange { rank, dimension });
            }
        }
        let mut m = SparseBinaryMatrix::new(self.skeleton(spec.r1).len(), self.skeleton(spec.target_rank()).len());
        for i in 0..self.skeleton(spec.r1).len() {
            for j in self.neighbor_indices(spec, i) {
                m.insert(i, j as usize);
            }
        }
        Ok(m)
    }

    /// Graph on `X_{r1}` whose edges come from a (co)adjacency neighborhood.
    pub fn augmented_hasse_graph(&self, spec: NeighborhoodSpec) -> Result<SimpleGraph, ComplexError> {
        if !spec.is_adjacency_type() {
            return Err(ComplexError::WrongKind(spec));
        }
        let n = self.skeleton(spec.r1).len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in self.neighbor_indices(spec, i) {
                if (j as usize) > i {
                    edges.push((i, j as usize));
                }
            }
        }
        Ok(SimpleGraph::new(n, edges).expect("(co)adjacency is symmetric and irreflexive"))
    }

    /// Hasse graph: all cells, edges for inclusions between consecutive ranks.
    pub fn hasse_graph(&self) -> HasseGraph {
        let offsets = self.offsets();
        let mut ranks = Vec::with_capacity(self.num_cells());
        let mut edges = Vec::new();
        for (r, sk) in self.skeletons.iter().enumerate() {
            for i in 0..sk.len() {
                ranks.push(r);
                if r < self.dimension() {
                    for &j in self.supersets(r, r + 1, i) {
                        edges.push((offsets[r] + i, offsets[r + 1] + j as usize));
                    }
                }
            }
        }
        let graph = SimpleGraph::new(ranks.len(), edges).expect("Hasse edges join distinct cells");
        HasseGraph { graph, ranks, offsets }
    }

    /// Global index offset of each skeleton when cells are concatenated.
    pub fn offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.skeletons.len());
        let mut acc = 0;
        for sk in &self.skeletons {
            offsets.push(acc);
            acc += sk.len();
        }
        offsets
    }

    /// `a ⊔ b`, with `b`'s nodes shifted past `a`'s.
    pub fn disjoint_union(&self, other: &CombinatorialComplex) -> CombinatorialComplex {
        let shift = self.num_nodes;
        let cells = self.raw_cells().chain(
            other
                .raw_cells()
                .map(|(v, r)| (v.into_iter().map(|x| x + shift).collect::<Vec<_>>(), r)),
        );
        CombinatorialComplex::build(cells, self.num_nodes + other.num_nodes)
            .expect("disjoint union of valid complexes is valid")
    }

    /// All cells of rank ≥ 1 as `(vertices, rank)` pairs.
    pub fn raw_cells(&self) -> impl Iterator<Item = (Vec<NodeId>, usize)> + '_ {
        self.skeletons
            .iter()
            .enumerate()
            .skip(1)
            .flat_map(|(r, sk)| sk.iter().map(move |c| (c.clone(), r)))
    }

    /// 1-skeleton as a graph (2-element rank-1 cells become edges).
    pub fn one_skeleton(&self) -> SimpleGraph {
        let edges = self.skeleton(1).iter().filter(|c| c.len() == 2).map(|c| (c[0], c[1]));
        SimpleGraph::new(self.num_nodes, edges).expect("rank-1 cells are distinct")
    }

    pub fn to_json_value(&self) -> ComplexJson {
        ComplexJson { dimension: self.dimension(), num_nodes: self.num_nodes, cells: self.skeletons.clone() }
    }

    pub fn encode_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("complex serialises")
    }

    pub fn decode_json(text: &str) -> Result<Self, ComplexError> {
        let raw: ComplexJson = serde_json::from_str(text).map_err(|e| ComplexError::Parse {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })?;
        Self::from_json_value(raw)
    }

    /// Accepts `cells` of length `dimension + 1`, or of length `dimension`
    /// when the implied rank-0 entry is omitted.
    pub fn from_json_value(raw: ComplexJson) -> Result<Self, ComplexError> {
        let first_rank = if raw.cells.len() == raw.dimension + 1 {
            0
        } else if raw.cells.len() == raw.dimension && raw.dimension > 0 {
            1
        } else {
            return Err(ComplexError::DimensionMismatch { declared: raw.dimension, actual: raw.cells.len().saturating_sub(1) });
        };
        let cells = raw
            .cells
            .into_iter()
            .enumerate()
            .flat_map(|(i, cells)| cells.into_iter().map(move |c| (c, i + first_rank)));
        let cc = Self::build(cells, raw.num_nodes)?;
        if cc.dimension() != raw.dimension {
            return Err(ComplexError::DimensionMismatch { declared: raw.dimension, actual: cc.dimension() });
        }
        Ok(cc)
    }
}

/// Serialised form of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub dimension: usize,
    pub num_nodes: usize,
    pub cells: Vec<Vec<Vec<NodeId>>>,
}

/// Hasse graph with the rank of every node and per-rank index offsets.
#[derive(Debug, Clone)]
pub struct HasseGraph {
    pub graph: SimpleGraph,
    pub ranks: Vec<usize>,
    pub offsets: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn filled_triangle() -> CombinatorialComplex {
        CombinatorialComplex::build(
            [(vec![0, 1], 1), (vec![0, 1, 2], 2), (vec![0, 2], 1), (vec![1, 2], 1)],
            3,
        )
        .unwrap()
    }

    fn single_edge() -> CombinatorialComplex {
        CombinatorialComplex::build([(vec![0, 1], 1)], 2).unwrap()
    }

    /// Nodes A..H = 0..7.
    fn neighborhood_illustration() -> CombinatorialComplex {
        let (a, b, c, d, e, f, g, h) = (0, 1, 2, 3, 4, 5, 6, 7);
        let edges = [(a, b), (a, c), (c, d), (b, d), (c, e), (d, e), (e, f), (e, h), (f, h), (f, g), (h, g)];
        let mut cells: Vec<(Vec<usize>, usize)> = edges.iter().map(|&(u, v)| (vec![u, v], 1)).collect();
        cells.push((vec![a, b, c, d], 2));
        cells.push((vec![c, d, e], 2));
        cells.push((vec![e, f, h], 2));
        cells.push((vec![f, g, h], 2));
        CombinatorialComplex::build(cells, 8).unwrap()
    }

    #[test]
    fn single_edge_skeletons() {
        let cc = single_edge();
        assert_eq!(cc.dimension(), 1);
        assert_eq!(cc.skeleton(0), &[vec![0], vec![1]]);
        assert_eq!(cc.skeleton(1), &[vec![0, 1]]);
    }

    #[test]
    fn filled_triangle_is_valid() {
        let cc = filled_triangle();
        assert_eq!(cc.skeleton_sizes(), vec![3, 3, 1]);
    }

    #[test]
    fn rank_violation_detected() {
        let err = CombinatorialComplex::build([(vec![0, 1], 2), (vec![0, 1, 2], 1)], 3).unwrap_err();
        assert!(matches!(err, ComplexError::RankViolation { smaller_rank: 2, larger_rank: 1, .. }));
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            CombinatorialComplex::build([(vec![0, 1], 1), (vec![1, 0], 1)], 2),
            Err(ComplexError::DuplicateCell { .. })
        ));
        assert!(matches!(
            CombinatorialComplex::build([(Vec::<usize>::new(), 1)], 2),
            Err(ComplexError::EmptyCell(1))
        ));
        assert!(matches!(
            CombinatorialComplex::build([(vec![0, 5], 1)], 2),
            Err(ComplexError::OutOfRangeNode { node: 5, .. })
        ));
        assert!(matches!(
            CombinatorialComplex::build([(vec![0, 1], 0)], 2),
            Err(ComplexError::NonSingletonVertex(_))
        ));
        assert_eq!(CombinatorialComplex::build(Vec::<(Vec<usize>, usize)>::new(), 0), Err(ComplexError::EmptyComplex));
    }

    #[test]
    fn equal_vertex_sets_at_two_ranks_are_allowed() {
        let cc = CombinatorialComplex::build([(vec![0, 1], 1), (vec![0, 1], 2)], 2).unwrap();
        assert_eq!(cc.skeleton_sizes(), vec![2, 1, 1]);
        let up = cc.neighborhood(NeighborhoodSpec::incidence_up(1, 2), &Cell::new([0, 1], 1)).unwrap();
        assert_eq!(up, vec![Cell::new([0, 1], 2)]);
    }

    #[test]
    fn triangle_neighborhoods() {
        let cc = filled_triangle();
        let n = cc.neighborhood(NeighborhoodSpec::adjacency(0, 1), &Cell::new([0], 0)).unwrap();
        assert_eq!(n, vec![Cell::new([1], 0), Cell::new([2], 0)]);
        let n = cc.neighborhood(NeighborhoodSpec::incidence_up(1, 2), &Cell::new([0, 1], 1)).unwrap();
        assert_eq!(n, vec![Cell::new([0, 1, 2], 2)]);
        assert!(cc.neighborhood(NeighborhoodSpec::adjacency(0, 1), &Cell::new([0, 1], 1)).unwrap().is_empty());
        assert!(matches!(
            cc.neighborhood(NeighborhoodSpec::adjacency(0, 1), &Cell::new([0, 4], 1)),
            Err(ComplexError::UnknownCell(_))
        ));
    }

    #[test]
    fn illustrated_neighborhood_relations() {
        let cc = neighborhood_illustration();
        let (a, b, c, d, e, f, g, h) = (0, 1, 2, 3, 4, 5, 6, 7);
        let has = |spec: NeighborhoodSpec, x: Cell, y: Cell| cc.neighborhood(spec, &x).unwrap().contains(&y);
        let n = |v: &[usize]| Cell::new(v.iter().copied(), 0);
        let e1 = |u: usize, v: usize| Cell::new([u, v], 1);
        let f2 = |v: &[usize]| Cell::new(v.iter().copied(), 2);
        assert!(has(NeighborhoodSpec::adjacency(0, 1), n(&[b]), n(&[a])));
        assert!(!has(NeighborhoodSpec::adjacency(0, 1), n(&[d]), n(&[a])));
        assert!(has(NeighborhoodSpec::adjacency(0, 2), n(&[d]), n(&[a])));
        assert!(has(NeighborhoodSpec::coadjacency(1, 0), e1(a, c), e1(c, d)));
        assert!(!has(NeighborhoodSpec::coadjacency(1, 0), e1(a, b), e1(c, d)));
        assert!(has(NeighborhoodSpec::adjacency(1, 2), e1(a, b), e1(c, d)));
        assert!(has(NeighborhoodSpec::coadjacency(2, 0), f2(&[e, f, h]), f2(&[c, d, e])));
        assert!(!has(NeighborhoodSpec::coadjacency(2, 1), f2(&[e, f, h]), f2(&[c, d, e])));
        assert!(has(NeighborhoodSpec::coadjacency(2, 1), f2(&[c, d, e]), f2(&[a, b, c, d])));
        assert!(has(NeighborhoodSpec::incidence_up(0, 1), n(&[d]), e1(b, d)));
        assert!(has(NeighborhoodSpec::incidence_up(0, 2), n(&[g]), f2(&[f, g, h])));
        assert!(has(NeighborhoodSpec::incidence_down(1, 0), e1(b, d), n(&[b])));
        assert!(!has(NeighborhoodSpec::incidence_down(1, 0), e1(c, d), n(&[b])));
        assert!(has(NeighborhoodSpec::incidence_down(2, 0), f2(&[a, b, c, d]), n(&[b])));
        assert!(!has(NeighborhoodSpec::incidence_down(2, 0), f2(&[c, d, e]), n(&[b])));
    }

    #[test]
    fn coadjacency_hasse_graph_of_two_strips() {
        // nodes A..I = 0..8
        let edges = [(0, 1), (0, 2), (2, 3), (1, 3), (2, 4), (3, 4), (4, 5), (5, 6), (5, 7), (6, 7), (6, 8), (7, 8)];
        let mut cells: Vec<(Vec<usize>, usize)> = edges.iter().map(|&(u, v)| (vec![u, v], 1)).collect();
        cells.extend([(vec![0, 1, 2, 3], 2), (vec![2, 3, 4], 2), (vec![5, 6, 7], 2), (vec![6, 7, 8], 2)]);
        let cc = CombinatorialComplex::build(cells, 9).unwrap();
        let h = cc.augmented_hasse_graph(NeighborhoodSpec::coadjacency(2, 1)).unwrap();
        assert_eq!(h.num_nodes(), 4);
        assert_eq!(h.edges(), &[(0, 1), (2, 3)]);
        assert!(matches!(
            cc.augmented_hasse_graph(NeighborhoodSpec::incidence_up(0, 1)),
            Err(ComplexError::WrongKind(_))
        ));
    }

    #[test]
    fn graph_matrices_match() {
        let g = SimpleGraph::new(4, [(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        let cc = g.to_complex().unwrap();
        assert_eq!(cc.neighborhood_matrix(NeighborhoodSpec::adjacency(0, 1)).unwrap(), g.adjacency_matrix());
        assert_eq!(cc.neighborhood_matrix(NeighborhoodSpec::incidence_up(0, 1)).unwrap(), g.incidence_matrix());
        assert_eq!(cc.augmented_hasse_graph(NeighborhoodSpec::adjacency(0, 1)).unwrap(), g);
    }

    #[test]
    fn empty_intermediate_skeleton_gives_zero_matrix() {
        let cc = CombinatorialComplex::build([(vec![0, 1, 2], 2)], 3).unwrap();
        assert_eq!(cc.skeleton_sizes(), vec![3, 0, 1]);
        let m = cc.neighborhood_matrix(NeighborhoodSpec::adjacency(0, 1)).unwrap();
        assert_eq!((m.rows(), m.cols(), m.nnz()), (3, 3, 0));
        assert!(cc.neighborhood_matrix(NeighborhoodSpec::adjacency(0, 3)).is_err());
    }

    #[test]
    fn hasse_graph_counts() {
        let h = single_edge().hasse_graph();
        assert_eq!(h.graph.num_nodes(), 3);
        assert_eq!(h.graph.edges(), &[(0, 2), (1, 2)]);
        let h = filled_triangle().hasse_graph();
        assert_eq!((h.graph.num_nodes(), h.graph.num_edges()), (7, 9));
        assert_eq!(h.ranks, vec![0, 0, 0, 1, 1, 1, 2]);
    }

    #[test]
    fn disjoint_union_adds_a_node() {
        let point = CombinatorialComplex::build(Vec::<(Vec<usize>, usize)>::new(), 1).unwrap();
        let u = filled_triangle().disjoint_union(&point);
        assert_eq!(u.num_nodes(), 4);
        assert_eq!(u.skeleton_sizes(), vec![4, 3, 1]);
    }

    #[test]
    fn json_format() {
        let cc = single_edge();
        assert_eq!(cc.encode_json(), r#"{"dimension":1,"num_nodes":2,"cells":[[[0],[1]],[[0,1]]]}"#);
        assert_eq!(CombinatorialComplex::decode_json(&cc.encode_json()).unwrap(), cc);
        let omitted = CombinatorialComplex::decode_json(r#"{"dimension":1,"num_nodes":2,"cells":[[[0,1]]]}"#).unwrap();
        assert_eq!(omitted, cc);
        let empty_zero = CombinatorialComplex::decode_json(r#"{"dimension":1,"num_nodes":2,"cells":[[],[[0,1]]]}"#).unwrap();
        assert_eq!(empty_zero, cc);
    }

    #[test]
    fn json_errors() {
        let err = CombinatorialComplex::decode_json("{\n  \"dimension\": 1,\n  oops }").unwrap_err();
        assert!(matches!(err, ComplexError::Parse { line: 3, .. }), "{err:?}");
        let err = CombinatorialComplex::decode_json(r#"{"dimension":2,"num_nodes":3,"cells":[[],[[0,1,2]],[[0,1]]]}"#)
            .unwrap_err();
        assert!(matches!(err, ComplexError::RankViolation { .. }));
        let err = CombinatorialComplex::decode_json(r#"{"dimension":2,"num_nodes":2,"cells":[[],[[0,1]],[]]}"#)
            .unwrap_err();
        assert!(matches!(err, ComplexError::DimensionMismatch { .. }));
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("A:0,1".parse::<NeighborhoodSpec>().unwrap(), NeighborhoodSpec::adjacency(0, 1));
        assert_eq!("Bt:2,0".parse::<NeighborhoodSpec>().unwrap(), NeighborhoodSpec::incidence_down(2, 0));
        assert_eq!(NeighborhoodSpec::coadjacency(2, 1).to_string(), "coA:2,1");
        assert!("X:0,1".parse::<NeighborhoodSpec>().is_err());
    }
}
