//! Topological and metric invariants of combinatorial complexes.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::complex::{Cell, CellId, CombinatorialComplex, NeighborhoodSpec};
use crate::graph::SimpleGraph;
use crate::matrix::{BitMatrix, SparseBinaryMatrix};

/// Path length, or `Infinite` when no path exists. `Finite(_) < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

// JSON: a number, or the string "inf".
impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u32(*d),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(Distance::Finite(n)),
            Raw::Text(t) if t == "inf" => Ok(Distance::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("expected a number or \"inf\", got {t:?}"))),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("{0} is not an adjacency or co-adjacency neighborhood")]
    WrongKind(NeighborhoodSpec),
    #[error("rank {0} skeleton is empty")]
    EmptySkeleton(usize),
    #[error("rank {rank} exceeds the complex dimension {dimension}")]
    RankOutOfRange { rank: usize, dimension: usize },
    #[error("cell {0:?} has no face of rank {1}")]
    CellWithoutFaces(Cell, usize),
    #[error("boundary composition d{rank}∘d{} is non-zero at ({row}, {col})", rank + 1)]
    NotAChainComplex { rank: usize, row: usize, col: usize },
    #[error("complex has dimension {0}, at least 2 is required")]
    DimensionTooLow(usize),
}

fn check_spec(cc: &CombinatorialComplex, spec: NeighborhoodSpec) -> Result<(), InvariantError> {
    if !spec.is_adjacency_type() {
        return Err(InvariantError::WrongKind(spec));
    }
    let dimension = cc.dimension();
    for rank in [spec.r1, spec.r2] {
        if rank > dimension {
            return Err(InvariantError::RankOutOfRange { rank, dimension });
        }
    }
    Ok(())
}

fn hasse(cc: &CombinatorialComplex, spec: NeighborhoodSpec) -> Result<SimpleGraph, InvariantError> {
    check_spec(cc, spec)?;
    Ok(cc.augmented_hasse_graph(spec).expect("spec kind checked"))
}

/// Connected components of the complex.
///
/// Two cells are connected when they share a node, transitively; labels are
/// numbered by smallest node. Returns the count and a label per cell, per rank.
pub fn connected_components(cc: &CombinatorialComplex) -> (usize, Vec<Vec<usize>>) {
    let n = cc.num_nodes();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for (cell, _) in cc.raw_cells() {
        let mut a = root(&mut parent, cell[0]);
        for &v in &cell[1..] {
            let b = root(&mut parent, v);
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
                a = lo;
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut node_label = vec![0; n];
    for v in 0..n {
        let r = root(&mut parent, v);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        node_label[v] = label[r];
    }
    let per_rank = (0..=cc.dimension())
        .map(|r| cc.skeleton(r).iter().map(|c| node_label[c[0]]).collect())
        .collect();
    (count, per_rank)
}

/// All-pairs distances over `X_{r1}` in the augmented Hasse graph of `spec`.
pub fn shortest_paths(cc: &CombinatorialComplex, spec: NeighborhoodSpec) -> Result<Vec<Vec<Distance>>, InvariantError> {
    let g = hasse(cc, spec)?;
    Ok((0..g.num_nodes()).into_par_iter().map(|s| g.bfs(s)).collect())
}

/// Largest distance between two cells of `X_{r1}`.
pub fn diameter(cc: &CombinatorialComplex, spec: NeighborhoodSpec) -> Result<Distance, InvariantError> {
    let g = hasse(cc, spec)?;
    if g.num_nodes() == 0 {
        return Err(InvariantError::EmptySkeleton(spec.r1));
    }
    let (count, _) = g.components();
    if count > 1 {
        return Ok(Distance::Infinite);
    }
    Ok((0..g.num_nodes())
        .into_par_iter()
        .map(|s| g.bfs(s).into_iter().max().expect("non-empty"))
        .max()
        .expect("non-empty"))
}

/// Diameters of the connected components of the augmented Hasse graph,
/// sorted ascending.
pub fn component_diameters(cc: &CombinatorialComplex, spec: NeighborhoodSpec) -> Result<Vec<u32>, InvariantError> {
    let g = hasse(cc, spec)?;
    let (count, labels) = g.components();
    let mut diam = vec![0u32; count];
    for s in 0..g.num_nodes() {
        let ecc = g.bfs(s).into_iter().filter_map(Distance::finite).max().unwrap_or(0);
        let c = labels[s];
        diam[c] = diam[c].max(ecc);
    }
    diam.sort_unstable();
    Ok(diam)
}

/// Histogram of distances over unordered pairs of distinct `X_{r1}` cells.
pub fn distance_histogram(
    cc: &CombinatorialComplex,
    spec: NeighborhoodSpec,
) -> Result<BTreeMap<Distance, usize>, InvariantError> {
    let dist = shortest_paths(cc, spec)?;
    let mut hist = BTreeMap::new();
    for (i, row) in dist.iter().enumerate() {
        for &d in &row[i + 1..] {
            *hist.entry(d).or_insert(0) += 1;
        }
    }
    Ok(hist)
}

/// `max_{x ∈ X_{r1}, y ∈ X_k} min_{x' ∈ X_{r1}, x' ⊆ y} d(x, x')`.
pub fn cross_diameter(cc: &CombinatorialComplex, spec: NeighborhoodSpec, k: usize) -> Result<Distance, InvariantError> {
    let g = hasse(cc, spec)?;
    let dimension = cc.dimension();
    if k > dimension {
        return Err(InvariantError::RankOutOfRange { rank: k, dimension });
    }
    if g.num_nodes() == 0 {
        return Err(InvariantError::EmptySkeleton(spec.r1));
    }
    if cc.skeleton(k).is_empty() {
        return Err(InvariantError::EmptySkeleton(k));
    }
    let per_cell: Vec<Result<Distance, InvariantError>> = (0..cc.skeleton(k).len())
        .into_par_iter()
        .map(|y| {
            let faces = cc.subsets(k, spec.r1, y);
            if faces.is_empty() {
                return Err(InvariantError::CellWithoutFaces(cc.cell(CellId::new(k, y)), spec.r1));
            }
            let dist = multi_source_bfs(&g, faces.iter().map(|&f| f as usize));
            Ok(dist.into_iter().max().expect("non-empty"))
        })
        .collect();
    let mut best = Distance::Finite(0);
    for d in per_cell {
        best = best.max(d?);
    }
    Ok(best)
}

fn multi_source_bfs(g: &SimpleGraph, sources: impl Iterator<Item = usize>) -> Vec<Distance> {
    let mut dist = vec![Distance::Infinite; g.num_nodes()];
    let mut queue = VecDeque::new();
    for s in sources {
        dist[s] = Distance::Finite(0);
        queue.push_back((s, 0u32));
    }
    while let Some((v, d)) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == Distance::Infinite {
                dist[w] = Distance::Finite(d + 1);
                queue.push_back((w, d + 1));
            }
        }
    }
    dist
}

/// `Σ_r (−1)^r n_r`.
pub fn euler_characteristic(cc: &CombinatorialComplex) -> i64 {
    cc.skeleton_sizes()
        .iter()
        .enumerate()
        .map(|(r, &n)| if r % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// GF(2) boundary operators `∂_1..∂_ℓ`; `∂_r` has rows over `X_r` and
/// columns over `X_{r-1}`.
#[derive(Debug, Clone)]
pub struct BoundaryMatrices {
    pub matrices: Vec<SparseBinaryMatrix>,
    /// First non-zero entry of some `∂_{r+1}∘∂_r`, if any.
    pub violation: Option<InvariantError>,
}

impl BoundaryMatrices {
    pub fn is_chain_complex(&self) -> bool {
        self.violation.is_none()
    }

    /// `∂_r` for `1 ≤ r ≤ ℓ`.
    pub fn boundary(&self, r: usize) -> &SparseBinaryMatrix {
        &self.matrices[r - 1]
    }
}

pub fn boundary_matrices(cc: &CombinatorialComplex) -> BoundaryMatrices {
    let dim = cc.dimension();
    let matrices: Vec<SparseBinaryMatrix> = (1..=dim)
        .map(|r| {
            cc.neighborhood_matrix(NeighborhoodSpec::incidence_down(r, r - 1))
                .expect("ranks within dimension")
        })
        .collect();
    let mut violation = None;
    for r in 1..dim {
        let comp = matrices[r].mul_gf2(&matrices[r - 1]);
        let first = comp.entries().next();
        if let Some((row, col)) = first {
            violation = Some(InvariantError::NotAChainComplex { rank: r, row, col });
            break;
        }
    }
    BoundaryMatrices { matrices, violation }
}

/// Betti numbers over GF(2), `b_0..b_ℓ`.
pub fn betti_gf2(cc: &CombinatorialComplex) -> Result<Vec<usize>, InvariantError> {
    let bd = boundary_matrices(cc);
    if let Some(v) = bd.violation {
        return Err(v);
    }
    let sizes = cc.skeleton_sizes();
    let ranks: Vec<usize> = bd.matrices.iter().map(|m| BitMatrix::from_sparse(m).rank()).collect();
    let rank_of = |r: usize| if r == 0 || r > ranks.len() { 0 } else { ranks[r - 1] };
    Ok((0..sizes.len()).map(|r| sizes[r] - rank_of(r) - rank_of(r + 1)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Orientability {
    Orientable,
    /// `witness` is a closed walk of 2-cells along shared edges whose
    /// induced orientation flips an odd number of times.
    NonOrientable { witness: Vec<Vec<usize>> },
    NotASurface { cell: Cell, reason: String },
}

/// The two faces sharing an edge must traverse it in opposite directions.
pub fn orientability_2d(cc: &CombinatorialComplex) -> Result<Orientability, InvariantError> {
    if cc.dimension() < 2 {
        return Err(InvariantError::DimensionTooLow(cc.dimension()));
    }
    for (i, e) in cc.skeleton(1).iter().enumerate() {
        if e.len() != 2 {
            return Ok(Orientability::NotASurface {
                cell: cc.cell(CellId::new(1, i)),
                reason: format!("1-cell has {} vertices", e.len()),
            });
        }
        let faces = cc.supersets(1, 2, i).len();
        if faces > 2 {
            return Ok(Orientability::NotASurface {
                cell: cc.cell(CellId::new(1, i)),
                reason: format!("1-cell lies in {faces} 2-cells"),
            });
        }
    }
    let faces = cc.skeleton(2);
    // direction[f][e]: +1 if the canonical cycle of face f runs e.0 -> e.1
    let mut directions: Vec<Vec<(u32, i8)>> = Vec::with_capacity(faces.len());
    for f in 0..faces.len() {
        match face_cycle(cc, f) {
            Ok(dirs) => directions.push(dirs),
            Err(reason) => return Ok(Orientability::NotASurface { cell: cc.cell(CellId::new(2, f)), reason }),
        }
    }
    let dir_of = |f: usize, e: u32| -> i8 {
        directions[f].iter().find(|(x, _)| *x == e).expect("edge belongs to face").1
    };

    let mut sign = vec![0i8; faces.len()];
    let mut parent = vec![usize::MAX; faces.len()];
    let mut depth = vec![0usize; faces.len()];
    for start in 0..faces.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for &(e, df) in &directions[f] {
                for &g in cc.supersets(1, 2, e as usize) {
                    let g = g as usize;
                    if g == f {
                        continue;
                    }
                    let want = -sign[f] * df * dir_of(g, e);
                    if sign[g] == 0 {
                        sign[g] = want;
                        parent[g] = f;
                        depth[g] = depth[f] + 1;
                        queue.push_back(g);
                    } else if sign[g] != want {
                        let witness = tree_cycle(&parent, &depth, f, g)
                            .into_iter()
                            .map(|x| faces[x].clone())
                            .collect();
                        return Ok(Orientability::NonOrientable { witness });
                    }
                }
            }
        }
    }
    Ok(Orientability::Orientable)
}

/// Path f -> lca -> g in the BFS tree; closing edge g -> f is implied.
fn tree_cycle(parent: &[usize], depth: &[usize], f: usize, g: usize) -> Vec<usize> {
    let (mut a, mut b) = (f, g);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Boundary edges of face `f`, with the direction of each in the face's
/// canonical traversal: start at the smallest vertex, step to its smaller
/// cycle neighbor.
fn face_cycle(cc: &CombinatorialComplex, f: usize) -> Result<Vec<(u32, i8)>, String> {
    let verts = &cc.skeleton(2)[f];
    let edges = cc.subsets(2, 1, f);
    let pos = |v: usize| verts.binary_search(&v).expect("edge vertex in face");
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    for &e in edges {
        let ev = &cc.skeleton(1)[e as usize];
        let (a, b) = (pos(ev[0]), pos(ev[1]));
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    if verts.len() < 3 || nbrs.iter().any(|n| n.len() != 2) {
        return Err("boundary 1-cells do not form a single cycle through every vertex".into());
    }
    let mut order = vec![0usize];
    let mut cur = 0usize;
    let mut next = *nbrs[0].iter().min().expect("degree 2");
    while next != 0 && order.len() <= verts.len() {
        order.push(next);
        let prev = cur;
        cur = next;
        next = if nbrs[cur][0] == prev { nbrs[cur][1] } else { nbrs[cur][0] };
    }
    if order.len() != verts.len() {
        return Err("boundary 1-cells form more than one cycle".into());
    }
    let mut succ = vec![0usize; verts.len()];
    for (i, &v) in order.iter().enumerate() {
        succ[v] = order[(i + 1) % order.len()];
    }
    Ok(edges
        .iter()
        .map(|&e| {
            let ev = &cc.skeleton(1)[e as usize];
            let (a, b) = (pos(ev[0]), pos(ev[1]));
            (e, if succ[a] == b { 1 } else { -1 })
        })
        .collect())
}

/// The 1-cells lying in exactly one 2-cell, as a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryGraph {
    /// Original node id of each graph node.
    pub nodes: Vec<usize>,
    pub graph: SimpleGraph,
}

impl BoundaryGraph {
    /// Sorted cycle lengths when every component is a simple cycle.
    pub fn cycle_lengths(&self) -> Option<Vec<usize>> {
        if (0..self.graph.num_nodes()).any(|v| self.graph.degree(v) != 2) {
            return None;
        }
        let (count, labels) = self.graph.components();
        let mut sizes = vec![0; count];
        for l in labels {
            sizes[l] += 1;
        }
        sizes.sort_unstable();
        Some(sizes)
    }
}

pub fn boundary_edge_graph(cc: &CombinatorialComplex) -> Result<BoundaryGraph, InvariantError> {
    if cc.dimension() < 2 {
        return Err(InvariantError::DimensionTooLow(cc.dimension()));
    }
    let edges: Vec<&Vec<usize>> = cc
        .skeleton(1)
        .iter()
        .enumerate()
        .filter(|&(i, e)| e.len() == 2 && cc.supersets(1, 2, i).len() == 1)
        .map(|(_, e)| e)
        .collect();
    let mut nodes: Vec<usize> = edges.iter().flat_map(|e| e.iter().copied()).collect();
    nodes.sort_unstable();
    nodes.dedup();
    let pos = |v: usize| nodes.binary_search(&v).expect("endpoint collected");
    let graph = SimpleGraph::new(nodes.len(), edges.iter().map(|e| (pos(e[0]), pos(e[1]))))
        .expect("distinct 1-cells give distinct edges");
    Ok(BoundaryGraph { nodes, graph })
}

/// Summary of the invariants of one complex.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub num_nodes: usize,
    pub skeleton_sizes: Vec<usize>,
    pub components: usize,
    pub euler_characteristic: i64,
    pub betti: Option<Vec<usize>>,
    pub chain_complex_violation: Option<String>,
    pub spec: String,
    pub diameter: Option<Distance>,
    pub cross_k: usize,
    pub cross_diameter: Option<Distance>,
    pub orientability: Option<Orientability>,
    pub boundary_cycles: Option<Vec<usize>>,
}

pub fn report(cc: &CombinatorialComplex, spec: NeighborhoodSpec, cross_k: usize) -> Result<InvariantReport, InvariantError> {
    check_spec(cc, spec)?;
    let betti = betti_gf2(cc);
    let two_dim = cc.dimension() >= 2;
    Ok(InvariantReport {
        num_nodes: cc.num_nodes(),
        skeleton_sizes: cc.skeleton_sizes(),
        components: connected_components(cc).0,
        euler_characteristic: euler_characteristic(cc),
        chain_complex_violation: betti.as_ref().err().map(ToString::to_string),
        betti: betti.ok(),
        spec: spec.to_string(),
        diameter: diameter(cc, spec).ok(),
        cross_k,
        cross_diameter: cross_diameter(cc, spec, cross_k).ok(),
        orientability: if two_dim { orientability_2d(cc).ok() } else { None },
        boundary_cycles: if two_dim { boundary_edge_graph(cc).ok().and_then(|b| b.cycle_lengths()) } else { None },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cylinder, moebius, torus};

    const A01: NeighborhoodSpec = NeighborhoodSpec { kind: crate::complex::NeighborhoodKind::Adjacency, r1: 0, r2: 1 };

    fn filled_triangle() -> CombinatorialComplex {
        CombinatorialComplex::build([(vec![0, 1], 1), (vec![0, 2], 1), (vec![1, 2], 1), (vec![0, 1, 2], 2)], 3).unwrap()
    }

    #[test]
    fn distance_serialises_as_number_or_inf() {
        assert_eq!(serde_json::to_string(&Distance::Finite(3)).unwrap(), "3");
        assert_eq!(serde_json::to_string(&Distance::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<Distance>("\"inf\"").unwrap(), Distance::Infinite);
        assert!(Distance::Finite(u32::MAX) < Distance::Infinite);
    }

    #[test]
    fn components_of_unions() {
        let t = torus(&[3, 3]).unwrap();
        assert_eq!(connected_components(&t).0, 1);
        let u = t.disjoint_union(&torus(&[3, 4]).unwrap());
        let (count, labels) = connected_components(&u);
        assert_eq!(count, 2);
        assert!(labels[2].iter().take(9).all(|&l| l == 0));
        assert!(labels[2].iter().skip(9).all(|&l| l == 1));
    }

    #[test]
    fn torus_distances() {
        let t = torus(&[3, 3]).unwrap();
        let d = shortest_paths(&t, A01).unwrap();
        // (0,0) and (1,1) are opposite corners of a grid square
        assert_eq!(d[0][4], Distance::Finite(2));
        assert_eq!(diameter(&t, A01).unwrap(), Distance::Finite(2));
        let u = t.disjoint_union(&t);
        assert_eq!(shortest_paths(&u, A01).unwrap()[0][9], Distance::Infinite);
        assert_eq!(diameter(&u, A01).unwrap(), Distance::Infinite);
        assert_eq!(component_diameters(&u, A01).unwrap(), vec![2, 2]);
    }

    #[test]
    fn diameters_of_reference_tori() {
        assert_eq!(diameter(&torus(&[4, 4, 32]).unwrap(), A01).unwrap(), Distance::Finite(20));
        assert_eq!(diameter(&torus(&[8, 8, 8]).unwrap(), A01).unwrap(), Distance::Finite(12));
        let edge = CombinatorialComplex::build([(vec![0, 1], 1)], 2).unwrap();
        assert_eq!(diameter(&edge, A01).unwrap(), Distance::Finite(1));
        assert!(matches!(
            diameter(&edge, NeighborhoodSpec::incidence_up(0, 1)),
            Err(InvariantError::WrongKind(_))
        ));
    }

    #[test]
    fn euler_characteristics() {
        for p in [(3, 3), (3, 4), (4, 5)] {
            assert_eq!(euler_characteristic(&torus(&[p.0, p.1]).unwrap()), 0);
        }
        assert_eq!(euler_characteristic(&cylinder(3, 4).unwrap()), 0);
        assert_eq!(euler_characteristic(&filled_triangle()), 1);
    }

    #[test]
    fn boundary_of_torus() {
        let t = torus(&[3, 3]).unwrap();
        let bd = boundary_matrices(&t);
        assert!(bd.is_chain_complex());
        let d2 = bd.boundary(2);
        assert_eq!((d2.rows(), d2.cols()), (9, 18));
        assert!((0..9).all(|r| d2.row_count(r) == 4));
    }

    #[test]
    fn boundary_of_graph_is_incidence() {
        let g = SimpleGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let bd = boundary_matrices(&g.to_complex().unwrap());
        assert_eq!(bd.boundary(1).transpose(), g.incidence_matrix());
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(betti_gf2(&torus(&[3, 3]).unwrap()).unwrap(), vec![1, 2, 1]);
        let u = torus(&[3, 3]).unwrap().disjoint_union(&torus(&[3, 4]).unwrap());
        assert_eq!(betti_gf2(&u).unwrap(), vec![2, 4, 2]);
        assert_eq!(betti_gf2(&cylinder(3, 4).unwrap()).unwrap(), vec![1, 1, 0]);
        assert_eq!(betti_gf2(&moebius(3, 4).unwrap()).unwrap(), vec![1, 1, 0]);
        assert_eq!(betti_gf2(&filled_triangle()).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn non_chain_complex_is_reported() {
        // a 2-cell whose only face is a single edge
        let cc = CombinatorialComplex::build([(vec![0, 1], 1), (vec![0, 1], 2)], 2).unwrap();
        assert!(matches!(betti_gf2(&cc), Err(InvariantError::NotAChainComplex { rank: 1, .. })));
    }

    #[test]
    fn orientability_verdicts() {
        assert_eq!(orientability_2d(&cylinder(3, 4).unwrap()).unwrap(), Orientability::Orientable);
        assert_eq!(orientability_2d(&torus(&[3, 3]).unwrap()).unwrap(), Orientability::Orientable);
        match orientability_2d(&moebius(3, 4).unwrap()).unwrap() {
            Orientability::NonOrientable { witness } => assert!(witness.len() >= 2),
            other => panic!("unexpected {other:?}"),
        }
        let pinched = CombinatorialComplex::build([(vec![0, 1], 1), (vec![0, 1], 2)], 2).unwrap();
        assert!(matches!(orientability_2d(&pinched).unwrap(), Orientability::NotASurface { .. }));
        assert_eq!(
            orientability_2d(&SimpleGraph::new(2, [(0, 1)]).unwrap().to_complex().unwrap()),
            Err(InvariantError::DimensionTooLow(1))
        );
    }

    #[test]
    fn boundary_graphs() {
        assert_eq!(boundary_edge_graph(&cylinder(3, 4).unwrap()).unwrap().cycle_lengths(), Some(vec![4, 4]));
        assert_eq!(boundary_edge_graph(&moebius(3, 4).unwrap()).unwrap().cycle_lengths(), Some(vec![8]));
        let t = boundary_edge_graph(&torus(&[3, 3]).unwrap()).unwrap();
        assert_eq!(t.graph.num_nodes(), 0);
    }

    #[test]
    fn cross_diameter_basics() {
        assert_eq!(cross_diameter(&filled_triangle(), A01, 2).unwrap(), Distance::Finite(0));
        let t = torus(&[3, 3]).unwrap();
        assert_eq!(cross_diameter(&t.disjoint_union(&t), A01, 2).unwrap(), Distance::Infinite);
        let edge = CombinatorialComplex::build([(vec![0, 1], 1)], 2).unwrap();
        assert_eq!(cross_diameter(&edge, A01, 2), Err(InvariantError::RankOutOfRange { rank: 2, dimension: 1 }));
    }
}
