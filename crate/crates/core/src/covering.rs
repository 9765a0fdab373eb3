//! Covering maps between complexes and the explicit covers of the torus,
//! strip, star and Mapper families.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Cell, CellId, CombinatorialComplex, ComplexError, ComplexJson, NeighborhoodSpec};
use crate::generators::{self, flatten, unflatten, GeneratorError};
use crate::graph::SimpleGraph;
use crate::lifting::triangular_lift;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("source has dimension {source_dim}, target has dimension {target_dim}")]
    DimensionMismatch { source_dim: usize, target_dim: usize },
    #[error("period {small} does not divide {big}")]
    NotDivisible { big: usize, small: usize },
    #[error("tori have different dimensions ({0} vs {1})")]
    TorusDimensionMismatch(usize, usize),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("image {image:?} of cell {cell:?} is not a rank-{} cell of the target", cell.rank())]
    ImageNotACell { cell: Cell, image: Vec<usize> },
    #[error("assignment for rank {rank} has {got} entries, expected {expected}")]
    AssignmentLength { rank: usize, got: usize, expected: usize },
    #[error("assignment for rank {rank} maps to index {index}, target skeleton has {size} cells")]
    AssignmentOutOfRange { rank: usize, index: usize, size: usize },
    #[error("JSON parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("not a covering: {0}")]
    Violation(Box<Violation>),
}

/// First failure found by [`verify_covering`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    NotSurjective { rank: usize, missing: Cell },
    NotInjective { cell: Cell, spec: NeighborhoodSpec, neighbors: Vec<Cell> },
    ImageMismatch { cell: Cell, spec: NeighborhoodSpec, mapped: Vec<Cell>, expected: Vec<Cell> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSurjective { rank, missing } => {
                write!(f, "rank {rank} cell {:?} has no preimage", missing.vertices())
            }
            Violation::NotInjective { cell, spec, neighbors } => write!(
                f,
                "{spec} of {:?} (rank {}) is not mapped injectively; neighbors {:?}",
                cell.vertices(),
                cell.rank(),
                neighbors.iter().map(Cell::vertices).collect::<Vec<_>>()
            ),
            Violation::ImageMismatch { cell, spec, mapped, expected } => write!(
                f,
                "{spec} of {:?} (rank {}) maps onto {:?}, but the image cell has {:?}",
                cell.vertices(),
                cell.rank(),
                mapped.iter().map(Cell::vertices).collect::<Vec<_>>(),
                expected.iter().map(Cell::vertices).collect::<Vec<_>>()
            ),
        }
    }
}

/// A rank-preserving map from the cells of `source` to those of `target`.
#[derive(Debug, Clone)]
pub struct CellMap {
    source: Arc<CombinatorialComplex>,
    target: Arc<CombinatorialComplex>,
    assignment: Vec<Vec<usize>>,
}

impl CellMap {
    /// `assignment[r][i]` is the target index of source cell `i` of rank `r`.
    pub fn new(
        source: Arc<CombinatorialComplex>,
        target: Arc<CombinatorialComplex>,
        assignment: Vec<Vec<usize>>,
    ) -> Result<Self, CoverError> {
        let ranks = source.dimension() + 1;
        if assignment.len() != ranks {
            return Err(CoverError::AssignmentLength { rank: assignment.len(), got: assignment.len(), expected: ranks });
        }
        for (rank, images) in assignment.iter().enumerate() {
            let expected = source.skeleton(rank).len();
            if images.len() != expected {
                return Err(CoverError::AssignmentLength { rank, got: images.len(), expected });
            }
            let size = target.skeleton(rank).len();
            if let Some(&index) = images.iter().find(|&&j| j >= size) {
                return Err(CoverError::AssignmentOutOfRange { rank, index, size });
            }
        }
        Ok(Self { source, target, assignment })
    }

    /// Extends a node map to cells by image of vertex sets. Fails when some
    /// image is not a cell of the same rank in the target.
    pub fn from_node_map(
        source: Arc<CombinatorialComplex>,
        target: Arc<CombinatorialComplex>,
        node_map: &[usize],
    ) -> Result<Self, CoverError> {
        assert_eq!(node_map.len(), source.num_nodes(), "one image per source node");
        let mut assignment = Vec::with_capacity(source.dimension() + 1);
        for r in 0..=source.dimension() {
            let mut images = Vec::with_capacity(source.skeleton(r).len());
            for cell in source.skeleton(r) {
                let mut image: Vec<usize> = cell.iter().map(|&v| node_map[v]).collect();
                image.sort_unstable();
                image.dedup();
                match target.find(&image, r) {
                    Some(j) => images.push(j),
                    None => {
                        return Err(CoverError::ImageNotACell { cell: Cell::new(cell.iter().copied(), r), image })
                    }
                }
            }
            assignment.push(images);
        }
        Ok(Self { source, target, assignment })
    }

    pub fn identity(cc: Arc<CombinatorialComplex>) -> Self {
        let assignment = cc.skeleton_sizes().into_iter().map(|n| (0..n).collect()).collect();
        Self { source: cc.clone(), target: cc, assignment }
    }

    pub fn source(&self) -> &Arc<CombinatorialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CombinatorialComplex> {
        &self.target
    }

    pub fn assignment(&self) -> &[Vec<usize>] {
        &self.assignment
    }

    pub fn image(&self, id: CellId) -> CellId {
        CellId::new(id.rank, self.assignment[id.rank][id.index])
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &CellMap) -> Result<CellMap, CoverError> {
        let assignment = self
            .assignment
            .iter()
            .enumerate()
            .map(|(r, images)| images.iter().map(|&j| other.assignment[r][j]).collect())
            .collect();
        CellMap::new(self.source.clone(), other.target.clone(), assignment)
    }

    /// Number of preimages of every target cell, per rank.
    pub fn fiber_sizes(&self) -> Vec<Vec<usize>> {
        self.assignment
            .iter()
            .enumerate()
            .map(|(r, images)| {
                let mut sizes = vec![0; self.target.skeleton(r).len()];
                for &j in images {
                    sizes[j] += 1;
                }
                sizes
            })
            .collect()
    }

    pub fn to_json(&self) -> CellMapJson {
        CellMapJson {
            source: self.source.to_json_value(),
            target: self.target.to_json_value(),
            assignment: self.assignment.clone(),
        }
    }

    pub fn encode_json(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("cell map serialises")
    }

    pub fn decode_json(text: &str) -> Result<Self, CoverError> {
        let raw: CellMapJson = serde_json::from_str(text).map_err(|e| CoverError::Parse {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })?;
        let source = Arc::new(CombinatorialComplex::from_json_value(raw.source)?);
        let target = Arc::new(CombinatorialComplex::from_json_value(raw.target)?);
        CellMap::new(source, target, raw.assignment)
    }
}

/// Serialised form of a [`CellMap`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellMapJson {
    pub source: ComplexJson,
    pub target: ComplexJson,
    pub assignment: Vec<Vec<usize>>,
}

/// Checks that `map` is surjective on every rank and a bijection from
/// `N(x')` onto `N(ρ(x'))` for every cell `x'` and natural neighborhood `N`.
pub fn verify_covering(map: &CellMap) -> Result<(), CoverError> {
    let (src, tgt) = (&*map.source, &*map.target);
    if src.dimension() != tgt.dimension() {
        return Err(CoverError::DimensionMismatch { source_dim: src.dimension(), target_dim: tgt.dimension() });
    }
    for (rank, sizes) in map.fiber_sizes().iter().enumerate() {
        if let Some(j) = sizes.iter().position(|&s| s == 0) {
            let missing = tgt.cell(CellId::new(rank, j));
            return Err(CoverError::Violation(Box::new(Violation::NotSurjective { rank, missing })));
        }
    }
    let dim = src.dimension();
    let specs = NeighborhoodSpec::all_natural(dim);
    let cells: Vec<CellId> = src.cell_ids().collect();
    let first = cells.par_iter().find_map_first(|&id| {
        let image = map.image(id);
        for spec in specs.iter().filter(|s| s.r1 == id.rank) {
            let t = spec.target_rank();
            let neighbors = src.neighbor_indices(*spec, id.index);
            let mut mapped: Vec<u32> = neighbors.iter().map(|&y| map.assignment[t][y as usize] as u32).collect();
            mapped.sort_unstable();
            let before = mapped.len();
            mapped.dedup();
            let to_cells = |c: &[u32], cc: &CombinatorialComplex| -> Vec<Cell> {
                c.iter().map(|&j| cc.cell(CellId::new(t, j as usize))).collect()
            };
            if mapped.len() != before {
                return Some(Violation::NotInjective { cell: src.cell(id), spec: *spec, neighbors: to_cells(&neighbors, src) });
            }
            let expected = tgt.neighbor_indices(*spec, image.index);
            if mapped != expected {
                return Some(Violation::ImageMismatch {
                    cell: src.cell(id),
                    spec: *spec,
                    mapped: to_cells(&mapped, tgt),
                    expected: to_cells(&expected, tgt),
                });
            }
        }
        None
    });
    match first {
        Some(v) => Err(CoverError::Violation(Box::new(v))),
        None => Ok(()),
    }
}

fn check_divisible(big: &[usize], small: &[usize]) -> Result<(), CoverError> {
    if big.len() != small.len() {
        return Err(CoverError::TorusDimensionMismatch(big.len(), small.len()));
    }
    for (&b, &s) in big.iter().zip(small) {
        if b % s != 0 {
            return Err(CoverError::NotDivisible { big: b, small: s });
        }
    }
    Ok(())
}

/// Coordinate-wise reduction `T_{big} → T_{small}`, `s ↦ s mod p`.
pub fn torus_mod_cover(big: &[usize], small: &[usize]) -> Result<CellMap, CoverError> {
    check_divisible(big, small)?;
    let source = Arc::new(generators::torus(big)?);
    let target = Arc::new(generators::torus(small)?);
    torus_mod_map(source, target, big, small)
}

fn torus_mod_map(
    source: Arc<CombinatorialComplex>,
    target: Arc<CombinatorialComplex>,
    big: &[usize],
    small: &[usize],
) -> Result<CellMap, CoverError> {
    check_divisible(big, small)?;
    let identity: Vec<usize> = (0..big.len()).collect();
    torus_permuted_map(source, target, big, small, &identity)
}

/// `T_{big} → T_{small}` sending coordinate `perm[i]` of the cover, reduced
/// mod `small[i]`, to coordinate `i` of the target.
fn torus_permuted_map(
    source: Arc<CombinatorialComplex>,
    target: Arc<CombinatorialComplex>,
    big: &[usize],
    small: &[usize],
    perm: &[usize],
) -> Result<CellMap, CoverError> {
    if big.len() != small.len() || perm.len() != small.len() {
        return Err(CoverError::TorusDimensionMismatch(big.len(), small.len()));
    }
    for (i, &s) in small.iter().enumerate() {
        if !big[perm[i]].is_multiple_of(s) {
            return Err(CoverError::NotDivisible { big: big[perm[i]], small: s });
        }
    }
    let node_map: Vec<usize> = (0..source.num_nodes())
        .map(|v| {
            let x = unflatten(v, big);
            let c: Vec<usize> = small.iter().enumerate().map(|(i, &p)| x[perm[i]] % p).collect();
            flatten(&c, small)
        })
        .collect();
    CellMap::from_node_map(source, target, &node_map)
}

/// `Cyl_{h,2p}` together with its covering maps onto `Cyl_{h,p}` and `Möb_{h,p}`.
pub fn strip_covers(h: usize, p: usize) -> Result<(Arc<CombinatorialComplex>, CellMap, CellMap), CoverError> {
    let cyl = Arc::new(generators::cylinder(h, p)?);
    let moeb = Arc::new(generators::moebius(h, p)?);
    let cover = Arc::new(generators::cylinder(h, 2 * p)?);
    let to_cyl: Vec<usize> = (0..cover.num_nodes()).map(|v| (v / (2 * p)) * p + (v % (2 * p)) % p).collect();
    let to_moeb: Vec<usize> = (0..cover.num_nodes())
        .map(|v| {
            let (i, j) = (v / (2 * p), v % (2 * p));
            if j < p {
                i * p + j
            } else {
                (h - 1 - i) * p + (j - p)
            }
        })
        .collect();
    let a = CellMap::from_node_map(cover.clone(), cyl, &to_cyl)?;
    let b = CellMap::from_node_map(cover.clone(), moeb, &to_moeb)?;
    Ok((cover, a, b))
}

/// Triangular lift of `Star_{n, m·k}` mapped onto that of `Star_{n,k}`:
/// `a_i ↦ a_{i mod nk}`, `b_j ↦ b_{j mod k}`.
pub fn star_cover(n: usize, k: usize, m: usize) -> Result<CellMap, CoverError> {
    let big = generators::star_graph(n, m * k)?;
    let small = generators::star_graph(n, k)?;
    let (big_ring, small_ring) = (n * m * k, n * k);
    let node_map: Vec<usize> = (0..big.num_nodes())
        .map(|v| if v < big_ring { v % small_ring } else { small_ring + (v - big_ring) % k })
        .collect();
    let source = Arc::new(triangular_lift(&big));
    let target = Arc::new(triangular_lift(&small));
    CellMap::from_node_map(source, target, &node_map)
}

/// A 12-node complex covering the Mapper poolings of both graphs of
/// [`generators::mog_example_pair`], with its two covering maps.
pub fn mog_example_cover(
    left_pooled: Arc<CombinatorialComplex>,
    right_pooled: Arc<CombinatorialComplex>,
) -> Result<(Arc<CombinatorialComplex>, CellMap, CellMap), CoverError> {
    let graph = SimpleGraph::new(
        12,
        [
            (0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11),
            (0, 4), (0, 8), (2, 5), (2, 9), (1, 6), (1, 10), (3, 7), (3, 11),
        ],
    )
    .expect("fixture");
    let cells = graph
        .edges()
        .iter()
        .map(|&(u, v)| (vec![u, v], 1))
        .chain((0..6).map(|i| (vec![2 * i, 2 * i + 1], 2)));
    let cover = Arc::new(CombinatorialComplex::build(cells, 12)?);
    let to_left = [2, 3, 2, 3, 0, 1, 4, 5, 1, 0, 5, 4];
    let to_right = [2, 3, 3, 2, 0, 1, 1, 0, 4, 5, 5, 4];
    let a = CellMap::from_node_map(cover.clone(), left_pooled, &to_left)?;
    let b = CellMap::from_node_map(cover.clone(), right_pooled, &to_right)?;
    Ok((cover, a, b))
}

/// A common cover of two complexes, with one covering map onto each
/// connected component of either side.
#[derive(Debug, Clone)]
pub struct CoverCertificate {
    pub cover: Arc<CombinatorialComplex>,
    pub left: Vec<CellMap>,
    pub right: Vec<CellMap>,
    pub node_counts: (usize, usize),
}

impl CoverCertificate {
    /// Checks the equal-node hypothesis and every map.
    pub fn verify(&self) -> Result<(), CoverError> {
        let count = |maps: &[CellMap]| maps.iter().map(|m| m.target.num_nodes()).sum::<usize>();
        if self.node_counts.0 != self.node_counts.1
            || count(&self.left) != self.node_counts.0
            || count(&self.right) != self.node_counts.1
        {
            return Err(CoverError::DimensionMismatch { source_dim: self.node_counts.0, target_dim: self.node_counts.1 });
        }
        for m in self.left.iter().chain(&self.right) {
            verify_covering(m)?;
        }
        Ok(())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Tori above this dimension keep their coordinate order when searching
/// for a small common cover.
const MAX_PERMUTED_DIMENSION: usize = 3;

/// Cover periods with one coordinate permutation per component.
pub type TorusLayout = (Vec<usize>, Vec<Vec<usize>>);

/// Smallest common cover `T_{L_1..L_ℓ}` of every component of two torus
/// unions, where each component may be laid out with its coordinates
/// permuted. Returns the cover periods and, per component (left then
/// right), the permutation `perm` with `L[perm[i]]` divisible by period
/// `i`. `None` when the node counts differ.
pub fn torus_union_cover(
    a: &[Vec<usize>],
    b: &[Vec<usize>],
) -> Result<Option<TorusLayout>, CoverError> {
    let dim = a.iter().chain(b).map(Vec::len).next().unwrap_or(0);
    for t in a.iter().chain(b) {
        if t.len() != dim {
            return Err(CoverError::TorusDimensionMismatch(dim, t.len()));
        }
        if let Some(&p) = t.iter().find(|&&p| p < 3) {
            return Err(GeneratorError::PeriodTooSmall(p).into());
        }
    }
    let nodes = |u: &[Vec<usize>]| u.iter().map(|t| t.iter().product::<usize>()).sum::<usize>();
    if a.is_empty() || b.is_empty() || nodes(a) != nodes(b) {
        return Ok(None);
    }
    let comps: Vec<&Vec<usize>> = a.iter().chain(b).collect();
    let perms = if dim <= MAX_PERMUTED_DIMENSION { permutations(dim) } else { vec![(0..dim).collect()] };
    let mut choice = vec![0usize; comps.len()];
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    loop {
        let mut periods = vec![1usize; dim];
        for (t, &c) in comps.iter().zip(&choice) {
            for (i, &p) in t.iter().enumerate() {
                let j = perms[c][i];
                periods[j] = lcm(periods[j], p);
            }
        }
        let size: usize = periods.iter().product();
        if best.as_ref().is_none_or(|(s, _, _)| size < *s) {
            best = Some((size, periods, choice.clone()));
        }
        let Some(k) = choice.iter().rposition(|&c| c + 1 < perms.len()) else { break };
        choice[k] += 1;
        for c in &mut choice[k + 1..] {
            *c = 0;
        }
    }
    let (_, periods, choice) = best.expect("at least one layout");
    Ok(Some((periods, choice.into_iter().map(|c| perms[c].clone()).collect())))
}

/// Common cover of two disjoint unions of tori of equal total size, with
/// one covering map per component, or `None` when the sizes differ.
pub fn torus_union_certificate(a: &[Vec<usize>], b: &[Vec<usize>]) -> Result<Option<CoverCertificate>, CoverError> {
    let Some((big, perms)) = torus_union_cover(a, b)? else {
        return Ok(None);
    };
    let cover = Arc::new(generators::torus(&big)?);
    let mut maps = Vec::with_capacity(perms.len());
    for (t, perm) in a.iter().chain(b).zip(&perms) {
        maps.push(torus_permuted_map(cover.clone(), Arc::new(generators::torus(t)?), &big, t, perm)?);
    }
    let right = maps.split_off(a.len());
    let nodes = |u: &[Vec<usize>]| u.iter().map(|t| t.iter().product::<usize>()).sum::<usize>();
    Ok(Some(CoverCertificate { left: maps, right, node_counts: (nodes(a), nodes(b)), cover }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle_graph, mog_example_pair, torus};
    use crate::lifting::mog_pool_fine;

    #[test]
    fn identity_is_a_cover() {
        for cc in [torus(&[3, 4]).unwrap(), generators::moebius(3, 4).unwrap()] {
            verify_covering(&CellMap::identity(Arc::new(cc))).unwrap();
        }
    }

    #[test]
    fn torus_mod_covers() {
        let m = torus_mod_cover(&[9, 12], &[3, 4]).unwrap();
        verify_covering(&m).unwrap();
        assert!(m.fiber_sizes().iter().flatten().all(|&s| s == 9));
        let id = torus_mod_cover(&[3, 3], &[3, 3]).unwrap();
        assert!(id.assignment().iter().all(|a| a.iter().enumerate().all(|(i, &j)| i == j)));
        assert_eq!(torus_mod_cover(&[6, 6], &[3, 4]).unwrap_err(), CoverError::NotDivisible { big: 6, small: 4 });
    }

    #[test]
    fn collapsing_map_is_rejected() {
        let c6 = Arc::new(cycle_graph(6).unwrap().to_complex().unwrap());
        let c3 = Arc::new(cycle_graph(3).unwrap().to_complex().unwrap());
        // every node to node 0, every edge to edge 0
        let m = CellMap::new(c6, c3, vec![vec![0; 6], vec![0; 6]]).unwrap();
        assert!(matches!(verify_covering(&m), Err(CoverError::Violation(_))));
    }

    #[test]
    fn wrapping_cycle_is_a_cover() {
        let c6 = Arc::new(cycle_graph(6).unwrap().to_complex().unwrap());
        let c3 = Arc::new(cycle_graph(3).unwrap().to_complex().unwrap());
        let m = CellMap::from_node_map(c6, c3, &[0, 1, 2, 0, 1, 2]).unwrap();
        verify_covering(&m).unwrap();
    }

    #[test]
    fn strips_are_covered() {
        let (cover, a, b) = strip_covers(3, 4).unwrap();
        assert_eq!(cover.num_nodes(), 24);
        verify_covering(&a).unwrap();
        verify_covering(&b).unwrap();
        assert!(a.fiber_sizes().iter().flatten().all(|&s| s == 2));
        assert!(b.fiber_sizes().iter().flatten().all(|&s| s == 2));
        assert!(matches!(strip_covers(2, 4), Err(CoverError::Generator(GeneratorError::PeriodTooSmall(2)))));
    }

    #[test]
    fn star_covers() {
        for (n, k) in [(2, 3), (2, 4), (3, 4)] {
            verify_covering(&star_cover(n, k, 2).unwrap()).unwrap();
        }
    }

    #[test]
    fn mog_cover() {
        let (g, h) = mog_example_pair();
        let (pg, ph) = (Arc::new(mog_pool_fine(&g).unwrap()), Arc::new(mog_pool_fine(&h).unwrap()));
        let (_, a, b) = mog_example_cover(pg, ph).unwrap();
        verify_covering(&a).unwrap();
        verify_covering(&b).unwrap();
    }

    #[test]
    fn composition_of_covers() {
        let a = torus_mod_cover(&[12, 12], &[6, 6]).unwrap();
        let b = torus_mod_cover(&[6, 6], &[3, 3]).unwrap();
        // b's source is a distinct but equal complex; compose through indices
        let c = a.then(&b).unwrap();
        verify_covering(&c).unwrap();
    }

    #[test]
    fn union_certificates() {
        let cert = torus_union_certificate(&[vec![3, 12]], &[vec![6, 6]]).unwrap().unwrap();
        // T(12,3) and T(6,6) lay out under T(12,6)
        assert_eq!(cert.cover.num_nodes(), 72);
        cert.verify().unwrap();
        let cert = torus_union_certificate(&[vec![3, 6]], &[vec![3, 3], vec![3, 3]]).unwrap().unwrap();
        assert_eq!((cert.left.len(), cert.right.len()), (1, 2));
        cert.verify().unwrap();
        assert!(torus_union_certificate(&[vec![3, 3]], &[vec![3, 4]]).unwrap().is_none());
    }

    #[test]
    fn json_round_trip() {
        let m = torus_mod_cover(&[6, 3], &[3, 3]).unwrap();
        let back = CellMap::decode_json(&m.encode_json()).unwrap();
        assert_eq!(back.assignment(), m.assignment());
        assert_eq!(**back.source(), **m.source());
        verify_covering(&back).unwrap();
    }

    #[test]
    fn dimension_mismatch() {
        let t = Arc::new(torus(&[3, 3]).unwrap());
        let g = Arc::new(cycle_graph(9).unwrap().to_complex().unwrap());
        let m = CellMap::new(g, t, vec![(0..9).collect(), (0..9).collect()]).unwrap();
        assert!(matches!(verify_covering(&m), Err(CoverError::DimensionMismatch { .. })));
    }
}
