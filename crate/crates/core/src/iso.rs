//! Exact isomorphism test for complexes by individualization and refinement.
//!
//! Two complexes are isomorphic when a node bijection maps the rank-`r`
//! cells of one onto the rank-`r` cells of the other for every `r`.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::complex::{Cell, CombinatorialComplex};
use crate::covering::CellMap;

/// Environment variable overriding the search budget of [`cc_isomorphic`].
pub const BUDGET_ENV: &str = "CCTOPO_ORACLE_BUDGET";
pub const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Debug, Clone)]
pub enum IsoResult {
    Isomorphic(CellMap),
    NonIsomorphic,
    /// The search tree exceeded the budget.
    Unknown,
}

impl IsoResult {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoResult::Isomorphic(_))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoViolation {
    #[error("rank {rank}: source has {source_size} cells, target has {target_size}")]
    SizeMismatch { rank: usize, source_size: usize, target_size: usize },
    #[error("rank {rank} assignment is not a bijection")]
    NotBijective { rank: usize },
    #[error("cell {:?} (rank {}) maps to {image:?}, whose nodes are not the image of its nodes", cell.vertices(), cell.rank())]
    VertexMismatch { cell: Cell, image: Vec<usize> },
}

/// Checks that `map` is a rank-preserving bijection on cells whose action
/// on every cell agrees with its action on nodes. Inclusion is then
/// preserved in both directions.
pub fn check_isomorphism(map: &CellMap) -> Result<(), IsoViolation> {
    let (src, tgt) = (map.source(), map.target());
    let ranks = src.dimension().max(tgt.dimension());
    for rank in 0..=ranks {
        let source_size = if rank <= src.dimension() { src.skeleton(rank).len() } else { 0 };
        let target_size = if rank <= tgt.dimension() { tgt.skeleton(rank).len() } else { 0 };
        if source_size != target_size {
            return Err(IsoViolation::SizeMismatch { rank, source_size, target_size });
        }
    }
    for (rank, images) in map.assignment().iter().enumerate() {
        let mut seen = vec![false; images.len()];
        for &j in images {
            if std::mem::replace(&mut seen[j], true) {
                return Err(IsoViolation::NotBijective { rank });
            }
        }
    }
    let node_map: Vec<usize> =
        (0..src.num_nodes()).map(|v| tgt.skeleton(0)[map.assignment()[0][v]][0]).collect();
    for (rank, images) in map.assignment().iter().enumerate() {
        for (i, &j) in images.iter().enumerate() {
            let mut mapped: Vec<usize> = src.skeleton(rank)[i].iter().map(|&v| node_map[v]).collect();
            mapped.sort_unstable();
            let image = &tgt.skeleton(rank)[j];
            if &mapped != image {
                return Err(IsoViolation::VertexMismatch {
                    cell: Cell::new(src.skeleton(rank)[i].iter().copied(), rank),
                    image: image.clone(),
                });
            }
        }
    }
    Ok(())
}

/// Inclusion structure on all cells with global ids; rank-0 cells come
/// first, so node `v` has id `v`.
struct Incidence {
    initial: Vec<u32>,
    up: Vec<Vec<u32>>,
    down: Vec<Vec<u32>>,
}

impl Incidence {
    fn new(cc: &CombinatorialComplex) -> Self {
        let offsets = cc.offsets();
        let dim = cc.dimension();
        let mut initial = Vec::with_capacity(cc.num_cells());
        let mut up = Vec::with_capacity(cc.num_cells());
        let mut down = Vec::with_capacity(cc.num_cells());
        for r in 0..=dim {
            for i in 0..cc.skeleton(r).len() {
                initial.push(r as u32);
                let mut u = Vec::new();
                for r2 in r + 1..=dim {
                    u.extend(cc.supersets(r, r2, i).iter().map(|&j| (offsets[r2] + j as usize) as u32));
                }
                let mut d = Vec::new();
                for r2 in 0..r {
                    d.extend(cc.subsets(r, r2, i).iter().map(|&j| (offsets[r2] + j as usize) as u32));
                }
                up.push(u);
                down.push(d);
            }
        }
        Self { initial, up, down }
    }
}

/// Refines both colorings jointly to a stable partition. Returns `false`
/// as soon as the color histograms differ.
fn refine(inc: [&Incidence; 2], colors: &mut [Vec<u32>; 2]) -> bool {
    let mut distinct = count_distinct(colors);
    let mut sig = Vec::new();
    loop {
        let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut next: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
        for k in 0..2 {
            let old = &colors[k];
            let mut out = Vec::with_capacity(old.len());
            for x in 0..old.len() {
                sig.clear();
                sig.push(old[x]);
                sig.push(u32::MAX);
                let start = sig.len();
                sig.extend(inc[k].up[x].iter().map(|&y| old[y as usize]));
                sig[start..].sort_unstable();
                sig.push(u32::MAX);
                let start = sig.len();
                sig.extend(inc[k].down[x].iter().map(|&y| old[y as usize]));
                sig[start..].sort_unstable();
                let fresh = ids.len() as u32;
                out.push(*ids.entry(sig.clone()).or_insert(fresh));
            }
            next[k] = out;
        }
        if !same_histogram(&next[0], &next[1]) {
            return false;
        }
        *colors = next;
        let now = count_distinct(colors);
        if now == distinct {
            return true;
        }
        distinct = now;
    }
}

fn count_distinct(colors: &[Vec<u32>; 2]) -> usize {
    let mut all: Vec<u32> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn same_histogram(a: &[u32], b: &[u32]) -> bool {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

enum Search {
    Found(CellMap),
    Exhausted,
    OutOfBudget,
}

struct Searcher<'a> {
    inc: [&'a Incidence; 2],
    ccs: [Arc<CombinatorialComplex>; 2],
    num_nodes: usize,
    budget: u64,
}

impl Searcher<'_> {
    fn search(&mut self, mut colors: [Vec<u32>; 2]) -> Search {
        if self.budget == 0 {
            return Search::OutOfBudget;
        }
        self.budget -= 1;
        if !refine(self.inc, &mut colors) {
            return Search::Exhausted;
        }
        let n = self.num_nodes;
        let mut classes: HashMap<u32, Vec<usize>> = HashMap::new();
        for v in 0..n {
            classes.entry(colors[0][v]).or_default().push(v);
        }
        let target = classes.values().filter(|c| c.len() > 1).min_by_key(|c| (c.len(), c[0]));
        let Some(class) = target else {
            let by_color: HashMap<u32, usize> = (0..n).map(|v| (colors[1][v], v)).collect();
            let node_map: Vec<usize> = (0..n).map(|v| by_color[&colors[0][v]]).collect();
            return match CellMap::from_node_map(self.ccs[0].clone(), self.ccs[1].clone(), &node_map) {
                Ok(map) if check_isomorphism(&map).is_ok() => Search::Found(map),
                _ => Search::Exhausted,
            };
        };
        let va = class[0];
        let color = colors[0][va];
        let fresh = colors.iter().flatten().max().map_or(0, |&m| m + 1);
        let mut ran_out = false;
        for vb in (0..n).filter(|&v| colors[1][v] == color) {
            let mut child = colors.clone();
            child[0][va] = fresh;
            child[1][vb] = fresh;
            match self.search(child) {
                Search::Found(map) => return Search::Found(map),
                Search::Exhausted => {}
                Search::OutOfBudget => {
                    ran_out = true;
                    break;
                }
            }
        }
        if ran_out {
            Search::OutOfBudget
        } else {
            Search::Exhausted
        }
    }
}

/// Exact test with the budget taken from `CCTOPO_ORACLE_BUDGET` (search
/// tree nodes), falling back to [`DEFAULT_BUDGET`].
pub fn cc_isomorphic(a: &CombinatorialComplex, b: &CombinatorialComplex) -> IsoResult {
    let budget = std::env::var(BUDGET_ENV).ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_BUDGET);
    cc_isomorphic_with_budget(a, b, budget)
}

pub fn cc_isomorphic_with_budget(a: &CombinatorialComplex, b: &CombinatorialComplex, budget: u64) -> IsoResult {
    if a.num_nodes() != b.num_nodes() || a.skeleton_sizes() != b.skeleton_sizes() {
        return IsoResult::NonIsomorphic;
    }
    let (ia, ib) = (Incidence::new(a), Incidence::new(b));
    let colors = [ia.initial.clone(), ib.initial.clone()];
    let mut searcher = Searcher {
        inc: [&ia, &ib],
        ccs: [Arc::new(a.clone()), Arc::new(b.clone())],
        num_nodes: a.num_nodes(),
        budget,
    };
    match searcher.search(colors) {
        Search::Found(map) => IsoResult::Isomorphic(map),
        Search::Exhausted => IsoResult::NonIsomorphic,
        Search::OutOfBudget => IsoResult::Unknown,
    }
}
