//! Color refinement on complexes and on pairs of cells.
//!
//! Message passing over neighborhood functions is modelled by injective
//! color refinement: a cell's new color is the interned tuple of its old
//! color and the multiset of old colors over each neighborhood. The
//! subcomplex layer does the same on `X_{r1} × X_{r2}`. All complexes of one
//! run share a palette, so colors and fingerprints compare across them.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{CombinatorialComplex, NeighborhoodKind, NeighborhoodSpec};
use crate::invariants::Distance;
use crate::iso::{cc_isomorphic, IsoResult};

pub type Color = u32;

const TAG_INIT: u32 = 0x1000_0001;
const TAG_HOMP: u32 = 0x1000_0002;
const TAG_SEED: u32 = 0x1000_0003;
const TAG_SCL: u32 = 0x1000_0004;
const TAG_POOL: u32 = 0x1000_0005;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RefineError {
    #[error("rank {rank} exceeds the largest dimension {dimension}")]
    RankOutOfRange { rank: usize, dimension: usize },
    #[error("stage {0} pools, but no pair coloring has been computed")]
    PoolWithoutScl(usize),
    #[error("subcomplex layer needs r1 <= r2, got ({0}, {1})")]
    BadPairRanks(usize, usize),
    #[error("no complexes to refine")]
    Empty,
}

/// Interns color signatures; equal ids iff equal signatures.
#[derive(Debug, Default, Clone)]
pub struct Palette {
    map: HashMap<Vec<u32>, Color>,
}

impl Palette {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, signature: &[u32]) -> Color {
        if let Some(&c) = self.map.get(signature) {
            return c;
        }
        let c = self.map.len() as Color;
        self.map.insert(signature.to_vec(), c);
        c
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Per-rank cell colors, indexed by skeleton position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<Vec<Color>>,
}

/// Colors on `X_{r1} × X_{r2}`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairColoring {
    pub r1: usize,
    pub r2: usize,
    pub rows: usize,
    pub cols: usize,
    pub colors: Vec<Color>,
}

impl PairColoring {
    pub fn get(&self, x: usize, y: usize) -> Color {
        self.colors[x * self.cols + y]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Marking {
    /// 1 iff `x ⊆ y`.
    Binary,
    /// Smallest `A_{0,1}` distance between a node of `x` and a node of `y`.
    Distance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rounds {
    Fixed(usize),
    UntilStable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum HompSpecs {
    /// Every natural neighborhood.
    Full,
    Custom(Vec<NeighborhoodSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Stage {
    Homp { specs: HompSpecs, rounds: Rounds },
    Scl { r1: usize, r2: usize, marking: Marking, rounds: Rounds },
    /// Folds the live pair coloring back into the cell colorings.
    Pool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramConfig {
    pub stages: Vec<Stage>,
}

impl DiagramConfig {
    pub fn homp_full() -> Self {
        Self { stages: vec![Stage::Homp { specs: HompSpecs::Full, rounds: Rounds::UntilStable }] }
    }

    pub fn scl(r1: usize, r2: usize, marking: Marking) -> Self {
        Self { stages: vec![Stage::Scl { r1, r2, marking, rounds: Rounds::UntilStable }] }
    }

    /// One full message-passing round, four distance-marked subcomplex
    /// rounds on `X_0 × X_1`, pooling, one more full round.
    pub fn default_smcn() -> Self {
        Self {
            stages: vec![
                Stage::Homp { specs: HompSpecs::Full, rounds: Rounds::Fixed(1) },
                Stage::Scl { r1: 0, r2: 1, marking: Marking::Distance, rounds: Rounds::Fixed(4) },
                Stage::Pool,
                Stage::Homp { specs: HompSpecs::Full, rounds: Rounds::Fixed(1) },
            ],
        }
    }
}

/// Per-rank color histograms, plus the pair-color histogram when a pair
/// coloring is live.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub skeleton_sizes: Vec<usize>,
    pub histograms: Vec<Vec<(Color, usize)>>,
    pub pair_histogram: Option<Vec<(Color, usize)>>,
}

fn histogram(colors: impl Iterator<Item = Color>) -> Vec<(Color, usize)> {
    let mut counts: HashMap<Color, usize> = HashMap::new();
    for c in colors {
        *counts.entry(c).or_insert(0) += 1;
    }
    let mut h: Vec<_> = counts.into_iter().collect();
    h.sort_unstable();
    h
}

/// One recorded step: the state after `round` rounds of stage `stage`
/// (round 0 is the state on entering the stage).
#[derive(Debug, Clone, Serialize)]
pub struct Step {
    pub stage: usize,
    pub round: usize,
    pub fingerprints: Vec<Fingerprint>,
}

type NeighborLists = Vec<Vec<u32>>;

/// Joint refinement state over a list of complexes.
pub struct Refiner<'a> {
    ccs: Vec<&'a CombinatorialComplex>,
    max_dim: usize,
    palette: Palette,
    cells: Vec<Coloring>,
    pairs: Option<Vec<PairColoring>>,
    cache: Vec<HashMap<NeighborhoodSpec, NeighborLists>>,
    buf: Vec<u32>,
}

impl<'a> Refiner<'a> {
    /// Uniform initial color per rank.
    pub fn new(ccs: &[&'a CombinatorialComplex]) -> Result<Self, RefineError> {
        if ccs.is_empty() {
            return Err(RefineError::Empty);
        }
        let max_dim = ccs.iter().map(|c| c.dimension()).max().expect("non-empty");
        let mut palette = Palette::new();
        let rank_colors: Vec<Color> = (0..=max_dim).map(|r| palette.intern(&[TAG_INIT, r as u32])).collect();
        let cells = ccs
            .iter()
            .map(|cc| Coloring {
                colors: (0..=cc.dimension()).map(|r| vec![rank_colors[r]; cc.skeleton(r).len()]).collect(),
            })
            .collect();
        Ok(Self {
            ccs: ccs.to_vec(),
            max_dim,
            palette,
            cells,
            pairs: None,
            cache: vec![HashMap::new(); ccs.len()],
            buf: Vec::new(),
        })
    }

    /// Starts from given cell colors (one coloring per complex), re-interned
    /// into this refiner's palette.
    pub fn with_colors(ccs: &[&'a CombinatorialComplex], colors: &[Coloring]) -> Result<Self, RefineError> {
        let mut r = Self::new(ccs)?;
        for (k, coloring) in colors.iter().enumerate() {
            for (rank, row) in coloring.colors.iter().enumerate() {
                for (i, &c) in row.iter().enumerate() {
                    r.cells[k].colors[rank][i] = r.palette.intern(&[TAG_INIT, rank as u32, c]);
                }
            }
        }
        Ok(r)
    }

    pub fn max_dimension(&self) -> usize {
        self.max_dim
    }

    pub fn colorings(&self) -> &[Coloring] {
        &self.cells
    }

    pub fn pair_colorings(&self) -> Option<&[PairColoring]> {
        self.pairs.as_deref()
    }

    pub fn palette_size(&self) -> usize {
        self.palette.len()
    }

    fn check_rank(&self, rank: usize) -> Result<(), RefineError> {
        if rank > self.max_dim {
            return Err(RefineError::RankOutOfRange { rank, dimension: self.max_dim });
        }
        Ok(())
    }

    fn lists(&mut self, k: usize, spec: NeighborhoodSpec) -> &NeighborLists {
        let cc = self.ccs[k];
        self.cache[k].entry(spec).or_insert_with(|| {
            (0..cc.skeleton(spec.r1).len()).map(|i| cc.neighbor_indices(spec, i)).collect()
        })
    }

    pub fn fingerprints(&self) -> Vec<Fingerprint> {
        self.ccs
            .iter()
            .enumerate()
            .map(|(k, cc)| Fingerprint {
                skeleton_sizes: cc.skeleton_sizes(),
                histograms: self.cells[k].colors.iter().map(|row| histogram(row.iter().copied())).collect(),
                pair_histogram: self.pairs.as_ref().map(|p| histogram(p[k].colors.iter().copied())),
            })
            .collect()
    }

    fn distinct_cell_colors(&self) -> usize {
        let set: HashSet<Color> = self.cells.iter().flat_map(|c| c.colors.iter().flatten().copied()).collect();
        set.len()
    }

    fn distinct_pair_colors(&self) -> usize {
        let set: HashSet<Color> =
            self.pairs.iter().flatten().flat_map(|p| p.colors.iter().copied()).collect();
        set.len()
    }

    fn total_cells(&self) -> usize {
        self.ccs.iter().map(|c| c.num_cells()).sum()
    }

    fn resolve_specs(&self, specs: &HompSpecs) -> Result<Vec<NeighborhoodSpec>, RefineError> {
        match specs {
            HompSpecs::Full => Ok(NeighborhoodSpec::all_natural(self.max_dim)),
            HompSpecs::Custom(list) => {
                for s in list {
                    self.check_rank(s.r1)?;
                    self.check_rank(s.r2)?;
                }
                Ok(list.clone())
            }
        }
    }

    /// One round of cell-color refinement over `specs`.
    pub fn homp_round(&mut self, specs: &[NeighborhoodSpec]) {
        let mut new_cells = Vec::with_capacity(self.ccs.len());
        for k in 0..self.ccs.len() {
            let dim = self.ccs[k].dimension();
            for s in specs {
                if s.r1 <= dim {
                    self.lists(k, *s);
                }
            }
            let old = &self.cells[k].colors;
            let mut new = Vec::with_capacity(dim + 1);
            for r in 0..=dim {
                let mut row = Vec::with_capacity(old[r].len());
                for i in 0..old[r].len() {
                    let buf = &mut self.buf;
                    buf.clear();
                    buf.push(TAG_HOMP);
                    buf.push(old[r][i]);
                    for s in specs.iter().filter(|s| s.r1 == r) {
                        let nbrs = &self.cache[k][s][i];
                        let t = s.target_rank();
                        buf.push(s.code());
                        buf.push(nbrs.len() as u32);
                        let start = buf.len();
                        buf.extend(nbrs.iter().map(|&j| old[t][j as usize]));
                        buf[start..].sort_unstable();
                    }
                    row.push(self.palette.intern(&self.buf));
                }
                new.push(row);
            }
            new_cells.push(Coloring { colors: new });
        }
        self.cells = new_cells;
    }

    /// Seeds pair colorings on `X_{r1} × X_{r2}` from the current cell colors.
    pub fn scl_seed(&mut self, r1: usize, r2: usize, marking: Marking) -> Result<(), RefineError> {
        if r1 > r2 {
            return Err(RefineError::BadPairRanks(r1, r2));
        }
        self.check_rank(r2)?;
        let mut pairs = Vec::with_capacity(self.ccs.len());
        for (k, cc) in self.ccs.iter().enumerate() {
            let xs = cc.skeleton(r1);
            let ys = cc.skeleton(r2);
            let node_dist = match marking {
                Marking::Distance => Some(node_distances(cc)),
                Marking::Binary => None,
            };
            let mut colors = Vec::with_capacity(xs.len() * ys.len());
            for (i, x) in xs.iter().enumerate() {
                for (j, y) in ys.iter().enumerate() {
                    let mark = match &node_dist {
                        None => u32::from(is_subset(x, y)),
                        Some(d) => x
                            .iter()
                            .flat_map(|&u| y.iter().map(move |&v| d[u][v]))
                            .min()
                            .expect("cells are non-empty"),
                    };
                    let cx = self.cells[k].colors[r1][i];
                    let cy = self.cells[k].colors[r2][j];
                    colors.push(self.palette.intern(&[TAG_SEED, cx, cy, mark]));
                }
            }
            pairs.push(PairColoring { r1, r2, rows: xs.len(), cols: ys.len(), colors });
        }
        self.pairs = Some(pairs);
        Ok(())
    }

    /// One subcomplex-layer round on the live pair colorings.
    pub fn scl_round(&mut self) {
        let Some(pairs) = self.pairs.take() else { return };
        let (r1, r2) = (pairs[0].r1, pairs[0].r2);
        let mut x_specs = Vec::new();
        let mut y_specs = Vec::new();
        for r in 0..=self.max_dim {
            for kind in [NeighborhoodKind::Adjacency, NeighborhoodKind::CoAdjacency] {
                x_specs.push(NeighborhoodSpec::new(kind, r1, r));
                y_specs.push(NeighborhoodSpec::new(kind, r2, r));
            }
        }
        let mut out = Vec::with_capacity(pairs.len());
        for (k, old) in pairs.iter().enumerate() {
            let cc = self.ccs[k];
            for s in x_specs.iter().chain(&y_specs) {
                self.lists(k, *s);
            }
            let mut colors = Vec::with_capacity(old.colors.len());
            for x in 0..old.rows {
                for y in 0..old.cols {
                    let buf = &mut self.buf;
                    buf.clear();
                    buf.push(TAG_SCL);
                    buf.push(old.get(x, y));
                    for s in &x_specs {
                        let nbrs = &self.cache[k][s][x];
                        buf.extend([1, s.code(), nbrs.len() as u32]);
                        let start = buf.len();
                        buf.extend(nbrs.iter().map(|&x2| old.get(x2 as usize, y)));
                        buf[start..].sort_unstable();
                    }
                    for s in &y_specs {
                        let nbrs = &self.cache[k][s][y];
                        buf.extend([2, s.code(), nbrs.len() as u32]);
                        let start = buf.len();
                        buf.extend(nbrs.iter().map(|&y2| old.get(x, y2 as usize)));
                        buf[start..].sort_unstable();
                    }
                    let up = cc.supersets(r1, r2, x);
                    buf.extend([3, up.len() as u32]);
                    let start = buf.len();
                    buf.extend(up.iter().map(|&y2| old.get(x, y2 as usize)));
                    buf[start..].sort_unstable();
                    let down = cc.subsets(r2, r1, y);
                    buf.extend([4, down.len() as u32]);
                    let start = buf.len();
                    buf.extend(down.iter().map(|&x2| old.get(x2 as usize, y)));
                    buf[start..].sort_unstable();
                    colors.push(self.palette.intern(&self.buf));
                }
            }
            out.push(PairColoring { colors, ..*old });
        }
        self.pairs = Some(out);
    }

    /// Folds each row (for `X_{r1}`) and column (for `X_{r2}`) multiset of
    /// pair colors into the cell colors.
    pub fn pool(&mut self) -> bool {
        let Some(pairs) = self.pairs.as_ref() else { return false };
        for (k, p) in pairs.iter().enumerate() {
            let dim = self.ccs[k].dimension();
            let mut new = Vec::with_capacity(dim + 1);
            for r in 0..=dim {
                let old = &self.cells[k].colors[r];
                let mut row = Vec::with_capacity(old.len());
                for (i, &c) in old.iter().enumerate() {
                    let buf = &mut self.buf;
                    buf.clear();
                    buf.extend([TAG_POOL, c]);
                    if r == p.r1 {
                        buf.extend([1, p.cols as u32]);
                        let start = buf.len();
                        buf.extend((0..p.cols).map(|y| p.get(i, y)));
                        buf[start..].sort_unstable();
                    }
                    if r == p.r2 {
                        buf.extend([2, p.rows as u32]);
                        let start = buf.len();
                        buf.extend((0..p.rows).map(|x| p.get(x, i)));
                        buf[start..].sort_unstable();
                    }
                    row.push(self.palette.intern(&self.buf));
                }
                new.push(row);
            }
            self.cells[k] = Coloring { colors: new };
        }
        true
    }

    /// Runs every stage; `observe` sees each step and may stop the run early
    /// by returning `false`.
    pub fn run(&mut self, diagram: &DiagramConfig, mut observe: impl FnMut(&Step) -> bool) -> Result<(), RefineError> {
        for (si, stage) in diagram.stages.iter().enumerate() {
            match stage {
                Stage::Homp { specs, rounds } => {
                    let specs = self.resolve_specs(specs)?;
                    if !observe(&self.step(si, 0)) {
                        return Ok(());
                    }
                    let bound = self.total_cells() + 1;
                    let mut count = self.distinct_cell_colors();
                    let mut t = 0;
                    loop {
                        t += 1;
                        self.homp_round(&specs);
                        if !observe(&self.step(si, t)) {
                            return Ok(());
                        }
                        let next = self.distinct_cell_colors();
                        match rounds {
                            Rounds::Fixed(n) if t >= *n => break,
                            Rounds::Fixed(_) => {}
                            Rounds::UntilStable => {
                                assert!(t <= bound, "refinement exceeded {bound} rounds");
                                if next == count {
                                    break;
                                }
                            }
                        }
                        count = next;
                    }
                }
                Stage::Scl { r1, r2, marking, rounds } => {
                    self.scl_seed(*r1, *r2, *marking)?;
                    if !observe(&self.step(si, 0)) {
                        return Ok(());
                    }
                    let bound = self.pairs.iter().flatten().map(|p| p.colors.len()).sum::<usize>() + 1;
                    let mut count = self.distinct_pair_colors();
                    let mut t = 0;
                    loop {
                        if let Rounds::Fixed(n) = rounds {
                            if t >= *n {
                                break;
                            }
                        }
                        t += 1;
                        self.scl_round();
                        if !observe(&self.step(si, t)) {
                            return Ok(());
                        }
                        let next = self.distinct_pair_colors();
                        if *rounds == Rounds::UntilStable {
                            assert!(t <= bound, "pair refinement exceeded {bound} rounds");
                            if next == count {
                                break;
                            }
                        }
                        count = next;
                    }
                }
                Stage::Pool => {
                    if !self.pool() {
                        return Err(RefineError::PoolWithoutScl(si));
                    }
                    if !observe(&self.step(si, 1)) {
                        return Ok(());
                    }
                }
            }
        }
        Ok(())
    }

    fn step(&self, stage: usize, round: usize) -> Step {
        Step { stage, round, fingerprints: self.fingerprints() }
    }
}

fn is_subset(small: &[usize], large: &[usize]) -> bool {
    small.iter().all(|v| large.binary_search(v).is_ok())
}

/// All-pairs `A_{0,1}` node distances, `u32::MAX` for unreachable.
fn node_distances(cc: &CombinatorialComplex) -> Vec<Vec<u32>> {
    let g = if cc.dimension() >= 1 {
        cc.augmented_hasse_graph(NeighborhoodSpec::adjacency(0, 1)).expect("adjacency spec")
    } else {
        crate::graph::SimpleGraph::empty(cc.num_nodes())
    };
    (0..g.num_nodes())
        .map(|s| g.bfs(s).into_iter().map(|d| if let Distance::Finite(x) = d { x } else { u32::MAX }).collect())
        .collect()
}

/// Joint message-passing refinement; returns the final colorings and
/// fingerprints.
pub fn homp_refine(
    ccs: &[&CombinatorialComplex],
    specs: HompSpecs,
    rounds: Rounds,
) -> Result<(Vec<Coloring>, Vec<Fingerprint>), RefineError> {
    let mut r = Refiner::new(ccs)?;
    r.run(&DiagramConfig { stages: vec![Stage::Homp { specs, rounds }] }, |_| true)?;
    Ok((r.cells.clone(), r.fingerprints()))
}

/// Joint subcomplex-layer refinement from uniform cell colors.
pub fn scl_refine(
    ccs: &[&CombinatorialComplex],
    r1: usize,
    r2: usize,
    marking: Marking,
    rounds: Rounds,
) -> Result<(Vec<PairColoring>, Vec<Fingerprint>), RefineError> {
    let mut r = Refiner::new(ccs)?;
    r.run(&DiagramConfig { stages: vec![Stage::Scl { r1, r2, marking, rounds }] }, |_| true)?;
    Ok((r.pairs.clone().expect("scl stage ran"), r.fingerprints()))
}

/// Runs a whole diagram jointly and returns the final fingerprints.
pub fn smcn_refine(ccs: &[&CombinatorialComplex], diagram: &DiagramConfig) -> Result<Vec<Fingerprint>, RefineError> {
    let mut r = Refiner::new(ccs)?;
    r.run(diagram, |_| true)?;
    Ok(r.fingerprints())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Engine {
    HompFull,
    Scl { r1: usize, r2: usize, marking: Marking },
    Smcn(DiagramConfig),
    Oracle,
}

impl Engine {
    pub fn diagram(&self) -> Option<DiagramConfig> {
        match self {
            Engine::HompFull => Some(DiagramConfig::homp_full()),
            Engine::Scl { r1, r2, marking } => Some(DiagramConfig::scl(*r1, *r2, *marking)),
            Engine::Smcn(d) => Some(d.clone()),
            Engine::Oracle => None,
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Engine::HompFull => f.write_str("homp"),
            Engine::Scl { r1, r2, marking } => {
                let m = if *marking == Marking::Distance { "dist" } else { "bin" };
                write!(f, "scl:{r1},{r2},{m}")
            }
            Engine::Smcn(d) if *d == DiagramConfig::default_smcn() => f.write_str("smcn"),
            Engine::Smcn(_) => f.write_str("smcn:custom"),
            Engine::Oracle => f.write_str("oracle"),
        }
    }
}

impl FromStr for Engine {
    type Err = String;

    /// `homp`, `scl:R1,R2,dist|bin`, `smcn` (or `smcn:default`), `oracle`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "homp" | "homp:full" => return Ok(Engine::HompFull),
            "smcn" | "smcn:default" => return Ok(Engine::Smcn(DiagramConfig::default_smcn())),
            "oracle" => return Ok(Engine::Oracle),
            _ => {}
        }
        let rest = s.strip_prefix("scl:").ok_or_else(|| format!("unknown engine `{s}`"))?;
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 3 {
            return Err(format!("expected scl:R1,R2,dist|bin, got `{s}`"));
        }
        let rank = |t: &str| t.parse::<usize>().map_err(|e| format!("bad rank `{t}`: {e}"));
        let marking = match parts[2] {
            "dist" | "distance" => Marking::Distance,
            "bin" | "binary" => Marking::Binary,
            other => return Err(format!("unknown marking `{other}`")),
        };
        Ok(Engine::Scl { r1: rank(parts[0])?, r2: rank(parts[1])?, marking })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    /// Fingerprints first differ after `round` rounds of stage `stage`.
    Distinguished { stage: usize, round: usize },
    Indistinguishable,
    /// The oracle ran out of budget.
    Unknown,
}

impl Verdict {
    pub fn is_distinguished(self) -> bool {
        matches!(self, Verdict::Distinguished { .. })
    }
}

/// Compares `a` and `b` under `engine`, reporting the earliest step at
/// which their fingerprints differ.
pub fn distinguish(a: &CombinatorialComplex, b: &CombinatorialComplex, engine: &Engine) -> Result<Verdict, RefineError> {
    let Some(diagram) = engine.diagram() else {
        return Ok(match cc_isomorphic(a, b) {
            IsoResult::Isomorphic(_) => Verdict::Indistinguishable,
            IsoResult::NonIsomorphic => Verdict::Distinguished { stage: 0, round: 0 },
            IsoResult::Unknown => Verdict::Unknown,
        });
    };
    let mut r = Refiner::new(&[a, b])?;
    let mut verdict = Verdict::Indistinguishable;
    r.run(&diagram, |step| {
        if step.fingerprints[0] != step.fingerprints[1] {
            verdict = Verdict::Distinguished { stage: step.stage, round: step.round };
            return false;
        }
        true
    })?;
    Ok(verdict)
}
