//! Graph-to-complex constructions: triangular lift, cyclic lift and Mapper
//! pooling.

use std::collections::BTreeSet;

use num_rational::Rational64;
use thiserror::Error;

use crate::complex::CombinatorialComplex;
use crate::graph::SimpleGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("maximum cycle length must be at least 3, got {0}")]
    CycleLengthTooSmall(usize),
    #[error("cover parameters must be positive (eta = {eta}, eps = {eps})")]
    DegenerateCover { eta: Rational64, eps: Rational64 },
    #[error("graph has no nodes")]
    EmptyGraph,
}

fn lift_with(g: &SimpleGraph, two_cells: Vec<Vec<usize>>) -> CombinatorialComplex {
    let cells = g
        .edges()
        .iter()
        .map(|&(u, v)| (vec![u, v], 1))
        .chain(two_cells.into_iter().map(|c| (c, 2)));
    CombinatorialComplex::build(cells, g.num_nodes()).expect("lifted cells are valid")
}

/// Adds every triangle as a 2-cell.
pub fn triangular_lift(g: &SimpleGraph) -> CombinatorialComplex {
    let mut triangles = Vec::new();
    for &(u, v) in g.edges() {
        for &w in g.neighbors(u) {
            if w > v && g.has_edge(v, w) {
                triangles.push(vec![u, v, w]);
            }
        }
    }
    lift_with(g, triangles)
}

/// Vertex sets of all chordless cycles with 3 to `max_len` vertices, sorted.
///
/// Each cycle is found once, from its smallest vertex `s`, walking induced
/// paths through vertices above `s` and closing when the walk returns next
/// to `s`; the direction with the smaller second vertex is kept.
pub fn chordless_cycles(g: &SimpleGraph, max_len: usize) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    let mut path = Vec::with_capacity(max_len);
    for s in 0..g.num_nodes() {
        path.push(s);
        for &v in g.neighbors(s) {
            if v > s {
                path.push(v);
                extend(g, max_len, &mut path, &mut found);
                path.pop();
            }
        }
        path.pop();
    }
    for c in &mut found {
        c.sort_unstable();
    }
    found.sort();
    found
}

fn extend(g: &SimpleGraph, max_len: usize, path: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
    let s = path[0];
    let last = *path.last().expect("non-empty path");
    for &w in g.neighbors(last) {
        let internal = &path[1..path.len() - 1];
        if w <= s || path.contains(&w) || internal.iter().any(|&x| g.has_edge(x, w)) {
            continue;
        }
        if g.has_edge(s, w) {
            if path[1] < w && path.len() < max_len {
                let mut cycle = path.clone();
                cycle.push(w);
                found.push(cycle);
            }
        } else if path.len() + 1 < max_len {
            path.push(w);
            extend(g, max_len, path, found);
            path.pop();
        }
    }
}

/// Adds every chordless cycle of length at most `max_len` as a 2-cell.
pub fn cyclic_lift(g: &SimpleGraph, max_len: usize) -> Result<CombinatorialComplex, LiftError> {
    if max_len < 3 {
        return Err(LiftError::CycleLengthTooSmall(max_len));
    }
    Ok(lift_with(g, chordless_cycles(g, max_len)))
}

/// Average shortest-path distance from each node, over the nodes of its
/// own connected component.
pub fn avg_spd_lens(g: &SimpleGraph) -> Vec<Rational64> {
    (0..g.num_nodes())
        .map(|v| {
            let (mut sum, mut count) = (0i64, 0i64);
            for d in g.bfs(v).into_iter().filter_map(|d| d.finite()) {
                sum += d as i64;
                count += 1;
            }
            Rational64::new(sum, count)
        })
        .collect()
}

/// Cover of the real line by the open intervals `(η·i, η·i + ε)`, `i ∈ ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MogParams {
    pub eta: Rational64,
    pub eps: Rational64,
}

impl MogParams {
    /// A cover fine enough that no interval holds two distinct lens
    /// values, while the intervals still cover the line: with `gap` the
    /// smallest difference between distinct values, `η = gap/3` and
    /// `ε = gap/2`.
    pub fn fine_for(lens: &[Rational64]) -> Self {
        let values: BTreeSet<Rational64> = lens.iter().copied().collect();
        let gap = values
            .iter()
            .zip(values.iter().skip(1))
            .map(|(a, b)| b - a)
            .min()
            .unwrap_or_else(|| Rational64::from_integer(1));
        Self { eta: gap / 3, eps: gap / 2 }
    }

    fn indices_containing(&self, x: Rational64) -> impl Iterator<Item = i64> + '_ {
        // η·i < x < η·i + ε  ⇔  (x − ε)/η < i < x/η
        let lo = ((x - self.eps) / self.eta).floor().to_integer();
        let hi = (x / self.eta).ceil().to_integer();
        (lo..=hi).filter(move |&i| {
            let start = self.eta * i;
            start < x && x < start + self.eps
        })
    }
}

/// Mapper pooling: every connected component (of two or more nodes) of the
/// subgraph induced by each cover interval's preimage becomes a 2-cell.
pub fn mog_pool(g: &SimpleGraph, lens: &[Rational64], params: MogParams) -> Result<CombinatorialComplex, LiftError> {
    let zero = Rational64::from_integer(0);
    if params.eta <= zero || params.eps <= zero {
        return Err(LiftError::DegenerateCover { eta: params.eta, eps: params.eps });
    }
    if g.num_nodes() == 0 {
        return Err(LiftError::EmptyGraph);
    }
    assert_eq!(lens.len(), g.num_nodes(), "one lens value per node");
    let mut intervals: BTreeSet<i64> = BTreeSet::new();
    for &x in lens {
        intervals.extend(params.indices_containing(x));
    }
    let mut two_cells: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in intervals {
        let start = params.eta * i;
        let end = start + params.eps;
        let nodes: Vec<usize> = (0..g.num_nodes()).filter(|&v| start < lens[v] && lens[v] < end).collect();
        let sub = g.induced(&nodes);
        let (count, labels) = sub.components();
        let mut comps = vec![Vec::new(); count];
        for (local, &label) in labels.iter().enumerate() {
            comps[label].push(nodes[local]);
        }
        two_cells.extend(comps.into_iter().filter(|c| c.len() >= 2));
    }
    Ok(lift_with(g, two_cells.into_iter().collect()))
}

/// [`mog_pool`] with the average shortest-path lens and its fine cover.
pub fn mog_pool_fine(g: &SimpleGraph) -> Result<CombinatorialComplex, LiftError> {
    let lens = avg_spd_lens(g);
    let params = MogParams::fine_for(&lens);
    mog_pool(g, &lens, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle_graph, mog_example_pair, star_graph};

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn brute_force_chordless(g: &SimpleGraph, max_len: usize) -> Vec<Vec<usize>> {
        let n = g.num_nodes();
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if verts.len() < 3 || verts.len() > max_len {
                continue;
            }
            let sub = g.induced(&verts);
            let two_regular = (0..verts.len()).all(|v| sub.degree(v) == 2);
            if two_regular && sub.components().0 == 1 {
                out.push(verts);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn triangular_lifts() {
        let k3 = cycle_graph(3).unwrap();
        assert_eq!(triangular_lift(&k3).skeleton_sizes(), vec![3, 3, 1]);
        assert_eq!(triangular_lift(&cycle_graph(4).unwrap()).dimension(), 1);
        let star = triangular_lift(&star_graph(2, 6).unwrap());
        assert_eq!(star.skeleton(2).len(), 6);
        // b_i = 12 + i - 1 with a_{2i}, a_{2i+1} = ids 2i-1, 2i
        for i in 1..=6usize {
            let mut cell = vec![12 + i - 1, 2 * i - 1, (2 * i) % 12];
            cell.sort_unstable();
            assert!(star.find(&cell, 2).is_some(), "{cell:?}");
        }
    }

    #[test]
    fn cyclic_lifts() {
        let c6 = cycle_graph(6).unwrap();
        let lifted = cyclic_lift(&c6, 18).unwrap();
        assert_eq!(lifted.skeleton(2), &[vec![0, 1, 2, 3, 4, 5]]);
        assert_eq!(cyclic_lift(&c6, 5).unwrap().dimension(), 1);
        let diamond = SimpleGraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(cyclic_lift(&diamond, 18).unwrap().skeleton(2), &[vec![0, 1, 2], vec![0, 2, 3]]);
        assert_eq!(cyclic_lift(&c6, 2).unwrap_err(), LiftError::CycleLengthTooSmall(2));
    }

    #[test]
    fn chordless_cycles_match_brute_force() {
        let graphs = [
            SimpleGraph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (1, 4)]).unwrap(),
            crate::generators::cartesian_product(&cycle_graph(3).unwrap(), &SimpleGraph::new(2, [(0, 1)]).unwrap()),
            star_graph(2, 3).unwrap(),
            SimpleGraph::new(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v)))).unwrap(),
        ];
        for g in &graphs {
            for max_len in [3, 4, 5, 18] {
                assert_eq!(chordless_cycles(g, max_len), brute_force_chordless(g, max_len), "{g:?} {max_len}");
            }
        }
    }

    #[test]
    fn lens_values() {
        assert!(avg_spd_lens(&cycle_graph(4).unwrap()).iter().all(|&x| x == r(1, 1)));
        let p3 = SimpleGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(avg_spd_lens(&p3), vec![r(1, 1), r(2, 3), r(1, 1)]);
        let (g, h) = mog_example_pair();
        let lg = avg_spd_lens(&g);
        let lh = avg_spd_lens(&h);
        for lens in [&lg, &lh] {
            assert!([1, 4, 5].iter().all(|&v| lens[v] == lens[0]));
            assert_eq!(lens[2], lens[3]);
            assert_ne!(lens[0], lens[2]);
        }
        // disconnected: averaged within each component
        let two = SimpleGraph::new(3, [(0, 1)]).unwrap();
        assert_eq!(avg_spd_lens(&two), vec![r(1, 2), r(1, 2), r(0, 1)]);
    }

    #[test]
    fn fine_cover_separates_values_and_covers_them() {
        let lens = vec![r(7, 6), r(10, 6), r(10, 6), r(3, 2)];
        let p = MogParams::fine_for(&lens);
        for &x in &lens {
            let hits: Vec<i64> = p.indices_containing(x).collect();
            assert!(!hits.is_empty());
            for i in hits {
                let (a, b) = (p.eta * i, p.eta * i + p.eps);
                assert!(lens.iter().filter(|&&y| a < y && y < b).all(|&y| y == x));
            }
        }
    }

    #[test]
    fn mog_example_two_cells() {
        let (g, h) = mog_example_pair();
        for graph in [&g, &h] {
            let pooled = mog_pool_fine(graph).unwrap();
            assert_eq!(pooled.skeleton(2), &[vec![0, 1], vec![2, 3], vec![4, 5]]);
            assert_eq!(pooled.skeleton(1).len(), 7);
        }
    }

    #[test]
    fn mog_constant_lens_and_small_cases() {
        let pooled = mog_pool_fine(&cycle_graph(6).unwrap()).unwrap();
        assert_eq!(pooled.skeleton(2), &[vec![0, 1, 2, 3, 4, 5]]);
        let edge = SimpleGraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(mog_pool_fine(&edge).unwrap().skeleton(2), &[vec![0, 1]]);
        let lens = avg_spd_lens(&edge);
        let bad = MogParams { eta: r(1, 1), eps: r(0, 1) };
        assert!(matches!(mog_pool(&edge, &lens, bad), Err(LiftError::DegenerateCover { .. })));
    }

    #[test]
    fn lifts_keep_the_graph() {
        let g = star_graph(2, 4).unwrap();
        for cc in [triangular_lift(&g), cyclic_lift(&g, 18).unwrap(), mog_pool_fine(&g).unwrap()] {
            assert_eq!(cc.one_skeleton(), g);
        }
    }
}
