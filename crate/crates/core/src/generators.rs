//! Constructors for tori, strips, star graphs and the other fixed families.
//!
//! Product-style node sets are flattened row-major: the torus node
//! `(s_1, .., s_ℓ)` has id `Σ s_j · Π_{i>j} p_i`, and the strip node
//! `(i, j)` with height `i` and perimeter position `j` has id `i·p + j`.

use thiserror::Error;

use crate::complex::CombinatorialComplex;
use crate::graph::SimpleGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("period {0} is below the minimum of 3")]
    PeriodTooSmall(usize),
    #[error("invalid parameters: {0}")]
    BadParams(String),
}

fn check_periods(periods: &[usize]) -> Result<(), GeneratorError> {
    if periods.is_empty() {
        return Err(GeneratorError::BadParams("a torus needs at least one period".into()));
    }
    match periods.iter().find(|&&p| p < 3) {
        Some(&p) => Err(GeneratorError::PeriodTooSmall(p)),
        None => Ok(()),
    }
}

/// Row-major id of a coordinate tuple.
pub fn flatten(coords: &[usize], periods: &[usize]) -> usize {
    coords.iter().zip(periods).fold(0, |acc, (&c, &p)| acc * p + c)
}

/// Inverse of [`flatten`].
pub fn unflatten(mut id: usize, periods: &[usize]) -> Vec<usize> {
    let mut coords = vec![0; periods.len()];
    for j in (0..periods.len()).rev() {
        coords[j] = id % periods[j];
        id /= periods[j];
    }
    coords
}

/// The ℓ-dimensional torus `T_{p_1..p_ℓ}`: for every node `s` and every
/// `k ∈ {0,1}^ℓ`, the cell `{s + k' mod p | k' ≤ k}` of rank `|k|`.
pub fn torus(periods: &[usize]) -> Result<CombinatorialComplex, GeneratorError> {
    check_periods(periods)?;
    let l = periods.len();
    let n: usize = periods.iter().product();
    let mut cells = Vec::with_capacity(n * (1 << l));
    for s in 0..n {
        let base = unflatten(s, periods);
        for k in 1..(1usize << l) {
            let mut verts = Vec::with_capacity(1 << k.count_ones());
            // all sub-masks of k
            let mut sub = k;
            loop {
                let coords: Vec<usize> = (0..l)
                    .map(|j| (base[j] + ((sub >> j) & 1)) % periods[j])
                    .collect();
                verts.push(flatten(&coords, periods));
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & k;
            }
            cells.push((verts, k.count_ones() as usize));
        }
    }
    Ok(CombinatorialComplex::build(cells, n).expect("torus cells are distinct for periods >= 3"))
}

fn check_strip(h: usize, p: usize) -> Result<(), GeneratorError> {
    match [h, p].into_iter().find(|&x| x < 3) {
        Some(x) => Err(GeneratorError::PeriodTooSmall(x)),
        None => Ok(()),
    }
}

fn strip(h: usize, p: usize, twisted: bool) -> Result<CombinatorialComplex, GeneratorError> {
    check_strip(h, p)?;
    let node = |i: usize, j: usize| -> usize {
        if j < p {
            i * p + j
        } else if twisted {
            (h - 1 - i) * p + (j - p)
        } else {
            i * p + (j - p)
        }
    };
    let mut cells = Vec::new();
    for i in 0..h {
        for j in 0..p {
            for (k1, k2) in [(0, 1), (1, 0), (1, 1)] {
                if i + k1 >= h {
                    continue;
                }
                let mut verts = Vec::with_capacity(4);
                for a in 0..=k1 {
                    for b in 0..=k2 {
                        verts.push(node(i + a, j + b));
                    }
                }
                cells.push((verts, k1 + k2));
            }
        }
    }
    Ok(CombinatorialComplex::build(cells, h * p).expect("strip cells are distinct for h, p >= 3"))
}

/// `Cyl_{h,p}`: a `h × p` grid, periodic in the perimeter direction only.
pub fn cylinder(h: usize, p: usize) -> Result<CombinatorialComplex, GeneratorError> {
    strip(h, p, false)
}

/// `Möb_{h,p}`: like the cylinder, but wrapping around the perimeter flips
/// the height coordinate, `(i, p) ↦ (h-1-i, 0)`.
pub fn moebius(h: usize, p: usize) -> Result<CombinatorialComplex, GeneratorError> {
    strip(h, p, true)
}

/// `Star_{n,k}`: a cycle `a_1..a_{nk}` plus spokes `b_1..b_k`, where `b_i`
/// is joined to `a_{ni}` and `a_{ni+1}` (indices mod `nk`).
///
/// `a_i` has id `i-1` and `b_i` has id `nk + i - 1`.
pub fn star_graph(n: usize, k: usize) -> Result<SimpleGraph, GeneratorError> {
    if n == 0 || k == 0 || n * k <= 3 {
        return Err(GeneratorError::BadParams(format!("star graph needs n, k >= 1 and n*k > 3, got n={n}, k={k}")));
    }
    let m = n * k;
    let mut edges: Vec<(usize, usize)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
    for i in 1..=k {
        let b = m + i - 1;
        edges.push((b, (n * i - 1) % m));
        edges.push((b, (n * i) % m));
    }
    Ok(SimpleGraph::new(m + k, edges).expect("star graph is simple"))
}

pub fn cycle_graph(n: usize) -> Result<SimpleGraph, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::BadParams(format!("cycle needs at least 3 nodes, got {n}")));
    }
    Ok(SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple"))
}

/// `G₁ □ G₂`; node `(u₁, u₂)` has id `u₁ · n₂ + u₂`.
pub fn cartesian_product(g1: &SimpleGraph, g2: &SimpleGraph) -> SimpleGraph {
    let n2 = g2.num_nodes();
    let mut edges = Vec::new();
    for u1 in 0..g1.num_nodes() {
        for &(a, b) in g2.edges() {
            edges.push((u1 * n2 + a, u1 * n2 + b));
        }
    }
    for &(a, b) in g1.edges() {
        for u2 in 0..n2 {
            edges.push((a * n2 + u2, b * n2 + u2));
        }
    }
    SimpleGraph::new(g1.num_nodes() * n2, edges).expect("product of simple graphs is simple")
}

/// The two 6-node graphs whose Mapper poolings share a cover but differ in
/// cross-diameter. Node `s_i` has id `i-1`; in both graphs the node sets
/// `{s1, s2, s5, s6}` and `{s3, s4}` are automorphism orbits.
///
/// The first is two triangles `s1 s2 s3` and `s4 s5 s6` joined by `s3 s4`;
/// the second is the 6-cycle `s1 s2 s4 s6 s5 s3` with the chord `s3 s4`.
pub fn mog_example_pair() -> (SimpleGraph, SimpleGraph) {
    let left = SimpleGraph::new(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).expect("fixture");
    let right = SimpleGraph::new(6, [(0, 1), (4, 5), (2, 3), (0, 2), (2, 4), (1, 3), (3, 5)]).expect("fixture");
    (left, right)
}
