//! Benchmark datasets: equal-size pairs of torus unions with cover
//! certificates, topological labels for lifted graphs, and the harness that
//! runs refinement engines over pairs.

use std::collections::{BTreeMap, HashMap};
use std::io::{self, Write};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::complex::{CombinatorialComplex, ComplexError, ComplexJson, NeighborhoodSpec};
use crate::covering::{torus_union_certificate, torus_union_cover, CoverCertificate, CoverError};
use crate::generators::torus;
use crate::graph::{GraphError, SimpleGraph};
use crate::invariants::{betti_gf2, component_diameters, connected_components, cross_diameter, diameter, distance_histogram, Distance};
use crate::lifting::{cyclic_lift, LiftError};
use crate::refinement::{distinguish, Engine, RefineError, Verdict};

const A01: NeighborhoodSpec = NeighborhoodSpec { kind: crate::complex::NeighborhoodKind::Adjacency, r1: 0, r2: 1 };

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("invalid dataset spec: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Refine(#[from] RefineError),
    #[error("record {line}: {msg}")]
    Record { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusDatasetSpec {
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub max_components: usize,
}

impl TorusDatasetSpec {
    pub fn new(min_nodes: usize, max_nodes: usize, max_components: usize) -> Result<Self, DatasetError> {
        let spec = Self { min_nodes, max_nodes, max_components };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), DatasetError> {
        if self.min_nodes < 9 || self.min_nodes > self.max_nodes {
            return Err(DatasetError::BadSpec(format!(
                "need 9 <= min_nodes <= max_nodes, got {} and {}",
                self.min_nodes, self.max_nodes
            )));
        }
        if self.max_components == 0 {
            return Err(DatasetError::BadSpec("max_components must be at least 1".into()));
        }
        Ok(())
    }
}

/// A disjoint union of 2-tori `T(p, q)`, `3 <= p <= q`, as a sorted multiset.
pub type TorusUnion = Vec<[usize; 2]>;

pub fn union_nodes(u: &[[usize; 2]]) -> usize {
    u.iter().map(|&[p, q]| p * q).sum()
}

fn union_complex(u: &[[usize; 2]]) -> CombinatorialComplex {
    let mut parts = u.iter().map(|&[p, q]| torus(&[p, q]).expect("periods >= 3"));
    let first = parts.next().expect("non-empty union");
    parts.fold(first, |acc, t| acc.disjoint_union(&t))
}

/// All unions allowed by `spec`, grouped by node count, each group sorted.
pub fn enumerate_unions(spec: &TorusDatasetSpec) -> BTreeMap<usize, Vec<TorusUnion>> {
    let mut factors = Vec::new();
    for p in 3..=spec.max_nodes {
        for q in p..=spec.max_nodes / p {
            factors.push([p, q]);
        }
    }
    let mut groups: BTreeMap<usize, Vec<TorusUnion>> = BTreeMap::new();
    let mut current = Vec::new();
    extend_unions(&factors, 0, 0, spec, &mut current, &mut groups);
    for group in groups.values_mut() {
        group.sort();
    }
    groups
}

fn extend_unions(
    factors: &[[usize; 2]],
    from: usize,
    nodes: usize,
    spec: &TorusDatasetSpec,
    current: &mut TorusUnion,
    out: &mut BTreeMap<usize, Vec<TorusUnion>>,
) {
    if !current.is_empty() && nodes >= spec.min_nodes {
        out.entry(nodes).or_default().push(current.clone());
    }
    if current.len() == spec.max_components {
        return;
    }
    for (i, &f) in factors.iter().enumerate().skip(from) {
        let n = nodes + f[0] * f[1];
        if n > spec.max_nodes {
            continue;
        }
        current.push(f);
        extend_unions(factors, i, n, spec, current, out);
        current.pop();
    }
}

/// Every unordered pair of distinct unions with equal node counts, ordered
/// by node count and then lexicographically.
pub fn dataset_pairs(spec: &TorusDatasetSpec) -> Vec<(TorusUnion, TorusUnion)> {
    let mut pairs = Vec::new();
    for group in enumerate_unions(spec).values() {
        for i in 0..group.len() {
            for j in i + 1..group.len() {
                pairs.push((group[i].clone(), group[j].clone()));
            }
        }
    }
    pairs
}

/// Human-readable listing of the enumeration, for diagnosing count
/// mismatches.
pub fn enumeration_dump(spec: &TorusDatasetSpec) -> String {
    let fmt_union = |u: &TorusUnion| u.iter().map(|[p, q]| format!("T({p},{q})")).collect::<Vec<_>>().join("+");
    let mut out = format!(
        "enumeration for min_nodes={} max_nodes={} max_components={}\n\
         convention: components T(p,q) with 3 <= p <= q, unions are multisets, pairs are unordered\n",
        spec.min_nodes, spec.max_nodes, spec.max_components
    );
    let mut total = 0;
    for (n, group) in enumerate_unions(spec) {
        let k = group.len() * group.len().saturating_sub(1) / 2;
        total += k;
        let members: Vec<String> = group.iter().map(fmt_union).collect();
        out.push_str(&format!("{n} nodes: {} unions, {k} pairs: {}\n", group.len(), members.join(", ")));
    }
    out.push_str(&format!("total pairs: {total}\n"));
    out
}

/// Lazily materialised common cover `T(L1, L2)`. Component `i` (left
/// side first, then right) is covered by `(a, b) ↦ (a mod p, b mod q)`, or
/// by `(a, b) ↦ (b mod p, a mod q)` when `swapped[i]` is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSpec {
    pub cover: [usize; 2],
    pub swapped: Vec<bool>,
    pub left: TorusUnion,
    pub right: TorusUnion,
}

impl CertificateSpec {
    pub fn for_pair(left: &[[usize; 2]], right: &[[usize; 2]]) -> Result<Self, CoverError> {
        let (periods, perms) = torus_union_cover(&side(left), &side(right))?
            .ok_or(CoverError::DimensionMismatch { source_dim: union_nodes(left), target_dim: union_nodes(right) })?;
        Ok(Self {
            cover: [periods[0], periods[1]],
            swapped: perms.iter().map(|p| p[0] != 0).collect(),
            left: left.to_vec(),
            right: right.to_vec(),
        })
    }

    /// Divisibility and node-count conditions, without building the cover.
    pub fn check_arithmetic(&self) -> bool {
        let [l1, l2] = self.cover;
        let comps: Vec<&[usize; 2]> = self.left.iter().chain(&self.right).collect();
        comps.len() == self.swapped.len()
            && comps.iter().zip(&self.swapped).all(|(&&[p, q], &sw)| {
                let (p, q) = if sw { (q, p) } else { (p, q) };
                l1 % p == 0 && l2 % q == 0
            })
            && union_nodes(&self.left) == union_nodes(&self.right)
    }

    pub fn materialize(&self) -> Result<CoverCertificate, CoverError> {
        let cert = torus_union_certificate(&side(&self.left), &side(&self.right))?
            .ok_or(CoverError::DimensionMismatch { source_dim: union_nodes(&self.left), target_dim: union_nodes(&self.right) })?;
        debug_assert_eq!(cert.cover.num_nodes(), self.cover[0] * self.cover[1]);
        Ok(cert)
    }
}

fn side(u: &[[usize; 2]]) -> Vec<Vec<usize>> {
    u.iter().map(|t| t.to_vec()).collect()
}

type InvariantValues = Vec<(&'static str, Value)>;

/// An invariant on which the two sides of a pair disagree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DifferingInvariant {
    pub invariant: String,
    pub left: Value,
    pub right: Value,
}

#[derive(Debug, Clone)]
pub struct LabeledPair {
    pub num_nodes: usize,
    pub left_params: TorusUnion,
    pub right_params: TorusUnion,
    pub left: CombinatorialComplex,
    pub right: CombinatorialComplex,
    pub certificate: CertificateSpec,
    pub differing_invariants: Vec<DifferingInvariant>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabeledPairJson {
    pub num_nodes: usize,
    pub left_params: TorusUnion,
    pub right_params: TorusUnion,
    pub left: ComplexJson,
    pub right: ComplexJson,
    pub certificate: CertificateSpec,
    pub differing_invariants: Vec<DifferingInvariant>,
}

impl LabeledPair {
    pub fn to_json(&self) -> LabeledPairJson {
        LabeledPairJson {
            num_nodes: self.num_nodes,
            left_params: self.left_params.clone(),
            right_params: self.right_params.clone(),
            left: self.left.to_json_value(),
            right: self.right.to_json_value(),
            certificate: self.certificate.clone(),
            differing_invariants: self.differing_invariants.clone(),
        }
    }

    pub fn from_json(raw: LabeledPairJson) -> Result<Self, DatasetError> {
        Ok(Self {
            num_nodes: raw.num_nodes,
            left_params: raw.left_params,
            right_params: raw.right_params,
            left: CombinatorialComplex::from_json_value(raw.left)?,
            right: CombinatorialComplex::from_json_value(raw.right)?,
            certificate: raw.certificate,
            differing_invariants: raw.differing_invariants,
        })
    }
}

/// Invariants compared between the two sides of a pair, in output order.
fn invariant_values(cc: &CombinatorialComplex) -> Vec<(&'static str, Value)> {
    let mut diams = component_diameters(cc, A01).expect("tori have edges");
    diams.sort_unstable();
    let hist: Vec<(Distance, usize)> = distance_histogram(cc, A01).expect("tori have edges").into_iter().collect();
    vec![
        ("diameter", json!(diameter(cc, A01).expect("tori have edges"))),
        ("components", json!(connected_components(cc).0)),
        ("betti", json!(betti_gf2(cc).expect("tori are chain complexes"))),
        ("component_diameters", json!(diams)),
        ("distance_histogram", json!(hist)),
    ]
}

/// Equal-size pairs of torus unions with certificates and labels, in
/// deterministic order.
pub fn gen_torus_dataset(spec: &TorusDatasetSpec) -> Result<Vec<LabeledPair>, DatasetError> {
    spec.validate()?;
    let pairs = dataset_pairs(spec);
    let mut unions: Vec<TorusUnion> = pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    unions.sort();
    unions.dedup();
    let built: HashMap<TorusUnion, (CombinatorialComplex, InvariantValues)> = unions
        .into_par_iter()
        .map(|u| {
            let cc = union_complex(&u);
            let values = invariant_values(&cc);
            (u, (cc, values))
        })
        .collect();
    pairs
        .into_iter()
        .map(|(a, b)| {
            let (left, lv) = &built[&a];
            let (right, rv) = &built[&b];
            let differing_invariants = lv
                .iter()
                .zip(rv)
                .filter(|(l, r)| l.1 != r.1)
                .map(|(l, r)| DifferingInvariant { invariant: l.0.to_string(), left: l.1.clone(), right: r.1.clone() })
                .collect();
            Ok(LabeledPair {
                num_nodes: union_nodes(&a),
                certificate: CertificateSpec::for_pair(&a, &b)?,
                left: left.clone(),
                right: right.clone(),
                left_params: a,
                right_params: b,
                differing_invariants,
            })
        })
        .collect()
}

pub fn write_jsonl<W: Write>(pairs: &[LabeledPair], mut out: W) -> io::Result<()> {
    for p in pairs {
        serde_json::to_writer(&mut out, &p.to_json())?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_jsonl(text: &str) -> Result<Vec<LabeledPair>, DatasetError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let raw: LabeledPairJson =
                serde_json::from_str(l).map_err(|e| DatasetError::Record { line: i + 1, msg: e.to_string() })?;
            LabeledPair::from_json(raw).map_err(|e| DatasetError::Record { line: i + 1, msg: e.to_string() })
        })
        .collect()
}

/// A lifted graph with its topological labels. The cross-diameter is
/// `None` when the lift has no 2-cells.
#[derive(Debug, Clone)]
pub struct LabeledComplex {
    pub index: usize,
    pub complex: CombinatorialComplex,
    pub cross_diameter_012: Option<Distance>,
    pub betti2: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Labels {
    pub cross_diameter_012: Option<Distance>,
    pub betti2: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabeledComplexJson {
    pub index: usize,
    pub complex: ComplexJson,
    pub labels: Labels,
}

impl LabeledComplex {
    pub fn labels(&self) -> Labels {
        Labels { cross_diameter_012: self.cross_diameter_012, betti2: self.betti2 }
    }

    pub fn to_json(&self) -> LabeledComplexJson {
        LabeledComplexJson { index: self.index, complex: self.complex.to_json_value(), labels: self.labels() }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabelError {
    #[error("record {index}: {source}")]
    Parse { index: usize, source: GraphError },
    #[error("record {index}: {source}")]
    Lift { index: usize, source: LiftError },
}

/// Labels of one lifted complex, recomputed from scratch.
pub fn topological_labels(cc: &CombinatorialComplex) -> Labels {
    let has_faces = cc.dimension() >= 2 && !cc.skeleton(2).is_empty();
    let cross_diameter_012 = if has_faces { cross_diameter(cc, A01, 2).ok() } else { None };
    let betti2 = betti_gf2(cc).ok().and_then(|b| b.get(2).copied()).unwrap_or(0);
    Labels { cross_diameter_012, betti2 }
}

pub fn label_graph(index: usize, g: &SimpleGraph, max_cycle_len: usize) -> Result<LabeledComplex, LabelError> {
    let complex = cyclic_lift(g, max_cycle_len).map_err(|source| LabelError::Lift { index, source })?;
    let Labels { cross_diameter_012, betti2 } = topological_labels(&complex);
    Ok(LabeledComplex { index, complex, cross_diameter_012, betti2 })
}

const LABEL_CHUNK: usize = 64;

/// Lifts and labels a stream of graphs. Records are processed in parallel
/// chunks and yielded in input order; a bad record yields an error and the
/// stream continues.
pub fn label_lifted_graphs<I>(graphs: I, max_cycle_len: usize) -> impl Iterator<Item = Result<LabeledComplex, LabelError>>
where
    I: IntoIterator<Item = Result<SimpleGraph, GraphError>>,
{
    let mut input = graphs.into_iter().enumerate();
    let mut pending = std::collections::VecDeque::new();
    std::iter::from_fn(move || {
        if pending.is_empty() {
            let chunk: Vec<_> = input.by_ref().take(LABEL_CHUNK).collect();
            let results: Vec<_> = chunk
                .into_par_iter()
                .map(|(index, g)| match g {
                    Ok(g) => label_graph(index, &g, max_cycle_len),
                    Err(source) => Err(LabelError::Parse { index, source }),
                })
                .collect();
            pending.extend(results);
        }
        pending.pop_front()
    })
}

/// Per-engine outcome over a set of pairs.
#[derive(Debug, Clone, Serialize)]
pub struct EngineReport {
    pub engine: String,
    pub pairs: usize,
    pub separated: usize,
    pub unknown: usize,
    pub wall_time_ms: u128,
    pub verdicts: Vec<Verdict>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchmarkReport {
    pub engines: Vec<EngineReport>,
}

pub fn run_engine(pairs: &[LabeledPair], engine: &Engine) -> Result<EngineReport, DatasetError> {
    let start = Instant::now();
    let verdicts: Vec<Verdict> = pairs
        .par_iter()
        .map(|p| distinguish(&p.left, &p.right, engine))
        .collect::<Result<_, _>>()?;
    let elapsed: Duration = start.elapsed();
    Ok(EngineReport {
        engine: engine.to_string(),
        pairs: pairs.len(),
        separated: verdicts.iter().filter(|v| v.is_distinguished()).count(),
        unknown: verdicts.iter().filter(|v| **v == Verdict::Unknown).count(),
        wall_time_ms: elapsed.as_millis(),
        verdicts,
    })
}

pub fn run_benchmark(pairs: &[LabeledPair], engines: &[Engine]) -> Result<BenchmarkReport, DatasetError> {
    Ok(BenchmarkReport { engines: engines.iter().map(|e| run_engine(pairs, e)).collect::<Result<_, _>>()? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::verify_covering;
    use crate::graph::EdgeListReader;

    /// Independent count: all multisets by brute force over sorted index
    /// tuples, then pairs within equal node counts.
    fn brute_force_pairs(m: usize, big: usize, n: usize) -> usize {
        let mut tori = Vec::new();
        for p in 3..=big {
            for q in p..=big {
                if p * q <= big {
                    tori.push(p * q);
                }
            }
        }
        let mut counts: HashMap<usize, usize> = HashMap::new();
        let t = tori.len();
        for k in 1..=n {
            let mut idx = vec![0usize; k];
            loop {
                let total: usize = idx.iter().map(|&i| tori[i]).sum();
                if (m..=big).contains(&total) {
                    *counts.entry(total).or_default() += 1;
                }
                // next non-decreasing tuple
                let mut pos = k;
                while pos > 0 && idx[pos - 1] == t - 1 {
                    pos -= 1;
                }
                if pos == 0 {
                    break;
                }
                idx[pos - 1] += 1;
                let v = idx[pos - 1];
                for slot in idx.iter_mut().skip(pos) {
                    *slot = v;
                }
            }
        }
        counts.values().map(|&c| c * (c - 1) / 2).sum()
    }

    #[test]
    fn pair_counts_match_brute_force() {
        for (m, big, n) in [(18, 40, 3), (18, 18, 3), (9, 17, 3), (9, 30, 2), (20, 36, 4)] {
            let spec = TorusDatasetSpec::new(m, big, n).unwrap();
            assert_eq!(dataset_pairs(&spec).len(), brute_force_pairs(m, big, n), "spec {m} {big} {n}");
        }
    }

    #[test]
    fn smallest_pair() {
        let spec = TorusDatasetSpec::new(18, 18, 3).unwrap();
        assert_eq!(dataset_pairs(&spec), vec![(vec![[3, 3], [3, 3]], vec![[3, 6]])]);
        assert!(dataset_pairs(&TorusDatasetSpec::new(9, 17, 3).unwrap()).is_empty());
    }

    #[test]
    fn dataset_bounds_validation() {
        assert!(TorusDatasetSpec::new(8, 40, 3).is_err());
        assert!(TorusDatasetSpec::new(20, 19, 3).is_err());
        assert!(TorusDatasetSpec::new(18, 40, 0).is_err());
    }

    #[test]
    fn small_dataset_is_labelled_and_certified() {
        let spec = TorusDatasetSpec::new(18, 24, 3).unwrap();
        let pairs = gen_torus_dataset(&spec).unwrap();
        assert!(!pairs.is_empty());
        for p in &pairs {
            assert!(p.certificate.check_arithmetic());
            assert!(!p.differing_invariants.is_empty(), "{:?} vs {:?}", p.left_params, p.right_params);
            let cert = p.certificate.materialize().unwrap();
            cert.verify().unwrap();
            for m in cert.left.iter().chain(&cert.right) {
                verify_covering(m).unwrap();
            }
        }
    }

    #[test]
    fn jsonl_round_trip_is_byte_identical() {
        let spec = TorusDatasetSpec::new(18, 20, 2).unwrap();
        let pairs = gen_torus_dataset(&spec).unwrap();
        let mut first = Vec::new();
        write_jsonl(&pairs, &mut first).unwrap();
        let back = read_jsonl(std::str::from_utf8(&first).unwrap()).unwrap();
        let mut second = Vec::new();
        write_jsonl(&back, &mut second).unwrap();
        assert_eq!(first, second);
        let mut again = Vec::new();
        write_jsonl(&gen_torus_dataset(&spec).unwrap(), &mut again).unwrap();
        assert_eq!(first, again);
    }

    #[test]
    fn lifted_graph_labels() {
        let text = "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n\n6 6\n0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n\n4 3\n0 1\n1 2\n2 3\n\n3 1\n0 0\n\n3 1\n0 1\n";
        let out: Vec<_> = label_lifted_graphs(EdgeListReader::new(text), 8).collect();
        assert_eq!(out.len(), 5);
        let labels: Vec<Labels> = out.iter().take(3).map(|r| r.as_ref().unwrap().labels()).collect();
        assert_eq!(labels[0], Labels { cross_diameter_012: Some(Distance::Finite(0)), betti2: 0 });
        assert_eq!(labels[1], Labels { cross_diameter_012: Some(Distance::Infinite), betti2: 0 });
        assert_eq!(labels[2], Labels { cross_diameter_012: None, betti2: 0 });
        assert!(matches!(out[3], Err(LabelError::Parse { index: 3, .. })));
        assert_eq!(out[4].as_ref().unwrap().index, 4);
    }

    #[test]
    fn benchmark_on_smallest_pair() {
        let pairs = gen_torus_dataset(&TorusDatasetSpec::new(18, 18, 3).unwrap()).unwrap();
        let report = run_benchmark(&pairs, &[Engine::HompFull, "smcn".parse().unwrap(), Engine::Oracle]).unwrap();
        let separated: Vec<usize> = report.engines.iter().map(|e| e.separated).collect();
        assert_eq!(separated, vec![0, 1, 1]);
    }
}
