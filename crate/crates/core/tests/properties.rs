use std::sync::Arc;

use proptest::prelude::*;

use cctopo::complex::NeighborhoodKind;
use cctopo::covering::{torus_mod_cover, verify_covering, CellMap};
use cctopo::generators::{cylinder, moebius, torus};
use cctopo::invariants::{betti_gf2, boundary_matrices, diameter, euler_characteristic, Distance};
use cctopo::iso::{cc_isomorphic, check_isomorphism, IsoResult};
use cctopo::lifting::{chordless_cycles, cyclic_lift, triangular_lift};
use cctopo::refinement::{distinguish, homp_refine, DiagramConfig, Engine, HompSpecs, Rounds};
use cctopo::{CombinatorialComplex, NeighborhoodSpec, SimpleGraph};

const A01: NeighborhoodSpec = NeighborhoodSpec { kind: NeighborhoodKind::Adjacency, r1: 0, r2: 1 };

fn graph_strategy(max_nodes: usize) -> impl Strategy<Value = SimpleGraph> {
    (3..=max_nodes).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            if edges.is_empty() {
                edges.push((0, 1));
            }
            SimpleGraph::new(n, edges).unwrap()
        })
    })
}

fn permutation_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn relabel(cc: &CombinatorialComplex, perm: &[usize]) -> CombinatorialComplex {
    let cells = cc.raw_cells().map(|(v, r)| (v.into_iter().map(|x| perm[x]).collect::<Vec<_>>(), r));
    CombinatorialComplex::build(cells, cc.num_nodes()).unwrap()
}

fn lifted_with_perm() -> impl Strategy<Value = (CombinatorialComplex, Vec<usize>)> {
    graph_strategy(8).prop_flat_map(|g| {
        let n = g.num_nodes();
        (Just(cyclic_lift(&g, 8).unwrap()), permutation_strategy(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn incidence_matrices_are_transposes(g in graph_strategy(8)) {
        let cc = cyclic_lift(&g, 8).unwrap();
        let d = cc.dimension();
        for r1 in 0..=d {
            for r2 in 0..=d {
                let up = cc.neighborhood_matrix(NeighborhoodSpec::incidence_up(r1, r2)).unwrap();
                let down = cc.neighborhood_matrix(NeighborhoodSpec::incidence_down(r2, r1)).unwrap();
                prop_assert_eq!(up.transpose(), down);
            }
        }
    }

    #[test]
    fn adjacencies_are_symmetric(g in graph_strategy(8)) {
        let cc = cyclic_lift(&g, 8).unwrap();
        for spec in NeighborhoodSpec::all_natural(cc.dimension()) {
            if spec.is_adjacency_type() {
                let m = cc.neighborhood_matrix(spec).unwrap();
                prop_assert_eq!(m.transpose(), m);
            }
        }
    }

    #[test]
    fn json_round_trip(g in graph_strategy(9)) {
        let cc = cyclic_lift(&g, 9).unwrap();
        let back = CombinatorialComplex::decode_json(&cc.encode_json()).unwrap();
        prop_assert_eq!(&back, &cc);
        prop_assert_eq!(back.encode_json(), cc.encode_json());
    }

    #[test]
    fn euler_poincare_on_lifts(g in graph_strategy(9)) {
        for cc in [cyclic_lift(&g, 9).unwrap(), triangular_lift(&g)] {
            prop_assert!(boundary_matrices(&cc).is_chain_complex());
            let b = betti_gf2(&cc).unwrap();
            let alt: i64 = b.iter().enumerate().map(|(r, &x)| if r % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
            prop_assert_eq!(alt, euler_characteristic(&cc));
            prop_assert_eq!(b[0], g.components().0);
        }
    }

    #[test]
    fn lifted_faces_are_chordless(g in graph_strategy(9)) {
        for cycle in chordless_cycles(&g, 9) {
            let k = cycle.len();
            prop_assert!(k >= 3);
            let internal = cycle.iter().enumerate().flat_map(|(i, &u)| cycle[i + 1..].iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| g.has_edge(u, v)).count();
            prop_assert_eq!(internal, k);
        }
    }

    #[test]
    fn oracle_finds_relabelled_copies((cc, perm) in lifted_with_perm()) {
        let other = relabel(&cc, &perm);
        match cc_isomorphic(&cc, &other) {
            IsoResult::Isomorphic(map) => prop_assert!(check_isomorphism(&map).is_ok()),
            other => prop_assert!(false, "expected an isomorphism, got {:?}", other),
        }
    }

    #[test]
    fn verdicts_ignore_node_order((cc, perm) in lifted_with_perm()) {
        let other = relabel(&cc, &perm);
        for engine in [Engine::HompFull, Engine::Smcn(DiagramConfig::default_smcn()), "scl:0,1,bin".parse().unwrap()] {
            prop_assert_eq!(distinguish(&cc, &other, &engine).unwrap(), cctopo::refinement::Verdict::Indistinguishable);
        }
    }

    #[test]
    fn smcn_refines_homp(a in graph_strategy(7), b in graph_strategy(7)) {
        let (x, y) = (cyclic_lift(&a, 7).unwrap(), cyclic_lift(&b, 7).unwrap());
        if distinguish(&x, &y, &Engine::HompFull).unwrap().is_distinguished() {
            prop_assert!(distinguish(&x, &y, &Engine::Smcn(DiagramConfig::default_smcn())).unwrap().is_distinguished());
        }
    }

    #[test]
    fn torus_diameter_formula(periods in proptest::collection::vec(3usize..=8, 1..=3)) {
        let t = torus(&periods).unwrap();
        let want: u32 = periods.iter().map(|&p| (p / 2) as u32).sum();
        prop_assert_eq!(diameter(&t, A01).unwrap(), Distance::Finite(want));
    }

    #[test]
    fn covered_tori_share_homp_fingerprints(p in 3usize..=6, q in 3usize..=6, a in 1usize..=3, b in 1usize..=3) {
        let map = torus_mod_cover(&[p * a, q * b], &[p, q]).unwrap();
        prop_assert!(verify_covering(&map).is_ok());
        let (big, small) = (map.source().clone(), map.target().clone());
        let union: CombinatorialComplex = (1..a * b).fold((*small).clone(), |acc, _| acc.disjoint_union(&small));
        let (_, fp) = homp_refine(&[&big, &union], HompSpecs::Full, Rounds::UntilStable).unwrap();
        prop_assert_eq!(&fp[0], &fp[1]);
    }

    #[test]
    fn identity_maps_are_covers_and_isomorphisms(h in 3usize..=5, p in 3usize..=5, twisted in any::<bool>()) {
        let cc = Arc::new(if twisted { moebius(h, p).unwrap() } else { cylinder(h, p).unwrap() });
        let id = CellMap::identity(cc);
        prop_assert!(verify_covering(&id).is_ok());
        prop_assert!(check_isomorphism(&id).is_ok());
    }
}
