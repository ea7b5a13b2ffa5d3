use pathecc::bounds::{bound_general, certificate_bound, check_path_bound_kconn};
use pathecc::exact::{cerioli_check, find_maximal_path, min_length_central_path_tree, pe_exact, pe_tree, property1_check, Budget, ExactError};
use pathecc::families::{random_biconvex, random_bpg, random_connected, random_convex, random_interval, random_tree, Instance};
use pathecc::graph::{components_after_removal, ecc_of_set, fan_paths, multi_source_bfs, subdivide, vertex_connectivity, Distance, Graph, Vertex};
use pathecc::par::Exec;
use pathecc::structured::{dom_path_biconvex, dom_path_bpg, dom_path_interval, interval_order, two_dom_path_convex};
use proptest::prelude::*;

fn ecc(g: &Graph, s: &[Vertex]) -> usize {
    ecc_of_set(g, s).unwrap().finite().unwrap()
}

fn bipartite(i: Instance) -> pathecc::structured::OrderedBipartite {
    match i {
        Instance::Bipartite(b) => b,
        _ => panic!("expected a bipartite instance"),
    }
}

// Smallest k such that removing some k-subset disconnects g (n - 1 for complete graphs).
fn brute_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if g.is_complete() {
        return n - 1;
    }
    for k in 0..n {
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize != k {
                continue;
            }
            let s: Vec<Vertex> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            if components_after_removal(g, &s).unwrap().len() > 1 {
                return k;
            }
        }
    }
    unreachable!("a non-complete graph has a separator")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ecc_is_max_bfs_layer_and_monotone(n in 2usize..14, seed: u64, picks in proptest::collection::vec(0usize..14, 1..5)) {
        let g = random_connected(n, 0.3, seed).unwrap().graph();
        let s: Vec<Vertex> = picks.iter().map(|&v| v % n).collect();
        let field = multi_source_bfs(&g, &s).unwrap();
        let max = (0..n).map(|v| field.dist[v]).max().unwrap();
        prop_assert_eq!(ecc_of_set(&g, &s).unwrap(), max);
        let mut t = s.clone();
        t.push((seed as usize) % n);
        prop_assert!(ecc_of_set(&g, &t).unwrap() <= ecc_of_set(&g, &s).unwrap());
    }

    #[test]
    fn connectivity_matches_exhaustive_removal(n in 2usize..9, seed: u64) {
        let g = random_connected(n, 0.5, seed).unwrap().graph();
        prop_assert_eq!(vertex_connectivity(&g).unwrap(), brute_connectivity(&g));
    }

    #[test]
    fn fan_paths_are_disjoint(n in 4usize..11, seed: u64) {
        let g = random_connected(n, 0.6, seed).unwrap().graph();
        let k = vertex_connectivity(&g).unwrap();
        prop_assume!(k >= 1 && n > k + 1);
        let v = (seed as usize) % n;
        let s: Vec<Vertex> = (0..n).filter(|&u| u != v).take(k).collect();
        let fan = fan_paths(&g, v, &s, k).unwrap();
        prop_assert_eq!(fan.len(), k);
        let mut used = std::collections::HashSet::new();
        for p in &fan {
            prop_assert_eq!(p.first(), v);
            prop_assert!(s.contains(&p.last()));
            for &w in &p.vertices()[1..] {
                prop_assert!(used.insert(w));
            }
        }
    }

    #[test]
    fn subdivision_counts(n in 1usize..10, seed: u64, t in 0usize..4) {
        let g = random_connected(n, 0.4, seed).unwrap().graph();
        let s = subdivide(&g, t);
        prop_assert_eq!(s.n(), n + t * g.m());
        prop_assert_eq!(s.m(), (t + 1) * g.m());
    }

    #[test]
    fn tree_routine_agrees_with_enumeration(n in 1usize..13, seed: u64) {
        let g = random_tree(n, seed).unwrap().graph();
        let fast = pe_tree(&g).unwrap();
        let slow = pe_exact(&g, 16).unwrap();
        prop_assert_eq!(fast.pe, slow.pe);
        prop_assert_eq!(ecc(&g, fast.witness.vertices()), fast.pe);
        let p = min_length_central_path_tree(&g).unwrap();
        prop_assert_eq!(ecc(&g, p.vertices()), fast.pe);
    }

    #[test]
    fn sequential_and_parallel_agree(n in 2usize..11, seed: u64) {
        let g = random_connected(n, 0.35, seed).unwrap().graph();
        let seq = pathecc::exact::pe_exact_with(&g, 16, Exec::Sequential).unwrap();
        let par = pathecc::exact::pe_exact_with(&g, 16, Exec::Parallel).unwrap();
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn certificates_never_exceed_pe(n in 3usize..11, seed: u64, a in 0usize..11, b in 0usize..11) {
        let g = random_connected(n, 0.3, seed).unwrap().graph();
        let mut s = vec![a % n, b % n];
        s.dedup();
        let pe = pe_exact(&g, 16).unwrap().pe;
        if let Some(c) = certificate_bound(&g, &s).unwrap().certificate() {
            prop_assert!(c.bound <= pe);
        }
        prop_assert!(pathecc::bounds::Rational::from_integer(pe as i64) <= bound_general(n).unwrap());
    }

    #[test]
    fn maximal_paths_obey_the_kconn_bound(n in 4usize..10, seed: u64) {
        let g = random_connected(n, 0.6, seed).unwrap().graph();
        let k = vertex_connectivity(&g).unwrap();
        prop_assume!(k >= 1);
        let bad = find_maximal_path(&g, 16, Exec::Sequential, |p| !check_path_bound_kconn(&g, k, p).unwrap().holds).unwrap();
        prop_assert!(bad.is_none(), "{:?}", bad);
    }

    #[test]
    fn convex_solver_is_two_dominating(n in 2usize..30, seed: u64) {
        let b = bipartite(random_convex(n, seed).unwrap().instance);
        let p = two_dom_path_convex(&b).unwrap();
        prop_assert!(ecc(&b.to_graph(), p.vertices()) <= 2);
    }

    #[test]
    fn bpg_and_biconvex_solvers_dominate(n in 2usize..30, seed: u64) {
        let b = bipartite(random_bpg(n, seed).unwrap().instance);
        prop_assert!(ecc(&b.to_graph(), dom_path_bpg(&b).unwrap().vertices()) <= 1);
        prop_assert!(ecc(&b.to_graph(), dom_path_biconvex(&b).unwrap().vertices()) <= 1);
        let c = bipartite(random_biconvex(n, seed).unwrap().instance);
        prop_assert!(ecc(&c.to_graph(), dom_path_biconvex(&c).unwrap().vertices()) <= 1);
    }

    #[test]
    fn interval_solver_dominates(n in 1usize..30, seed: u64) {
        let Instance::Intervals(f) = random_interval(n, 3 * n as i64, seed).unwrap().instance else { unreachable!() };
        let order = interval_order(&f).unwrap();
        let p = dom_path_interval(&order.graph, &order.order).unwrap();
        prop_assert!(ecc(&order.graph, p.vertices()) <= 1);
    }

    #[test]
    fn longest_paths_of_bpgs_meet_every_edge(n in 2usize..12, seed: u64) {
        let b = bipartite(random_bpg(n, seed).unwrap().instance);
        let v = cerioli_check(&b, Budget::new(14)).unwrap();
        prop_assert!(matches!(v, pathecc::exact::CerioliVerdict::Holds { .. }), "{:?}", v);
    }

    #[test]
    fn longest_paths_of_trees_are_central(n in 1usize..13, seed: u64) {
        let g = random_tree(n, seed).unwrap().graph();
        prop_assert!(property1_check(&g, Budget::new(14)).unwrap().holds());
    }
}

#[test]
fn oversized_and_disconnected_inputs_are_rejected() {
    assert_eq!(pe_exact(&Graph::path(20), 16), Err(ExactError::TooLarge { n: 20, cap: 16 }));
    assert_eq!(pe_exact(&Graph::empty(2), 16), Err(ExactError::Disconnected));
    assert_eq!(ecc_of_set(&Graph::empty(2), &[0]).unwrap(), Distance::Unreachable);
}
