use indexcode::coding::{
    code_from_cover, genic_cover, is_expanding_sequence, expanding_from_acyclic, standard_instance,
    validate_code, GenInstance, IndexCode,
};
use indexcode::cover::{cover_digraph, cover_graph, cover_quasiline, neighborhood_two_cliques};
use indexcode::graph::{CliqueCover, Digraph, VertexSet};
use indexcode::instances::{
    complete_graph, gen_genic, line_graph, parse_code, parse_cover, parse_digraph, parse_instance,
    write_code, write_cover, write_digraph, write_instance,
};
use indexcode::oracle::{
    brute_alpha, brute_cc, brute_mais, brute_mes, brute_omega, exhaustive_failures, OracleBudget,
};
use indexcode::ramsey::{dramsey, ramsey_undirected};
use proptest::prelude::*;

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| u != v && bits[u * n + v])
                .collect();
            Digraph::from_edges(n, &edges).unwrap()
        })
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| bits[u * n + v])
                .collect();
            Digraph::from_undirected_edges(n, &edges).unwrap()
        })
    })
}

/// A digraph together with a labelling of its vertices into at most `n` parts.
fn digraph_and_partition(max_n: usize) -> impl Strategy<Value = (Digraph, Vec<VertexSet>)> {
    digraph(max_n).prop_flat_map(|g| {
        let n = g.n();
        proptest::collection::vec(0..n.max(1), n).prop_map(move |label| {
            let parts: Vec<VertexSet> = (0..n)
                .map(|k| VertexSet::from_vec((0..n).filter(|&v| label[v] == k).collect()).unwrap())
                .filter(|s| !s.is_empty())
                .collect();
            (g.clone(), parts)
        })
    })
}

fn subset(g: &Digraph, mask: u64) -> VertexSet {
    VertexSet::from_vec((0..g.n()).filter(|&v| mask >> v & 1 == 1).collect()).unwrap()
}

fn is_partition_into_cliques(g: &Digraph, cover: &CliqueCover) -> bool {
    let mut seen = vec![false; g.n()];
    for c in cover.cliques() {
        if !g.is_clique(c).unwrap() {
            return false;
        }
        for v in c.iter() {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
    }
    seen.into_iter().all(|b| b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn digraph_cover_partitions_into_cliques(g in digraph(14)) {
        let res = cover_digraph(&g);
        prop_assert!(is_partition_into_cliques(&g, &res.cover));
        prop_assert_eq!(res.trace.last().map_or(0, |s| s.remaining), 0);
    }

    #[test]
    fn graph_cover_partitions_into_cliques(g in graph(14)) {
        let res = cover_graph(&g).unwrap();
        prop_assert!(is_partition_into_cliques(&g, &res.cover));
    }

    #[test]
    fn extraction_returns_clique_and_acyclic_set(g in digraph(12)) {
        let pair = dramsey(&g);
        prop_assert!(g.is_clique(&pair.clique).unwrap());
        prop_assert!(g.is_acyclic(&pair.acyclic).unwrap());
        prop_assert!(g.n() == 0 || !pair.clique.is_empty());
    }

    #[test]
    fn undirected_extraction_returns_clique_and_independent_set(g in graph(12)) {
        let pair = ramsey_undirected(&g).unwrap();
        prop_assert!(g.is_clique(&pair.clique).unwrap());
        let ind = pair.acyclic.as_slice();
        prop_assert!(ind.iter().all(|&u| ind.iter().all(|&v| !g.has_edge(u, v))));
    }

    #[test]
    fn cliques_of_two_or_more_are_never_acyclic(g in digraph(7), mask in any::<u64>()) {
        let s = subset(&g, mask);
        if s.len() >= 2 && g.is_clique(&s).unwrap() {
            prop_assert!(!g.is_acyclic(&s).unwrap());
        }
    }

    #[test]
    fn symmetric_acyclic_iff_independent(g in graph(8), mask in any::<u64>()) {
        let s = subset(&g, mask);
        let independent = s.iter().all(|u| s.iter().all(|v| !g.has_edge(u, v)));
        prop_assert_eq!(g.is_acyclic(&s).unwrap(), independent);
    }

    #[test]
    fn topological_order_respects_edges(g in digraph(9), mask in any::<u64>()) {
        let s = subset(&g, mask);
        if let Ok(order) = g.topological_order(&s) {
            let pos = |v: usize| order.iter().position(|&w| w == v).unwrap();
            for u in s.iter() {
                for v in s.iter() {
                    if g.has_edge(u, v) {
                        prop_assert!(pos(u) < pos(v));
                    }
                }
            }
        }
    }

    #[test]
    fn acyclic_sets_give_expanding_sequences(g in digraph(9), mask in any::<u64>()) {
        let s = subset(&g, mask);
        if g.is_acyclic(&s).unwrap() {
            let seq = expanding_from_acyclic(&g, &s).unwrap();
            prop_assert_eq!(seq.0.len(), s.len());
            prop_assert!(is_expanding_sequence(&standard_instance(&g), &seq.0).unwrap());
        }
    }

    #[test]
    fn digraph_text_round_trip(g in digraph(12)) {
        prop_assert_eq!(parse_digraph(&write_digraph(&g)).unwrap(), g);
    }

    #[test]
    fn instance_text_round_trip(n in 0usize..7, extra in 0usize..5, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let inst = gen_genic(n, n + if n == 0 { 0 } else { extra }, p, seed).unwrap();
        prop_assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn cover_and_code_text_round_trip(g in digraph(12)) {
        let cover = cover_digraph(&g).cover;
        prop_assert_eq!(&parse_cover(&write_cover(&cover)).unwrap(), &cover);
        let code = code_from_cover(&cover);
        prop_assert_eq!(parse_code(&write_code(&code)).unwrap(), code);
    }

    /// On a standard instance the first round already serves everybody, so
    /// the generalized algorithm reproduces the plain digraph cover.
    #[test]
    fn genic_on_standard_instance_is_cover_digraph(g in digraph(10)) {
        let out = genic_cover(&standard_instance(&g));
        let plain = cover_digraph(&g);
        prop_assert_eq!(out.code.len(), plain.len());
        prop_assert!(out.tail.is_empty() || g.n() == 0);
    }

    #[test]
    fn genic_codes_decode(n in 1usize..8, extra in 0usize..5, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let inst = gen_genic(n, n + extra, p, seed).unwrap();
        let out = genic_cover(&inst);
        prop_assert!(validate_code(&inst, &out.code).is_valid());
        let failing = exhaustive_failures(&inst, &out.code, &OracleBudget::verify()).unwrap();
        prop_assert!(failing.is_empty());
    }

    /// With disjoint XOR sets a receiver can only use the set holding its own
    /// symbol, so the structural and the semantic check agree.
    #[test]
    fn structural_equals_exhaustive_for_partition_codes((g, parts) in digraph_and_partition(8)) {
        let inst = standard_instance(&g);
        let code = IndexCode::new(g.n(), parts).unwrap();
        let semantic = exhaustive_failures(&inst, &code, &OracleBudget::verify()).unwrap();
        prop_assert_eq!(validate_code(&inst, &code).failing, semantic);
    }

    #[test]
    fn oracle_cross_checks(g in digraph(9)) {
        let mais = brute_mais(&g, &OracleBudget::mais()).unwrap();
        let cc = brute_cc(&g, &OracleBudget::cc()).unwrap();
        let omega = brute_omega(&g, &OracleBudget::omega()).unwrap();
        prop_assert!(mais <= cc);
        prop_assert!(omega * cc >= g.n());
        prop_assert!(cc <= cover_digraph(&g).len());
        prop_assert_eq!(brute_mes(&standard_instance(&g), &OracleBudget::mes()).unwrap(), mais);
    }

    #[test]
    fn graph_oracle_cross_checks(g in graph(10)) {
        let alpha = brute_alpha(&g, &OracleBudget::alpha()).unwrap();
        let cc = brute_cc(&g, &OracleBudget::cc()).unwrap();
        prop_assert!(alpha <= cc);
        prop_assert_eq!(brute_mais(&g, &OracleBudget::mais()).unwrap(), alpha);
        prop_assert!(cc <= cover_graph(&g).unwrap().len());
    }

    #[test]
    fn line_graph_covers_within_twice_alpha(g in graph(7)) {
        let (h, _) = line_graph(&g).unwrap();
        let res = cover_quasiline(&h).unwrap();
        prop_assert!(is_partition_into_cliques(&h, &res.cover));
        let alpha = brute_alpha(&h, &OracleBudget::alpha()).unwrap();
        prop_assert!(res.len() <= 2 * alpha);
    }
}

#[test]
fn line_graphs_of_complete_graphs_are_quasi_line() {
    for n in 2..=10 {
        let (h, labels) = line_graph(&complete_graph(n)).unwrap();
        assert_eq!(h.n(), n * (n - 1) / 2);
        assert_eq!(labels.len(), h.n());
        for u in 0..h.n() {
            let (a, b) = neighborhood_two_cliques(&h, u).unwrap();
            assert_eq!(a.len() + b.len(), h.out_degree(u), "n = {n}, u = {u}");
            assert!(h.is_clique(&a).unwrap() && h.is_clique(&b).unwrap());
        }
    }
}

#[test]
fn expanding_sequence_bounds_code_length() {
    // Every valid code is at least as long as any expanding sequence.
    let inst = GenInstance::new(3, vec![0, 1, 2], vec![vec![], vec![0], vec![0, 1]]).unwrap();
    assert!(is_expanding_sequence(&inst, &[0, 1, 2]).unwrap());
    assert!(!is_expanding_sequence(&inst, &[2, 1, 0]).unwrap());
    assert_eq!(brute_mes(&inst, &OracleBudget::mes()).unwrap(), 3);
    assert_eq!(genic_cover(&inst).code.len(), 3);
}
