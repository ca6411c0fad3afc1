use proptest::prelude::*;

use vconn::flow::{capped_vertex_connectivity, element_connectivity, vertex_connectivity, vertex_connectivity_value};
use vconn::format::{emit_graph, parse_graph};
use vconn::graph::{gen_gnp, pad_with_isolated_vertices, EdgeSet, Graph};
use vconn::oracles::{brute_4clique, brute_4clique_by_subsets, brute_edge_universal, brute_mixed_cut, is_clique};
use vconn::reductions::{apvc_threshold, attach_gadget, four_partite};
use vconn::solvers::{
    apvc_naive, apvc_via_ssvc, capped_apvc_sampled, fast_apvc, fast_ssvc, ssvc, ConnectivityMatrix,
};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..=1.0f64, any::<u64>()).prop_map(|(n, p, seed)| gen_gnp(n, p, seed))
}

/// Graphs small enough for the mixed-cut oracle.
fn tiny_graph() -> impl Strategy<Value = Graph> {
    (2..=7usize, 0.1..=0.9f64, any::<u64>()).prop_map(|(n, p, seed)| {
        let g = gen_gnp(n, p, seed);
        let mut edges = g.edges();
        edges.truncate(14);
        Graph::from_edges_dedup(n, edges)
    })
}

fn pair(n: usize) -> impl Strategy<Value = (usize, usize)> {
    (0..n, 1..n).prop_map(move |(u, off)| (u, (u + off) % n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_graphs_are_valid(g in graph(30)) {
        g.validate().unwrap();
        let degree_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.m());
        for v in 0..g.n() {
            for &u in g.neighbors(v) {
                prop_assert!(u != v && g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn emit_parse_round_trip(g in graph(25)) {
        let text = emit_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(emit_graph(&back), text);
    }

    #[test]
    fn padding_preserves_connectivity(g in graph(9), extra in 0..5usize) {
        prop_assume!(g.n() >= 2);
        let padded = pad_with_isolated_vertices(&g, extra);
        prop_assert_eq!(padded.n(), g.n() + extra);
        prop_assert_eq!(padded.edges(), g.edges());
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                prop_assert_eq!(
                    vertex_connectivity_value(&g, u, v).unwrap(),
                    vertex_connectivity_value(&padded, u, v).unwrap()
                );
            }
        }
    }

    #[test]
    fn flow_matches_mixed_cut_oracle((g, (u, v)) in tiny_graph().prop_flat_map(|g| { let n = g.n(); (Just(g), pair(n)) })) {
        let (k, cert) = vertex_connectivity(&g, u, v).unwrap();
        prop_assert_eq!(k, brute_mixed_cut(&g, u, v, None).unwrap());
        prop_assert_eq!(cert.value, k);
        prop_assert!(cert.separates(&g, u, v));
    }

    #[test]
    fn element_mode_matches_oracle(
        (g, (u, v)) in tiny_graph().prop_flat_map(|g| { let n = g.n(); (Just(g), pair(n)) }),
        mask in any::<u8>(),
    ) {
        let mut terms: Vec<usize> = (0..g.n()).filter(|&x| x == u || x == v || mask >> x & 1 == 1).collect();
        terms.dedup();
        let e = element_connectivity(&g, &terms, u, v).unwrap();
        prop_assert_eq!(e, brute_mixed_cut(&g, u, v, Some(&terms)).unwrap());
        prop_assert!(e >= vertex_connectivity_value(&g, u, v).unwrap());
    }

    #[test]
    fn capped_flow_is_min_with_cap((g, (u, v)) in graph(14).prop_filter("n>=2", |g| g.n() >= 2).prop_flat_map(|g| { let n = g.n(); (Just(g), pair(n)) }), cap in 1..8usize) {
        let k = vertex_connectivity_value(&g, u, v).unwrap();
        prop_assert_eq!(capped_vertex_connectivity(&g, u, v, cap).unwrap(), k.min(cap));
    }

    #[test]
    fn connectivity_bounded_by_degrees(g in graph(14).prop_filter("n>=2", |g| g.n() >= 2)) {
        let m = apvc_naive(&g);
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                let k = m.get(u, v).unwrap();
                let bound = g.degree(u).min(g.degree(v));
                prop_assert!(k <= bound, "kappa({},{}) = {} > min degree {}", u, v, k, bound);
                prop_assert_eq!(m.get(v, u), Some(k));
            }
        }
    }

    #[test]
    fn single_source_rows_assemble_the_matrix(g in graph(12).prop_filter("n>=2", |g| g.n() >= 2)) {
        prop_assert_eq!(apvc_via_ssvc(&g).unwrap(), apvc_naive(&g));
    }

    #[test]
    fn matrix_tsv_round_trip(g in graph(12), cap in proptest::option::of(1..5usize)) {
        let m = match cap {
            Some(k) => apvc_naive(&g).capped(k),
            None => apvc_naive(&g),
        };
        prop_assert_eq!(ConnectivityMatrix::from_tsv(&m.to_tsv()).unwrap(), m);
    }

    #[test]
    fn gadget_adds_side_sizes(g in graph(10).prop_filter("n>=2", |g| g.n() >= 2), split in any::<u64>()) {
        let n = g.n();
        let nx = 1 + (split as usize) % (n - 1);
        let ny = 1 + (split as usize >> 8) % (n - nx);
        let xs: Vec<usize> = (0..nx).collect();
        let ys: Vec<usize> = (nx..nx + ny).collect();
        let (x, y) = (xs[0], ys[ys.len() - 1]);
        let r = g.without_edges(&[(x, y)]);
        let lhs = vertex_connectivity_value(&attach_gadget(&r, &xs, &ys).unwrap(), x, y).unwrap();
        let removed: Vec<usize> = xs.iter().chain(&ys).copied().filter(|&v| v != x && v != y).collect();
        let rhs = vertex_connectivity_value(&r.isolate_vertices(&removed), x, y).unwrap() + nx + ny;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn four_partite_preserves_4cliques(g in graph(10)) {
        let fp = four_partite(&g);
        prop_assert_eq!(fp.graph().m(), 12 * g.m());
        prop_assert_eq!(brute_4clique(&g).is_some(), brute_4clique(fp.graph()).is_some());
    }

    #[test]
    fn clique_oracles_agree(g in graph(12)) {
        let a = brute_4clique(&g);
        let b = brute_4clique_by_subsets(&g);
        prop_assert_eq!(a.is_some(), b.is_some());
        if let Some(w) = a {
            prop_assert!(is_clique(&g, &w));
        }
    }

    #[test]
    fn universal_implies_existential(g in graph(10)) {
        let all = g.edge_set();
        let u = brute_edge_universal(&g, &all).unwrap();
        if u.holds && !all.is_empty() {
            prop_assert!(brute_4clique(&g).is_some());
        }
        prop_assert!(brute_edge_universal(&g, &EdgeSet::default()).unwrap().holds);
    }

    #[test]
    fn threshold_is_symmetric(g in graph(12), a in 0..12usize, d in 0..12usize) {
        prop_assume!(a < g.n() && d < g.n());
        prop_assert_eq!(apvc_threshold(&g, a, d), apvc_threshold(&g, d, a));
        prop_assert!(apvc_threshold(&g, a, d) > 4 * g.n());
    }

    #[test]
    fn sampler_never_underestimates(g in graph(16).prop_filter("n>=2", |g| g.n() >= 2), k in 1..=5usize, seed in any::<u64>()) {
        let exact = apvc_naive(&g).capped(k);
        let loose = capped_apvc_sampled(&g, k, seed, false).unwrap();
        let tight = capped_apvc_sampled(&g, k, seed, true).unwrap();
        prop_assert_eq!(&tight, &exact);
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                prop_assert!(loose.get(u, v).unwrap() >= exact.get(u, v).unwrap());
                prop_assert!(loose.get(u, v).unwrap() <= k);
            }
        }
    }

    #[test]
    fn fast_solvers_are_exact(g in graph(16).prop_filter("n>=2", |g| g.n() >= 2), k in proptest::option::of(0..6usize), s in 0..16usize) {
        prop_assume!(s < g.n());
        prop_assert_eq!(fast_apvc(&g, k), apvc_naive(&g));
        prop_assert_eq!(fast_ssvc(&g, s, k).unwrap(), ssvc(&g, s).unwrap());
    }
}
