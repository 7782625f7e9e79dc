use num_bigint::BigUint;
use proptest::prelude::*;

use kahn_core::algebra::Precision;
use kahn_core::search::{canonical_form, LeveledGraph, LocalConfig, SearchOptions};
use kahn_core::{count_bruteforce, count_independent_sets, pi_product, verify_statement2, Graph};

/// Random simple graph with at most `max_n` vertices and degrees capped.
fn graph(max_n: usize, max_degree: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(move |n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut deg = vec![0usize; n];
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] && deg[u] < max_degree && deg[v] < max_degree {
                        deg[u] += 1;
                        deg[v] += 1;
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.n(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_list_roundtrip(g in graph(12, 5)) {
        let text = g.to_edge_list();
        let back: Graph = Graph::parse_edge_list(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_edge_list(), text);
    }

    #[test]
    fn counting_agrees_with_brute_force(g in graph(14, 6)) {
        prop_assert_eq!(count_independent_sets(&g).unwrap(), count_bruteforce(&g).unwrap());
    }

    #[test]
    fn counting_is_multiplicative(a in graph(9, 4), b in graph(9, 4)) {
        let u = a.disjoint_union(&b);
        let prod: BigUint = count_independent_sets(&a).unwrap() * count_independent_sets(&b).unwrap();
        prop_assert_eq!(count_independent_sets(&u).unwrap(), prod);
        let mut pi = pi_product(&a).unwrap();
        pi *= &pi_product(&b).unwrap();
        prop_assert_eq!(pi_product(&u).unwrap(), pi);
    }

    #[test]
    fn relabeling_preserves_counts((g, perm) in graph(12, 5).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), permutation(n))
    })) {
        let h = relabel(&g, &perm);
        prop_assert_eq!(count_independent_sets(&g).unwrap(), count_independent_sets(&h).unwrap());
        prop_assert_eq!(pi_product(&g).unwrap(), pi_product(&h).unwrap());
    }

    #[test]
    fn square_bounded_by_double_cover(g in graph(9, 4)) {
        let a = count_independent_sets(&g).unwrap();
        let b = count_independent_sets(&g.tensor_k2()).unwrap();
        let sq = &a * &a;
        prop_assert!(sq <= b);
        prop_assert_eq!(sq == b, g.is_bipartite());
    }

    #[test]
    fn config_form_ignores_relabeling((g, x, perm) in graph(11, 5).prop_filter("bipartite, nonempty", |g| {
        g.n() > 0 && g.is_bipartite()
    }).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 0..n, permutation(n))
    })) {
        let h = relabel(&g, &perm);
        let a = LocalConfig::from_graph(&g, x, 5).unwrap();
        let b = LocalConfig::from_graph(&h, perm[x], 5).unwrap();
        prop_assert_eq!(canonical_form(&a), canonical_form(&b));
        prop_assert_eq!(a.goodness(Precision::default()).outcome, b.goodness(Precision::default()).outcome);
    }

    #[test]
    fn leveled_form_ignores_relabeling((g, perm) in graph(9, 3).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), permutation(n))
    })) {
        let levels: Vec<u8> = (0..g.n()).map(|v| (v % 3) as u8).collect();
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let a = LeveledGraph::from_edges(levels.clone(), &edges);
        let mut moved = vec![0u8; g.n()];
        for v in 0..g.n() {
            moved[perm[v]] = levels[v];
        }
        let moved_edges: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let b = LeveledGraph::from_edges(moved, &moved_edges);
        prop_assert_eq!(a.canonical_form(), b.canonical_form());
        let back = LeveledGraph::from_canonical(&a.canonical_form()).unwrap();
        prop_assert_eq!(back.canonical_form(), a.canonical_form());
    }
}

#[test]
fn parallel_runs_are_deterministic() {
    let opts = SearchOptions {
        precision: Precision::default(),
    };
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let report = pool.install(|| verify_statement2(3, opts)).unwrap();
        serde_json::to_string(&report).unwrap()
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(3));
}
