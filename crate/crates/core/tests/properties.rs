use petweave::classify::{chromatic_number, strongly_regular_params, verify_coloring};
use petweave::codec::{decode_graph6, encode_graph6};
use petweave::graph::{
    bfs, degree_sequence, diameter, diametral_pair, distance_matrix, is_bipartite, is_connected,
    line_graph, regular_degree, UGraph,
};
use petweave::spectral::{distinct_count, eigenvalues, Tolerances};
use petweave::survey::corpus;
use petweave::symmetry::{
    are_isomorphic, automorphism_group, is_automorphism, DEFAULT_SEARCH_BUDGET,
};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = UGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            UGraph::from_edges(n, edges).unwrap()
        })
    })
}

fn shuffled(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(40)) {
        let s = encode_graph6(&g).unwrap();
        prop_assert!(s.as_str().bytes().all(|b| (63..=126).contains(&b)));
        let back = decode_graph6(s.as_str()).unwrap();
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
    }

    #[test]
    fn single_byte_corruption_never_yields_same_graph(g in graph_strategy(20), pos in any::<prop::sample::Index>(), byte in 0u8..=255) {
        let s = encode_graph6(&g).unwrap();
        let mut bytes = s.as_str().as_bytes().to_vec();
        let k = pos.index(bytes.len());
        prop_assume!(bytes[k] != byte);
        bytes[k] = byte;
        if let Ok(text) = String::from_utf8(bytes) {
            if let Ok(h) = decode_graph6(&text) {
                prop_assert!(h != g);
            }
        }
    }

    #[test]
    fn handshake_and_line_graph_size(g in graph_strategy(16)) {
        let degs = degree_sequence(&g);
        prop_assert_eq!(degs.iter().sum::<usize>(), 2 * g.edge_count());
        let l = line_graph(&g);
        let expected: usize = degs.iter().map(|d| d * d.saturating_sub(1) / 2).sum();
        prop_assert_eq!(l.vertex_count(), g.edge_count());
        prop_assert_eq!(l.edge_count(), expected);
    }

    #[test]
    fn distances_obey_triangle_inequality(g in graph_strategy(14)) {
        let d = distance_matrix(&g);
        let n = g.vertex_count();
        for u in 0..n {
            prop_assert_eq!(d[u][u], 0);
            let profile = bfs(&g, u);
            for v in 0..n {
                prop_assert_eq!(profile.distances[v].unwrap_or(usize::MAX), d[u][v]);
                for w in 0..n {
                    if d[u][v] != usize::MAX && d[v][w] != usize::MAX {
                        prop_assert!(d[u][w] <= d[u][v] + d[v][w]);
                    }
                }
            }
            for v in g.neighbors(u) {
                prop_assert!(d[u][v] == 1);
            }
        }
    }

    #[test]
    fn diameter_is_attained(g in graph_strategy(14)) {
        match diameter(&g) {
            Some(dia) => {
                let (u, v, dd) = diametral_pair(&g).unwrap();
                prop_assert_eq!(dd, dia);
                prop_assert_eq!(distance_matrix(&g)[u][v], dia);
            }
            None => prop_assert!(!is_connected(&g)),
        }
    }

    #[test]
    fn shuffled_copy_is_isomorphic(g in graph_strategy(12), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut images: Vec<usize> = (0..n).collect();
        // deterministic Fisher-Yates from the seed
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            images.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let h = g.relabel(&images).unwrap();
        let p = are_isomorphic(&g, &h, DEFAULT_SEARCH_BUDGET).unwrap().expect("isomorphic");
        for (u, v) in g.edges() {
            prop_assert!(h.has_edge(p.apply(u), p.apply(v)));
        }
        prop_assert_eq!(g.edge_count(), h.edge_count());
    }

    #[test]
    fn automorphism_generators_verify(g in graph_strategy(12)) {
        prop_assume!(is_connected(&g));
        let r = automorphism_group(&g, DEFAULT_SEARCH_BUDGET).unwrap();
        for p in &r.generators {
            prop_assert_eq!(is_automorphism(&g, p), Ok(true));
        }
        let covered: usize = r.vertex_orbits.iter().map(Vec::len).sum();
        prop_assert_eq!(covered, g.vertex_count());
    }

    #[test]
    fn chromatic_number_and_bipartiteness_agree(g in graph_strategy(11)) {
        let c = chromatic_number(&g, 10_000_000);
        let k = c.exact().expect("small graphs finish");
        prop_assert_eq!(verify_coloring(&g, &c.coloring), Some(k));
        if g.edge_count() > 0 {
            prop_assert_eq!(k == 2, is_bipartite(&g));
        }
        if !is_bipartite(&g) {
            prop_assert!(k >= 3);
        }
    }

    #[test]
    fn relabelled_spectra_agree(g in graph_strategy(12), perm in shuffled(12)) {
        let n = g.vertex_count();
        let images: Vec<usize> = perm.into_iter().filter(|&x| x < n).collect();
        let h = g.relabel(&images).unwrap();
        let tol = Tolerances::default();
        let a = eigenvalues(&g, &tol).unwrap();
        let b = eigenvalues(&h, &tol).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            prop_assert!((x - y).abs() < 1e-8);
        }
    }
}

#[test]
fn corpus_round_trips_through_graph6() {
    for (name, g) in corpus() {
        let s = encode_graph6(&g).unwrap();
        let back = decode_graph6(s.as_str()).unwrap();
        assert_eq!(
            back.edges().collect::<Vec<_>>(),
            g.edges().collect::<Vec<_>>(),
            "{name}"
        );
    }
}

#[test]
fn strongly_regular_iff_three_eigenvalues_on_connected_regular_corpus() {
    for (name, g) in corpus() {
        if !is_connected(&g) || regular_degree(&g).is_none() || g.vertex_count() < 2 {
            continue;
        }
        let s = eigenvalues(&g, &Tolerances::default()).unwrap();
        let distinct = distinct_count(&s, 1e-6).unwrap();
        let complete = g.edge_count() == g.vertex_count() * (g.vertex_count() - 1) / 2;
        if complete {
            // two eigenvalues, excluded from strong regularity
            assert_eq!(distinct, 2, "{name}");
            assert!(strongly_regular_params(&g).is_none(), "{name}");
        } else {
            assert_eq!(
                strongly_regular_params(&g).is_some(),
                distinct == 3,
                "{name}"
            );
        }
    }
}
