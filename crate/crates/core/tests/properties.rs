use dampwalk::graph::{random_connected_graph, RandomGraphSpec};
use dampwalk::oracle::{self, rational_from_f64, to_f64};
use dampwalk::spectrum::{self, EigenConfig, RootKind};
use dampwalk::walker::{self, RandomSource};
use dampwalk::WeightedGraph;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn graph(n: usize, seed: u64, density: f64) -> WeightedGraph {
    let spec = RandomGraphSpec {
        n,
        max_weight: 5,
        extra_edge_probability: density,
        max_edges: 24 - n,
    };
    random_connected_graph(&spec, &mut RandomSource::new(seed).stream(0))
}

fn small_graph() -> impl Strategy<Value = WeightedGraph> {
    (2usize..=6, any::<u64>(), 0.0f64..0.8).prop_map(|(n, seed, p)| graph(n, seed, p))
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratio_is_bounded(g in small_graph(), lambda in 0.01f64..10.0) {
        let r = spectrum::spectral_ratio(&g, lambda).unwrap();
        prop_assert!(r.abs() <= 1.0 + 1e-12, "{}", r);
    }

    #[test]
    fn augmented_weight_is_signed_char_poly(g in small_graph(), lambda in 0.05f64..5.0) {
        let sum = spectrum::augmented_tree_weight_sum(&g, lambda).unwrap();
        prop_assert!(sum > 0.0);
        let c = spectrum::char_poly_eval(&g, lambda).value();
        let signed = if g.n() % 2 == 0 { c } else { -c };
        prop_assert!(rel_close(sum, signed, 1e-9), "{} vs {}", sum, signed);
    }

    #[test]
    fn cofactors_agree(g in small_graph()) {
        let first = spectrum::cofactor_tree_weight(&g, 1).unwrap().value;
        let last = spectrum::cofactor_tree_weight(&g, g.n()).unwrap().value;
        prop_assert!(rel_close(first, last, 1e-9), "{} vs {}", first, last);
    }

    #[test]
    fn enumeration_matches_cofactor(g in small_graph()) {
        let e = oracle::enumerate_spanning_trees(&g).unwrap();
        let exact = oracle::exact_cofactor_tree_weight(&g, 1).unwrap();
        prop_assert_eq!(&e.exact_total, &exact);
        let float = spectrum::cofactor_tree_weight(&g, 1).unwrap().value;
        prop_assert!(rel_close(e.total_weight, float, 1e-9));
        for t in &e.trees {
            prop_assert!(oracle::is_spanning_tree(g.n(), &t.edges));
        }
    }

    #[test]
    fn augmented_enumeration_matches_char_poly(g in small_graph(), which in 0usize..3) {
        let lambda = [0.5, 1.0, 2.0][which];
        let e = oracle::enumerate_augmented_trees(&g, lambda).unwrap();
        let c = oracle::exact_char_poly(&g, &rational_from_f64(lambda).unwrap()).unwrap();
        let signed = if g.n() % 2 == 0 { c } else { -c };
        prop_assert_eq!(&e.exact_total, &signed);
        let sum = spectrum::augmented_tree_weight_sum(&g, lambda).unwrap();
        prop_assert!(rel_close(to_f64(&e.exact_total), sum, 1e-9));
    }

    #[test]
    fn sign_expectation_is_ratio(g in small_graph(), which in 0usize..3) {
        let lambda = [0.5, 1.0, 2.0][which];
        let exact = to_f64(&oracle::exact_sign_expectation(&g, lambda).unwrap());
        let ratio = spectrum::spectral_ratio(&g, lambda).unwrap();
        prop_assert!((exact - ratio).abs() < 1e-9, "{} vs {}", exact, ratio);
    }

    #[test]
    fn first_entrance_sign_converges(g in small_graph(), which in 0usize..3) {
        let lambda = [0.5, 1.0, 2.0][which];
        let value = oracle::exact_first_entrance_sign_expectation(&g, lambda, 400).unwrap();
        let ratio = spectrum::spectral_ratio(&g, lambda).unwrap();
        prop_assert!((value - ratio).abs() < 1e-6, "{} vs {}", value, ratio);
    }

    #[test]
    fn product_expectation_is_bounded(g in small_graph(), k in 2u64..30) {
        let v = oracle::exact_product_expectation(&g, 1.0, k).unwrap();
        prop_assert!((-1.0..=1.0).contains(&v));
    }

    #[test]
    fn visited_set_law_sums_to_one(g in small_graph(), lambda in 0.2f64..4.0) {
        let law = oracle::single_walk_visited_set_law(&g, lambda).unwrap();
        prop_assert!((law.total() - 1.0).abs() < 1e-9);
        prop_assert_eq!(law.mass[0], 0.0);
    }

    #[test]
    fn eigenvalues_lie_in_range(g in small_graph()) {
        let roots = spectrum::laplacian_eigenvalues(&g, &EigenConfig::default()).unwrap();
        prop_assert!(roots.iter().any(|r| r.kind == RootKind::Trivial && r.value == 0.0));
        for r in roots.iter() {
            prop_assert!((-2.0 - 1e-9..=0.0).contains(&r.value));
        }
        let values = roots.values();
        prop_assert!(values.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn tree_sampler_is_reproducible(g in small_graph(), seed in any::<u64>()) {
        let source = RandomSource::new(seed);
        let a = walker::sample_spanning_tree_ab(&g, 1, &mut source.stream(7), u64::MAX).unwrap();
        let b = walker::sample_spanning_tree_ab(&g, 1, &mut source.stream(7), u64::MAX).unwrap();
        prop_assert!(oracle::is_spanning_tree(g.n(), &a.edge_pairs()));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn exact_rationals_round_trip(x in -1e6f64..1e6) {
        let q = rational_from_f64(x).unwrap();
        prop_assert_eq!(to_f64(&q), x);
        prop_assert!(x != 0.0 || q.is_zero());
        prop_assert!(x != 1.0 || q.is_one());
    }
}
