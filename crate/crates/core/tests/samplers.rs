//! Seeded statistical checks of the samplers against the exact oracles.

use std::collections::BTreeMap;

use dampwalk::graph::{random_connected_graph, RandomGraphSpec, Vertex};
use dampwalk::oracle::{self, chi_square_gof, to_f64, Alpha};
use dampwalk::walker::{self, ExcursionOptions, RandomSource};
use dampwalk::WeightedGraph;

fn weighted_triangle() -> WeightedGraph {
    WeightedGraph::from_edges(3, [(1, 2, 1.0), (2, 3, 2.0), (1, 3, 3.0)]).unwrap()
}

fn unit_triangle() -> WeightedGraph {
    WeightedGraph::from_edges(3, [(1, 2, 1.0), (2, 3, 1.0), (1, 3, 1.0)]).unwrap()
}

fn chi_square(counts: &BTreeMap<Vec<(Vertex, Vertex)>, u64>, law: &[(Vec<(Vertex, Vertex)>, f64)], samples: u64) {
    let observed: Vec<u64> = law.iter().map(|(k, _)| counts.get(k).copied().unwrap_or(0)).collect();
    assert_eq!(observed.iter().sum::<u64>(), samples, "sampler produced a tree outside the support");
    let expected: Vec<f64> = law.iter().map(|(_, p)| *p).collect();
    let outcome = chi_square_gof(&observed, &expected, Alpha::TenthPercent).unwrap();
    assert!(outcome.pass, "{outcome:?}");
}

#[test]
fn aldous_broder_weighted_triangle() {
    let g = weighted_triangle();
    let law: Vec<_> = oracle::exact_tree_distribution(&g)
        .unwrap()
        .into_iter()
        .map(|(edges, p)| (edges, to_f64(&p)))
        .collect();
    let source = RandomSource::new(2024);
    let samples = 10_000;
    let mut counts = BTreeMap::new();
    for i in 0..samples {
        let t = walker::sample_spanning_tree_ab(&g, 1, &mut source.stream(i), u64::MAX).unwrap();
        *counts.entry(t.edge_pairs()).or_insert(0) += 1;
    }
    chi_square(&counts, &law, samples);
}

#[test]
fn aldous_broder_random_graph() {
    let spec = RandomGraphSpec {
        n: 5,
        max_weight: 5,
        extra_edge_probability: 0.5,
        max_edges: 6,
    };
    let g = random_connected_graph(&spec, &mut RandomSource::new(9).stream(0));
    let law: Vec<_> = oracle::exact_tree_distribution(&g)
        .unwrap()
        .into_iter()
        .map(|(edges, p)| (edges, to_f64(&p)))
        .collect();
    assert!((2..=31).contains(&law.len()), "{}", law.len());
    let samples = 50_000;
    let source = RandomSource::new(77);
    let mut counts = BTreeMap::new();
    for i in 0..samples {
        let t = walker::sample_spanning_tree_ab(&g, 3, &mut source.stream(i), u64::MAX).unwrap();
        *counts.entry(t.edge_pairs()).or_insert(0) += 1;
    }
    chi_square(&counts, &law, samples);
}

#[test]
fn augmented_tree_law() {
    let g = unit_triangle();
    let e = oracle::enumerate_augmented_trees(&g, 1.0).unwrap();
    let total = to_f64(&e.exact_total);
    let law: Vec<_> = e.trees.iter().map(|t| (t.edges.clone(), t.weight / total)).collect();
    assert_eq!(law.len(), 16);
    let aug = g.augment(1.0).unwrap();
    let samples = 20_000;
    let source = RandomSource::new(3);
    let mut counts = BTreeMap::new();
    for i in 0..samples {
        let t = walker::sample_augmented_tree(&aug, &mut source.stream(i), u64::MAX).unwrap();
        *counts.entry(t.edge_pairs()).or_insert(0) += 1;
    }
    chi_square(&counts, &law, samples);
}

#[test]
fn excursions_are_damped_walks() {
    let g = weighted_triangle();
    let lambda = 0.5;
    let aug = g.augment(lambda).unwrap();
    let options = ExcursionOptions {
        min_excursions: 1,
        ..ExcursionOptions::default()
    };
    let samples = 20_000u64;
    let source = RandomSource::new(8);
    let mut first = [0u64; 3];
    let mut lengths = Vec::with_capacity(samples as usize);
    for i in 0..samples {
        let record = walker::sample_augmented_excursions(&aug, &mut source.stream(i), &options).unwrap();
        let w = &record.walks[0];
        first[w.first() - 1] += 1;
        lengths.push(w.len() as f64);
    }
    let outcome = chi_square_gof(&first, &g.stationary_distribution(), Alpha::TenthPercent).unwrap();
    assert!(outcome.pass, "{outcome:?}");

    let mean = lengths.iter().sum::<f64>() / samples as f64;
    let var = lengths.iter().map(|l| (l - mean).powi(2)).sum::<f64>() / (samples - 1) as f64;
    let se = (var / samples as f64).sqrt();
    let target = (1.0 + lambda) / lambda;
    assert!((mean - target).abs() < 4.0 * se, "{mean} vs {target} ± {se}");
}

#[test]
fn damped_walk_visited_sets() {
    let g = WeightedGraph::from_edges(4, [(1, 2, 1.0), (2, 3, 2.0), (3, 4, 1.0), (1, 3, 1.0)]).unwrap();
    let lambda = 1.0;
    let law = oracle::single_walk_visited_set_law(&g, lambda).unwrap();
    let samples = 50_000u64;
    let source = RandomSource::new(12);
    let mut observed = vec![0u64; law.mass.len()];
    for i in 0..samples {
        let walk = walker::sample_damped_walk(&g, lambda, &mut source.stream(i)).unwrap();
        let mask = walk.vertices().iter().fold(0usize, |m, &v| m | 1 << (v - 1));
        observed[mask] += 1;
    }
    // pool the rare sets into one cell
    let mut obs = Vec::new();
    let mut exp = Vec::new();
    let (mut rare_obs, mut rare_exp) = (0u64, 0.0);
    for (mask, &p) in law.mass.iter().enumerate() {
        if p * samples as f64 >= 5.0 {
            obs.push(observed[mask]);
            exp.push(p);
        } else {
            rare_obs += observed[mask];
            rare_exp += p;
        }
    }
    if rare_obs > 0 || rare_exp > 0.0 {
        obs.push(rare_obs);
        exp.push(rare_exp);
    }
    let outcome = chi_square_gof(&obs, &exp, Alpha::TenthPercent).unwrap();
    assert!(outcome.pass, "{outcome:?}");
}
