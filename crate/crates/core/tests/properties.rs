mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sbmcd::{
    accuracy, best_fit_simplex, canonical_simplex, log_likelihood_score, round_labeling,
    solve_sdp, DiscreteLabeling, Graph, GroundTruth, LabelDistribution, ModifiedAdjacency,
    SimplexBasis, SolverConfig, VectorLabeling,
};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..(n * 3)).prop_map(move |pairs| {
            let pairs: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            Graph::from_edges(n, pairs).unwrap().0
        })
    })
}

fn probs() -> impl Strategy<Value = (f64, f64)> {
    (0.0..1.0f64, 0.0..1.0f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matvec_matches_dense(graph in graph_strategy(50), (p, q) in probs(), seed in any::<u64>()) {
        let n = graph.n();
        let m = ModifiedAdjacency::new(graph.clone(), p, q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = gaussian(&mut rng, n);
        let fast = m.matvec(&v).unwrap();
        let (cp, cq) = (clamp(p), clamp(q));
        let (w_in, w_out) = ((cp / cq).ln(), ((1.0 - cp) / (1.0 - cq)).ln());
        for i in 0..n {
            let mut expected = 0.0;
            for j in 0..n {
                if i != j {
                    expected += if graph.has_edge(i, j) { w_in } else { w_out } * v[j];
                }
            }
            let scale = 1.0 + w_in.abs().max(w_out.abs()) * v.iter().map(|x| x.abs()).sum::<f64>();
            prop_assert!((fast[i] - expected).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn rounding_is_rotation_invariant(r in 2usize..6, extra in 0usize..3, seed in any::<u64>()) {
        let d = r + extra;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = canonical_simplex(r, d).unwrap();
        let rows = random_unit_rows(20, d, &mut rng);
        let rot = random_rotation(d, &mut rng);
        let plain = round_labeling(&VectorLabeling::from_rows_normalized(rows.clone(), d).unwrap(), &basis).unwrap();
        let rotated_basis = SimplexBasis::from_vectors(r, d, rotate_rows(basis.as_slice(), d, &rot)).unwrap();
        let rotated_rows = VectorLabeling::from_rows_normalized(rotate_rows(&rows, d, &rot), d).unwrap();
        let turned = round_labeling(&rotated_rows, &rotated_basis).unwrap();
        prop_assert_eq!(plain.assignments(), turned.assignments());
    }

    #[test]
    fn softmax_ignores_shifts(logits in proptest::collection::vec(-50.0..50.0f64, 2..8), shift in -1e3..1e3f64) {
        let a = LabelDistribution::softmax(&logits);
        let shifted: Vec<f64> = logits.iter().map(|l| l + shift).collect();
        let b = LabelDistribution::softmax(&shifted);
        prop_assert!((a.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for (x, y) in a.probs().iter().zip(b.probs()) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn canonical_simplex_table_is_exact(r in 2usize..12, extra in 0usize..4) {
        let basis = canonical_simplex(r, r - 1 + extra).unwrap();
        let d = basis.dim();
        for i in 0..r {
            for j in 0..r {
                let expected = if i == j { 1.0 } else { -1.0 / (r as f64 - 1.0) };
                let ip = dot(basis.vector(i), basis.vector(j));
                prop_assert!((ip - expected).abs() < 1e-12, "r={} d={} ({},{}) {}", r, d, i, j, ip);
            }
        }
    }

    #[test]
    fn best_fit_always_returns_a_simplex(r in 2usize..5, sigma in 0.0..2.0f64, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = r + 1;
        let (rows, _, _) = noisy_simplex_rows(30, r, d, sigma, &mut rng);
        let x = VectorLabeling::from_rows_normalized(rows, d).unwrap();
        let fitted = best_fit_simplex(&x, r, seed).unwrap();
        for i in 0..r {
            for j in 0..r {
                let expected = if i == j { 1.0 } else { -1.0 / (r as f64 - 1.0) };
                prop_assert!((dot(fitted.vector(i), fitted.vector(j)) - expected).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn accuracy_is_a_fraction(r in 2usize..5, seed in any::<u64>(), queried_frac in 0.0..1.0f64) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 25;
        let truth = GroundTruth::new((0..n).map(|_| rng.gen_range(0..r)).collect(), r).unwrap();
        let queried: Vec<bool> = (0..n).map(|_| rng.gen::<f64>() < queried_frac).collect();
        let mut pred: Vec<usize> = (0..n).map(|_| rng.gen_range(0..r)).collect();
        for i in 0..n {
            if queried[i] {
                pred[i] = truth.labels()[i];
            }
        }
        let labeling = DiscreteLabeling::new(pred, queried.clone(), r).unwrap();
        let acc = accuracy(&labeling, &truth, &queried).unwrap();
        prop_assert!((0.0..=1.0).contains(&acc));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn score_differences_equal_log_likelihood_ratios(
        graph in graph_strategy(7),
        r in 2usize..4,
        p in 0.3..0.95f64,
        q in 0.01..0.3f64,
        seed in any::<u64>(),
    ) {
        use rand::Rng;
        let n = graph.n();
        let m = ModifiedAdjacency::new(graph.clone(), p, q);
        let basis = canonical_simplex(r, r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<usize> = (0..n).map(|_| rng.gen_range(0..r)).collect();
        let b: Vec<usize> = (0..n).map(|_| rng.gen_range(0..r)).collect();
        let none = vec![false; n];
        let sa = log_likelihood_score(&m, &VectorLabeling::embed(&a, &none, &basis).unwrap(), &basis).unwrap();
        let sb = log_likelihood_score(&m, &VectorLabeling::embed(&b, &none, &basis).unwrap(), &basis).unwrap();
        let expected = bernoulli_ll(&graph, p, q, &a) - bernoulli_ll(&graph, p, q, &b);
        prop_assert!((sa - sb - expected).abs() < 1e-10);
    }

    #[test]
    fn solver_is_feasible_monotone_and_deterministic(
        graph in graph_strategy(30),
        (p, q) in probs(),
        r in 2usize..4,
        seed in any::<u64>(),
    ) {
        let n = graph.n();
        let m = ModifiedAdjacency::new(graph, p, q);
        let cfg = SolverConfig { seed, restarts: 2, max_iters: 300, ..SolverConfig::default() };
        let basis = canonical_simplex(r, cfg.resolve_rank(n, r)).unwrap();
        let pins: Vec<(usize, usize)> = (0..n.min(r)).map(|i| (i, i % r)).collect();
        let a = solve_sdp(&m, &pins, &basis, &cfg).unwrap();
        let b = solve_sdp(&m, &pins, &basis, &cfg).unwrap();
        prop_assert_eq!(&a.x, &b.x);
        prop_assert_eq!(a.objective.to_bits(), b.objective.to_bits());
        for i in 0..n {
            let row = a.x.row(i);
            prop_assert!((dot(row, row).sqrt() - 1.0).abs() < 1e-8);
        }
        for &(i, label) in &pins {
            prop_assert_eq!(a.x.row(i), basis.vector(label));
        }
        for w in a.history.windows(2) {
            prop_assert!(w[1] >= w[0]);
        }
        prop_assert_eq!(*a.history.last().unwrap(), a.objective);
    }
}
