mod common;

use common::{dense_radius, random_connected, random_graph};
use oddprism::graph::spex_candidate;
use oddprism::spectral::{
    apex_cubic, coarsest_equitable_partition, eq_g1_discrepancy, paper_poly_f, quotient_char_poly,
    quotient_matrix, quotient_spectral_radius, rayleigh_lower_bound, rotation_test, spectral_radius,
    VertexPartition,
};
use oddprism::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn quotient_radius(g: &Graph) -> f64 {
    let p = coarsest_equitable_partition(g, &VertexPartition::trivial(g.order())).unwrap();
    quotient_spectral_radius(&quotient_matrix(g, &p).unwrap(), 1e-12).unwrap()
}

/// `(rC_3 ∪ K_{1,s}) ∨ n₂K_1`.
fn f_graph(r: usize, s: usize, n2: usize) -> Graph {
    let mut left = Graph::complete_bipartite(1, s);
    for _ in 0..r {
        left = left.disjoint_union(&Graph::complete(3));
    }
    left.join(&Graph::empty(n2))
}

#[test]
fn candidate_three_routes_agree() {
    for n in 5..=200 {
        let g = spex_candidate(n).unwrap();
        let power = spectral_radius(&g, 1e-10).unwrap().radius;
        let quotient = quotient_radius(&g);
        assert!((power - quotient).abs() <= 1e-8, "n={n}: {power} vs {quotient}");
        if n <= 60 {
            assert!((dense_radius(&g) - quotient).abs() <= 1e-8, "n={n}");
        }
    }
}

#[test]
fn random_graphs_quotient_power_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let n = rng.gen_range(2..=24);
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        let dense = dense_radius(&g);
        let power = spectral_radius(&g, 1e-10).unwrap().radius;
        assert!((dense - power).abs() <= 1e-8, "{g:?}");
        if g.edge_count() > 0 {
            assert!((dense - quotient_radius(&g)).abs() <= 1e-8, "{g:?}");
        }
        assert!(rayleigh_lower_bound::<f64>(&g) <= dense + 1e-12);
    }
}

#[test]
fn complete_bipartite_closed_form() {
    for s in 1..=30 {
        for t in 1..=30 {
            let r = spectral_radius(&Graph::complete_bipartite(s, t), 1e-12).unwrap().radius;
            assert!((r - ((s * t) as f64).sqrt()).abs() <= 1e-9, "K_{s},{t}: {r}");
        }
    }
}

#[test]
fn single_precision_tracks_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let g = random_connected(&mut rng, 12, 0.4);
        let r32 = spectral_radius(&g, 1e-5f32).unwrap().radius;
        assert!((r32 as f64 - dense_radius(&g)).abs() < 1e-3);
    }
}

#[test]
fn quartic_f_annihilates_dense_radius() {
    for r in 0..=2 {
        for s in 1..=5 {
            for n2 in 1..=8 {
                let g = f_graph(r, s, n2);
                let lambda = dense_radius(&g);
                let f = paper_poly_f(r as u64, s as u64, n2 as u64);
                let value: f64 = f.eval_real(lambda);
                assert!(value.abs() <= 1e-5 * f.max_abs_coeff(), "r={r} s={s} n2={n2}: {value}");
            }
        }
    }
}

#[test]
fn apex_cubic_is_quotient_char_poly() {
    for n1 in 1..=10usize {
        for n2 in 1..=10usize {
            let g = Graph::complete(1).join(&Graph::complete_bipartite(n1, n2));
            let blocks = vec![vec![0], (1..=n1).collect(), (n1 + 1..=n1 + n2).collect()];
            let p = VertexPartition::from_blocks(g.order(), &blocks).unwrap();
            let b = quotient_matrix(&g, &p).unwrap();
            assert_eq!(quotient_char_poly(&b).unwrap(), apex_cubic(n1 as u64, n2 as u64));
            let root: f64 = apex_cubic(n1 as u64, n2 as u64).eval_real(dense_radius(&g));
            assert!(root.abs() < 1e-6);
        }
    }
}

#[test]
fn printed_factorization_discrepancy() {
    let d = eq_g1_discrepancy(4, 4).unwrap();
    assert!(!d.printed_identity_holds);
    assert!(d.derived_identity_holds);
    assert!(d.gap > 0.1);
    let lambda = dense_radius(&spex_candidate(9).unwrap());
    assert!((d.derived_root - lambda).abs() < 1e-9);
}

#[test]
fn adding_an_edge_never_lowers_radius() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut trials = 0;
    while trials < 500 {
        let n = rng.gen_range(3..=20);
        let p = rng.gen_range(0.05..0.8);
        let g = random_graph(&mut rng, n, p);
        let non: Vec<(usize, usize)> = g.non_edges().collect();
        if non.is_empty() {
            continue;
        }
        let (u, v) = non[rng.gen_range(0..non.len())];
        let mut h = g.clone();
        h.add_edge(u, v);
        let before = spectral_radius(&g, 1e-12).unwrap().radius;
        let after = spectral_radius(&h, 1e-12).unwrap().radius;
        assert!(after >= before - 1e-9, "{g:?} + {u}{v}");
        trials += 1;
    }
}

#[test]
fn rotation_premise_forces_growth() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut accepted = 0;
    while accepted < 200 {
        let n = rng.gen_range(4..=14);
        let p = rng.gen_range(0.2..0.7);
        let g = random_connected(&mut rng, n, p);
        let u = rng.gen_range(0..n);
        let candidates: Vec<(usize, usize)> = (0..n)
            .filter(|&w| w != u && !g.has_edge(u, w))
            .flat_map(|w| g.neighbors(w).filter(move |&v| v != u).map(move |v| (v, w)))
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let (v, w) = candidates[rng.gen_range(0..candidates.len())];
        let mut h = g.clone();
        h.remove_edge(v, w);
        h.add_edge(u, w);
        if !h.is_connected() {
            continue;
        }
        let out = rotation_test(&g, &h, u, 1e-12).unwrap();
        if !out.premise_holds {
            continue;
        }
        assert!(out.radius_after > out.radius_before, "{out:?}");
        accepted += 1;
    }
}

#[test]
fn regular_graphs_have_radius_equal_to_degree() {
    let mut cases: Vec<(Graph, f64)> = (3..30).map(|n| (Graph::cycle(n).unwrap(), 2.0)).collect();
    cases.extend((1..8).map(|k| (oddprism::graph::odd_prism(k).unwrap(), 3.0)));
    cases.extend((2..25).map(|n| (Graph::complete(n), (n - 1) as f64)));
    for (g, d) in cases {
        let r = spectral_radius(&g, 1e-12).unwrap().radius;
        assert!((r - d).abs() <= 1e-9, "{g:?}: {r}");
    }
}
