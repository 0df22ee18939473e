mod common;

use common::{from_mask, pairs};
use oddprism::graph::{are_isomorphic, canonical_form, canonical_graph6, odd_prism};
use oddprism::Graph;
use proptest::prelude::*;

#[test]
fn graph6_round_trip_every_small_graph() {
    for n in 0..=7usize {
        let p = pairs(n);
        for mask in 0u64..1 << p.len() {
            let g = from_mask(n, &p, mask);
            let s = g.to_graph6();
            assert_eq!(Graph::from_graph6(&s).unwrap(), g, "n={n} mask={mask}");
        }
    }
    assert_eq!(Graph::complete(3).to_graph6(), "Bw");
}

#[test]
fn isomorphism_classes_on_six_vertices() {
    let p = pairs(6);
    let mut classes = std::collections::BTreeSet::new();
    for mask in 0u64..1 << p.len() {
        classes.insert(canonical_graph6(&from_mask(6, &p, mask)).unwrap());
    }
    assert_eq!(classes.len(), 156);
}

#[test]
fn prism_matches_circular_ladder() {
    // C_{2k+1} □ K_2 is 3-regular on 4k+2 vertices with two disjoint rims.
    for k in 1..6 {
        let g = odd_prism(k).unwrap();
        let m = 2 * k + 1;
        assert_eq!(g.order(), 2 * m);
        assert_eq!(g.edge_count(), 3 * m);
        assert!(g.degrees().iter().all(|&d| d == 3));
        let rim = Graph::cycle(m).unwrap();
        let inner: Vec<usize> = (0..m).map(|i| 2 * i).collect();
        assert!(are_isomorphic(&g.induced_subgraph(&inner), &rim).unwrap());
    }
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let p = pairs(n);
            let mut g = Graph::empty(n);
            for (b, (u, v)) in bits.into_iter().zip(p) {
                if b {
                    g.add_edge(u, v);
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn complement_is_involution(g in arb_graph(20)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn complement_of_join_is_union_of_complements(g in arb_graph(9), h in arb_graph(9)) {
        prop_assert_eq!(g.join(&h).complement(), g.complement().disjoint_union(&h.complement()));
    }

    #[test]
    fn cartesian_product_commutes(g in arb_graph(4), h in arb_graph(3)) {
        let a = g.cartesian_product(&h);
        let b = h.cartesian_product(&g);
        prop_assert!(are_isomorphic(&a, &b).unwrap());
        prop_assert_eq!(a.edge_count(), g.edge_count() * h.order() + h.edge_count() * g.order());
    }

    #[test]
    fn canonical_form_ignores_labels(g in arb_graph(9), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_form(&g).unwrap().0, canonical_form(&h).unwrap().0);
    }

    #[test]
    fn graph6_round_trip_large(g in arb_graph(80)) {
        prop_assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g);
    }
}
