//! Property-based checks of the library's structural laws on randomly
//! generated inputs.

use proptest::prelude::*;

use umpm::{
    canonical_form, coeff_b, complement_edge, count_perfect_matchings, cyclic_covering,
    enumerate_perfect_matchings, enumerate_types, f_telescoped, f_theorem, is_unique_pm,
    oracle_count_pm, sample_unique_pm, type_of, BlockFamily, Hypergraph, PerfectMatching,
};

/// A small random hypergraph on `k*m` vertices (k in 2..=3, m in 1..=3).
fn arb_graph() -> impl Strategy<Value = Hypergraph> {
    (2usize..=3, 1usize..=3).prop_flat_map(|(k, m)| arb_graph_with(k, m))
}

fn arb_graph_with(k: usize, m: usize) -> impl Strategy<Value = Hypergraph> {
    let n = k * m;
    let verts: Vec<usize> = (0..n).collect();
    proptest::collection::vec(proptest::sample::subsequence(verts, k), 0..=12)
        .prop_map(move |edges| Hypergraph::new(n, k, edges).unwrap())
}

/// A random partition of `0..k*m` into blocks of `k`.
fn arb_partition(k: usize, m: usize) -> impl Strategy<Value = PerfectMatching> {
    Just((0..k * m).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(move |vs| {
            let blocks = vs.chunks(k).map(<[usize]>::to_vec).collect();
            PerfectMatching::new(k * m, k, blocks).unwrap()
        })
}

proptest! {
    #[test]
    fn construction_ignores_input_order(
        (h, seed) in arb_graph().prop_flat_map(|h| {
            let edges = h.edges().to_vec();
            (Just(h), Just(edges).prop_shuffle())
        })
    ) {
        // Re-feeding the edges in any order, with each edge reversed, gives
        // the same value.
        let reversed: Vec<Vec<usize>> = seed
            .into_iter()
            .map(|e| e.into_iter().rev().collect())
            .collect();
        let again = Hypergraph::new(h.n(), h.k(), reversed).unwrap();
        prop_assert_eq!(h, again);
    }

    #[test]
    fn induced_on_everything_is_identity(h in arb_graph()) {
        let all: Vec<usize> = (0..h.n()).collect();
        let (sub, map) = h.induced_sub(&all).unwrap();
        prop_assert_eq!(&sub, &h);
        prop_assert_eq!(map, all);
    }

    #[test]
    fn strata_cover_every_edge(
        (h, pm) in (2usize..=3, 1usize..=3).prop_flat_map(|(k, m)| {
            (arb_graph_with(k, m), arb_partition(k, m))
        })
    ) {
        let s = h.stratify(&pm).unwrap();
        prop_assert_eq!(s.total(), h.edge_count() as u64);
    }

    #[test]
    fn first_stratum_holds_the_matching(
        (k, m, seed, deletions) in (2usize..=3, 2usize..=3, any::<u64>(), 0usize..=2)
    ) {
        let h = sample_unique_pm(k, m, seed, deletions).unwrap();
        let pm = PerfectMatching::canonical(k, m);
        let s = h.stratify(&pm).unwrap();
        prop_assert!(s.count(1) >= m as u64);
    }

    #[test]
    fn complement_is_an_involution(
        (n, e) in (1usize..=6).prop_flat_map(|k| {
            let verts: Vec<usize> = (0..2 * k).collect();
            (Just(2 * k), proptest::sample::subsequence(verts, k))
        })
    ) {
        let c = complement_edge(n, &e).unwrap();
        prop_assert_eq!(complement_edge(n, &c).unwrap(), e);
    }

    #[test]
    fn khg_round_trips(h in arb_graph()) {
        let text = h.to_khg();
        let parsed = Hypergraph::from_khg(&text).unwrap();
        prop_assert_eq!(&parsed, &h);
        prop_assert_eq!(parsed.to_khg(), text);
    }

    #[test]
    fn engine_matches_oracle(h in arb_graph()) {
        let engine = count_perfect_matchings(&h, None).unwrap().value;
        prop_assert_eq!(engine, oracle_count_pm(&h).unwrap());
    }

    #[test]
    fn enumeration_limit_is_a_prefix(h in arb_graph(), limit in 0usize..=4) {
        let all = enumerate_perfect_matchings(&h, None);
        let some = enumerate_perfect_matchings(&h, Some(limit));
        prop_assert_eq!(some.len(), all.len().min(limit));
        prop_assert_eq!(some.as_slice(), &all[..some.len()]);
    }

    #[test]
    fn deletion_never_creates_matchings(
        (k, m, seed) in (2usize..=3, 2usize..=3, any::<u64>())
    ) {
        let h = sample_unique_pm(k, m, seed, 0).unwrap();
        let pm = PerfectMatching::canonical(k, m);
        // Removing one non-matching edge keeps the matching unique.
        let victim = h
            .edges()
            .iter()
            .find(|e| !pm.blocks().contains(e))
            .expect("extremal graphs with m >= 2 have non-matching edges")
            .clone();
        let smaller = h.without_edge(&victim);
        prop_assert_eq!(is_unique_pm(&smaller), Some(pm.clone()));
        // Removing a matching block leaves no perfect matching at all.
        let broken = h.without_edge(&pm.blocks()[0]);
        prop_assert_eq!(count_perfect_matchings(&broken, None).unwrap().value, 0);
    }

    #[test]
    fn formulas_agree_everywhere(k in 2usize..=8, m in 0usize..=20) {
        prop_assert_eq!(f_theorem(k, m).unwrap(), f_telescoped(k, m).unwrap());
    }

    #[test]
    fn coefficient_conventions_hold(k in 2usize..=10, beyond in 1usize..=4) {
        prop_assert_eq!(coeff_b(k, 1).unwrap(), 1u32.into());
        prop_assert_eq!(coeff_b(k, k + beyond).unwrap(), 0u32.into());
    }

    #[test]
    fn cyclic_covering_members_have_the_requested_type(
        (k, ell, pick) in (2usize..=4, 2usize..=4, any::<prop::sample::Index>())
            .prop_filter("need l <= k and a small ground set", |(k, ell, _)| {
                ell <= k && ell * k <= 12
            })
    ) {
        let types = enumerate_types(k, ell).unwrap();
        let a = &types[pick.index(types.len())];
        let fam = BlockFamily::canonical(k, ell).unwrap();
        let covering = cyclic_covering(&fam, a).unwrap();
        prop_assert_eq!(covering.edges().len(), ell);
        for member in covering.edges() {
            prop_assert_eq!(&type_of(member, &fam).unwrap(), a);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_form_ignores_labels(
        // Canonical forms exist only up to 8 vertices, so draw (k, m) from
        // pairs with k*m <= 8.
        (h, perm) in proptest::sample::select(
            vec![(2usize, 1usize), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (4, 2)]
        )
        .prop_flat_map(|(k, m)| arb_graph_with(k, m))
        .prop_flat_map(|h| {
            let n = h.n();
            (Just(h), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        })
    ) {
        let relabeled = h.relabeled(&perm).unwrap();
        prop_assert_eq!(
            canonical_form(&h).unwrap(),
            canonical_form(&relabeled).unwrap()
        );
    }
}
