use proptest::prelude::*;

use stabrank::budget::Budget;
use stabrank::graph::{complement, is_perfect, Graph, NodeSet};
use stabrank::liftproject::{disjunctive_max, disjunctive_member, disjunctive_valid, n_operator_max, LiftConfig};
use stabrank::polyhedra::{convex_hull_facets, lp_max, qstab, stab, LinearInequality, RowLabel, DEFAULT_HULL_BOUND};
use stabrank::rank::{disjunctive_rank_graph, recheck_graph_rank, EngineConfig};
use stabrank::rational::{self, Rational};

fn graph_strategy(min: usize, max: usize) -> impl Strategy<Value = Graph> {
    (min..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 1..=n {
                for v in u + 1..=n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn objective(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-3i64..=9, n).prop_map(|v| v.into_iter().map(rational::int).collect())
}

fn subset_of(n: usize) -> impl Strategy<Value = (NodeSet, NodeSet)> {
    prop::collection::vec(0u8..3, n).prop_map(|tags| {
        let small: Vec<usize> = (0..tags.len()).filter(|&i| tags[i] == 2).map(|i| i + 1).collect();
        let big: Vec<usize> = (0..tags.len()).filter(|&i| tags[i] >= 1).map(|i| i + 1).collect();
        (NodeSet::new(small), NodeSet::new(big))
    })
}

fn all_nodes(g: &Graph) -> NodeSet {
    NodeSet::new((1..=g.n()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lp_optima_carry_valid_dual_certificates(
        (g, obj) in graph_strategy(3, 7).prop_flat_map(|g| { let n = g.n(); (Just(g), objective(n)) })
    ) {
        let h = qstab(&g);
        let r = lp_max(&h, &obj).unwrap();
        prop_assert!(r.certify(&h, &obj, &vec![None; g.n()]).is_ok());
        let best_stable = stab(&g).unwrap().max(&obj).unwrap();
        prop_assert!(r.value >= best_stable);
    }

    #[test]
    fn disjunctive_validity_is_monotone_in_f(
        (g, (small, big)) in graph_strategy(4, 7).prop_flat_map(|g| { let n = g.n(); (Just(g), subset_of(n)) })
    ) {
        let h = qstab(&g);
        let cfg = LiftConfig::default();
        let rank_row = LinearInequality::set_sum(
            g.n(),
            0..g.n(),
            rational::int(stabrank::graph::alpha(&g) as i64),
            RowLabel::Rank,
        );
        let a = disjunctive_valid(&rank_row, &h, &small, &cfg).unwrap().holds;
        let b = disjunctive_valid(&rank_row, &h, &big, &cfg).unwrap().holds;
        prop_assert!(!a || b);
        prop_assert!(disjunctive_valid(&rank_row, &h, &all_nodes(&g), &cfg).unwrap().holds);
    }

    #[test]
    fn full_disjunction_membership_matches_hull(
        (g, x) in graph_strategy(3, 6).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), prop::collection::vec(0i64..=4, n))
        })
    ) {
        let x: Vec<Rational> = x.into_iter().map(|v| rational::ratio(v, 4)).collect();
        let facets = convex_hull_facets(&stab(&g).unwrap(), DEFAULT_HULL_BOUND, &Budget::unlimited()).unwrap();
        let in_hull = facets.iter().all(|f| f.satisfied_by(&x));
        let v = disjunctive_member(&x, &qstab(&g), &all_nodes(&g), &LiftConfig::default()).unwrap();
        prop_assert_eq!(v.holds, in_hull);
    }

    #[test]
    fn membership_shrinks_as_f_grows(
        (g, x, (small, big)) in graph_strategy(3, 6).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), prop::collection::vec(0i64..=3, n), subset_of(n))
        })
    ) {
        let x: Vec<Rational> = x.into_iter().map(|v| rational::ratio(v, 3)).collect();
        let h = qstab(&g);
        let cfg = LiftConfig::default();
        let in_big = disjunctive_member(&x, &h, &big, &cfg).unwrap().holds;
        let in_small = disjunctive_member(&x, &h, &small, &cfg).unwrap().holds;
        prop_assert!(!in_big || in_small);
        prop_assert!(!in_small || h.contains(&x));
    }

    #[test]
    fn n_operator_lies_inside_every_single_disjunction(
        (g, obj) in graph_strategy(3, 6).prop_flat_map(|g| { let n = g.n(); (Just(g), objective(n)) })
    ) {
        let h = qstab(&g);
        let cfg = LiftConfig::default();
        let n1 = n_operator_max(&obj, &h, 1, &cfg).unwrap().value;
        let best_stable = stab(&g).unwrap().max(&obj).unwrap();
        prop_assert!(best_stable <= n1);
        for j in 1..=g.n() {
            let pj = disjunctive_max(&obj, &h, &NodeSet::from([j]), &cfg).unwrap().unwrap();
            prop_assert!(n1 <= pj);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn graph_rank_is_complement_invariant_and_rechecks(g in graph_strategy(3, 9)) {
        let cfg = EngineConfig::default();
        let r = disjunctive_rank_graph(&g, &cfg).unwrap();
        let rc = disjunctive_rank_graph(&complement(&g), &cfg).unwrap();
        prop_assert_eq!(r.rank, rc.rank);
        prop_assert!(recheck_graph_rank(&g, &r).unwrap());
        prop_assert_eq!(r.rank == 0, is_perfect(&g));
    }
}
