//! Known values across modules: webs, antiwebs and joins of desk size.

use stabrank::graph::{
    antiweb, complete_join, construct_odd_hole_avoiding, find_induced_odd_hole, is_perfect, is_subweb, omega,
    parse_family, verify_odd_hole, web, Graph, NodeSet, WebId,
};
use stabrank::inequalities::{
    antiweb_constraint, enumerate_one_interval_sets, joined_inequality, one_interval_inequality, rank_constraint,
    JoinBlocks,
};
use stabrank::liftproject::{
    disjunctive_member, disjunctive_valid, n_operator_max, n_operator_valid, relaxation_equals_stab_under, LiftConfig,
};
use stabrank::polyhedra::{lp_max, qstab, LinearInequality, RowLabel};
use stabrank::rank::{
    disjunctive_rank_graph, disjunctive_rank_graph_polyhedral, disjunctive_rank_inequality, n_rank_inequality_upto,
    EngineConfig,
};
use stabrank::rational::{self, Rational};

fn ones(n: usize) -> Vec<Rational> {
    vec![rational::one(); n]
}

fn c5() -> Graph {
    parse_family("C:5").unwrap()
}

fn row_rank(row: &LinearInequality, g: &Graph, cyclic: bool) -> usize {
    disjunctive_rank_inequality(row, &qstab(g), cyclic, None, &EngineConfig::default())
        .unwrap()
        .rank
}

#[test]
fn graph_ranks_of_small_webs() {
    let cfg = EngineConfig::default();
    let rank = |g: &Graph| disjunctive_rank_graph(g, &cfg).unwrap().rank;
    assert_eq!(rank(&web(7, 2).unwrap()), 1);
    let w82 = disjunctive_rank_graph(&web(8, 2).unwrap(), &cfg).unwrap();
    assert_eq!(w82.rank, 2);
    assert!(is_perfect(&web(8, 2).unwrap().delete_nodes(&w82.deletion_set).unwrap()));
    assert_eq!(rank(&web(7, 1).unwrap()), 1);
    assert_eq!(rank(&c5()), 1);
    assert_eq!(rank(&web(6, 2).unwrap()), 0);
    let k2: Vec<usize> = (6..=14).map(|n| rank(&web(n, 2).unwrap())).collect();
    assert_eq!(k2, [0, 1, 2, 2, 2, 2, 2, 2, 2]);
    let k3: Vec<usize> = (8..=11).map(|n| rank(&web(n, 3).unwrap())).collect();
    assert_eq!(k3, [0, 1, 2, 3]);
}

#[test]
fn polyhedral_route_on_eight_node_web() {
    let (rank, f) = disjunctive_rank_graph_polyhedral(&web(8, 2).unwrap(), &EngineConfig::default()).unwrap();
    assert_eq!(rank, 2);
    assert_eq!(f.len(), 2);
}

#[test]
fn single_disjunctions_and_hull_equality() {
    let cfg = LiftConfig::default();
    let (g, h) = (c5(), qstab(&c5()));
    let row = rank_constraint(&g);
    assert_eq!(row.rhs, rational::int(2));
    assert!(disjunctive_valid(&row, &h, &NodeSet::from([1]), &cfg).unwrap().holds);
    let half = vec![rational::ratio(1, 2); 5];
    assert!(!disjunctive_member(&half, &h, &NodeSet::from([1]), &cfg).unwrap().holds);
    assert!(
        relaxation_equals_stab_under(&h, &g, &NodeSet::from([1]), &cfg)
            .unwrap()
            .0
    );
    let w82 = web(8, 2).unwrap();
    assert!(
        !relaxation_equals_stab_under(&qstab(&w82), &w82, &NodeSet::from([1]), &cfg)
            .unwrap()
            .0
    );
    let w62 = web(6, 2).unwrap();
    assert!(
        relaxation_equals_stab_under(&qstab(&w62), &w62, &NodeSet::empty(), &cfg)
            .unwrap()
            .0
    );

    let w10 = web(10, 2).unwrap();
    assert_eq!(lp_max(&qstab(&w10), &ones(10)).unwrap().value, rational::ratio(10, 3));
    let sum = LinearInequality::set_sum(10, 0..10, rational::int(3), RowLabel::Rank);
    assert!(
        disjunctive_valid(&sum, &qstab(&w10), &NodeSet::from([10]), &cfg)
            .unwrap()
            .holds
    );

    let (a73, prime) = antiweb_constraint(7, 3).unwrap();
    assert!(prime);
    assert!(
        disjunctive_valid(&a73, &qstab(&antiweb(7, 3).unwrap()), &NodeSet::from([7]), &cfg)
            .unwrap()
            .holds
    );
}

#[test]
fn n_operator_values() {
    let cfg = LiftConfig::default();
    assert_eq!(
        n_operator_max(&ones(5), &qstab(&c5()), 1, &cfg).unwrap().value,
        rational::int(2)
    );
    assert!(
        n_operator_max(&ones(8), &qstab(&web(8, 2).unwrap()), 1, &cfg)
            .unwrap()
            .value
            > rational::int(2)
    );
    assert_eq!(
        n_operator_max(&ones(6), &qstab(&web(6, 2).unwrap()), 1, &cfg)
            .unwrap()
            .value,
        rational::int(2)
    );

    let w9 = web(9, 2).unwrap();
    let w9id = WebId::new(9, 2).unwrap();
    let sets = enumerate_one_interval_sets(9, true);
    let row = one_interval_inequality(w9id, sets.iter().find(|s| s.support().len() == 6).unwrap()).unwrap();
    assert!(n_operator_valid(&row, &qstab(&w9), 1, &cfg).unwrap().holds);
    let w10 = web(10, 2).unwrap();
    assert!(
        n_operator_valid(&rank_constraint(&w10), &qstab(&w10), 1, &cfg)
            .unwrap()
            .holds
    );
    let w8 = web(8, 2).unwrap();
    let v = n_operator_valid(&rank_constraint(&w8), &qstab(&w8), 1, &cfg).unwrap();
    assert!(!v.holds);
    assert!(v.certificate.point.is_some());
}

#[test]
fn n_rank_queries() {
    let cfg = EngineConfig::default();
    let w10 = web(10, 2).unwrap();
    assert_eq!(
        n_rank_inequality_upto(&rank_constraint(&w10), &qstab(&w10), 1, &cfg)
            .unwrap()
            .rank,
        Some(1)
    );
    let w8 = web(8, 2).unwrap();
    assert_eq!(
        n_rank_inequality_upto(&rank_constraint(&w8), &qstab(&w8), 1, &cfg)
            .unwrap()
            .rank,
        None
    );
    let clique = LinearInequality::set_sum(8, [0, 1, 2], rational::one(), RowLabel::Clique);
    assert_eq!(
        n_rank_inequality_upto(&clique, &qstab(&w8), 1, &cfg).unwrap().rank,
        Some(0)
    );
}

#[test]
fn inequality_ranks() {
    for (n, l) in [(9, 0), (10, 1), (8, 2)] {
        let g = web(n, 2).unwrap();
        assert_eq!(row_rank(&rank_constraint(&g), &g, true), l, "W({n},2)");
    }
    let w9 = web(9, 2).unwrap();
    let w9id = WebId::new(9, 2).unwrap();
    for s in enumerate_one_interval_sets(9, true) {
        let row = one_interval_inequality(w9id, &s).unwrap();
        if row.support().len() > 3 {
            let r = disjunctive_rank_inequality(&row, &qstab(&w9), false, None, &EngineConfig::default()).unwrap();
            assert_eq!(r.rank, 1);
            assert!(r.witness_f.iter().all(|v| s.support().contains(v)));
        }
    }
    for (n, k, expected) in [(8, 3, 2), (7, 3, 1), (7, 2, 1)] {
        let a = antiweb(n, k).unwrap();
        assert_eq!(omega(&a), n / k);
        assert_eq!(
            row_rank(&antiweb_constraint(n, k).unwrap().0, &a, true),
            expected,
            "A({n},{k})"
        );
    }
}

#[test]
fn joined_rows() {
    let g = complete_join(&c5(), &c5()).unwrap();
    assert!((1..=10).all(|v| g.degree(v).unwrap() == 7));
    let row = joined_inequality(&g, &JoinBlocks::from_host(&g).unwrap()).unwrap();
    assert!(row.coeffs.iter().all(|c| *c == rational::ratio(1, 2)));
    assert_eq!(row.rhs, rational::one());
    assert_eq!(row_rank(&row, &g, false), 2);
    assert_eq!(disjunctive_rank_graph(&g, &EngineConfig::default()).unwrap().rank, 2);

    let k1 = complete_join(&Graph::complete(1).unwrap(), &c5()).unwrap();
    let row = joined_inequality(&k1, &JoinBlocks::from_host(&k1).unwrap()).unwrap();
    assert_eq!(row.coeffs[0], rational::one());
    assert!(row.coeffs[1..].iter().all(|c| *c == rational::ratio(1, 2)));
}

#[test]
fn odd_holes_and_subwebs() {
    assert!(find_induced_odd_hole(&web(6, 2).unwrap(), 5).is_none());
    let w11 = web(11, 2).unwrap().delete_nodes(&NodeSet::from([1])).unwrap();
    assert!(find_induced_odd_hole(&w11, 5).is_some());
    for (n, k, f) in [(8, 2, vec![1]), (11, 3, vec![1, 2])] {
        let f = NodeSet::new(f);
        let h = construct_odd_hole_avoiding(WebId::new(n, k).unwrap(), &f).unwrap();
        assert!(h.nodes.is_disjoint(&f));
        assert!(h.nodes.len() % 2 == 1);
        assert!(verify_odd_hole(&web(n, k).unwrap(), &h.nodes));
    }
    assert!(is_subweb(WebId::new(17, 2).unwrap(), WebId::new(25, 3).unwrap()));
    assert!(is_subweb(WebId::new(10, 2).unwrap(), WebId::new(10, 2).unwrap()));
    let (s, k, r) = (3usize, 4usize, 2usize);
    let t = (k * (1 + r)).div_ceil(r + s);
    let inner = WebId::new((s - 1) * (k - t + 1) + (k - t), k - t).unwrap();
    assert!(is_subweb(inner, WebId::new(s * (k + 1) + r, k).unwrap()));
}
