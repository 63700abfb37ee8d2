mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{gain_graphs, Oracle};
use rhodes_core::bias::BiasedGraph;
use rhodes_core::multigraph::Subgraph;
use rhodes_core::rhodes::{b_map, enumerate_graphic, enumerate_pp, meet_pairs, pair_of, verify_isomorphism, BalancedHost};
use rhodes_core::Limits;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn b_map_is_an_order_isomorphism(phi in gain_graphs(6)) {
        let report = verify_isomorphism(&phi, &Limits::default()).unwrap();
        prop_assert!(report.holds(), "{:?}", report.failure);
    }

    #[test]
    fn both_hosts_enumerate_the_closed_balanced_subgraphs(phi in gain_graphs(6)) {
        let limits = Limits::default();
        let oracle = Oracle::new(&phi);
        let expected: BTreeSet<Subgraph> = common::all_subgraphs(phi.graph())
            .into_iter()
            .filter(|s| oracle.is_closed_balanced(s))
            .collect();
        let by_gains: BTreeSet<Subgraph> = enumerate_graphic(&phi, &limits).unwrap().elements().iter().copied().collect();
        let bias = BiasedGraph::from_gains(&phi, &limits).unwrap();
        let by_circles: BTreeSet<Subgraph> = enumerate_graphic(&bias, &limits).unwrap().elements().iter().copied().collect();
        prop_assert_eq!(&by_gains, &expected);
        prop_assert_eq!(&by_circles, &expected);
    }

    #[test]
    fn pair_of_inverts_b_map(phi in gain_graphs(6)) {
        for p in enumerate_pp(&phi, &Limits::default()).unwrap().elements() {
            prop_assert_eq!(&pair_of(&phi, &b_map(&phi, p)).unwrap(), p);
        }
    }

    #[test]
    fn balance_and_closure_agree_across_hosts(phi in gain_graphs(6)) {
        let oracle = Oracle::new(&phi);
        let bias = BiasedGraph::from_gains(&phi, &Limits::default()).unwrap();
        for sub in common::all_subgraphs(phi.graph()) {
            let balanced = oracle.is_balanced(sub.edges());
            prop_assert_eq!(BalancedHost::is_balanced(&phi, &sub), balanced);
            prop_assert_eq!(bias.is_balanced(&sub), balanced);
            prop_assert_eq!(bias.is_balanced_by_enumeration(&sub), balanced);
            if balanced {
                let by_gains = phi.closed_balanced_closure(&sub).unwrap();
                prop_assert_eq!(bias.closed_balanced_closure(&sub).unwrap(), by_gains);
                prop_assert!(sub.is_subgraph_of(&by_gains));
                prop_assert!(oracle.is_closed_balanced(&by_gains));
            } else {
                prop_assert!(phi.closed_balanced_closure(&sub).is_err());
                prop_assert!(bias.closed_balanced_closure(&sub).is_err());
            }
        }
    }

    #[test]
    fn meets_map_to_intersections(phi in gain_graphs(5)) {
        let pairs = enumerate_pp(&phi, &Limits::default()).unwrap();
        let oracle = Oracle::new(&phi);
        for p in pairs.elements() {
            for q in pairs.elements() {
                let both = b_map(&phi, p).intersection(&b_map(&phi, q));
                prop_assert!(oracle.is_closed_balanced(&both));
                prop_assert_eq!(b_map(&phi, &meet_pairs(&phi, p, q)), both);
            }
        }
    }
}

#[test]
fn pair_counts_follow_the_partial_partition_formula() {
    for (order, k) in [(1, 3), (2, 3), (3, 3), (2, 4), (3, 4)] {
        let phi = common::z_k(order, k);
        assert_eq!(enumerate_pp(&phi, &Limits::default()).unwrap().len(), common::pair_count_formula(order, k));
    }
}
