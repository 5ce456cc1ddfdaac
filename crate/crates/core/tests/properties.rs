use proptest::prelude::*;
use quasimatroid::bitset::EdgeSet;
use quasimatroid::bracelets::check_proper;
use quasimatroid::constructions::{contract, delete, minor_circuits};
use quasimatroid::examples::{random_instance, random_signed_instance};
use quasimatroid::graph::is_connected;
use quasimatroid::io::{load_instance, Bundle};
use quasimatroid::matroid::{circuits, circuits_chi, closure, framework_check, is_independent, RankOracle};
use quasimatroid::tripartition::{chi_from_tripartition, tripartition_from_chi, Side, Tripartition};
use quasimatroid::verify::{
    circuit_axioms, classify_frame_lift, classify_frame_lift_by_sets, rank_axioms, DependencyTable,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64, n: usize, m: usize, signed: bool) -> Tripartition {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if signed {
        random_signed_instance(&mut rng, n, m, 0.2).unwrap()
    } else {
        random_instance(&mut rng, n, m, 0.2).unwrap()
    }
}

fn arb_instance() -> impl Strategy<Value = Tripartition> {
    (any::<u64>(), 1usize..=5, 1usize..=9, any::<bool>()).prop_map(|(s, n, m, signed)| instance(s, n, m, signed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn circuits_form_a_matroid(t in arb_instance()) {
        prop_assert!(circuit_axioms(&circuits(&t).unwrap(), 12).unwrap().passed());
    }

    #[test]
    fn rank_formula_is_the_matroid_rank(t in arb_instance()) {
        let cf = circuits(&t).unwrap();
        let ranks = DependencyTable::new(&cf, 12).unwrap().ranks();
        let oracle = RankOracle::new(&t);
        for (mask, &r) in ranks.iter().enumerate() {
            prop_assert_eq!(oracle.rank(&EdgeSet::from_mask(mask as u64)), r as usize);
        }
        prop_assert!(rank_axioms(&oracle, &cf.ground_set(), 12, 0).passed());
    }

    #[test]
    fn independence_matches_circuits(t in arb_instance()) {
        let cf = circuits(&t).unwrap();
        for mask in 0..1u64 << cf.ground_size() {
            let x = EdgeSet::from_mask(mask);
            prop_assert_eq!(is_independent(&t, &x), cf.is_independent(&x));
        }
    }

    #[test]
    fn closure_is_idempotent_and_rank_preserving(t in arb_instance(), mask in any::<u64>()) {
        let cf = circuits(&t).unwrap();
        let x = EdgeSet::from_mask(mask & ((1u64 << cf.ground_size()) - 1));
        let cl = closure(&cf, &x);
        prop_assert!(x.is_subset(&cl));
        prop_assert_eq!(closure(&cf, &cl), cl.clone());
        prop_assert_eq!(cf.rank(&cl), cf.rank(&x));
    }

    #[test]
    fn quasi_graphic_circuits_are_frameworks(t in arb_instance()) {
        prop_assert!(framework_check(&circuits(&t).unwrap(), t.graph()).is_empty());
    }

    #[test]
    fn single_edge_minors_commute(t in arb_instance(), pick in any::<usize>()) {
        let m = t.graph().edge_count();
        let e = pick % m;
        let cf = circuits(&t).unwrap();
        let d = delete(&t, e).unwrap();
        let (expect, map) = minor_circuits(&cf, &EdgeSet::singleton(e), &EdgeSet::new()).unwrap();
        prop_assert_eq!(circuits(&d.tripartition).unwrap(), expect);
        prop_assert_eq!(d.edge_map, map);
        if !t.graph().is_loop(e) {
            let c = contract(&t, e).unwrap();
            let (expect, _) = minor_circuits(&cf, &EdgeSet::new(), &EdgeSet::singleton(e)).unwrap();
            prop_assert_eq!(circuits(&c.tripartition).unwrap(), expect);
        }
    }

    #[test]
    fn chi_and_tripartition_agree(t in arb_instance()) {
        let bg = t.biased_graph();
        let chi = chi_from_tripartition(&t).unwrap();
        prop_assert!(check_proper(&bg, &chi).is_ok());
        prop_assert_eq!(circuits_chi(&bg, &chi).unwrap(), circuits(&t).unwrap());
        if is_connected(t.graph()) {
            // Cycles in no bracelet may change side; the matroid may not.
            let back = tripartition_from_chi(&bg, &chi).unwrap();
            prop_assert_eq!(circuits(&back).unwrap(), circuits(&t).unwrap());
            prop_assert_eq!(chi_from_tripartition(&back).unwrap(), chi);
        }
    }

    #[test]
    fn degenerate_sides_classify_as_frame_or_lift(t in arb_instance()) {
        let bg = t.biased_graph();
        for side in [Side::L, Side::F] {
            let d = Tripartition::degenerate(&bg, side);
            prop_assert_eq!(classify_frame_lift(&d).unwrap(), classify_frame_lift_by_sets(&d).unwrap());
        }
        prop_assert_eq!(classify_frame_lift(&t).unwrap(), classify_frame_lift_by_sets(&t).unwrap());
    }

    #[test]
    fn bundles_round_trip(t in arb_instance()) {
        let text = serde_json::to_string(&Bundle::from_tripartition(&t)).unwrap();
        let back = load_instance([text.as_str()]).unwrap();
        prop_assert_eq!(back.tripartition.unwrap(), t);
    }
}
