use std::sync::Arc;

use proptest::prelude::*;

use transit_core::io::{
    emit_system, emit_transit, parse_document, parse_json_document, system_document, transit_document, Body,
    Metadata,
};
use transit_core::predicates::system_witness_violates;
use transit_core::pyramid::certify;
use transit_core::{
    brute_force_order, canonical_transit_function, check_monotone, check_system, classify_all, find_compatible_order,
    make_transit_function, nebesky_triple_test, transit_sets, union_closure, witness_violates, Cluster, GroundSet,
    SetSystem, SystemPredicate, TransitFunction,
};

fn system(n: usize, masks: &[u64]) -> SetSystem {
    let g = Arc::new(GroundSet::lettered(n).unwrap());
    let full = (1u64 << n) - 1;
    let clusters = masks.iter().map(|&m| m & full).filter(|&m| m != 0).map(|m| Cluster::from_bits(m).unwrap());
    SetSystem::new(g, clusters).unwrap()
}

fn arb_system(max_n: usize) -> impl Strategy<Value = SetSystem> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u64..(1 << n), 0..12).prop_map(move |masks| system(n, &masks))
    })
}

fn transit_fn(n: usize, extras: &[u64]) -> TransitFunction {
    let g = Arc::new(GroundSet::lettered(n).unwrap());
    let mut i = 0;
    let mut entries = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let bits = extras[i] | (1 << u) | (1 << v);
            entries.push(((u, v), Cluster::from_bits(bits & ((1 << n) - 1)).unwrap()));
            i += 1;
        }
    }
    make_transit_function(g, entries).unwrap()
}

fn arb_transit(max_n: usize) -> impl Strategy<Value = TransitFunction> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        // sparse extras make monotone functions common enough to matter
        prop::collection::vec(prop_oneof![Just(0u64), 0u64..(1 << n)], pairs)
            .prop_map(move |extras| transit_fn(n, &extras))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn system_text_round_trip(s in arb_system(8)) {
        let meta = Metadata { name: Some("s".into()), description: None };
        let doc = parse_document(&emit_system(&s, &meta)).unwrap();
        prop_assert_eq!(doc.meta, meta.clone());
        prop_assert_eq!(doc.body, Body::System(s.clone()));
        let json = serde_json::to_string(&system_document(&s, &meta)).unwrap();
        prop_assert_eq!(parse_json_document(&json).unwrap().body, Body::System(s));
    }

    #[test]
    fn transit_text_round_trip(r in arb_transit(6)) {
        let meta = Metadata::default();
        prop_assert_eq!(parse_document(&emit_transit(&r, &meta)).unwrap().body, Body::Transit(r.clone()));
        let json = serde_json::to_string(&transit_document(&r, &meta)).unwrap();
        prop_assert_eq!(parse_json_document(&json).unwrap().body, Body::Transit(r));
    }

    #[test]
    fn union_closure_is_a_closure(s in arb_system(7)) {
        let c = union_closure(&s);
        prop_assert!(s.clusters().iter().all(|&x| c.contains(x)));
        prop_assert!(check_system(&c, SystemPredicate::Uc).holds);
        prop_assert!(check_system(&c, SystemPredicate::Ks).holds);
        prop_assert_eq!(union_closure(&c), c);
    }

    #[test]
    fn order_search_agrees_with_brute_force(s in arb_system(7)) {
        let fast = find_compatible_order(&s);
        prop_assert_eq!(&fast, &brute_force_order(&s).unwrap());
        if let Some(o) = &fast.order {
            prop_assert!(certify(&s, o));
            prop_assert!(o.sequence() <= o.reversed().sequence());
        }
    }

    #[test]
    fn round_trip_exactly_for_monotone(r in arb_transit(6)) {
        let back = canonical_transit_function(&transit_sets(&r));
        prop_assert_eq!(back.as_ref().ok() == Some(&r), check_monotone(&r).holds);
    }

    #[test]
    fn axiom_witnesses_are_genuine(r in arb_transit(6)) {
        for (a, v) in classify_all(&r) {
            if let Some(w) = &v.witness {
                prop_assert!(witness_violates(&r, a, w), "{} {:?}", a, w);
            }
        }
    }

    #[test]
    fn predicate_witnesses_are_genuine(s in arb_system(6)) {
        for p in SystemPredicate::ALL {
            let v = check_system(&s, p);
            if let Some(w) = &v.witness {
                prop_assert!(system_witness_violates(&s, p, w), "{} {:?}", p, w);
            }
        }
    }

    #[test]
    fn triple_test_decides_pre_pyramidality(
        n in 1usize..=7,
        a in 1u64..128, b in 1u64..128, c in 1u64..128,
    ) {
        let s = system(n, &[a, b, c]);
        prop_assume!(s.clusters().len() == 3);
        let [x, y, z] = [s.clusters()[0], s.clusters()[1], s.clusters()[2]];
        let closure = union_closure(&s);
        prop_assert_eq!(nebesky_triple_test(x, y, z).holds, find_compatible_order(&closure).pre_pyramidal);
    }
}
