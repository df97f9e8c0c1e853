use std::collections::BTreeMap;

use transit_core::axioms::check_w2_guarded;
use transit_core::enumerate::{
    battery, census, enumerate_monotone_tfs, enumerate_transit_functions, verify_implication,
    Expectation, ImplicationClaim, ImplicationStatus, SweepOptions,
};
use transit_core::{
    canonical_transit_function, check, check_monotone, classify_all, transit_sets, witness_violates,
    TransitAxiom,
};

fn monotone_by_definition(n: usize) -> Vec<transit_core::TransitFunction> {
    enumerate_transit_functions(n)
        .unwrap()
        .filter(|r| check_monotone(r).holds)
        .collect()
}

#[test]
fn monotone_counts_agree_with_the_definition() {
    for n in 1..=4 {
        let mut by_def = monotone_by_definition(n);
        let mut via_systems: Vec<_> = enumerate_monotone_tfs(n).unwrap().collect();
        by_def.sort_by_key(|r| format!("{r:?}"));
        via_systems.sort_by_key(|r| format!("{r:?}"));
        assert_eq!(by_def, via_systems, "n = {n}");
    }
    assert_eq!(monotone_by_definition(4).len(), 400);
}

#[test]
fn bijection_on_all_monotone_functions() {
    for n in 1..=4 {
        for r in enumerate_monotone_tfs(n).unwrap() {
            let s = transit_sets(&r);
            assert_eq!(canonical_transit_function(&s).unwrap(), r);
        }
    }
}

#[test]
fn non_monotone_functions_do_not_round_trip() {
    for r in enumerate_transit_functions(4).unwrap().filter(|r| !check_monotone(r).holds) {
        let back = canonical_transit_function(&transit_sets(&r));
        assert!(back.map_or(true, |b| b != r));
    }
}

#[test]
fn w2_guard_is_immaterial() {
    for n in 1..=4 {
        for r in enumerate_transit_functions(n).unwrap() {
            assert_eq!(check(&r, TransitAxiom::W2).holds, check_w2_guarded(&r).holds);
        }
    }
}

#[test]
fn witnesses_violate_their_axioms() {
    for r in enumerate_transit_functions(4).unwrap() {
        for (a, v) in classify_all(&r) {
            if let Some(w) = &v.witness {
                assert!(witness_violates(&r, a, w), "{a} {r:?}");
            }
        }
    }
}

#[test]
fn battery_at_four() {
    let opts = SweepOptions::default();
    for claim in battery() {
        let r = verify_implication(&claim, 4, &opts).unwrap();
        match claim.expected {
            Expectation::Implies => assert_eq!(r.status, ImplicationStatus::Confirmed, "{}", claim.label()),
            Expectation::Independent if claim.label() == "mm & m => w" => {
                assert_eq!(r.status, ImplicationStatus::Confirmed)
            }
            Expectation::Independent => assert_eq!(r.status, ImplicationStatus::Refuted, "{}", claim.label()),
            Expectation::ReportOnly => {}
        }
        if let Some(ce) = &r.counterexample {
            assert!(claim.refuted_by(ce.transit.as_ref(), &ce.system));
            for (_, v) in &ce.failed {
                assert!(!v.holds);
            }
        }
    }
}

#[test]
fn counterexample_is_the_first_in_sweep_order() {
    let claim = &ImplicationClaim::parse_line("independent w => wp").unwrap()[0];
    let r = verify_implication(claim, 4, &SweepOptions::default()).unwrap();
    let ce = r.counterexample.unwrap();
    assert_eq!(ce.n, 4);
    // every earlier monotone function satisfies the implication
    let earlier = 1 + 1 + 8 + (r.instances_checked - 10 - 1) as usize;
    let all: Vec<_> = (1..=4).flat_map(|n| enumerate_monotone_tfs(n).unwrap()).collect();
    for f in &all[..earlier] {
        assert!(!check(f, TransitAxiom::W).holds || check(f, TransitAxiom::Wp).holds);
    }
    assert_eq!(all[earlier], ce.transit.unwrap());
}

fn census_by_definition(n: usize) -> BTreeMap<TransitAxiom, u64> {
    let mut counts = BTreeMap::new();
    for r in monotone_by_definition(n) {
        for (a, v) in classify_all(&r) {
            *counts.entry(a).or_insert(0) += v.holds as u64;
        }
    }
    counts
}

#[test]
fn census_matches_direct_count() {
    for n in 1..=4 {
        let c = census(n, &SweepOptions::default()).unwrap();
        for (a, expected) in census_by_definition(n) {
            assert_eq!(c.count(a.as_str()), Some(expected), "n = {n}, {a}");
        }
    }
}

#[test]
fn census_pins() {
    let c = census(4, &SweepOptions::default()).unwrap();
    assert_eq!(c.total, 400);
    let pins = [
        ("m", 400), ("a'", 313), ("k", 400), ("w", 207), ("x", 143), ("x'", 288), ("u", 219),
        ("uc", 104), ("mm", 207), ("k3", 313), ("wp", 285), ("o", 291), ("o'", 330),
        ("py", 176), ("weaklyPyramidal", 179), ("weakHierarchy", 207), ("w & wp", 179),
    ];
    for (label, count) in pins {
        assert_eq!(c.count(label), Some(count), "{label}");
    }
}

#[test]
fn census_pins_at_five() {
    let c = census(5, &SweepOptions::default().long_run(true)).unwrap();
    assert_eq!(c.total, 163_696);
    let pins = [
        ("w", 22_153), ("x", 4_517), ("x'", 47_504), ("u", 20_894), ("uc", 2_476),
        ("mm", 23_473), ("wp", 27_775), ("o", 43_309), ("o'", 68_171), ("py", 10_306),
        ("weaklyPyramidal", 11_218),
    ];
    for (label, count) in pins {
        assert_eq!(c.count(label), Some(count), "{label}");
    }
}

#[test]
fn worker_count_does_not_change_results() {
    let claims = battery();
    let one = SweepOptions::default().workers(1);
    let three = SweepOptions::default().workers(3);
    for claim in &claims {
        assert_eq!(
            verify_implication(claim, 4, &one).unwrap(),
            verify_implication(claim, 4, &three).unwrap()
        );
    }
}
