mod common;

use dpbb_core::equiv::{
    bisimilarity, brute_oracle, equivalent, functional_b, functional_bd, functional_bp, functional_s,
    minimize, Kind, PairRelation,
};
use dpbb_core::semantics::{build_lts, Lts, DEFAULT_BUDGET};
use dpbb_core::syntax::Action;
use proptest::prelude::*;
use rand::Rng;

fn relation(seed: u64, n: usize) -> PairRelation {
    let mut rng = common::rng(seed);
    let pairs: Vec<_> = (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    PairRelation::from_pairs(n, pairs)
}

#[test]
fn strong_step_need_not_be_branching_step() {
    // 0 -a-> 1 and 2 -a-> 3, with R relating only the targets.
    let mut l = Lts::with_states(4);
    l.add_transition(0, Action::visible("a"), 1);
    l.add_transition(2, Action::visible("a"), 3);
    let r = PairRelation::from_pairs(4, [(1, 3)]);
    assert!(functional_s(&l, &r).contains(0, 2));
    assert!(!functional_bp(&l, &r).contains(0, 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn oracle_agrees(seed in any::<u64>(), n in 1usize..=6) {
        let l = common::lts(&mut common::rng(seed), n);
        for kind in Kind::ALL {
            prop_assert_eq!(bisimilarity(&l, kind), brute_oracle(&l, kind).unwrap());
        }
    }

    #[test]
    fn functional_ordering(seed in any::<u64>(), n in 1usize..=6) {
        let l = common::lts(&mut common::rng(seed), n);
        let r = relation(seed ^ 0x5eed, n);
        let (s, bp, bd, b) = (
            functional_s(&l, &r),
            functional_bp(&l, &r),
            functional_bd(&l, &r),
            functional_b(&l, &r),
        );
        prop_assert!(s.intersect(&r).is_subset(&bp));
        prop_assert!(bp.is_subset(&bd));
        prop_assert!(bd.is_subset(&b));
    }

    #[test]
    fn equivalences_refine(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (e, f) = common::pair(&mut rng, 10);
        let strong = equivalent(&e, &f, Kind::Strong, DEFAULT_BUDGET).unwrap();
        let dpbb = equivalent(&e, &f, Kind::Dpbb, DEFAULT_BUDGET).unwrap();
        let branching = equivalent(&e, &f, Kind::Branching, DEFAULT_BUDGET).unwrap();
        prop_assert!(!strong || dpbb);
        prop_assert!(!dpbb || branching);
    }

    #[test]
    fn minimize_is_idempotent(seed in any::<u64>()) {
        let e = common::expr(&mut common::rng(seed), 12);
        let m = minimize(&build_lts(&e, DEFAULT_BUDGET).unwrap());
        let again = minimize(&m);
        prop_assert_eq!(again.num_states(), m.num_states());
        prop_assert_eq!(bisimilarity(&m, Kind::Dpbb).num_classes(), m.num_states());
    }
}
