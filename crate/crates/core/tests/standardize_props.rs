mod common;

use dpbb_core::equiv::rooted_equal;
use dpbb_core::proof::check;
use dpbb_core::semantics::DEFAULT_BUDGET;
use dpbb_core::standardize::{derive_d, fully_expose, standardize, DRule};
use dpbb_core::syntax::{as_standard_sum, is_fully_exposed, is_guarded_expr, Name};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn standardize_is_sound(seed in any::<u64>()) {
        let e = common::expr(&mut common::rng(seed), 16);
        let (view, d) = standardize(&e).unwrap();
        let s = view.to_expr();
        check(&d).unwrap();
        prop_assert_eq!(d.conclusion().unwrap(), (&e, &s));
        prop_assert!(as_standard_sum(&s).is_some());
        prop_assert_eq!(rooted_equal(&e, &s, DEFAULT_BUDGET).unwrap(), None);
    }

    #[test]
    fn standardize_fixes_standard_sums(seed in any::<u64>()) {
        let e = common::expr(&mut common::rng(seed), 12);
        let s = standardize(&e).unwrap().0.to_expr();
        let (again, _) = standardize(&s).unwrap();
        prop_assert_eq!(again.to_expr(), s);
    }

    #[test]
    fn fully_expose_keeps_guardedness(seed in any::<u64>()) {
        let e = common::guarded_expr(&mut common::rng(seed), 14);
        for x in ["X", "W"] {
            let x: Name = x.into();
            let (e1, d) = fully_expose(&x, &e).unwrap();
            check(&d).unwrap();
            prop_assert!(is_guarded_expr(&e1));
            prop_assert!(is_fully_exposed(&x, &e1));
            prop_assert_eq!(rooted_equal(&e, &e1, DEFAULT_BUDGET).unwrap(), None);
        }
    }

    #[test]
    fn loop_rules_check(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let (e, f, g) = (common::expr(&mut r, 5), common::expr(&mut r, 5), common::expr(&mut r, 5));
        let x: Name = "X".into();
        for rule in [
            DRule::D1(e.clone()),
            DRule::D2(e.clone()),
            DRule::D3 { x: x.clone(), e: e.clone(), f: f.clone() },
            DRule::D4 { x: x.clone(), e: e.clone(), f: f.clone(), g: g.clone() },
            DRule::D5 { e: e.clone(), f: f.clone() },
            DRule::D6(e.clone()),
        ] {
            let d = derive_d(&rule).unwrap();
            check(&d).unwrap();
            let (l, rr) = rule.conclusion();
            prop_assert_eq!(d.conclusion().unwrap(), (&l, &rr));
        }
    }
}
