mod common;

use dpbb_core::syntax::{free_vars, parse_expr, substitute_one, Expr};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let e = common::expr(&mut common::rng(seed), 20);
        prop_assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn substitution_removes_variable(seed in any::<u64>()) {
        let e = common::expr(&mut common::rng(seed), 14);
        let s = substitute_one(&e, "W", &Expr::act("c", Expr::nil()));
        prop_assert!(!free_vars(&s).contains("W"));
        prop_assert_eq!(substitute_one(&e, "Unused", &Expr::nil()), e);
    }
}
