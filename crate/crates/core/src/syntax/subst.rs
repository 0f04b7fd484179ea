use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{all_names, free_vars, is_free_in, Expr, Name, FRESH_PREFIX};

/// Lowest `_gN` not contained in `avoid`.
pub fn fresh_name(avoid: &BTreeSet<Name>) -> Name {
    fresh_name_with_prefix(FRESH_PREFIX, avoid)
}

/// Lowest `<prefix>N` not contained in `avoid`.
pub fn fresh_name_with_prefix(prefix: &str, avoid: &BTreeSet<Name>) -> Name {
    (0usize..)
        .map(|i| Name::from(format!("{prefix}{i}")))
        .find(|n| !avoid.contains(n))
        .expect("unbounded index range")
}

/// `e{f/x}`
pub fn substitute_one(e: &Expr, x: &str, f: &Expr) -> Expr {
    let mut map = BTreeMap::new();
    map.insert(Name::from(x), f.clone());
    substitute(e, &map)
}

/// Simultaneous capture-free substitution.
///
/// Subterms without a free occurrence of any substituted variable are
/// returned unchanged. A binder is renamed only when it would capture a free
/// variable of a substituted expression; the new name is the lowest `_gN`
/// unused in the binder's body, in the substituted expressions and in the
/// substitution's domain.
pub fn substitute(e: &Expr, map: &BTreeMap<Name, Expr>) -> Expr {
    if map.is_empty() {
        return e.clone();
    }
    go(e, map).unwrap_or_else(|| e.clone())
}

// Returns None when the term is unchanged.
fn go(e: &Expr, map: &BTreeMap<Name, Expr>) -> Option<Expr> {
    match e {
        Expr::Nil => None,
        Expr::Var(x) => map.get(x).cloned(),
        Expr::Prefix(a, b) => go(b, map).map(|b| Expr::Prefix(a.clone(), Arc::new(b))),
        Expr::Sum(l, r) => {
            let l2 = go(l, map);
            let r2 = go(r, map);
            if l2.is_none() && r2.is_none() {
                return None;
            }
            Some(Expr::Sum(
                l2.map(Arc::new).unwrap_or_else(|| l.clone()),
                r2.map(Arc::new).unwrap_or_else(|| r.clone()),
            ))
        }
        Expr::Rec(x, body) => {
            let inner: BTreeMap<Name, Expr> = map
                .iter()
                .filter(|(k, _)| *k != x && is_free_in(k, body))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect();
            if inner.is_empty() {
                return None;
            }
            let captured = inner.values().any(|v| is_free_in(x, v));
            if !captured {
                let b = go(body, &inner)?;
                return Some(Expr::Rec(x.clone(), Arc::new(b)));
            }
            let mut avoid = all_names(body);
            for (k, v) in &inner {
                avoid.insert(k.clone());
                avoid.extend(free_vars(v));
            }
            let y = fresh_name(&avoid);
            let mut renamed = inner;
            renamed.insert(x.clone(), Expr::Var(y.clone()));
            let b = go(body, &renamed).unwrap_or_else(|| (**body).clone());
            Some(Expr::Rec(y, Arc::new(b)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_expr;

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn direct_replacement() {
        assert_eq!(substitute_one(&p("a.X"), "X", &p("b.0")), p("a.b.0"));
    }

    #[test]
    fn bound_variable_untouched() {
        let e = p("rec X. a.X");
        assert_eq!(substitute_one(&e, "X", &p("b.0")), e);
    }

    #[test]
    fn capture_is_avoided() {
        let out = substitute_one(&p("rec Y. a.X"), "X", &p("b.Y"));
        assert_eq!(out, p("rec _g0. a.b.Y"));
    }

    #[test]
    fn simultaneous_not_successive() {
        let mut m = BTreeMap::new();
        m.insert(Name::from("X"), p("Y"));
        m.insert(Name::from("Y"), p("X"));
        assert_eq!(substitute(&p("a.X + b.Y"), &m), p("a.Y + b.X"));
    }

    #[test]
    fn fresh_skips_used() {
        let avoid: BTreeSet<Name> = ["_g0", "_g2"].iter().map(|s| Name::from(*s)).collect();
        assert_eq!(&*fresh_name(&avoid), "_g1");
    }
}
