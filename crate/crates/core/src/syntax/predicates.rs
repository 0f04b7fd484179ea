use super::{flatten_sum, is_free_in, Action, Expr};

/// True iff every free occurrence of `x` in `e` is under a visible prefix.
pub fn is_guarded_in(x: &str, e: &Expr) -> bool {
    match e {
        Expr::Nil => true,
        Expr::Var(y) => &**y != x,
        Expr::Prefix(Action::Visible(_), _) => true,
        Expr::Prefix(Action::Tau, b) => is_guarded_in(x, b),
        Expr::Sum(l, r) => is_guarded_in(x, l) && is_guarded_in(x, r),
        Expr::Rec(y, b) => &**y == x || is_guarded_in(x, b),
    }
}

/// Negation of [`is_guarded_in`].
pub fn occurs_unguarded(x: &str, e: &Expr) -> bool {
    !is_guarded_in(x, e)
}

/// Recognizes `rec X. body` where the leftmost leaf of the body's sum spine
/// is `tau.X` and `X` is not free in the remaining leaves.
pub fn is_loop(e: &Expr) -> bool {
    let Expr::Rec(x, body) = e else {
        return false;
    };
    let leaves = flatten_sum(body);
    match leaves.split_first() {
        Some((Expr::Prefix(Action::Tau, v), rest)) if !rest.is_empty() => {
            matches!(&**v, Expr::Var(y) if y == x) && rest.iter().all(|l| !is_free_in(x, l))
        }
        _ => false,
    }
}

/// The body `E` of a loop written exactly as `rec X.(tau.X + E)`.
pub fn loop_body(e: &Expr) -> Option<&Expr> {
    loop_parts(e).map(|(_, b)| b)
}

/// Binder and body `E` of a loop written exactly as `rec X.(tau.X + E)`.
pub fn loop_parts(e: &Expr) -> Option<(&super::Name, &Expr)> {
    let Expr::Rec(x, body) = e else {
        return None;
    };
    let Expr::Sum(l, r) = &**body else {
        return None;
    };
    match &**l {
        Expr::Prefix(Action::Tau, v) if matches!(&**v, Expr::Var(y) if y == x) => {
            if is_free_in(x, r) {
                None
            } else {
                Some((x, &**r))
            }
        }
        _ => None,
    }
}

/// Every `rec` subterm is a loop or a guarded recursion.
pub fn is_guarded_expr(e: &Expr) -> bool {
    match e {
        Expr::Nil | Expr::Var(_) => true,
        Expr::Prefix(_, b) => is_guarded_expr(b),
        Expr::Sum(l, r) => is_guarded_expr(l) && is_guarded_expr(r),
        Expr::Rec(x, b) => (is_loop(e) || is_guarded_in(x, b)) && is_guarded_expr(b),
    }
}

/// Every unguarded occurrence of `x` that sits inside a `rec` subterm sits
/// inside loops only.
pub fn is_fully_exposed(x: &str, e: &Expr) -> bool {
    match e {
        Expr::Nil | Expr::Var(_) => true,
        Expr::Prefix(Action::Visible(_), _) => true,
        Expr::Prefix(Action::Tau, b) => is_fully_exposed(x, b),
        Expr::Sum(l, r) => is_fully_exposed(x, l) && is_fully_exposed(x, r),
        Expr::Rec(y, b) => {
            if &**y == x || is_guarded_in(x, b) {
                true
            } else {
                is_loop(e) && is_fully_exposed(x, b)
            }
        }
    }
}
