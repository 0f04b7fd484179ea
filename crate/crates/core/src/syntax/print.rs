use super::{loop_body, make_loop, Expr};

/// Renders `e` in the concrete grammar with as few parentheses as the
/// grammar allows. Parsing the result yields `e` again.
pub fn to_text(e: &Expr) -> String {
    let mut out = String::new();
    sum(e, true, &mut out);
    out
}

// `tail` is true when nothing follows the printed text in its enclosing
// context, so a trailing `rec` may extend to the right without parentheses.
fn sum(e: &Expr, tail: bool, out: &mut String) {
    match e {
        Expr::Sum(l, r) => {
            unary(l, false, out);
            out.push_str(" + ");
            sum(r, tail, out);
        }
        _ => unary(e, tail, out),
    }
}

fn unary(e: &Expr, tail: bool, out: &mut String) {
    match e {
        Expr::Nil => out.push('0'),
        Expr::Var(x) => out.push_str(x),
        Expr::Prefix(a, b) => {
            out.push_str(&a.to_string());
            out.push('.');
            unary(b, tail, out);
        }
        Expr::Sum(..) => {
            out.push('(');
            sum(e, true, out);
            out.push(')');
        }
        Expr::Rec(x, b) => {
            if let Some(body) = loop_body(e) {
                if make_loop(body.clone()) == *e {
                    out.push_str("tau* ");
                    unary(body, tail, out);
                    return;
                }
            }
            if !tail {
                out.push('(');
            }
            out.push_str("rec ");
            out.push_str(x);
            out.push_str(". ");
            sum(b, true, out);
            if !tail {
                out.push(')');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::parse_expr;

    fn round(s: &str) -> String {
        parse_expr(s).unwrap().to_string()
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(round("a.(b.0 + c.0)"), "a.(b.0 + c.0)");
        assert_eq!(round("(a.0 + b.0) + c.0"), "(a.0 + b.0) + c.0");
        assert_eq!(round("a.0 + (b.0 + c.0)"), "a.0 + b.0 + c.0");
        assert_eq!(round("(rec X. a.X) + b.0"), "(rec X. a.X) + b.0");
        assert_eq!(round("b.0 + rec X. a.X"), "b.0 + rec X. a.X");
        assert_eq!(round("rec _g0. (tau._g0 + a.0)"), "tau* a.0");
        assert_eq!(round("rec Y. (tau.Y + a.0)"), "rec Y. tau.Y + a.0");
    }

    #[test]
    fn nested_loop_body_rec() {
        for s in [
            "tau* (rec X. a.X) + b.0",
            "a.(rec X. a.X) + b.0",
            "tau* tau* a.0",
            "tau* (tau._g0 + a.0)",
        ] {
            let e = parse_expr(s).unwrap();
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{s}");
        }
    }
}
