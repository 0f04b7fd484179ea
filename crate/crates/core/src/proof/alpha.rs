use super::axiom::{AxiomId, Inst};
use super::step::Builder;
use crate::error::{Error, Result};
use crate::syntax::{substitute_one, Expr, Name};

/// Equality up to renaming of bound variables.
pub fn alpha_eq(a: &Expr, b: &Expr) -> bool {
    fn go(a: &Expr, b: &Expr, env: &mut Vec<(Name, Name)>) -> bool {
        match (a, b) {
            (Expr::Nil, Expr::Nil) => true,
            (Expr::Var(x), Expr::Var(y)) => {
                match env.iter().rev().find(|(l, r)| l == x || r == y) {
                    Some((l, r)) => l == x && r == y,
                    None => x == y,
                }
            }
            (Expr::Prefix(p, e), Expr::Prefix(q, f)) => p == q && go(e, f, env),
            (Expr::Sum(l1, r1), Expr::Sum(l2, r2)) => go(l1, l2, env) && go(r1, r2, env),
            (Expr::Rec(x, e), Expr::Rec(y, f)) => {
                env.push((x.clone(), y.clone()));
                let ok = go(e, f, env);
                env.pop();
                ok
            }
            _ => false,
        }
    }
    a == b || go(a, b, &mut Vec::new())
}

/// A proof of `a = b` for alpha-equivalent terms, renaming binders with `R0`.
pub fn alpha_proof(b: &mut Builder, x: &Expr, y: &Expr) -> Result<usize> {
    if x == y {
        return Ok(b.refl(x));
    }
    if !alpha_eq(x, y) {
        return Err(Error::internal(format!("`{x}` and `{y}` are not alpha-equivalent")));
    }
    go(b, x, y)
}

fn go(b: &mut Builder, x: &Expr, y: &Expr) -> Result<usize> {
    if x == y {
        return Ok(b.refl(x));
    }
    match (x, y) {
        (Expr::Prefix(a, e), Expr::Prefix(_, f)) => {
            let inner = go(b, e, f)?;
            Ok(b.cong_prefix(a, inner))
        }
        (Expr::Sum(l1, r1), Expr::Sum(l2, r2)) => {
            let l = go(b, l1, l2)?;
            let r = go(b, r1, r2)?;
            b.cong_sum(l, r)
        }
        (Expr::Rec(u, e), Expr::Rec(v, f)) if u == v => {
            let inner = go(b, e, f)?;
            Ok(b.cong_rec(u, inner))
        }
        (Expr::Rec(u, e), Expr::Rec(v, f)) => {
            // rec u. e = rec v. e{v/u}, then align the bodies
            let rename = b.axiom(
                AxiomId::R0,
                Inst::new().e("E", (**e).clone()).x("X", u.clone()).x("Y", v.clone()),
            )?;
            let renamed = substitute_one(e, u, &Expr::Var(v.clone()));
            let inner = go(b, &renamed, f)?;
            let body = b.cong_rec(v, inner);
            b.trans(rename, body)
        }
        _ => Err(Error::internal(format!("alpha mismatch between `{x}` and `{y}`"))),
    }
}
