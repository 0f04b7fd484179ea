//! Congruence for substitutions.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::proof::{alpha_proof, Builder};
use crate::syntax::{free_vars, fresh_name, is_free_in, substitute, substitute_one, Expr, Name};

/// Extends `id` so that it ends exactly at the alpha-equivalent `target`.
pub(crate) fn ending(b: &mut Builder, id: usize, target: &Expr) -> Result<usize> {
    if b.rhs(id) == target {
        return Ok(id);
    }
    let rhs = b.rhs(id).clone();
    let bridge = alpha_proof(b, &rhs, target)?;
    b.trans(id, bridge)
}

/// Extends `id` so that it starts exactly at the alpha-equivalent `source`.
pub(crate) fn starting(b: &mut Builder, source: &Expr, id: usize) -> Result<usize> {
    if b.lhs(id) == source {
        return Ok(id);
    }
    let lhs = b.lhs(id).clone();
    let bridge = alpha_proof(b, source, &lhs)?;
    b.trans(bridge, id)
}

/// `c{A/X} = c{B/X}` from proofs `A_i = B_i` for the variables `X_i`.
pub(crate) fn subst_cong(b: &mut Builder, c: &Expr, eqs: &BTreeMap<Name, usize>) -> Result<usize> {
    let lhs: BTreeMap<Name, Expr> = eqs.iter().map(|(x, &p)| (x.clone(), b.lhs(p).clone())).collect();
    let rhs: BTreeMap<Name, Expr> = eqs.iter().map(|(x, &p)| (x.clone(), b.rhs(p).clone())).collect();
    let mut avoid = BTreeSet::new();
    for e in lhs.values().chain(rhs.values()) {
        avoid.extend(free_vars(e));
    }
    let id = go(b, c, eqs, &avoid)?;
    let id = starting(b, &substitute(c, &lhs), id)?;
    ending(b, id, &substitute(c, &rhs))
}

fn go(b: &mut Builder, c: &Expr, eqs: &BTreeMap<Name, usize>, avoid: &BTreeSet<Name>) -> Result<usize> {
    if !eqs.keys().any(|x| is_free_in(x, c)) {
        return Ok(b.refl(c));
    }
    match c {
        Expr::Var(x) => Ok(eqs[x]),
        Expr::Nil => Ok(b.refl(c)),
        Expr::Prefix(a, body) => {
            let p = go(b, body, eqs, avoid)?;
            Ok(b.cong_prefix(a, p))
        }
        Expr::Sum(l, r) => {
            let pl = go(b, l, eqs, avoid)?;
            let pr = go(b, r, eqs, avoid)?;
            b.cong_sum(pl, pr)
        }
        Expr::Rec(y, body) => {
            let mut inner = eqs.clone();
            inner.remove(y);
            if avoid.contains(y) {
                let mut used = avoid.clone();
                used.extend(free_vars(body));
                used.extend(eqs.keys().cloned());
                let z = fresh_name(&used);
                let body = substitute_one(body, y, &Expr::Var(z.clone()));
                let p = go(b, &body, &inner, avoid)?;
                Ok(b.cong_rec(&z, p))
            } else {
                let p = go(b, body, &inner, avoid)?;
                Ok(b.cong_rec(y, p))
            }
        }
    }
}
