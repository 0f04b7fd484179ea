//! Operational semantics: the transition relation, the exposure relation
//! and finite transition systems built from expressions.

mod divergence;
mod lts;

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::syntax::{substitute_one, Action, Expr, Name};

pub use divergence::{divergent, in_class_divergent, tau_cycle_states};
pub use lts::{build_lts, Lts, DEFAULT_BUDGET};

/// All `(a, E')` with `e --a--> E'`.
///
/// A recursion `rec X. E` moves like `E`, with the target closed again by
/// substituting the recursion for `X`; this avoids unbounded unfolding.
pub fn step(e: &Expr) -> BTreeSet<(Action, Expr)> {
    let mut out = BTreeSet::new();
    collect_steps(e, &mut out);
    out
}

fn collect_steps(e: &Expr, out: &mut BTreeSet<(Action, Expr)>) {
    match e {
        Expr::Nil | Expr::Var(_) => {}
        Expr::Prefix(a, b) => {
            out.insert((a.clone(), (**b).clone()));
        }
        Expr::Sum(l, r) => {
            collect_steps(l, out);
            collect_steps(r, out);
        }
        Expr::Rec(x, b) => {
            for (a, t) in step(b) {
                out.insert((a, substitute_one(&t, x, e)));
            }
        }
    }
}

/// The variables `W` with `e ▷ W`.
pub fn exposes(e: &Expr) -> BTreeSet<Name> {
    match e {
        Expr::Nil | Expr::Prefix(..) => BTreeSet::new(),
        Expr::Var(x) => BTreeSet::from([x.clone()]),
        Expr::Sum(l, r) => {
            let mut s = exposes(l);
            s.extend(exposes(r));
            s
        }
        Expr::Rec(x, b) => {
            let mut s = exposes(b);
            s.remove(x);
            s
        }
    }
}

/// Whether `e` reaches, by zero or more silent moves, a state exposing `x`.
pub fn tau_exposes(x: &str, e: &Expr) -> Result<bool> {
    tau_exposes_within(x, e, DEFAULT_BUDGET)
}

pub fn tau_exposes_within(x: &str, e: &Expr, budget: usize) -> Result<bool> {
    let mut seen: HashSet<Expr> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(e.clone());
    queue.push_back(e.clone());
    while let Some(s) = queue.pop_front() {
        if exposes(&s).iter().any(|w| &**w == x) {
            return Ok(true);
        }
        for (a, t) in step(&s) {
            if a.is_tau() && !seen.contains(&t) {
                if seen.len() >= budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                seen.insert(t.clone());
                queue.push_back(t);
            }
        }
    }
    Ok(false)
}

/// A silent path `e = E0 --tau--> ... --tau--> En` with `En ▷ x`, if any.
pub fn tau_path_to_exposure(x: &str, e: &Expr, budget: usize) -> Result<Option<Vec<Expr>>> {
    let mut parent: std::collections::HashMap<Expr, Option<Expr>> = Default::default();
    let mut queue = VecDeque::new();
    parent.insert(e.clone(), None);
    queue.push_back(e.clone());
    while let Some(s) = queue.pop_front() {
        if exposes(&s).iter().any(|w| &**w == x) {
            let mut path = vec![s.clone()];
            let mut cur = s;
            while let Some(Some(p)) = parent.get(&cur) {
                path.push(p.clone());
                cur = p.clone();
            }
            path.reverse();
            return Ok(Some(path));
        }
        for (a, t) in step(&s) {
            if a.is_tau() && !parent.contains_key(&t) {
                if parent.len() >= budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                parent.insert(t.clone(), Some(s.clone()));
                queue.push_back(t);
            }
        }
    }
    Ok(None)
}
