//! Abstract syntax of process expressions.
//!
//! Expressions are built from `0`, variables, action prefixes, binary sums
//! and `rec` binders. Syntactic identity is raw tree equality: two terms that
//! differ only in the names of bound variables are *different* values, and
//! any alpha step has to be made explicit in a proof.

mod parse;
mod predicates;
mod print;
mod subst;
mod sumview;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use parse::{is_variable_name, parse_context, parse_expr, ParseError, Parser, Token, HOLE};
pub use predicates::{
    is_fully_exposed, is_guarded_expr, is_guarded_in, is_loop, loop_body, loop_parts,
    occurs_unguarded,
};
pub use subst::{fresh_name, fresh_name_with_prefix, substitute, substitute_one};
pub use sumview::{as_standard_sum, flatten_sum, sum_of, SumView};

/// Identifier for variables and visible actions.
pub type Name = Arc<str>;

/// Prefix of generated binder names (`_g0`, `_g1`, ...).
pub const FRESH_PREFIX: &str = "_g";

/// An action: either the silent move or a visible name.
///
/// The derived order puts `Tau` before every visible action, and visible
/// actions are ordered by name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Action {
    Tau,
    Visible(Name),
}

impl Action {
    pub fn visible(name: &str) -> Action {
        Action::Visible(name.into())
    }

    pub fn is_tau(&self) -> bool {
        matches!(self, Action::Tau)
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Tau => f.write_str("tau"),
            Action::Visible(n) => f.write_str(n),
        }
    }
}

/// A process expression.
///
/// The derived total order (constructor tag first, then fields) is the
/// order used everywhere a deterministic choice between expressions is needed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Expr {
    Nil,
    Var(Name),
    Prefix(Action, Arc<Expr>),
    Sum(Arc<Expr>, Arc<Expr>),
    Rec(Name, Arc<Expr>),
}

impl Expr {
    pub fn nil() -> Expr {
        Expr::Nil
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.into())
    }

    pub fn prefix(act: Action, body: Expr) -> Expr {
        Expr::Prefix(act, Arc::new(body))
    }

    /// `tau.body`
    pub fn tau(body: Expr) -> Expr {
        Expr::prefix(Action::Tau, body)
    }

    /// `name.body` for a visible action.
    pub fn act(name: &str, body: Expr) -> Expr {
        Expr::prefix(Action::visible(name), body)
    }

    pub fn sum(left: Expr, right: Expr) -> Expr {
        Expr::Sum(Arc::new(left), Arc::new(right))
    }

    pub fn rec(binder: &str, body: Expr) -> Expr {
        Expr::Rec(binder.into(), Arc::new(body))
    }

    pub fn rec_named(binder: Name, body: Expr) -> Expr {
        Expr::Rec(binder, Arc::new(body))
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, Expr::Nil)
    }

    pub fn as_var(&self) -> Option<&Name> {
        match self {
            Expr::Var(n) => Some(n),
            _ => None,
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Nil | Expr::Var(_) => 1,
            Expr::Prefix(_, b) => 1 + b.size(),
            Expr::Sum(l, r) => 1 + l.size() + r.size(),
            Expr::Rec(_, b) => 1 + b.size(),
        }
    }
}

/// The set of free variables.
pub fn free_vars(e: &Expr) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    collect_free(e, &mut Vec::new(), &mut out);
    out
}

fn collect_free(e: &Expr, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    match e {
        Expr::Nil => {}
        Expr::Var(x) => {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        }
        Expr::Prefix(_, b) => collect_free(b, bound, out),
        Expr::Sum(l, r) => {
            collect_free(l, bound, out);
            collect_free(r, bound, out);
        }
        Expr::Rec(x, b) => {
            bound.push(x.clone());
            collect_free(b, bound, out);
            bound.pop();
        }
    }
}

/// Whether `x` occurs free in `e`.
pub fn is_free_in(x: &str, e: &Expr) -> bool {
    match e {
        Expr::Nil => false,
        Expr::Var(y) => &**y == x,
        Expr::Prefix(_, b) => is_free_in(x, b),
        Expr::Sum(l, r) => is_free_in(x, l) || is_free_in(x, r),
        Expr::Rec(y, b) => &**y != x && is_free_in(x, b),
    }
}

/// Every identifier occurring in `e`, bound or free.
pub fn all_names(e: &Expr) -> BTreeSet<Name> {
    fn go(e: &Expr, out: &mut BTreeSet<Name>) {
        match e {
            Expr::Nil => {}
            Expr::Var(x) => {
                out.insert(x.clone());
            }
            Expr::Prefix(_, b) => go(b, out),
            Expr::Sum(l, r) => {
                go(l, out);
                go(r, out);
            }
            Expr::Rec(x, b) => {
                out.insert(x.clone());
                go(b, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    go(e, &mut out);
    out
}

/// The loop expression `tau* e`, i.e. `rec Z.(tau.Z + e)` where `Z` is the
/// lowest generated name not free in `e`.
pub fn make_loop(e: Expr) -> Expr {
    let z = fresh_name(&free_vars(&e));
    let body = Expr::sum(Expr::tau(Expr::Var(z.clone())), e);
    Expr::Rec(z, Arc::new(body))
}

/// Right-nested sum of the given summands; the empty sum is `0`.
pub fn sum_list<I>(items: I) -> Expr
where
    I: IntoIterator<Item = Expr>,
    I::IntoIter: DoubleEndedIterator,
{
    let mut iter = items.into_iter().rev();
    let Some(mut acc) = iter.next() else {
        return Expr::Nil;
    };
    for item in iter {
        acc = Expr::sum(item, acc);
    }
    acc
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::to_text(self))
    }
}
