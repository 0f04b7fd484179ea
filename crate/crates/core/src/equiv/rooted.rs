use std::fmt;

use super::{bisimilarity, Kind, Partition};
use crate::error::Result;
use crate::semantics::{build_lts, in_class_divergent, Lts};
use crate::syntax::{Action, Expr, Name};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A root clause that fails, with the unmatched move or exposure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootMismatch {
    Move {
        side: Side,
        action: Action,
        target: Expr,
        /// Root states of the joint system (left, right).
        states: (usize, usize),
    },
    Exposure {
        side: Side,
        var: Name,
        states: (usize, usize),
    },
}

impl RootMismatch {
    pub fn clause(&self) -> &'static str {
        match self {
            RootMismatch::Move { .. } => "root-move",
            RootMismatch::Exposure { .. } => "root-exposure",
        }
    }

    pub fn states(&self) -> (usize, usize) {
        match self {
            RootMismatch::Move { states, .. } | RootMismatch::Exposure { states, .. } => *states,
        }
    }
}

impl fmt::Display for RootMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootMismatch::Move {
                side,
                action,
                target,
                ..
            } => write!(f, "{side} move --{action}--> {target} has no equivalent answer"),
            RootMismatch::Exposure { side, var, .. } => {
                write!(f, "{side} side exposes {var}, the other does not")
            }
        }
    }
}

/// Several expressions in one transition system, with their root states.
pub struct Joint {
    pub lts: Lts,
    pub roots: Vec<usize>,
}

impl Joint {
    pub fn build(exprs: &[&Expr], budget: usize) -> Result<Joint> {
        let mut lts: Option<Lts> = None;
        let mut roots = Vec::new();
        for e in exprs {
            let one = build_lts(e, budget)?;
            match &lts {
                None => {
                    roots.push(0);
                    lts = Some(one);
                }
                Some(acc) => {
                    let (u, off) = acc.disjoint_union(&one);
                    if u.num_states() > budget {
                        return Err(crate::Error::BudgetExceeded(budget));
                    }
                    roots.push(off);
                    lts = Some(u);
                }
            }
        }
        Ok(Joint {
            lts: lts.unwrap_or_else(|| Lts::with_states(0)),
            roots,
        })
    }
}

/// Whether `e` and `f` are equivalent under the given bisimilarity.
pub fn equivalent(e: &Expr, f: &Expr, kind: Kind, budget: usize) -> Result<bool> {
    let j = Joint::build(&[e, f], budget)?;
    Ok(bisimilarity(&j.lts, kind).same(j.roots[0], j.roots[1]))
}

/// Root-level comparison: first moves are answered move for move with
/// divergence-preserving branching bisimilar targets, and both sides expose
/// the same variables.
pub fn rooted_equal(e: &Expr, f: &Expr, budget: usize) -> Result<Option<RootMismatch>> {
    let j = Joint::build(&[e, f], budget)?;
    let p = bisimilarity(&j.lts, Kind::Dpbb);
    Ok(root_mismatch(&j.lts, &p, j.roots[0], j.roots[1]))
}

pub(crate) fn root_mismatch(lts: &Lts, p: &Partition, l: usize, r: usize) -> Option<RootMismatch> {
    let states = (l, r);
    for (side, s, t) in [(Side::Left, l, r), (Side::Right, r, l)] {
        for (a, s1) in &lts.succ[s] {
            let answered = lts.succ[t].iter().any(|(b, t1)| a == b && p.same(*s1, *t1));
            if !answered {
                let target = lts
                    .exprs
                    .get(*s1)
                    .cloned()
                    .unwrap_or_else(|| Expr::var(&lts.labels[*s1]));
                return Some(RootMismatch::Move {
                    side,
                    action: a.clone(),
                    target,
                    states,
                });
            }
        }
        if let Some(w) = lts.exposure[s].difference(&lts.exposure[t]).next() {
            return Some(RootMismatch::Exposure {
                side,
                var: w.clone(),
                states,
            });
        }
    }
    None
}

/// The quotient of `lts` by divergence-preserving branching bisimilarity:
/// one state per class, the moves between classes plus visible moves inside
/// a class, and a silent self-loop on every class that diverges internally.
pub fn minimize(lts: &Lts) -> Lts {
    let p = bisimilarity(lts, Kind::Dpbb);
    let k = p.num_classes();
    let mut out = Lts::with_states(k);
    out.root = p.class_of[lts.root];
    let div = in_class_divergent(lts, &p.class_of);
    for (s, a, t) in lts.transitions() {
        let (cs, ct) = (p.class_of[s], p.class_of[t]);
        if !a.is_tau() || cs != ct {
            out.add_transition(cs, a.clone(), ct);
        }
    }
    for s in 0..lts.num_states() {
        let c = p.class_of[s];
        if div[s] {
            out.add_transition(c, Action::Tau, c);
        }
        out.exposure[c].extend(lts.exposure[s].iter().cloned());
    }
    for (c, members) in p.classes().into_iter().enumerate() {
        out.labels[c] = lts.labels[members[0]].clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::DEFAULT_BUDGET;
    use crate::syntax::parse_expr;

    fn rooted(a: &str, b: &str) -> Option<RootMismatch> {
        rooted_equal(&parse_expr(a).unwrap(), &parse_expr(b).unwrap(), DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn rooted_examples() {
        let m = rooted("a.0", "tau.a.0").unwrap();
        assert!(matches!(m, RootMismatch::Move { side: Side::Left, .. }));
        assert!(rooted("tau.(a.0 + X)", "tau.(a.0 + X)").is_none());
        assert!(rooted("a.tau.b.0", "a.b.0").is_none());
        assert!(rooted("a.0 + X", "a.0").unwrap().clause() == "root-exposure");
    }

    #[test]
    fn minimize_loop() {
        let l = build_lts(&parse_expr("tau.rec X. (tau.X + a.0)").unwrap(), DEFAULT_BUDGET).unwrap();
        let m = minimize(&l);
        // the silent prefix is inert; the merged class diverges
        assert_eq!(m.num_states(), 2);
        assert!(m.succ[m.root].contains(&(Action::Tau, m.root)));
    }
}
