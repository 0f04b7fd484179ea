use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use super::{exposes, step};
use crate::error::{Error, Result};
use crate::syntax::{Action, Expr, Name};

/// Default limit on the number of states of a constructed system.
pub const DEFAULT_BUDGET: usize = 100_000;

/// A finite labelled transition system whose states carry exposure sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lts {
    pub root: usize,
    /// Outgoing transitions per state, sorted.
    pub succ: Vec<Vec<(Action, usize)>>,
    pub exposure: Vec<BTreeSet<Name>>,
    /// Display label per state.
    pub labels: Vec<String>,
    /// The expression of every state, when built from an expression.
    pub exprs: Vec<Expr>,
}

impl Lts {
    /// `n` states without transitions or exposures, labelled by index.
    pub fn with_states(n: usize) -> Lts {
        Lts {
            root: 0,
            succ: vec![Vec::new(); n],
            exposure: vec![BTreeSet::new(); n],
            labels: (0..n).map(|i| i.to_string()).collect(),
            exprs: Vec::new(),
        }
    }

    pub fn num_states(&self) -> usize {
        self.succ.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn add_transition(&mut self, from: usize, a: Action, to: usize) {
        let list = &mut self.succ[from];
        if let Err(pos) = list.binary_search(&(a.clone(), to)) {
            list.insert(pos, (a, to));
        }
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, &Action, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(s, l)| l.iter().map(move |(a, t)| (s, a, *t)))
    }

    pub fn tau_successors(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[s].iter().filter(|(a, _)| a.is_tau()).map(|(_, t)| *t)
    }

    /// Disjoint union; states of `other` are shifted by the returned offset.
    /// The root of the result is the root of `self`.
    pub fn disjoint_union(&self, other: &Lts) -> (Lts, usize) {
        let off = self.num_states();
        let mut out = self.clone();
        for l in &other.succ {
            out.succ.push(l.iter().map(|(a, t)| (a.clone(), t + off)).collect());
        }
        out.exposure.extend(other.exposure.iter().cloned());
        out.labels.extend(other.labels.iter().cloned());
        if self.exprs.len() == off && other.exprs.len() == other.num_states() {
            out.exprs.extend(other.exprs.iter().cloned());
        } else {
            out.exprs.clear();
        }
        (out, off)
    }

    /// Aldebaran format, with exposures as extra `exp (state, "X")` lines.
    pub fn to_aut(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "des ({}, {}, {})",
            self.root,
            self.num_transitions(),
            self.num_states()
        );
        for (s, a, t) in self.transitions() {
            let _ = writeln!(out, "({s},\"{a}\",{t})");
        }
        for (s, exp) in self.exposure.iter().enumerate() {
            for w in exp {
                let _ = writeln!(out, "exp ({s}, \"{w}\")");
            }
        }
        out
    }

    /// Human-readable listing: one block per state.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in 0..self.num_states() {
            let mark = if s == self.root { "*" } else { " " };
            let _ = writeln!(out, "{mark}{s}: {}", self.labels[s]);
            for w in &self.exposure[s] {
                let _ = writeln!(out, "    exposes {w}");
            }
            for (a, t) in &self.succ[s] {
                let _ = writeln!(out, "    --{a}--> {t}");
            }
        }
        out
    }
}

/// The states reachable from `e`, numbered in breadth-first discovery order
/// with the successors of each state visited in `(Action, Expr)` order.
pub fn build_lts(e: &Expr, budget: usize) -> Result<Lts> {
    let mut index: HashMap<Expr, usize> = HashMap::new();
    let mut exprs = vec![e.clone()];
    let mut succ: Vec<Vec<(Action, usize)>> = Vec::new();
    index.insert(e.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    if budget == 0 {
        return Err(Error::BudgetExceeded(budget));
    }
    while let Some(s) = queue.pop_front() {
        let mut out = Vec::new();
        for (a, t) in step(&exprs[s]) {
            let id = match index.get(&t) {
                Some(&id) => id,
                None => {
                    if exprs.len() >= budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                    let id = exprs.len();
                    index.insert(t.clone(), id);
                    exprs.push(t);
                    queue.push_back(id);
                    id
                }
            };
            out.push((a, id));
        }
        out.sort();
        out.dedup();
        if succ.len() <= s {
            succ.resize(s + 1, Vec::new());
        }
        succ[s] = out;
    }
    succ.resize(exprs.len(), Vec::new());
    Ok(Lts {
        root: 0,
        exposure: exprs.iter().map(exposes).collect(),
        labels: exprs.iter().map(|x| x.to_string()).collect(),
        succ,
        exprs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_expr;

    fn lts(s: &str) -> Lts {
        build_lts(&parse_expr(s).unwrap(), DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn small_systems() {
        let l = lts("a.0");
        assert_eq!((l.num_states(), l.num_transitions()), (2, 1));

        let l = lts("rec X. (tau.X + a.0)");
        assert_eq!(l.num_states(), 2);
        assert_eq!(l.exprs[1], Expr::Nil);
        let ts: Vec<_> = l.transitions().map(|(s, a, t)| (s, a.clone(), t)).collect();
        assert_eq!(ts, vec![(0, Action::Tau, 0), (0, Action::visible("a"), 1)]);

        let l = lts("rec X. a.X");
        assert_eq!((l.num_states(), l.num_transitions()), (1, 1));
    }

    #[test]
    fn budget_is_enforced() {
        let e = parse_expr("a.b.c.0").unwrap();
        assert_eq!(build_lts(&e, 3), Err(Error::BudgetExceeded(3)));
        assert!(build_lts(&e, 4).is_ok());
    }

    #[test]
    fn aut_output() {
        let l = lts("a.0 + X");
        assert_eq!(l.to_aut(), "des (0, 1, 2)\n(0,\"a\",1)\nexp (0, \"X\")\n");
    }
}
