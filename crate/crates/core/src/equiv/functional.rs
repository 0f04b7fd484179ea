use std::collections::VecDeque;

use super::PairRelation;
use crate::semantics::Lts;
use crate::syntax::Action;

/// The four relation transformers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Functional {
    /// Strong transfer: moves answered by a single equal move.
    S,
    /// Branching transfer.
    B,
    /// Branching transfer where a silent move may only be answered by at
    /// least one silent move.
    BPrime,
    /// Branching transfer plus the divergence clause.
    BDelta,
}

/// Silent reachability of every state.
#[derive(Clone, Debug)]
pub struct Reach {
    /// `tau_star[s]`: states reachable by zero or more silent moves.
    pub tau_star: Vec<Vec<usize>>,
    /// `tau_plus[s]`: states reachable by one or more silent moves.
    pub tau_plus: Vec<Vec<usize>>,
}

impl Reach {
    pub fn new(lts: &Lts) -> Reach {
        let n = lts.num_states();
        let mut tau_star = Vec::with_capacity(n);
        let mut tau_plus = Vec::with_capacity(n);
        for s in 0..n {
            let mut seen = vec![false; n];
            let mut queue: VecDeque<usize> = lts.tau_successors(s).collect();
            let mut plus = Vec::new();
            while let Some(t) = queue.pop_front() {
                if seen[t] {
                    continue;
                }
                seen[t] = true;
                plus.push(t);
                queue.extend(lts.tau_successors(t).filter(|&u| !seen[u]));
            }
            let mut star = plus.clone();
            if !seen[s] {
                star.push(s);
            }
            star.sort_unstable();
            plus.sort_unstable();
            tau_star.push(star);
            tau_plus.push(plus);
        }
        Reach { tau_star, tau_plus }
    }
}

/// Which clause of a transformer a pair fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// The move `(action, target)` of the left state is not answered.
    Move(Action, usize),
    /// The exposed variable of the left state is not matched.
    Exposure(String),
    /// Some infinite silent run of the left state is not matched.
    Divergence,
}

impl Failure {
    pub fn clause(&self) -> &'static str {
        match self {
            Failure::Move(..) => "move",
            Failure::Exposure(_) => "exposure",
            Failure::Divergence => "divergence",
        }
    }
}

/// For every right-hand state `f`, the set of left-hand states from which
/// some infinite silent run avoids `{e | exists f' in tau_plus(f), (e,f') in r}`.
/// Entries are computed on demand.
pub(crate) struct DivergenceCache<'a> {
    lts: &'a Lts,
    reach: &'a Reach,
    cache: Vec<Option<Vec<bool>>>,
}

impl<'a> DivergenceCache<'a> {
    pub(crate) fn new(lts: &'a Lts, reach: &'a Reach) -> Self {
        DivergenceCache {
            lts,
            reach,
            cache: vec![None; lts.num_states()],
        }
    }

    pub(crate) fn clear(&mut self) {
        self.cache.iter_mut().for_each(|c| *c = None);
    }

    /// Whether `e` has an infinite silent run avoiding the states matched
    /// from `f` after at least one silent move.
    pub(crate) fn escapes(&mut self, r: &PairRelation, e: usize, f: usize) -> bool {
        if self.cache[f].is_none() {
            self.cache[f] = Some(self.compute(r, f));
        }
        self.cache[f].as_ref().unwrap()[e]
    }

    fn compute(&self, r: &PairRelation, f: usize) -> Vec<bool> {
        let n = self.lts.num_states();
        let mut good = vec![false; n];
        for &fp in &self.reach.tau_plus[f] {
            for e in 0..n {
                if r.contains(e, fp) {
                    good[e] = true;
                }
            }
        }
        // Greatest set of non-good states each having a silent successor
        // inside the set: exactly the states with an infinite run avoiding
        // the good states.
        let mut alive: Vec<bool> = good.iter().map(|g| !g).collect();
        let mut count: Vec<usize> = (0..n)
            .map(|s| self.lts.tau_successors(s).filter(|&t| alive[t]).count())
            .collect();
        let mut pred = vec![Vec::new(); n];
        for s in 0..n {
            for t in self.lts.tau_successors(s) {
                pred[t].push(s);
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&s| alive[s] && count[s] == 0).collect();
        while let Some(t) = stack.pop() {
            if !alive[t] {
                continue;
            }
            alive[t] = false;
            for &s in &pred[t] {
                if alive[s] {
                    count[s] -= 1;
                    if count[s] == 0 {
                        stack.push(s);
                    }
                }
            }
        }
        alive
    }
}

fn strong_check(lts: &Lts, r: &PairRelation, e: usize, f: usize) -> Option<Failure> {
    for (a, e1) in &lts.succ[e] {
        let answered = lts.succ[f]
            .iter()
            .any(|(b, f1)| a == b && r.contains(*e1, *f1));
        if !answered {
            return Some(Failure::Move(a.clone(), *e1));
        }
    }
    for w in &lts.exposure[e] {
        if !lts.exposure[f].contains(w) {
            return Some(Failure::Exposure(w.to_string()));
        }
    }
    None
}

fn branching_check(
    lts: &Lts,
    reach: &Reach,
    r: &PairRelation,
    e: usize,
    f: usize,
    progressing: bool,
) -> Option<Failure> {
    let star = &reach.tau_star[f];
    for (a, e1) in &lts.succ[e] {
        let mut answered = false;
        if a.is_tau() {
            let silent = if progressing { &reach.tau_plus[f] } else { star };
            answered = silent.iter().any(|&f1| r.contains(e, f1) && r.contains(*e1, f1));
        }
        if !answered {
            answered = star.iter().any(|&f1| {
                r.contains(e, f1)
                    && lts.succ[f1]
                        .iter()
                        .any(|(b, f2)| a == b && r.contains(*e1, *f2))
            });
        }
        if !answered {
            return Some(Failure::Move(a.clone(), *e1));
        }
    }
    for w in &lts.exposure[e] {
        let matched = star
            .iter()
            .any(|&f1| r.contains(e, f1) && lts.exposure[f1].contains(w));
        if !matched {
            return Some(Failure::Exposure(w.to_string()));
        }
    }
    None
}

/// The first failing clause of `(e, f)` against `which(r)`, or `None` if the
/// pair belongs to `which(r)`.
pub(crate) fn check_pair(
    which: Functional,
    lts: &Lts,
    reach: &Reach,
    div: &mut DivergenceCache<'_>,
    r: &PairRelation,
    e: usize,
    f: usize,
) -> Option<Failure> {
    match which {
        Functional::S => strong_check(lts, r, e, f),
        Functional::B => branching_check(lts, reach, r, e, f, false),
        Functional::BPrime => branching_check(lts, reach, r, e, f, true),
        Functional::BDelta => branching_check(lts, reach, r, e, f, false)
            .or_else(|| div.escapes(r, e, f).then_some(Failure::Divergence)),
    }
}

/// The image of `r` under the given transformer.
pub fn apply(which: Functional, lts: &Lts, r: &PairRelation) -> PairRelation {
    let reach = Reach::new(lts);
    let mut div = DivergenceCache::new(lts, &reach);
    let n = lts.num_states();
    let mut out = PairRelation::empty(n);
    for e in 0..n {
        for f in 0..n {
            if check_pair(which, lts, &reach, &mut div, r, e, f).is_none() {
                out.insert(e, f);
            }
        }
    }
    out
}

pub fn functional_s(lts: &Lts, r: &PairRelation) -> PairRelation {
    apply(Functional::S, lts, r)
}

pub fn functional_b(lts: &Lts, r: &PairRelation) -> PairRelation {
    apply(Functional::B, lts, r)
}

pub fn functional_bp(lts: &Lts, r: &PairRelation) -> PairRelation {
    apply(Functional::BPrime, lts, r)
}

pub fn functional_bd(lts: &Lts, r: &PairRelation) -> PairRelation {
    apply(Functional::BDelta, lts, r)
}
