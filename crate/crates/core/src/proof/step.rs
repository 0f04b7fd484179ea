use std::collections::HashMap;
use std::fmt;

use super::axiom::{instantiate, r2_premise, AxiomId, Inst};
use crate::error::{Error, Result};
use crate::syntax::{Action, Expr, Name, HOLE};

/// Where a one-hole congruence step rewrites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    Prefix,
    SumL,
    SumR,
    RecBody,
}

impl Position {
    pub fn keyword(self) -> &'static str {
        match self {
            Position::Prefix => "prefix",
            Position::SumL => "suml",
            Position::SumR => "sumr",
            Position::RecBody => "rec",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Position> {
        [
            Position::Prefix,
            Position::SumL,
            Position::SumR,
            Position::RecBody,
        ]
        .into_iter()
        .find(|p| p.keyword() == s)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Justification of one equation. Step references point to earlier steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Just {
    Refl,
    Symm(usize),
    Trans(usize, usize),
    Axiom {
        id: AxiomId,
        inst: Inst,
        /// The step proving `F = E{F/X}`; present exactly for `R2`.
        premise: Option<usize>,
    },
    Cong {
        pos: Position,
        inner: usize,
        /// The surrounding one-level context; the hole is the variable `◻`.
        context: Expr,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub lhs: Expr,
    pub rhs: Expr,
    pub just: Just,
}

/// A sequence of justified equations; the last one is the conclusion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn conclusion(&self) -> Option<(&Expr, &Expr)> {
        self.steps.last().map(|s| (&s.lhs, &s.rhs))
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// The one-level context of `e` around position `pos`, or `None` if `e` has
/// no such child.
pub fn context_of(e: &Expr, pos: Position) -> Option<Expr> {
    let hole = Expr::var(HOLE);
    match (pos, e) {
        (Position::Prefix, Expr::Prefix(a, _)) => Some(Expr::prefix(a.clone(), hole)),
        (Position::SumL, Expr::Sum(_, r)) => Some(Expr::sum(hole, (**r).clone())),
        (Position::SumR, Expr::Sum(l, _)) => Some(Expr::sum((**l).clone(), hole)),
        (Position::RecBody, Expr::Rec(x, _)) => Some(Expr::rec_named(x.clone(), hole)),
        _ => None,
    }
}

/// Fills the hole of a one-level context of the given shape. Binders of the
/// context do capture: this is plain tree surgery, not substitution.
pub fn plug(context: &Expr, pos: Position, filler: &Expr) -> Option<Expr> {
    let is_hole = |e: &Expr| matches!(e, Expr::Var(h) if &**h == HOLE);
    match (pos, context) {
        (Position::Prefix, Expr::Prefix(a, h)) if is_hole(h) => {
            Some(Expr::prefix(a.clone(), filler.clone()))
        }
        (Position::SumL, Expr::Sum(h, r)) if is_hole(h) => {
            Some(Expr::Sum(std::sync::Arc::new(filler.clone()), r.clone()))
        }
        (Position::SumR, Expr::Sum(l, h)) if is_hole(h) => {
            Some(Expr::Sum(l.clone(), std::sync::Arc::new(filler.clone())))
        }
        (Position::RecBody, Expr::Rec(x, h)) if is_hole(h) => {
            Some(Expr::rec_named(x.clone(), filler.clone()))
        }
        _ => None,
    }
}

/// Accumulates steps of one derivation. Identical steps are shared.
#[derive(Default)]
pub struct Builder {
    steps: Vec<Step>,
    index: HashMap<Step, usize>,
}

impl Builder {
    pub fn new() -> Builder {
        Builder::default()
    }

    pub fn lhs(&self, id: usize) -> &Expr {
        &self.steps[id].lhs
    }

    pub fn rhs(&self, id: usize) -> &Expr {
        &self.steps[id].rhs
    }

    pub fn step(&self, id: usize) -> &Step {
        &self.steps[id]
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_refl(&self, id: usize) -> bool {
        self.steps[id].lhs == self.steps[id].rhs
    }

    fn push(&mut self, step: Step) -> usize {
        if let Some(&id) = self.index.get(&step) {
            return id;
        }
        let id = self.steps.len();
        self.index.insert(step.clone(), id);
        self.steps.push(step);
        id
    }

    pub fn refl(&mut self, e: &Expr) -> usize {
        self.push(Step {
            lhs: e.clone(),
            rhs: e.clone(),
            just: Just::Refl,
        })
    }

    pub fn symm(&mut self, id: usize) -> usize {
        let s = &self.steps[id];
        if s.lhs == s.rhs {
            return id;
        }
        if let Just::Symm(inner) = s.just {
            return inner;
        }
        let step = Step {
            lhs: s.rhs.clone(),
            rhs: s.lhs.clone(),
            just: Just::Symm(id),
        };
        self.push(step)
    }

    pub fn trans(&mut self, a: usize, b: usize) -> Result<usize> {
        if self.steps[a].rhs != self.steps[b].lhs {
            return Err(Error::internal(format!(
                "cannot chain `{}` with `{}`",
                self.steps[a].rhs, self.steps[b].lhs
            )));
        }
        if self.is_refl(a) {
            return Ok(b);
        }
        if self.is_refl(b) {
            return Ok(a);
        }
        let step = Step {
            lhs: self.steps[a].lhs.clone(),
            rhs: self.steps[b].rhs.clone(),
            just: Just::Trans(a, b),
        };
        Ok(self.push(step))
    }

    /// Chains a sequence of steps left to right.
    pub fn chain(&mut self, ids: &[usize]) -> Result<usize> {
        let (&first, rest) = ids
            .split_first()
            .ok_or_else(|| Error::internal("empty chain"))?;
        rest.iter().try_fold(first, |acc, &id| self.trans(acc, id))
    }

    /// An axiom instance other than `R2`.
    pub fn axiom(&mut self, id: AxiomId, inst: Inst) -> Result<usize> {
        if id == AxiomId::R2 {
            return Err(Error::internal("R2 needs a premise"));
        }
        let (lhs, rhs) = instantiate(id, &inst)?;
        Ok(self.push(Step {
            lhs,
            rhs,
            just: Just::Axiom {
                id,
                inst,
                premise: None,
            },
        }))
    }

    /// `F = rec X. E` from a step proving `F = E{F/X}`.
    pub fn r2(&mut self, inst: Inst, premise: usize) -> Result<usize> {
        let (pl, pr) = r2_premise(&inst)?;
        if self.steps[premise].lhs != pl || self.steps[premise].rhs != pr {
            return Err(Error::internal("R2 premise does not match its instance"));
        }
        let (lhs, rhs) = instantiate(AxiomId::R2, &inst)?;
        Ok(self.push(Step {
            lhs,
            rhs,
            just: Just::Axiom {
                id: AxiomId::R2,
                inst,
                premise: Some(premise),
            },
        }))
    }

    fn cong(&mut self, pos: Position, inner: usize, context: Expr) -> usize {
        if self.is_refl(inner) {
            let e = plug(&context, pos, &self.steps[inner].lhs).expect("well-formed context");
            return self.refl(&e);
        }
        let lhs = plug(&context, pos, &self.steps[inner].lhs).expect("well-formed context");
        let rhs = plug(&context, pos, &self.steps[inner].rhs).expect("well-formed context");
        self.push(Step {
            lhs,
            rhs,
            just: Just::Cong {
                pos,
                inner,
                context,
            },
        })
    }

    /// `a.E = a.F` from `E = F`.
    pub fn cong_prefix(&mut self, a: &Action, inner: usize) -> usize {
        self.cong(Position::Prefix, inner, Expr::prefix(a.clone(), Expr::var(HOLE)))
    }

    /// `E + G = F + G` from `E = F`.
    pub fn cong_suml(&mut self, inner: usize, right: &Expr) -> usize {
        self.cong(Position::SumL, inner, Expr::sum(Expr::var(HOLE), right.clone()))
    }

    /// `G + E = G + F` from `E = F`.
    pub fn cong_sumr(&mut self, left: &Expr, inner: usize) -> usize {
        self.cong(Position::SumR, inner, Expr::sum(left.clone(), Expr::var(HOLE)))
    }

    /// `rec X. E = rec X. F` from `E = F`.
    pub fn cong_rec(&mut self, x: &Name, inner: usize) -> usize {
        self.cong(Position::RecBody, inner, Expr::rec_named(x.clone(), Expr::var(HOLE)))
    }

    /// `L + R = L' + R'` from `L = L'` and `R = R'`.
    pub fn cong_sum(&mut self, left: usize, right: usize) -> Result<usize> {
        let r0 = self.steps[right].lhs.clone();
        let l1 = self.steps[left].rhs.clone();
        let a = self.cong_suml(left, &r0);
        let b = self.cong_sumr(&l1, right);
        self.trans(a, b)
    }

    /// Extracts the steps needed for `conclusions`, renumbered, together
    /// with the new indices of the conclusions.
    pub fn extract(&self, conclusions: &[usize]) -> (Derivation, Vec<usize>) {
        let mut needed = vec![false; self.steps.len()];
        let mut stack: Vec<usize> = conclusions.to_vec();
        while let Some(i) = stack.pop() {
            if needed[i] {
                continue;
            }
            needed[i] = true;
            match &self.steps[i].just {
                Just::Refl => {}
                Just::Symm(a) => stack.push(*a),
                Just::Trans(a, b) => stack.extend([*a, *b]),
                Just::Axiom { premise, .. } => stack.extend(premise.iter().copied()),
                Just::Cong { inner, .. } => stack.push(*inner),
            }
        }
        let mut map = vec![usize::MAX; self.steps.len()];
        let mut steps = Vec::new();
        for (i, s) in self.steps.iter().enumerate() {
            if !needed[i] {
                continue;
            }
            map[i] = steps.len();
            let just = match &s.just {
                Just::Refl => Just::Refl,
                Just::Symm(a) => Just::Symm(map[*a]),
                Just::Trans(a, b) => Just::Trans(map[*a], map[*b]),
                Just::Axiom { id, inst, premise } => Just::Axiom {
                    id: *id,
                    inst: inst.clone(),
                    premise: premise.map(|p| map[p]),
                },
                Just::Cong {
                    pos,
                    inner,
                    context,
                } => Just::Cong {
                    pos: *pos,
                    inner: map[*inner],
                    context: context.clone(),
                },
            };
            steps.push(Step {
                lhs: s.lhs.clone(),
                rhs: s.rhs.clone(),
                just,
            });
        }
        let ids = conclusions.iter().map(|&c| map[c]).collect();
        (Derivation { steps }, ids)
    }

    /// Appends the steps of `d`, returning the new index of each of them.
    pub fn import(&mut self, d: &Derivation) -> Vec<usize> {
        let mut map: Vec<usize> = Vec::with_capacity(d.steps.len());
        for s in &d.steps {
            let just = match &s.just {
                Just::Refl => Just::Refl,
                Just::Symm(a) => Just::Symm(map[*a]),
                Just::Trans(a, b) => Just::Trans(map[*a], map[*b]),
                Just::Axiom { id, inst, premise } => Just::Axiom {
                    id: *id,
                    inst: inst.clone(),
                    premise: premise.map(|p| map[p]),
                },
                Just::Cong {
                    pos,
                    inner,
                    context,
                } => Just::Cong {
                    pos: *pos,
                    inner: map[*inner],
                    context: context.clone(),
                },
            };
            let id = self.push(Step {
                lhs: s.lhs.clone(),
                rhs: s.rhs.clone(),
                just,
            });
            map.push(id);
        }
        map
    }

    /// The derivation ending in `conclusion`. Every referenced step comes
    /// earlier, so the conclusion is the last needed step.
    pub fn finish(&self, conclusion: usize) -> Derivation {
        self.extract(&[conclusion]).0
    }
}
