//! Small combinators for assembling proofs.

use super::alpha::{alpha_eq, alpha_proof};
use super::step::{Builder, Position};
use super::sums::sum_equal;
use crate::error::{Error, Result};
use crate::syntax::Expr;

/// The subterm of `e` at `path`.
pub fn subterm<'a>(e: &'a Expr, path: &[Position]) -> Option<&'a Expr> {
    let Some((first, rest)) = path.split_first() else {
        return Some(e);
    };
    let child = match (first, e) {
        (Position::Prefix, Expr::Prefix(_, b)) => b,
        (Position::SumL, Expr::Sum(l, _)) => l,
        (Position::SumR, Expr::Sum(_, r)) => r,
        (Position::RecBody, Expr::Rec(_, b)) => b,
        _ => return None,
    };
    subterm(child, rest)
}

/// Lifts `inner`, an equation about the subterm of `whole` at `path`, to an
/// equation about `whole`.
pub fn lift(b: &mut Builder, whole: &Expr, path: &[Position], inner: usize) -> Result<usize> {
    let Some((first, rest)) = path.split_first() else {
        if b.lhs(inner) != whole {
            return Err(Error::internal(format!(
                "lift: `{}` is not `{whole}`",
                b.lhs(inner)
            )));
        }
        return Ok(inner);
    };
    match (first, whole) {
        (Position::Prefix, Expr::Prefix(a, body)) => {
            let p = lift(b, body, rest, inner)?;
            Ok(b.cong_prefix(a, p))
        }
        (Position::SumL, Expr::Sum(l, r)) => {
            let p = lift(b, l, rest, inner)?;
            Ok(b.cong_suml(p, r))
        }
        (Position::SumR, Expr::Sum(l, r)) => {
            let p = lift(b, r, rest, inner)?;
            Ok(b.cong_sumr(l, p))
        }
        (Position::RecBody, Expr::Rec(x, body)) => {
            let p = lift(b, body, rest, inner)?;
            Ok(b.cong_rec(x, p))
        }
        _ => Err(Error::internal(format!("lift: no {first} position in `{whole}`"))),
    }
}

/// `a` followed by `c`, bridging alpha-equivalent meeting points with `R0`.
pub fn link(b: &mut Builder, a: usize, c: usize) -> Result<usize> {
    let (m1, m2) = (b.rhs(a).clone(), b.lhs(c).clone());
    if m1 == m2 {
        return b.trans(a, c);
    }
    if !alpha_eq(&m1, &m2) {
        return Err(Error::internal(format!("cannot link `{m1}` with `{m2}`")));
    }
    let bridge = alpha_proof(b, &m1, &m2)?;
    b.chain(&[a, bridge, c])
}

/// Left-to-right composition with alpha bridging.
pub fn link_all(b: &mut Builder, ids: &[usize]) -> Result<usize> {
    let (&first, rest) = ids
        .split_first()
        .ok_or_else(|| Error::internal("empty chain"))?;
    rest.iter().try_fold(first, |acc, &id| link(b, acc, id))
}

/// A running equation `start = current`, extended step by step.
pub struct Calc {
    acc: usize,
}

impl Calc {
    pub fn start(b: &mut Builder, e: &Expr) -> Calc {
        Calc { acc: b.refl(e) }
    }

    pub fn from(id: usize) -> Calc {
        Calc { acc: id }
    }

    pub fn current<'a>(&self, b: &'a Builder) -> &'a Expr {
        b.rhs(self.acc)
    }

    pub fn then(&mut self, b: &mut Builder, id: usize) -> Result<()> {
        self.acc = link(b, self.acc, id)?;
        Ok(())
    }

    /// Applies `inner` at `path` inside the current expression.
    pub fn then_at(&mut self, b: &mut Builder, path: &[Position], inner: usize) -> Result<()> {
        let cur = self.current(b).clone();
        let sub = subterm(&cur, path)
            .ok_or_else(|| Error::internal(format!("no such position in `{cur}`")))?
            .clone();
        let inner = if b.lhs(inner) == &sub {
            inner
        } else {
            let bridge = alpha_proof(b, &sub, &b.lhs(inner).clone())?;
            b.trans(bridge, inner)?
        };
        let id = lift(b, &cur, path, inner)?;
        self.then(b, id)
    }

    /// Rearranges the sum at `path` into `target`, which must have the same
    /// summands.
    pub fn reshape_at(&mut self, b: &mut Builder, path: &[Position], target: &Expr) -> Result<()> {
        let cur = self.current(b).clone();
        let sub = subterm(&cur, path)
            .ok_or_else(|| Error::internal(format!("no such position in `{cur}`")))?
            .clone();
        if &sub == target {
            return Ok(());
        }
        let id = sum_equal(b, &sub, target)?;
        self.then_at(b, path, id)
    }

    /// Ends the calculation at `target`, renaming binders if needed.
    pub fn conclude(mut self, b: &mut Builder, target: &Expr) -> Result<usize> {
        let cur = self.current(b).clone();
        if &cur != target {
            let bridge = alpha_proof(b, &cur, target)?;
            self.then(b, bridge)?;
        }
        Ok(self.acc)
    }

    pub fn id(&self) -> usize {
        self.acc
    }
}
