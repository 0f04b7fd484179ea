//! Proofs of equations between equivalent guarded expressions.

use std::collections::BTreeMap;

use super::extract::Extractor;
use super::quotient::{common_solution, t1_lift};
use super::solve::{unique_in, SolveOrder};
use super::subst::ending;
use super::system::{tau_transform, Family};
use crate::equiv::{equivalent, rooted_equal, Kind, RootMismatch};
use crate::error::{Error, Result};
use crate::proof::calc::Calc;
use crate::proof::lemmas::{summand_exposed, summand_move, t1};
use crate::proof::{AxiomId, Builder, Inst, Position};
use crate::standardize::standardize_in;
use crate::syntax::{all_names, as_standard_sum, substitute, Action, Expr, Name};

/// `tau.e = tau.f` for guarded `e`, `f` that are equivalent (not necessarily
/// at the root).
pub(crate) fn promote_in(b: &mut Builder, e: &Expr, f: &Expr, order: SolveOrder) -> Result<usize> {
    if e == f {
        return Ok(b.refl(&Expr::tau(e.clone())));
    }
    let mut avoid = all_names(e);
    avoid.extend(all_names(f));
    let mut ex = Extractor::new(b, avoid, "_s");
    let x = ex.extract(e)?;
    let y = ex.extract(f)?;
    let (sys, fam) = (ex.sys, ex.fam);

    // tau.D solves tau(S)
    let mut pre = Family::default();
    let taus: BTreeMap<Name, Expr> = fam.sols.iter().map(|(z, d)| (z.clone(), Expr::tau(d.clone()))).collect();
    for z in &sys.formals {
        let first = b.cong_prefix(&Action::Tau, fam.proofs[z]);
        let lift = t1_lift(b, &sys, z, &fam.sols)?;
        let mid = b.lhs(lift).clone();
        let first = ending(b, first, &Expr::tau(mid))?;
        let lift = b.cong_prefix(&Action::Tau, lift);
        let id = b.trans(first, lift)?;
        let target = Expr::tau(substitute(&sys.shape[z].to_expr(), &taus));
        let id = ending(b, id, &target)?;
        pre.sols.insert(z.clone(), taus[z].clone());
        pre.proofs.insert(z.clone(), id);
    }

    let (_, p, common) = common_solution(b, &sys, order)?;
    let (ix, iy) = (sys.index_of(&x).expect("formal"), sys.index_of(&y).expect("formal"));
    if !p.same(ix, iy) {
        return Err(Error::NotEquivalent(format!("{e} and {f}")));
    }
    let ts = tau_transform(&sys.to_system());
    let u1 = unique_in(b, &ts, &pre, order)?;
    let u2 = unique_in(b, &ts, &common, order)?;
    let down = b.symm(u2[&x]);
    let back = b.symm(u1[&y]);
    b.chain(&[u1[&x], down, u2[&y], back])
}

/// `a.e = a.f` from `tau.e = tau.f`.
fn prefixed(b: &mut Builder, a: &Action, e: &Expr, f: &Expr, order: SolveOrder) -> Result<usize> {
    let te = t1(b, a, e)?;
    let te = b.symm(te);
    let mid = promote_in(b, e, f, order)?;
    let mid = b.cong_prefix(a, mid);
    let tf = t1(b, a, f)?;
    b.chain(&[te, mid, tf])
}

// `t = s + t` for standard sums `s`, `t` whose summands `t` answers.
fn absorb(b: &mut Builder, s: &Expr, t: &Expr, budget: usize, order: SolveOrder) -> Result<usize> {
    let sv = as_standard_sum(s).ok_or_else(|| Error::internal(format!("`{s}` is not a standard sum")))?;
    let tv = as_standard_sum(t).ok_or_else(|| Error::internal(format!("`{t}` is not a standard sum")))?;
    let mut c = Calc::start(b, t);
    let mut path = Vec::new();
    for w in &sv.vars {
        let p = summand_exposed(b, t, w)?;
        let sw = b.axiom(AxiomId::S1, Inst::new().e("E", t.clone()).e("F", Expr::Var(w.clone())))?;
        let p = b.trans(p, sw)?;
        c.then_at(b, &path, p)?;
        path.push(Position::SumR);
    }
    for (a, e) in &sv.prefixed {
        let mut found = None;
        for (c2, f) in &tv.prefixed {
            if c2 == a && equivalent(e, f, Kind::Dpbb, budget)? {
                found = Some(f.clone());
                break;
            }
        }
        let f = found.ok_or_else(|| Error::NotEquivalent(format!("no answer to {a}.{e} in {t}")))?;
        let grow = summand_move(b, t, a, &f)?;
        let swap = prefixed(b, a, &f, e, order)?;
        let swap = b.cong_sumr(t, swap);
        let ae = Expr::prefix(a.clone(), e.clone());
        let sw = b.axiom(AxiomId::S1, Inst::new().e("E", t.clone()).e("F", ae))?;
        let p = b.chain(&[grow, swap, sw])?;
        c.then_at(b, &path, p)?;
        path.push(Position::SumR);
    }
    c.reshape_at(b, &[], &Expr::sum(s.clone(), t.clone()))?;
    Ok(c.id())
}

/// Outcome of [`prove_congruent`].
#[derive(Clone, Debug)]
pub enum Congruence {
    Proved(crate::proof::Derivation),
    Refuted(RootMismatch),
}

pub(crate) fn congruent_in(
    b: &mut Builder,
    e: &Expr,
    f: &Expr,
    budget: usize,
    order: SolveOrder,
) -> Result<std::result::Result<usize, RootMismatch>> {
    if let Some(m) = rooted_equal(e, f, budget)? {
        return Ok(Err(m));
    }
    if e == f {
        return Ok(Ok(b.refl(e)));
    }
    let pe = standardize_in(b, e)?;
    let pf = standardize_in(b, f)?;
    let (se, sf) = (b.rhs(pe).clone(), b.rhs(pf).clone());
    let p1 = absorb(b, &se, &sf, budget, order)?;
    let p2 = absorb(b, &sf, &se, budget, order)?;
    let sw = b.axiom(AxiomId::S1, Inst::new().e("E", sf.clone()).e("F", se.clone()))?;
    let back1 = b.symm(p1);
    let backf = b.symm(pf);
    Ok(Ok(b.chain(&[pe, p2, sw, back1, backf])?))
}
