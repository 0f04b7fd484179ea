//! Equation systems: unique solutions, standard systems extracted from
//! expressions, quotients by the induced equivalence, and the completeness
//! procedure built on them.

mod complete;
mod extract;
mod quotient;
mod solve;
mod subst;
mod system;

pub use complete::Congruence;
pub use quotient::{bottom_variables, derivatives, formal_classes, is_bottom, ses_semantics, Quotient};
pub use solve::SolveOrder;
pub use system::{tau_transform, EqSystem, SesSystem, Shape, Solution};

use std::collections::BTreeSet;

use crate::error::Result;
use crate::proof::{Builder, Derivation};
use crate::syntax::{Expr, Name};

/// Solves a guarded system by eliminating formals one at a time.
pub fn solve_system(s: &EqSystem) -> Result<Solution> {
    solve_system_with(s, SolveOrder::First)
}

pub fn solve_system_with(s: &EqSystem, order: SolveOrder) -> Result<Solution> {
    let mut b = Builder::new();
    let fam = solve::solve_in(&mut b, s, order)?;
    Ok(Solution::from_family(&b, &fam))
}

/// Proves `a_x = c_x` for two solutions of the guarded system `s`.
pub fn unique_solution(s: &EqSystem, a: &Solution, c: &Solution, x: &Name) -> Result<Derivation> {
    a.verify(s)?;
    c.verify(s)?;
    let mut b = Builder::new();
    let fa = import(&mut b, a);
    let fc = import(&mut b, c);
    let pa = solve::unique_in(&mut b, s, &fa, SolveOrder::First)?;
    let pc = solve::unique_in(&mut b, s, &fc, SolveOrder::First)?;
    let back = b.symm(pc[x]);
    let id = b.trans(pa[x], back)?;
    Ok(b.finish(id))
}

fn import(b: &mut Builder, s: &Solution) -> system::Family {
    let ids = b.import(&s.derivation);
    system::Family {
        sols: s.exprs.clone(),
        proofs: s.steps.iter().map(|(x, &i)| (x.clone(), ids[i])).collect(),
    }
}

/// A standard system with a solution whose entry for the returned formal
/// is `e` itself.
pub fn extract_ses(e: &Expr) -> Result<(SesSystem, Name, Solution)> {
    let mut b = Builder::new();
    let mut ex = extract::Extractor::new(&mut b, BTreeSet::new(), "_s");
    let root = ex.extract(e)?;
    let (sys, fam) = (ex.sys, ex.fam);
    Ok((sys, root, Solution::from_family(&b, &fam)))
}

/// The quotient of `s` by its induced equivalence, with a proof that
/// `tau.B_ι(X)` solves `tau(s)` for every formal `X`.
pub fn quotient(s: &SesSystem) -> Result<(Quotient, Solution)> {
    s.validate()?;
    let mut b = Builder::new();
    let (q, _, fam) = quotient::common_solution(&mut b, s, SolveOrder::First)?;
    Ok((q, Solution::from_family(&b, &fam)))
}

/// `tau.e = tau.f` for equivalent guarded expressions.
pub fn promote(e: &Expr, f: &Expr) -> Result<Derivation> {
    let mut b = Builder::new();
    let id = complete::promote_in(&mut b, e, f, SolveOrder::First)?;
    Ok(b.finish(id))
}

/// A derivation of `e = f` when the two are rooted equivalent, and the
/// mismatch otherwise.
pub fn prove_congruent(e: &Expr, f: &Expr, budget: usize) -> Result<Congruence> {
    prove_congruent_with(e, f, budget, SolveOrder::First)
}

pub fn prove_congruent_with(e: &Expr, f: &Expr, budget: usize, order: SolveOrder) -> Result<Congruence> {
    let mut b = Builder::new();
    Ok(match complete::congruent_in(&mut b, e, f, budget, order)? {
        Ok(id) => Congruence::Proved(b.finish(id)),
        Err(m) => Congruence::Refuted(m),
    })
}
