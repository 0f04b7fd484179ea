//! Solutions of guarded systems by successive elimination.

use std::collections::BTreeMap;

use super::subst::{ending, subst_cong};
use super::system::{EqSystem, Family};
use crate::error::{Error, Result};
use crate::proof::{AxiomId, Builder, Inst};
use crate::syntax::{occurs_unguarded, substitute, substitute_one, Expr, Name};

/// Which sink is eliminated first when several are available.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SolveOrder {
    #[default]
    First,
    Last,
}

fn pick_sink(formals: &[Name], rhs: &BTreeMap<Name, Expr>, order: SolveOrder) -> Result<usize> {
    let is_sink = |x: &Name| !formals.iter().any(|y| occurs_unguarded(y, &rhs[x]));
    let found = match order {
        SolveOrder::First => formals.iter().position(is_sink),
        SolveOrder::Last => formals.iter().rposition(is_sink),
    };
    found.ok_or_else(|| Error::NotGuarded("every remaining formal has an unguarded successor".into()))
}

fn reduce(formals: &[Name], rhs: &BTreeMap<Name, Expr>, i: usize) -> (Vec<Name>, BTreeMap<Name, Expr>, Expr) {
    let x = &formals[i];
    let m = Expr::rec_named(x.clone(), rhs[x].clone());
    let rest: Vec<Name> = formals.iter().filter(|y| *y != x).cloned().collect();
    let reduced = rest
        .iter()
        .map(|y| (y.clone(), substitute_one(&rhs[y], x, &m)))
        .collect();
    (rest, reduced, m)
}

/// Solves `s`, proving each equation from `R1`.
pub(crate) fn solve_in(b: &mut Builder, s: &EqSystem, order: SolveOrder) -> Result<Family> {
    s.require_guarded()?;
    solve_rec(b, &s.formals, &s.rhs, order)
}

fn solve_rec(
    b: &mut Builder,
    formals: &[Name],
    rhs: &BTreeMap<Name, Expr>,
    order: SolveOrder,
) -> Result<Family> {
    if formals.is_empty() {
        return Ok(Family::default());
    }
    let i = pick_sink(formals, rhs, order)?;
    let x = &formals[i];
    let (rest, reduced, m) = reduce(formals, rhs, i);
    let mut fam = solve_rec(b, &rest, &reduced, order)?;
    let ex = substitute(&m, &fam.sols);
    let mut full = fam.sols.clone();
    full.insert(x.clone(), ex.clone());
    for y in &rest {
        let target = substitute(&rhs[y], &full);
        let p = ending(b, fam.proofs[y], &target)?;
        fam.proofs.insert(y.clone(), p);
    }
    let Expr::Rec(z, body) = &ex else {
        return Err(Error::internal("elimination produced a non-recursion"));
    };
    let unfold = b.axiom(
        AxiomId::R1,
        Inst::new().e("E", (**body).clone()).x("X", z.clone()),
    )?;
    let p = ending(b, unfold, &substitute(&rhs[x], &full))?;
    fam.proofs.insert(x.clone(), p);
    fam.sols = full;
    Ok(fam)
}

/// Given a family `d` with proofs of `d_X = F_X{d/X}`, proves `d_X = E_X`
/// for the solution `E` of [`solve_in`] with the same order.
pub(crate) fn unique_in(b: &mut Builder, s: &EqSystem, d: &Family, order: SolveOrder) -> Result<BTreeMap<Name, usize>> {
    s.require_guarded()?;
    let (proofs, _) = unique_rec(b, &s.formals, &s.rhs, d, order)?;
    Ok(proofs)
}

fn unique_rec(
    b: &mut Builder,
    formals: &[Name],
    rhs: &BTreeMap<Name, Expr>,
    d: &Family,
    order: SolveOrder,
) -> Result<(BTreeMap<Name, usize>, BTreeMap<Name, Expr>)> {
    if formals.is_empty() {
        return Ok((BTreeMap::new(), BTreeMap::new()));
    }
    let i = pick_sink(formals, rhs, order)?;
    let x = &formals[i];
    let (rest, reduced, m) = reduce(formals, rhs, i);
    let dx = d.sols[x].clone();
    let mut d_rest = d.sols.clone();
    d_rest.remove(x);

    // d_x = rec x. F_x{d_rest}
    let ex = substitute(&rhs[x], &d_rest);
    let premise = ending(b, d.proofs[x], &substitute_one(&ex, x, &dx))?;
    let r2 = b.r2(
        Inst::new().e("E", ex).e("F", dx.clone()).x("X", x.clone()),
        premise,
    )?;
    let m_d = substitute(&m, &d_rest);
    let q = ending(b, r2, &m_d)?;

    let mut eqs: BTreeMap<Name, usize> = rest.iter().map(|z| (z.clone(), b.refl(&d.sols[z]))).collect();
    eqs.insert(x.clone(), q);
    let mut reduced_d = Family {
        sols: d_rest.clone(),
        proofs: BTreeMap::new(),
    };
    for y in &rest {
        let c = subst_cong(b, &rhs[y], &eqs)?;
        let c = ending(b, c, &substitute(&reduced[y], &d_rest))?;
        let mid = b.lhs(c).clone();
        let p = ending(b, d.proofs[y], &mid)?;
        let p = b.trans(p, c)?;
        reduced_d.proofs.insert(y.clone(), p);
    }
    let (mut proofs, mut sols) = unique_rec(b, &rest, &reduced, &reduced_d, order)?;
    let ex = substitute(&m, &sols);
    let c = subst_cong(b, &m, &proofs)?;
    let c = ending(b, c, &ex)?;
    let p = b.trans(q, c)?;
    proofs.insert(x.clone(), p);
    sols.insert(x.clone(), ex);
    Ok((proofs, sols))
}
