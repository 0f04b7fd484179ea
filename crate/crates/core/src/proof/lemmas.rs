use super::alpha::{alpha_eq, alpha_proof};
use super::axiom::{AxiomId, Inst};
use super::calc::Calc;
use super::step::{Builder, Position};
use super::sums::sum_equal;
use crate::error::{Error, Result};
use crate::semantics::{exposes, step, tau_path_to_exposure, DEFAULT_BUDGET};
use crate::syntax::{Action, Expr, Name};

/// `a.tau.e = a.e`
pub fn t1(b: &mut Builder, a: &Action, e: &Expr) -> Result<usize> {
    let nil = Expr::Nil;
    let e0 = Expr::sum(e.clone(), nil.clone());
    // tau.e = tau.(e + 0) + 0
    let s4e = b.axiom(AxiomId::S4, Inst::new().e("E", e.clone()))?;
    let pad = b.symm(s4e);
    let pad = b.cong_prefix(&Action::Tau, pad);
    let s4t = b.axiom(AxiomId::S4, Inst::new().e("E", Expr::tau(e0.clone())))?;
    let pad2 = b.symm(s4t);
    let inner = b.trans(pad, pad2)?;
    let first = b.cong_prefix(a, inner);
    let br = b.axiom(
        AxiomId::B,
        Inst::new().e("E", e.clone()).e("F", nil).a(a.clone()),
    )?;
    let last = b.cong_prefix(a, s4e);
    b.chain(&[first, br, last])
}

/// `e = e + a.t` for a move `e --a--> t`.
pub fn summand_move(b: &mut Builder, e: &Expr, a: &Action, t: &Expr) -> Result<usize> {
    let found = step(e)
        .into_iter()
        .find(|(c, u)| c == a && (u == t || alpha_eq(u, t)));
    let Some((_, u)) = found else {
        return Err(Error::MoveNotPresent(format!("{e} --{a}--> {t}")));
    };
    let p = summand_exact(b, e, a, &u)?;
    if &u == t {
        return Ok(p);
    }
    let al = alpha_proof(b, &u, t)?;
    let al = b.cong_prefix(a, al);
    let al = b.cong_sumr(e, al);
    b.trans(p, al)
}

// Requires `(a, t)` to be a move of `e` exactly.
fn summand_exact(b: &mut Builder, e: &Expr, a: &Action, t: &Expr) -> Result<usize> {
    let at = Expr::prefix(a.clone(), t.clone());
    match e {
        Expr::Prefix(..) => {
            let s3 = b.axiom(AxiomId::S3, Inst::new().e("E", e.clone()))?;
            Ok(b.symm(s3))
        }
        Expr::Sum(l, r) => {
            let in_left = step(l).contains(&(a.clone(), t.clone()));
            let side = if in_left { l } else { r };
            let p = summand_exact(b, side, a, t)?;
            if in_left {
                // l + r = (l + at) + r = l + (at + r) = l + (r + at) = (l + r) + at
                let c = b.cong_suml(p, r);
                let assoc = b.axiom(
                    AxiomId::S2,
                    Inst::new().e("E", (**l).clone()).e("F", at.clone()).e("G", (**r).clone()),
                )?;
                let assoc = b.symm(assoc);
                let sw = b.axiom(AxiomId::S1, Inst::new().e("E", at.clone()).e("F", (**r).clone()))?;
                let sw = b.cong_sumr(l, sw);
                let back = b.axiom(
                    AxiomId::S2,
                    Inst::new().e("E", (**l).clone()).e("F", (**r).clone()).e("G", at),
                )?;
                b.chain(&[c, assoc, sw, back])
            } else {
                let c = b.cong_sumr(l, p);
                let back = b.axiom(
                    AxiomId::S2,
                    Inst::new().e("E", (**l).clone()).e("F", (**r).clone()).e("G", at),
                )?;
                b.trans(c, back)
            }
        }
        Expr::Rec(x, body) => {
            let unfold = b.axiom(AxiomId::R1, Inst::new().e("E", (**body).clone()).x("X", x.clone()))?;
            let unfolded = b.rhs(unfold).clone();
            let p = summand_move(b, &unfolded, a, t)?;
            let fold = b.symm(unfold);
            let fold = b.cong_suml(fold, &at);
            b.chain(&[unfold, p, fold])
        }
        Expr::Nil | Expr::Var(_) => Err(Error::MoveNotPresent(format!("{e} --{a}--> {t}"))),
    }
}

/// `e = e + x` for `e ▷ x`.
pub fn summand_exposed(b: &mut Builder, e: &Expr, x: &Name) -> Result<usize> {
    if !exposes(e).contains(x) {
        return Err(Error::MoveNotPresent(format!("{e} does not expose {x}")));
    }
    let xv = Expr::Var(x.clone());
    match e {
        Expr::Var(_) => {
            let s3 = b.axiom(AxiomId::S3, Inst::new().e("E", e.clone()))?;
            Ok(b.symm(s3))
        }
        Expr::Sum(l, r) => {
            if exposes(l).contains(x) {
                let p = summand_exposed(b, l, x)?;
                let c = b.cong_suml(p, r);
                let assoc = b.axiom(
                    AxiomId::S2,
                    Inst::new().e("E", (**l).clone()).e("F", xv.clone()).e("G", (**r).clone()),
                )?;
                let assoc = b.symm(assoc);
                let sw = b.axiom(AxiomId::S1, Inst::new().e("E", xv.clone()).e("F", (**r).clone()))?;
                let sw = b.cong_sumr(l, sw);
                let back = b.axiom(
                    AxiomId::S2,
                    Inst::new().e("E", (**l).clone()).e("F", (**r).clone()).e("G", xv),
                )?;
                b.chain(&[c, assoc, sw, back])
            } else {
                let p = summand_exposed(b, r, x)?;
                let c = b.cong_sumr(l, p);
                let back = b.axiom(
                    AxiomId::S2,
                    Inst::new().e("E", (**l).clone()).e("F", (**r).clone()).e("G", xv),
                )?;
                b.trans(c, back)
            }
        }
        Expr::Rec(y, body) => {
            let unfold = b.axiom(AxiomId::R1, Inst::new().e("E", (**body).clone()).x("X", y.clone()))?;
            let unfolded = b.rhs(unfold).clone();
            let p = summand_exposed(b, &unfolded, x)?;
            let fold = b.symm(unfold);
            let fold = b.cong_suml(fold, &xv);
            b.chain(&[unfold, p, fold])
        }
        _ => Err(Error::MoveNotPresent(format!("{e} does not expose {x}"))),
    }
}

const TAU_BODY: [Position; 3] = [Position::RecBody, Position::SumL, Position::Prefix];

fn at(extra: &[Position]) -> Vec<Position> {
    TAU_BODY.iter().chain(extra).copied().collect()
}

// `head` alone, or `head + rest`.
fn join(head: &Expr, rest: &Option<Expr>) -> Expr {
    match rest {
        None => head.clone(),
        Some(r) => Expr::sum(head.clone(), r.clone()),
    }
}

// `E_{k-1} + (E_{k-2} + ... + E_0)`, or `None` when k = 0.
fn tail_from(path: &[Expr], k: usize) -> Option<Expr> {
    path[..k].iter().fold(None, |acc, e| Some(join(e, &acc)))
}

/// `rec x.(tau.e + f) = rec x.(tau.(x + e) + f)` when `e` silently exposes `x`.
///
/// Follows a silent path `e = E_0 -> ... -> E_n ▷ x`: the successors are
/// absorbed one by one with R4, `x` is added, and the successors are
/// removed again in reverse order.
pub fn d0(b: &mut Builder, e: &Expr, f: &Expr, x: &Name) -> Result<usize> {
    let path = tau_path_to_exposure(x, e, DEFAULT_BUDGET)?.ok_or_else(|| Error::SideCondition {
        axiom: "D0".into(),
        detail: format!("{e} does not silently expose {x}"),
    })?;
    let xv = Expr::Var(x.clone());
    let start = Expr::rec_named(x.clone(), Expr::sum(Expr::tau(e.clone()), f.clone()));
    let mut calc = Calc::start(b, &start);
    let n = path.len() - 1;
    let r4 = |b: &mut Builder, e: &Expr, rest: &Expr| {
        b.axiom(
            AxiomId::R4,
            Inst::new()
                .e("E", e.clone())
                .e("F", rest.clone())
                .e("G", f.clone())
                .x("X", x.clone()),
        )
    };

    let mut rest: Option<Expr> = None;
    for k in 0..n {
        let (ek, next) = (&path[k], &path[k + 1]);
        let tn = Expr::tau(next.clone());
        let body = join(ek, &rest);
        let absorb = summand_move(b, ek, &Action::Tau, next)?;
        let head: &[Position] = if rest.is_some() { &[Position::SumL] } else { &[] };
        calc.then_at(b, &at(head), absorb)?;
        let grown = join(&Expr::sum(ek.clone(), tn.clone()), &rest);
        let re = sum_equal(b, &grown, &Expr::sum(tn, body.clone()))?;
        calc.then_at(b, &TAU_BODY, re)?;
        let step = r4(b, next, &body)?;
        calc.then(b, step)?;
        rest = Some(body);
    }

    let expose = summand_exposed(b, &path[n], x)?;
    let head: &[Position] = if rest.is_some() { &[Position::SumL] } else { &[] };
    calc.then_at(b, &at(head), expose)?;
    let mut current = join(&Expr::sum(path[n].clone(), xv.clone()), &rest);

    for k in (1..=n).rev() {
        let ek = &path[k];
        let rest = tail_from(&path, k).expect("k >= 1");
        let x_rest = Expr::sum(xv.clone(), rest);
        let shaped = Expr::sum(ek.clone(), x_rest.clone());
        let re = sum_equal(b, &current, &shaped)?;
        calc.then_at(b, &TAU_BODY, re)?;
        let back = r4(b, ek, &x_rest)?;
        let back = b.symm(back);
        calc.then(b, back)?;
        let prev = &path[k - 1];
        let pair = Expr::sum(prev.clone(), Expr::tau(ek.clone()));
        let rest_tail = tail_from(&path, k - 1);
        let grouped = Expr::sum(xv.clone(), join(&pair, &rest_tail));
        let cur = Expr::sum(Expr::tau(ek.clone()), x_rest);
        let re = sum_equal(b, &cur, &grouped)?;
        calc.then_at(b, &TAU_BODY, re)?;
        let absorb = summand_move(b, prev, &Action::Tau, ek)?;
        let absorb = b.symm(absorb);
        let pos: &[Position] = if rest_tail.is_some() {
            &[Position::SumR, Position::SumL]
        } else {
            &[Position::SumR]
        };
        calc.then_at(b, &at(pos), absorb)?;
        current = Expr::sum(xv.clone(), join(prev, &rest_tail));
    }
    let re = sum_equal(b, &current, &Expr::sum(xv, e.clone()))?;
    calc.then_at(b, &TAU_BODY, re)?;
    Ok(calc.id())
}
