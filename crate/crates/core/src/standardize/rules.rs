//! The loop rules D1-D6, replayed from the axioms.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::proof::calc::Calc;
use crate::proof::{AxiomId, Builder, Inst, Position};
use crate::syntax::{free_vars, fresh_name, make_loop, Action, Expr, Name};

pub(crate) const PRE: Position = Position::Prefix;
pub(crate) const SL: Position = Position::SumL;
pub(crate) const SR: Position = Position::SumR;
pub(crate) const REC: Position = Position::RecBody;

pub(crate) fn sum(a: &Expr, b: &Expr) -> Expr {
    Expr::sum(a.clone(), b.clone())
}

pub(crate) fn tau(a: &Expr) -> Expr {
    Expr::tau(a.clone())
}

pub(crate) fn var(x: &Name) -> Expr {
    Expr::Var(x.clone())
}

pub(crate) fn rec(x: &Name, body: &Expr) -> Expr {
    Expr::rec_named(x.clone(), body.clone())
}

/// A generated name free in none of `es` and distinct from `extra`.
pub(crate) fn fresh_for(es: &[&Expr], extra: &[&Name]) -> Name {
    let mut avoid = BTreeSet::new();
    for e in es {
        avoid.extend(free_vars(e));
    }
    avoid.extend(extra.iter().map(|n| (*n).clone()));
    fresh_name(&avoid)
}

fn binder(e: &Expr) -> Name {
    match e {
        Expr::Rec(x, _) => x.clone(),
        _ => unreachable!("not a recursion"),
    }
}

fn ax(b: &mut Builder, id: AxiomId, inst: Inst) -> Result<usize> {
    b.axiom(id, inst)
}

fn ax_rev(b: &mut Builder, id: AxiomId, inst: Inst) -> Result<usize> {
    let s = b.axiom(id, inst)?;
    Ok(b.symm(s))
}

/// `e = 0 + e`
pub(crate) fn zero_left(b: &mut Builder, e: &Expr) -> Result<usize> {
    let pad = ax_rev(b, AxiomId::S4, Inst::new().e("E", e.clone()))?;
    let sw = ax(b, AxiomId::S1, Inst::new().e("E", e.clone()).e("F", Expr::Nil))?;
    b.trans(pad, sw)
}

/// D1: `tau* e = tau.tau* e + e`
pub fn d1(b: &mut Builder, e: &Expr) -> Result<usize> {
    let lp = make_loop(e.clone());
    let Expr::Rec(z, body) = &lp else {
        unreachable!()
    };
    ax(b, AxiomId::R1, Inst::new().e("E", (**body).clone()).x("X", z.clone()))
}

/// D2: `tau* e = tau* e + e`
pub fn d2(b: &mut Builder, e: &Expr) -> Result<usize> {
    let lp = make_loop(e.clone());
    let unfold = d1(b, e)?;
    let mut c = Calc::from(unfold);
    let dup = ax_rev(b, AxiomId::S3, Inst::new().e("E", e.clone()))?;
    c.then_at(b, &[SR], dup)?;
    let assoc = ax(
        b,
        AxiomId::S2,
        Inst::new().e("E", tau(&lp)).e("F", e.clone()).e("G", e.clone()),
    )?;
    c.then(b, assoc)?;
    let fold = b.symm(unfold);
    c.then_at(b, &[SL], fold)?;
    c.conclude(b, &sum(&lp, e))
}

/// D3: `rec x.(tau.(x + e) + f) = rec x.(tau.tau*(e + f) + f)`
pub fn d3(b: &mut Builder, x: &Name, e: &Expr, f: &Expr) -> Result<usize> {
    let (xv, y) = (var(x), fresh_for(&[e, f], &[x]));
    let yv = var(&y);
    let ef = sum(e, f);
    let lp = make_loop(ef.clone());
    let inner = sum(&tau(&sum(&xv, e)), f);
    let mut c = Calc::start(b, &rec(x, &inner));

    let vac = ax_rev(b, AxiomId::R1, Inst::new().e("E", inner).x("X", y.clone()))?;
    c.then_at(b, &[REC], vac)?;
    let r8 = ax(
        b,
        AxiomId::R8,
        Inst::new().e("E", e.clone()).e("F", f.clone()).x("X", x.clone()).x("Y", y.clone()),
    )?;
    c.then(b, r8)?;
    let r4 = ax_rev(
        b,
        AxiomId::R4,
        Inst::new().e("E", yv.clone()).e("F", e.clone()).e("G", f.clone()).x("X", y.clone()),
    )?;
    c.then_at(b, &[REC], r4)?;
    let k = sum(&tau(&sum(&tau(&yv), e)), f);
    let unfold = ax(b, AxiomId::R1, Inst::new().e("E", k).x("X", y.clone()))?;
    c.then_at(b, &[REC], unfold)?;

    // tau.rec y.(tau.(tau.y + e) + f) = rec y.tau.(tau.(y + e) + f)
    let at_loop = [REC, SL, PRE, SL];
    let k6 = sum(&tau(&sum(&yv, e)), f);
    let r6 = ax_rev(b, AxiomId::R6, Inst::new().e("E", k6.clone()).x("X", y.clone()))?;
    c.then_at(b, &at_loop, r6)?;
    let body = [REC, SL, PRE, SL, REC];
    let pad = ax_rev(b, AxiomId::S4, Inst::new().e("E", tau(&k6)))?;
    c.then_at(b, &body, pad)?;
    let r4 = ax(
        b,
        AxiomId::R4,
        Inst::new()
            .e("E", sum(&yv, e))
            .e("F", f.clone())
            .e("G", Expr::Nil)
            .x("X", y.clone()),
    )?;
    c.then_at(b, &at_loop, r4)?;
    let unpad = ax(b, AxiomId::S4, Inst::new().e("E", tau(&sum(&sum(&yv, e), f))))?;
    c.then_at(b, &body, unpad)?;
    let assoc = ax_rev(
        b,
        AxiomId::S2,
        Inst::new().e("E", yv.clone()).e("F", e.clone()).e("G", f.clone()),
    )?;
    c.then_at(b, &[REC, SL, PRE, SL, REC, PRE], assoc)?;
    let r6 = ax(b, AxiomId::R6, Inst::new().e("E", sum(&yv, &ef)).x("X", y.clone()))?;
    c.then_at(b, &at_loop, r6)?;

    // tau.(tau.(tau*(e+f) + (e+f)) + e) = tau.(tau*(e+f) + (e+f))
    let at_lp = [REC, SL, PRE, SL, PRE];
    let grow = d2(b, &ef)?;
    c.then_at(b, &at_lp, grow)?;
    let ep = sum(&lp, f);
    c.reshape_at(b, &at_lp, &sum(&ep, e))?;
    let br = ax(
        b,
        AxiomId::B,
        Inst::new().e("E", ep).e("F", e.clone()).a(Action::Tau),
    )?;
    c.then_at(b, &[REC, SL], br)?;
    c.reshape_at(b, &[REC, SL, PRE], &sum(&lp, &ef))?;
    let shrink = b.symm(grow);
    c.then_at(b, &[REC, SL, PRE], shrink)?;
    c.conclude(b, &rec(x, &sum(&tau(&lp), f)))
}

// rec x.(tau.(x + e) + h) = rec x.(tau.((x + k) + (e + g)) + h)
// where h = tau.(x + k) + g.
fn unroll(b: &mut Builder, c: &mut Calc, x: &Name, e: &Expr, k: &Expr, g: &Expr) -> Result<()> {
    let xv = var(x);
    let h = sum(&tau(&sum(&xv, k)), g);
    let eh = sum(e, &h);
    let lp = make_loop(eh.clone());
    let fold = d3(b, x, e, &h)?;
    c.then(b, fold)?;
    let r5 = ax(
        b,
        AxiomId::R5,
        Inst::new()
            .e("E", eh.clone())
            .e("F", h.clone())
            .x("X", x.clone())
            .x("Y", binder(&lp)),
    )?;
    c.then(b, r5)?;
    let vac = ax(b, AxiomId::R1, Inst::new().e("E", eh).x("X", binder(&lp)))?;
    c.then_at(b, &[REC, SL, PRE], vac)?;
    let eg = sum(e, g);
    c.reshape_at(b, &[REC, SL, PRE], &sum(&tau(&sum(&xv, k)), &eg))?;
    let r4 = ax(
        b,
        AxiomId::R4,
        Inst::new()
            .e("E", sum(&xv, k))
            .e("F", eg)
            .e("G", h)
            .x("X", x.clone()),
    )?;
    c.then(b, r4)
}

/// D4: `rec x.(tau.(x + e) + (tau.(x + f) + g)) = rec x.(tau.(x + (e + f)) + g)`
pub fn d4(b: &mut Builder, x: &Name, e: &Expr, f: &Expr, g: &Expr) -> Result<usize> {
    let xv = var(x);
    let h = sum(&tau(&sum(&xv, f)), g);
    let ef = sum(e, f);
    let pp = sum(&ef, g);
    let xp = sum(&xv, &pp);
    let mut c = Calc::start(b, &rec(x, &sum(&tau(&sum(&xv, e)), &h)));

    unroll(b, &mut c, x, e, f, g)?;
    c.reshape_at(b, &[REC, SL, PRE], &xp)?;
    let h2 = sum(&tau(&xp), g);
    c.reshape_at(b, &[REC], &sum(&tau(&sum(&xv, f)), &h2))?;
    unroll(b, &mut c, x, f, &pp, g)?;
    c.reshape_at(b, &[REC, SL, PRE], &xp)?;
    c.reshape_at(b, &[REC], &h2)?;

    let open = d3(b, x, &pp, g)?;
    c.then(b, open)?;
    c.reshape_at(b, &[REC, SL, PRE, REC, SR], &sum(&ef, g))?;
    let close = d3(b, x, &ef, g)?;
    let close = b.symm(close);
    c.then(b, close)?;
    c.conclude(b, &rec(x, &sum(&tau(&sum(&xv, &ef)), g)))
}

// rec y.(tau.(y + e) + f) = rec y.(tau.y + (tau.(y + e) + f))
fn add_spin(b: &mut Builder, y: &Name, e: &Expr, f: &Expr) -> Result<usize> {
    let yv = var(y);
    let mut c = Calc::start(b, &rec(y, &sum(&tau(&sum(&yv, e)), f)));
    c.reshape_at(b, &[REC, SL, PRE], &sum(&yv, &sum(&Expr::Nil, e)))?;
    let split = d4(b, y, &Expr::Nil, e, f)?;
    let split = b.symm(split);
    c.then(b, split)?;
    let trim = ax(b, AxiomId::S4, Inst::new().e("E", yv.clone()))?;
    c.then_at(b, &[REC, SL, PRE], trim)?;
    c.conclude(b, &rec(y, &sum(&tau(&yv), &sum(&tau(&sum(&yv, e)), f))))
}

/// D5: `tau*(tau.tau*(e + f) + f) = tau.tau*(e + f) + f`
pub fn d5(b: &mut Builder, e: &Expr, f: &Expr) -> Result<usize> {
    let lp = make_loop(sum(e, f));
    let t = sum(&tau(&lp), f);
    let start = make_loop(t.clone());
    let x = binder(&start);
    let y = fresh_for(&[e, f], &[&x]);
    let mut c = Calc::start(b, &start);

    let vac = ax_rev(b, AxiomId::R1, Inst::new().e("E", t.clone()).x("X", y.clone()))?;
    c.then_at(b, &[REC, SR], vac)?;
    let open = d3(b, &y, e, f)?;
    let open = b.symm(open);
    c.then_at(b, &[REC, SR], open)?;
    let spin = add_spin(b, &y, e, f)?;
    c.then_at(b, &[REC, SR], spin)?;
    let r7 = ax(
        b,
        AxiomId::R7,
        Inst::new()
            .e("E", sum(&tau(&sum(&var(&y), e)), f))
            .x("X", x.clone())
            .x("Y", y.clone()),
    )?;
    c.then(b, r7)?;
    let unspin = b.symm(spin);
    c.then_at(b, &[REC], unspin)?;
    let close = b.symm(open);
    c.then_at(b, &[REC], close)?;
    let vac = ax(b, AxiomId::R1, Inst::new().e("E", rec(&y, &t)).x("X", x))?;
    c.then(b, vac)?;
    let vac = ax(b, AxiomId::R1, Inst::new().e("E", t.clone()).x("X", y))?;
    c.then(b, vac)?;
    c.conclude(b, &t)
}

/// D6: `tau*(tau* e) = tau* e`
pub fn d6(b: &mut Builder, e: &Expr) -> Result<usize> {
    let lp = make_loop(e.clone());
    let mut c = Calc::start(b, &make_loop(lp.clone()));
    let unfold = d1(b, e)?;
    c.then_at(b, &[REC, SR], unfold)?;
    let pad = zero_left(b, e)?;
    let inner = [REC, SR, SL, PRE, REC, SR];
    c.then_at(b, &inner, pad)?;
    let collapse = d5(b, &Expr::Nil, e)?;
    c.then(b, collapse)?;
    let unpad = b.symm(pad);
    c.then_at(b, &inner[2..], unpad)?;
    let fold = b.symm(unfold);
    c.then(b, fold)?;
    c.conclude(b, &lp)
}
