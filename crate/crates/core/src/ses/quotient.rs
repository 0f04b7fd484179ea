//! The equivalence a standard system induces on its formals, and the
//! quotient system it yields.

use std::collections::{BTreeMap, BTreeSet};

use super::solve::{solve_in, SolveOrder};
use super::subst::{ending, starting};
use super::system::{Family, SesSystem, Shape};
use crate::equiv::{bisimilarity, Kind, Partition};
use crate::error::{Error, Result};
use crate::proof::calc::Calc;
use crate::proof::lemmas::t1;
use crate::proof::sums::sum_equal;
use crate::proof::{AxiomId, Builder, Inst, Position};
use crate::semantics::Lts;
use crate::standardize::{d2, d5};
use crate::syntax::{fresh_name_with_prefix, make_loop, substitute, Action, Expr, Name, SumView};

/// Formals as states: `a.Y` summands become transitions, loops add a silent
/// self-loop, and bare summands become exposures.
pub fn ses_semantics(s: &SesSystem) -> Lts {
    let mut lts = Lts::with_states(s.len());
    for (i, x) in s.formals.iter().enumerate() {
        let sh = &s.shape[x];
        for (a, body) in &sh.view().prefixed {
            if let Some(j) = body.as_var().and_then(|y| s.index_of(y)) {
                lts.add_transition(i, a.clone(), j);
            }
        }
        if sh.is_loop() {
            lts.add_transition(i, Action::Tau, i);
        }
        lts.exposure[i] = sh.view().vars.iter().cloned().collect();
        lts.labels[i] = x.to_string();
    }
    lts
}

/// Classes of the induced equivalence, indexed like `s.formals`.
pub fn formal_classes(s: &SesSystem) -> Partition {
    bisimilarity(&ses_semantics(s), Kind::Dpbb)
}

fn class(s: &SesSystem, p: &Partition, x: &str) -> usize {
    p.class_of[s.index_of(x).expect("formal")]
}

/// No silent summand of `x` leads back into its class.
pub fn is_bottom(s: &SesSystem, p: &Partition, x: &Name) -> bool {
    let c = class(s, p, x);
    s.silent_successors(x).iter().all(|y| class(s, p, y) != c)
}

/// The least bottom formal of every class.
pub fn bottom_variables(s: &SesSystem, p: &Partition) -> Result<Vec<Name>> {
    p.classes()
        .into_iter()
        .map(|members| {
            members
                .iter()
                .map(|&i| &s.formals[i])
                .find(|x| is_bottom(s, p, x))
                .cloned()
                .ok_or_else(|| Error::NotGuarded(format!("no bottom formal among {members:?}")))
        })
        .collect()
}

/// `(F⁰, F¹)`: the silent summands into the class of `x`, and the rest.
pub fn derivatives(s: &SesSystem, p: &Partition, x: &Name) -> (SumView, SumView) {
    let c = class(s, p, x);
    let v = s.shape[x].view();
    let (inner, outer): (Vec<_>, Vec<_>) = v.prefixed.iter().cloned().partition(|(a, body)| {
        a.is_tau() && body.as_var().is_some_and(|y| class(s, p, y) == c)
    });
    (SumView::new(inner, vec![]), SumView::new(outer, v.vars.clone()))
}

/// The quotient system over fresh formals, one per class.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub system: SesSystem,
    /// The formal of the quotient standing for each original formal.
    pub iota: BTreeMap<Name, Name>,
    /// The bottom formal chosen for each quotient formal.
    pub bottom: BTreeMap<Name, Name>,
}

fn rename_view(v: &SumView, map: &BTreeMap<Name, Name>) -> SumView {
    SumView::new(
        v.prefixed
            .iter()
            .map(|(a, body)| match body.as_var().and_then(|y| map.get(y)) {
                Some(z) => (a.clone(), Expr::Var(z.clone())),
                None => (a.clone(), body.clone()),
            })
            .collect(),
        v.vars.clone(),
    )
}

pub fn quotient(s: &SesSystem) -> Result<(Quotient, Partition)> {
    let p = formal_classes(s);
    let bottoms = bottom_variables(s, &p)?;
    let mut avoid: BTreeSet<Name> = s.formals.iter().cloned().collect();
    for sh in s.shape.values() {
        avoid.extend(sh.view().vars.iter().cloned());
    }
    let mut zs = Vec::new();
    for _ in &bottoms {
        let z = fresh_name_with_prefix("_q", &avoid);
        avoid.insert(z.clone());
        zs.push(z);
    }
    let iota: BTreeMap<Name, Name> = s
        .formals
        .iter()
        .enumerate()
        .map(|(i, x)| (x.clone(), zs[p.class_of[i]].clone()))
        .collect();
    let mut system = SesSystem::default();
    let mut bottom = BTreeMap::new();
    for (z, xb) in zs.iter().zip(&bottoms) {
        let shape = match &s.shape[xb] {
            Shape::Plain(v) => Shape::Plain(rename_view(v, &iota)),
            Shape::Loop(v) => Shape::Loop(rename_view(v, &iota)),
        };
        system.formals.push(z.clone());
        system.shape.insert(z.clone(), shape);
        bottom.insert(z.clone(), xb.clone());
    }
    Ok((Quotient { system, iota, bottom }, p))
}

/// `F_x{map} = F_x{tau.map}`, one summand at a time with T1.
pub(crate) fn t1_lift(b: &mut Builder, s: &SesSystem, x: &Name, map: &BTreeMap<Name, Expr>) -> Result<usize> {
    fn go(b: &mut Builder, e: &Expr, map: &BTreeMap<Name, Expr>) -> Result<usize> {
        match e {
            Expr::Prefix(a, body) => match body.as_var().and_then(|y| map.get(y)) {
                Some(d) => {
                    let p = t1(b, a, d)?;
                    Ok(b.symm(p))
                }
                None => Ok(b.refl(e)),
            },
            Expr::Sum(l, r) => {
                let pl = go(b, l, map)?;
                let pr = go(b, r, map)?;
                b.cong_sum(pl, pr)
            }
            Expr::Rec(z, body) => {
                let p = go(b, body, map)?;
                Ok(b.cong_rec(z, p))
            }
            _ => Ok(b.refl(e)),
        }
    }
    let f = s.shape[x].to_expr();
    let id = go(b, &f, map)?;
    let id = starting(b, &substitute(&f, map), id)?;
    let taus: BTreeMap<Name, Expr> = map.iter().map(|(y, d)| (y.clone(), Expr::tau(d.clone()))).collect();
    ending(b, id, &substitute(&f, &taus))
}

/// `tau*k = tau*k + f` when the summands of `f` are among those of `k`.
pub(crate) fn loop_absorb(b: &mut Builder, k: &Expr, f: &Expr) -> Result<usize> {
    let lp = make_loop(k.clone());
    let unf = d2(b, k)?;
    let both = Expr::sum(lp.clone(), k.clone());
    let re = sum_equal(b, &both, &Expr::sum(both.clone(), f.clone()))?;
    let back = b.symm(unf);
    let back = b.cong_suml(back, f);
    b.chain(&[unf, re, back])
}

const PRE: Position = Position::Prefix;
const SL: Position = Position::SumL;
const SR: Position = Position::SumR;
const REC: Position = Position::RecBody;

fn sum(a: &Expr, c: &Expr) -> Expr {
    Expr::sum(a.clone(), c.clone())
}

/// Proof material for a system and a substitution of solutions for its
/// formals: instances of right-hand sides and derivatives.
struct Inst0<'s> {
    s: &'s SesSystem,
    p: &'s Partition,
    sigma: BTreeMap<Name, Expr>,
}

impl Inst0<'_> {
    fn at(&self, e: &Expr) -> Expr {
        substitute(e, &self.sigma)
    }

    // The instance of `F_x` in exact form: a sum, or `tau*` of one.
    fn f(&self, x: &Name) -> Expr {
        match &self.s.shape[x] {
            Shape::Plain(v) => self.at(&v.to_expr()),
            Shape::Loop(v) => make_loop(self.at(&v.to_expr())),
        }
    }

    fn body(&self, x: &Name) -> Expr {
        self.at(&self.s.shape[x].view().to_expr())
    }

    fn d0(&self, x: &Name) -> Expr {
        self.at(&derivatives(self.s, self.p, x).0.to_expr())
    }

    fn d1(&self, x: &Name) -> Expr {
        self.at(&derivatives(self.s, self.p, x).1.to_expr())
    }
}

/// `tau.F_x{B} = tau.F_xi{B}` for `x` in the class of the bottom formal `xi`,
/// where `q2` proves `B_i = F_xi{B}`.
fn same_class(b: &mut Builder, m: &Inst0, x: &Name, xi: &Name, bi: &Expr, q2: usize) -> Result<usize> {
    let (fx, fi) = (m.f(x), m.f(xi));
    let (f1x, f1i) = (m.d1(x), m.d1(xi));
    let mut c = Calc::start(b, &Expr::tau(fx));
    let looped = m.s.shape[x].is_loop();
    let bottom = is_bottom(m.s, m.p, x);
    match (bottom, looped) {
        (true, false) | (true, true) => {
            let path: &[Position] = if looped { &[PRE, REC, SR] } else { &[PRE] };
            let (d0x, d0i) = (m.d0(x), m.d0(xi));
            for target in [
                sum(&d0x, &f1x),
                f1x.clone(),
                sum(&f1x, &f1i),
                f1i.clone(),
                sum(&d0i, &f1i),
                m.body(xi),
            ] {
                c.reshape_at(b, path, &target)?;
            }
        }
        (false, true) => {
            let (e, f) = (f1i.clone(), f1x.clone());
            let body = [PRE, REC, SR];
            c.reshape_at(b, &body, &sum(&m.d0(x), &f))?;
            c.reshape_at(b, &body, &sum(&Expr::tau(bi.clone()), &f))?;
            c.then_at(b, &[PRE, REC, SR, SL, PRE], q2)?;
            let inner = [PRE, REC, SR, SL, PRE, REC, SR];
            c.reshape_at(b, &inner, &sum(&m.d0(xi), &e))?;
            c.reshape_at(b, &inner, &e)?;
            c.reshape_at(b, &inner, &sum(&e, &f))?;
            let spin = d5(b, &e, &f)?;
            c.then_at(b, &[PRE], spin)?;
            let ef = sum(&e, &f);
            let grow = loop_absorb(b, &ef, &f)?;
            c.then_at(b, &[PRE, SL, PRE], grow)?;
            let br = b.axiom(
                AxiomId::B,
                Inst::new().e("E", make_loop(ef.clone())).e("F", f.clone()).a(Action::Tau),
            )?;
            c.then(b, br)?;
            let shrink = loop_absorb(b, &ef, &f)?;
            let shrink = b.symm(shrink);
            c.then_at(b, &[PRE], shrink)?;
            c.reshape_at(b, &[PRE, REC, SR], &e)?;
            c.reshape_at(b, &[PRE, REC, SR], &sum(&m.d0(xi), &e))?;
            c.reshape_at(b, &[PRE, REC, SR], &m.body(xi))?;
        }
        (false, false) => {
            let f = f1x.clone();
            c.reshape_at(b, &[PRE], &sum(&m.d0(x), &f))?;
            c.reshape_at(b, &[PRE], &sum(&Expr::tau(bi.clone()), &f))?;
            c.then_at(b, &[PRE, SL, PRE], q2)?;
            let i_loop = m.s.shape[xi].is_loop();
            let grow = if i_loop {
                loop_absorb(b, &m.body(xi), &f1i)?
            } else {
                sum_equal(b, &fi, &sum(&fi, &f1i))?
            };
            c.then_at(b, &[PRE, SL, PRE], grow)?;
            let a = sum(&fi, &f1i);
            c.reshape_at(b, &[PRE, SL, PRE], &sum(&a, &f))?;
            let br = b.axiom(
                AxiomId::B,
                Inst::new().e("E", a.clone()).e("F", f.clone()).a(Action::Tau),
            )?;
            c.then(b, br)?;
            if i_loop {
                let rest = sum(&f1i, &f);
                c.reshape_at(b, &[PRE], &sum(&fi, &rest))?;
                let shrink = loop_absorb(b, &m.body(xi), &rest)?;
                let shrink = b.symm(shrink);
                c.then_at(b, &[PRE], shrink)?;
            } else {
                c.reshape_at(b, &[PRE], &fi)?;
            }
        }
    }
    c.conclude(b, &Expr::tau(fi))
}

/// Solves the quotient and proves that `tau.B_ι(X)` solves `tau(s)` for
/// every formal `X` of `s`.
pub(crate) fn common_solution(
    b: &mut Builder,
    s: &SesSystem,
    order: SolveOrder,
) -> Result<(Quotient, Partition, Family)> {
    let (q, p) = quotient(s)?;
    let bq = solve_in(b, &q.system.to_system(), order)?;
    let sigma: BTreeMap<Name, Expr> = s
        .formals
        .iter()
        .map(|x| (x.clone(), bq.sols[&q.iota[x]].clone()))
        .collect();
    let m = Inst0 { s, p: &p, sigma };

    // B_i = F_xi{B}
    let mut q2 = BTreeMap::new();
    for (z, xi) in &q.bottom {
        let pz = bq.proofs[z];
        let id = match &q.system.shape[z] {
            Shape::Plain(_) => {
                let mid = b.rhs(pz).clone();
                let re = sum_equal(b, &mid, &m.f(xi))?;
                b.trans(pz, re)?
            }
            Shape::Loop(v) => {
                let inner = substitute(&v.to_expr(), &bq.sols);
                let pz = ending(b, pz, &make_loop(inner))?;
                let mut c = Calc::from(pz);
                c.reshape_at(b, &[REC, SR], &m.body(xi))?;
                c.conclude(b, &m.f(xi))?
            }
        };
        q2.insert(z.clone(), id);
    }

    let mut fam = Family::default();
    let taus: BTreeMap<Name, Expr> = m.sigma.iter().map(|(y, d)| (y.clone(), Expr::tau(d.clone()))).collect();
    for x in &s.formals {
        let z = &q.iota[x];
        let xi = &q.bottom[z];
        let bi = bq.sols[z].clone();
        let first = b.cong_prefix(&Action::Tau, q2[z]);
        let case = same_class(b, &m, x, xi, &bi, q2[z])?;
        let back = b.symm(case);
        let lift = t1_lift(b, s, x, &m.sigma)?;
        let lift = starting(b, &m.f(x), lift)?;
        let lift = b.cong_prefix(&Action::Tau, lift);
        let id = b.chain(&[first, back, lift])?;
        let target = Expr::tau(substitute(&s.shape[x].to_expr(), &taus));
        let id = ending(b, id, &target)?;
        fam.sols.insert(x.clone(), Expr::tau(bi));
        fam.proofs.insert(x.clone(), id);
    }
    Ok((q, p, fam))
}
