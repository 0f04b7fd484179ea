//! Proof-producing rewriting of expressions into standard sums.

mod rules;

pub use rules::{d1, d2, d3, d4, d5, d6};

use rules::{rec, sum, tau, var, PRE, REC, SL, SR};

use crate::error::{Error, Result};
use crate::proof::calc::{lift, Calc};
use crate::proof::lemmas;
use crate::proof::sums::canonical_sum;
use crate::proof::{AxiomId, Builder, Derivation, Inst};
use crate::semantics::tau_exposes;
use crate::syntax::{
    as_standard_sum, flatten_sum, is_fully_exposed, is_guarded_expr, is_loop, loop_parts,
    make_loop, occurs_unguarded, sum_list, Action, Expr, Name, SumView,
};

/// An instance of one of the loop rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DRule {
    D1(Expr),
    D2(Expr),
    D3 { x: Name, e: Expr, f: Expr },
    D4 { x: Name, e: Expr, f: Expr, g: Expr },
    D5 { e: Expr, f: Expr },
    D6(Expr),
}

impl DRule {
    /// The equation the rule proves.
    pub fn conclusion(&self) -> (Expr, Expr) {
        match self {
            DRule::D1(e) => {
                let lp = make_loop(e.clone());
                (lp.clone(), sum(&tau(&lp), e))
            }
            DRule::D2(e) => {
                let lp = make_loop(e.clone());
                (lp.clone(), sum(&lp, e))
            }
            DRule::D3 { x, e, f } => (
                rec(x, &sum(&tau(&sum(&var(x), e)), f)),
                rec(x, &sum(&tau(&make_loop(sum(e, f))), f)),
            ),
            DRule::D4 { x, e, f, g } => (
                rec(x, &sum(&tau(&sum(&var(x), e)), &sum(&tau(&sum(&var(x), f)), g))),
                rec(x, &sum(&tau(&sum(&var(x), &sum(e, f))), g)),
            ),
            DRule::D5 { e, f } => {
                let t = sum(&tau(&make_loop(sum(e, f))), f);
                (make_loop(t.clone()), t)
            }
            DRule::D6(e) => {
                let lp = make_loop(e.clone());
                (make_loop(lp.clone()), lp)
            }
        }
    }

    pub(crate) fn prove(&self, b: &mut Builder) -> Result<usize> {
        match self {
            DRule::D1(e) => d1(b, e),
            DRule::D2(e) => d2(b, e),
            DRule::D3 { x, e, f } => d3(b, x, e, f),
            DRule::D4 { x, e, f, g } => d4(b, x, e, f, g),
            DRule::D5 { e, f } => d5(b, e, f),
            DRule::D6(e) => d6(b, e),
        }
    }
}

/// A derivation of the rule instance from the axioms.
pub fn derive_d(rule: &DRule) -> Result<Derivation> {
    let mut b = Builder::new();
    let id = rule.prove(&mut b)?;
    Ok(b.finish(id))
}

fn not_guarded(e: &Expr) -> Error {
    Error::NotGuarded(format!("{e} is not a guarded expression"))
}

fn expose_fully(b: &mut Builder, x: &Name, e: &Expr) -> Result<usize> {
    if !occurs_unguarded(x, e) {
        return Ok(b.refl(e));
    }
    match e {
        Expr::Prefix(a, body) => {
            let p = expose_fully(b, x, body)?;
            Ok(b.cong_prefix(a, p))
        }
        Expr::Sum(l, r) => {
            let pl = expose_fully(b, x, l)?;
            let pr = expose_fully(b, x, r)?;
            b.cong_sum(pl, pr)
        }
        Expr::Rec(y, body) => {
            let p = expose_fully(b, x, body)?;
            let c = b.cong_rec(y, p);
            if is_loop(e) {
                return Ok(c);
            }
            let opened = b.rhs(p).clone();
            let unfold = b.axiom(AxiomId::R1, Inst::new().e("E", opened).x("X", y.clone()))?;
            b.trans(c, unfold)
        }
        Expr::Nil | Expr::Var(_) => Ok(b.refl(e)),
    }
}

/// A guarded expression provably equal to `e` in which `x` is fully
/// exposed. Guarded recursions with unguarded occurrences of `x` are
/// unfolded once.
pub fn fully_expose(x: &Name, e: &Expr) -> Result<(Expr, Derivation)> {
    if !is_guarded_expr(e) {
        return Err(not_guarded(e));
    }
    let mut b = Builder::new();
    let id = expose_fully(&mut b, x, e)?;
    Ok((b.rhs(id).clone(), b.finish(id)))
}

pub(crate) fn fully_expose_in(b: &mut Builder, x: &Name, e: &Expr) -> Result<usize> {
    expose_fully(b, x, e)
}

fn exposed_fail(x: &Name, e: &Expr) -> Error {
    Error::SideCondition {
        axiom: "Exposed".into(),
        detail: format!("{e} does not silently expose {x} through loops only"),
    }
}

// A loop rewritten as `rec y.(tau.y + rest)` exactly.
fn exact_loop(b: &mut Builder, e: &Expr) -> Result<usize> {
    if loop_parts(e).is_some() {
        return Ok(b.refl(e));
    }
    let Expr::Rec(y, body) = e else {
        return Err(Error::internal(format!("{e} is not a loop")));
    };
    let leaves = flatten_sum(body);
    let target = sum(&leaves[0], &sum_list(leaves[1..].to_vec()));
    let id = crate::proof::sums::sum_equal(b, body, &target)?;
    Ok(b.cong_rec(y, id))
}

// rec x.(tau.e + f) = rec x.(tau.(x + e1) + f) with x guarded in e1.
fn exposed(b: &mut Builder, x: &Name, e: &Expr, f: &Expr) -> Result<(Expr, usize)> {
    let xv = var(x);
    let start = rec(x, &sum(&tau(e), f));
    let mut c = Calc::start(b, &start);
    match e {
        Expr::Var(y) if y == x => {
            let pad = b.axiom(AxiomId::S4, Inst::new().e("E", xv))?;
            let pad = b.symm(pad);
            let id = lift(b, &start, &[REC, SL, PRE], pad)?;
            Ok((Expr::Nil, id))
        }
        Expr::Prefix(Action::Tau, inner) => {
            let t1 = lemmas::t1(b, &Action::Tau, inner)?;
            c.then_at(b, &[REC, SL], t1)?;
            let (e1, rest) = exposed(b, x, inner, f)?;
            c.then(b, rest)?;
            Ok((e1, c.id()))
        }
        Expr::Sum(l, r) => {
            let grow = lemmas::d0(b, e, f, x)?;
            c.then(b, grow)?;
            let split = d4(b, x, l, r, f)?;
            let split = b.symm(split);
            c.then(b, split)?;
            let l1 = expose_branch(b, &mut c, x, l, &sum(&tau(&sum(&xv, r)), f))?;
            let swapped = sum(&tau(&sum(&xv, r)), &sum(&tau(&sum(&xv, &l1)), f));
            c.reshape_at(b, &[REC], &swapped)?;
            let r1 = expose_branch(b, &mut c, x, r, &sum(&tau(&sum(&xv, &l1)), f))?;
            let merge = d4(b, x, &r1, &l1, f)?;
            c.then(b, merge)?;
            let sw = b.axiom(AxiomId::S1, Inst::new().e("E", r1.clone()).e("F", l1.clone()))?;
            c.then_at(b, &[REC, SL, PRE, SR], sw)?;
            Ok((sum(&l1, &r1), c.id()))
        }
        Expr::Rec(..) if is_loop(e) => {
            let norm = exact_loop(b, e)?;
            c.then_at(b, &[REC, SL, PRE], norm)?;
            let lp = b.rhs(norm).clone();
            let (y, body) = loop_parts(&lp).ok_or_else(|| exposed_fail(x, e))?;
            let (y, body) = (y.clone(), body.clone());
            let r5 = b.axiom(
                AxiomId::R5,
                Inst::new()
                    .e("E", body.clone())
                    .e("F", f.clone())
                    .x("X", x.clone())
                    .x("Y", y.clone()),
            )?;
            c.then(b, r5)?;
            let vac = b.axiom(AxiomId::R1, Inst::new().e("E", body.clone()).x("X", y))?;
            c.then_at(b, &[REC, SL, PRE], vac)?;
            let (e1, rest) = exposed(b, x, &body, f)?;
            c.then(b, rest)?;
            Ok((e1, c.id()))
        }
        _ => Err(exposed_fail(x, e)),
    }
}

// From rec x.(tau.(x + part) + rest), removes the silent exposure of `x`
// from `part` when there is one. Returns the new `part`.
fn expose_branch(b: &mut Builder, c: &mut Calc, x: &Name, part: &Expr, rest: &Expr) -> Result<Expr> {
    if !tau_exposes(x, part)? {
        return Ok(part.clone());
    }
    let back = lemmas::d0(b, part, rest, x)?;
    let back = b.symm(back);
    c.then(b, back)?;
    let (p1, id) = exposed(b, x, part, rest)?;
    c.then(b, id)?;
    Ok(p1)
}

/// Given `e` that silently exposes `x` through loops only, finds `e1` with
/// `x` guarded in it and proves `rec x.(tau.e + f) = rec x.(tau.(x + e1) + f)`.
pub fn expose_to_summand(x: &Name, e: &Expr, f: &Expr) -> Result<(Expr, Derivation)> {
    if !is_guarded_expr(e) {
        return Err(not_guarded(e));
    }
    if !tau_exposes(x, e)? || !is_fully_exposed(x, e) {
        return Err(exposed_fail(x, e));
    }
    let mut b = Builder::new();
    let (e1, id) = exposed(&mut b, x, e, f)?;
    Ok((e1, b.finish(id)))
}

// Right-nested `items` followed by `g`.
fn spine(items: &[Expr], g: &Expr) -> Expr {
    items.iter().rev().fold(g.clone(), |acc, it| sum(it, &acc))
}

fn normal(b: &mut Builder, e: &Expr) -> Result<usize> {
    match e {
        Expr::Nil | Expr::Var(_) => Ok(b.refl(e)),
        Expr::Prefix(a, body) => {
            if is_guarded_expr(body) {
                return Ok(b.refl(e));
            }
            let p = normal(b, body)?;
            Ok(b.cong_prefix(a, p))
        }
        Expr::Sum(l, r) => {
            let pl = normal(b, l)?;
            let pr = normal(b, r)?;
            let both = b.cong_sum(pl, pr)?;
            let mut c = Calc::from(both);
            let target = canonical_sum(c.current(b));
            c.reshape_at(b, &[], &target)?;
            Ok(c.id())
        }
        Expr::Rec(x, body) => normal_rec(b, x, body),
    }
}

fn normal_rec(b: &mut Builder, x: &Name, body: &Expr) -> Result<usize> {
    let xv = var(x);
    let mut c = Calc::start(b, &rec(x, body));
    let inner = normal(b, body)?;
    c.then_at(b, &[REC], inner)?;
    let s = c.current(b).clone();
    let Expr::Rec(_, s) = &s else {
        return Err(Error::internal("lost the recursion"));
    };

    let mut loops = Vec::new();
    let mut others = Vec::new();
    let mut has_x = false;
    for leaf in flatten_sum(s) {
        match &leaf {
            Expr::Var(y) if y == x => has_x = true,
            Expr::Prefix(Action::Tau, h) if occurs_unguarded(x, h) => loops.push((**h).clone()),
            Expr::Nil => {}
            _ => others.push(leaf),
        }
    }
    let g = sum_list(others);
    let mut items: Vec<Expr> = loops.iter().map(tau).collect();
    let form = spine(&items, &g);
    if has_x {
        c.reshape_at(b, &[REC], &sum(&xv, &form))?;
        let r3 = b.axiom(AxiomId::R3, Inst::new().e("E", form.clone()).x("X", x.clone()))?;
        c.then(b, r3)?;
    } else {
        c.reshape_at(b, &[REC], &form)?;
    }

    if !loops.is_empty() {
        // make x fully exposed in every silent summand
        let mut path = vec![REC];
        for item in items.iter_mut() {
            let Expr::Prefix(_, h) = &*item else { unreachable!() };
            let p = fully_expose_in(b, x, h)?;
            let mut at = path.clone();
            at.extend([SL, PRE]);
            c.then_at(b, &at, p)?;
            *item = tau(b.rhs(p));
            path.push(SR);
        }
        // rec x.(tau.(x + e1) + (tau.(x + e2) + ... + g))
        let k = items.len();
        let mut parts = Vec::with_capacity(k);
        for _ in 0..k {
            let Expr::Prefix(_, h) = &items[0] else { unreachable!() };
            let h = (**h).clone();
            let rest = spine(&items[1..], &g);
            let (h1, id) = exposed(b, x, &h, &rest)?;
            c.then(b, id)?;
            parts.push(h1.clone());
            items[0] = tau(&sum(&xv, &h1));
            items.rotate_left(1);
            c.reshape_at(b, &[REC], &spine(&items, &g))?;
        }
        // merge into rec x.(tau.(x + m) + g)
        let mut m = parts[0].clone();
        for (i, p) in parts.iter().enumerate().skip(1) {
            let rest = spine(&items[i + 1..], &g);
            let merge = d4(b, x, &m, p, &rest)?;
            c.then(b, merge)?;
            m = sum(&m, p);
        }
        let close = d3(b, x, &m, &g)?;
        c.then(b, close)?;
    }

    let folded = c.current(b).clone();
    let Expr::Rec(_, body) = &folded else {
        return Err(Error::internal("lost the recursion"));
    };
    let unfold = b.axiom(AxiomId::R1, Inst::new().e("E", (**body).clone()).x("X", x.clone()))?;
    c.then(b, unfold)?;
    let target = canonical_sum(c.current(b));
    c.reshape_at(b, &[], &target)?;
    Ok(c.id())
}

/// Proves `e` equal to a standard sum, returned both as a view and through
/// the derivation's right-hand side.
pub fn standardize(e: &Expr) -> Result<(SumView, Derivation)> {
    let mut b = Builder::new();
    let id = normal(&mut b, e)?;
    let s = b.rhs(id).clone();
    let view = as_standard_sum(&s)
        .ok_or_else(|| Error::internal(format!("{s} is not a standard sum")))?;
    Ok((view, b.finish(id)))
}

pub(crate) fn standardize_in(b: &mut Builder, e: &Expr) -> Result<usize> {
    normal(b, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::rooted_equal;
    use crate::proof::check;
    use crate::semantics::DEFAULT_BUDGET;
    use crate::syntax::parse_expr;

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    fn verified(d: &Derivation, l: &Expr, r: &Expr) {
        check(d).unwrap();
        assert_eq!(d.conclusion().unwrap(), (l, r));
        assert_eq!(rooted_equal(l, r, DEFAULT_BUDGET).unwrap(), None, "{l} vs {r}");
    }

    #[test]
    fn loop_rules() {
        let x: Name = "X".into();
        let rules = [
            DRule::D1(p("a.0")),
            DRule::D2(p("a.0 + b.X")),
            DRule::D3 { x: x.clone(), e: p("a.X"), f: p("b.0") },
            DRule::D3 { x: "_g0".into(), e: p("a._g0"), f: p("0") },
            DRule::D4 { x: x.clone(), e: p("a.0"), f: p("b.X"), g: p("c.0") },
            DRule::D5 { e: p("a.0"), f: p("b.0") },
            DRule::D6(p("a.0")),
            DRule::D6(p("tau.X + b.0")),
        ];
        for r in rules {
            let d = derive_d(&r).unwrap_or_else(|e| panic!("{r:?}: {e}"));
            let (l, rr) = r.conclusion();
            verified(&d, &l, &rr);
        }
        assert_eq!(DRule::D1(p("a.0")).conclusion().1, p("tau.tau* a.0 + a.0"));
        assert_eq!(DRule::D6(p("a.0")).conclusion(), (p("tau* tau* a.0"), p("tau* a.0")));
    }

    #[test]
    fn fully_exposing() {
        let x: Name = "X".into();
        let e = p("tau.rec Y.(tau.X + a.Y)");
        let (e1, d) = fully_expose(&x, &e).unwrap();
        assert_eq!(e1, p("tau.(tau.X + a.rec Y.(tau.X + a.Y))"));
        verified(&d, &e, &e1);
        let e = p("a.0 + b.Y");
        let (e1, d) = fully_expose(&x, &e).unwrap();
        assert_eq!(e1, e);
        check(&d).unwrap();
        let e = p("tau* (tau.rec Y. (X + a.Y))");
        let (e1, d) = fully_expose(&x, &e).unwrap();
        assert!(is_fully_exposed("X", &e1) && is_guarded_expr(&e1));
        verified(&d, &e, &e1);
        assert!(fully_expose(&x, &p("rec Y. tau.Y")).is_err());
    }

    #[test]
    fn exposing_to_summand() {
        let x: Name = "X".into();
        let f = p("b.0");
        for (e, e1) in [
            ("X", "0"),
            ("tau.X", "0"),
            ("tau.(X + a.0)", "0 + a.0"),
            ("a.0 + tau.X", "a.0 + 0"),
            ("tau* (c.0 + X)", "c.0 + 0"),
        ] {
            let (got, d) = expose_to_summand(&x, &p(e), &f).unwrap();
            assert_eq!(got, p(e1), "{e}");
            let l = rec(&x, &sum(&tau(&p(e)), &f));
            let r = rec(&x, &sum(&tau(&sum(&var(&x), &got)), &f));
            verified(&d, &l, &r);
        }
        assert!(expose_to_summand(&x, &p("a.X"), &f).is_err());
        assert!(expose_to_summand(&x, &p("tau.rec Y.(tau.X + a.Y)"), &f).is_err());
    }

    #[test]
    fn standard_sums() {
        for (e, expect) in [
            ("a.0", Some("a.0")),
            ("X", Some("X")),
            ("0", Some("0")),
            ("b.0 + a.0 + b.0", Some("a.0 + b.0")),
            ("rec X.(tau.X + a.0)", None),
            ("rec X. (X + a.X)", None),
            ("rec X. tau.X", None),
            ("rec X. tau.(X + a.0) + b.X", None),
            ("a.rec X. (tau.X + tau.tau.X)", None),
            ("rec X. tau.rec Y.(tau.X + a.Y)", None),
            ("rec X. (tau.(X + rec Y. (tau.Y + c.X)) + tau.(tau.X + d.0) + W)", None),
        ] {
            let e = p(e);
            let (view, d) = standardize(&e).unwrap_or_else(|err| panic!("{e}: {err}"));
            let s = view.to_expr();
            verified(&d, &e, &s);
            if let Some(x) = expect {
                assert_eq!(s, p(x));
            }
        }
    }
}
