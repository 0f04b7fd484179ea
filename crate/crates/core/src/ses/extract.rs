//! Standard equation systems solved by a given guarded expression.

use std::collections::{BTreeMap, BTreeSet};

use super::subst::ending;
use super::system::{Family, SesSystem, Shape};
use crate::error::{Error, Result};
use crate::proof::{alpha_proof, AxiomId, Builder, Inst, Position};
use crate::proof::calc::Calc;
use crate::proof::sums::sum_equal;
use crate::standardize::d1;
use crate::standardize::d6;
use crate::syntax::{
    all_names, flatten_sum, free_vars, fresh_name_with_prefix, is_guarded_expr, is_guarded_in, is_loop,
    make_loop, substitute, substitute_one, sum_list, Action, Expr, Name, SumView,
};

/// Renames every binder of `e` to a distinct `<prefix>N` name outside `avoid`.
pub(crate) fn rename_apart(e: &Expr, prefix: &str, avoid: &mut BTreeSet<Name>) -> Expr {
    match e {
        Expr::Nil | Expr::Var(_) => e.clone(),
        Expr::Prefix(a, b) => Expr::prefix(a.clone(), rename_apart(b, prefix, avoid)),
        Expr::Sum(l, r) => Expr::sum(rename_apart(l, prefix, avoid), rename_apart(r, prefix, avoid)),
        Expr::Rec(x, b) => {
            let z = fresh_name_with_prefix(prefix, avoid);
            avoid.insert(z.clone());
            let body = substitute_one(b, x, &Expr::Var(z.clone()));
            Expr::rec_named(z, rename_apart(&body, prefix, avoid))
        }
    }
}

pub(crate) struct Extractor<'a> {
    pub b: &'a mut Builder,
    pub avoid: BTreeSet<Name>,
    pub prefix: &'static str,
    pub sys: SesSystem,
    pub fam: Family,
}

fn union(a: &SumView, c: &SumView) -> SumView {
    SumView::new(
        a.prefixed.iter().chain(&c.prefixed).cloned().collect(),
        a.vars.iter().chain(&c.vars).cloned().collect(),
    )
}

impl<'a> Extractor<'a> {
    pub fn new(b: &'a mut Builder, avoid: BTreeSet<Name>, prefix: &'static str) -> Extractor<'a> {
        Extractor {
            b,
            avoid,
            prefix,
            sys: SesSystem::default(),
            fam: Family::default(),
        }
    }

    /// Adds the equations of a system solved by `e` and returns the formal
    /// that `e` itself solves for.
    pub fn extract(&mut self, e: &Expr) -> Result<Name> {
        if !is_guarded_expr(e) {
            return Err(Error::NotGuarded(format!("{e}")));
        }
        let mut names = all_names(e);
        names.extend(self.avoid.iter().cloned());
        let renamed = rename_apart(e, "_b", &mut names);
        self.avoid.extend(names);
        let root = self.go(&renamed, &BTreeMap::new())?;
        if &renamed == e {
            return Ok(root);
        }
        let shape = self.sys.shape[&root].clone();
        let bridge = alpha_proof(self.b, e, &renamed)?;
        let p = self.b.trans(bridge, self.fam.proofs[&root])?;
        Ok(self.add(shape, e.clone(), p))
    }

    fn fresh(&mut self) -> Name {
        let x = fresh_name_with_prefix(self.prefix, &self.avoid);
        self.avoid.insert(x.clone());
        x
    }

    fn add(&mut self, shape: Shape, sol: Expr, proof: usize) -> Name {
        let x = self.fresh();
        self.sys.formals.push(x.clone());
        self.sys.shape.insert(x.clone(), shape);
        self.fam.sols.insert(x.clone(), sol);
        self.fam.proofs.insert(x.clone(), proof);
        x
    }

    /// `e` with formals replaced by their solutions and bound variables by
    /// their environment entries.
    pub fn inst(&self, e: &Expr, rho: &BTreeMap<Name, Expr>) -> Expr {
        let map: BTreeMap<Name, Expr> = free_vars(e)
            .into_iter()
            .filter_map(|v| {
                let val = self.fam.sols.get(&v).or_else(|| rho.get(&v))?;
                Some((v, val.clone()))
            })
            .collect();
        substitute(e, &map)
    }

    /// Summands `S` of the equation of `y`, with a loop unrolled once into
    /// `tau.y + body`, and a proof of `sol_y = S{sol}`.
    fn part(&mut self, y: &Name, rho: &BTreeMap<Name, Expr>) -> Result<(SumView, usize)> {
        let p = self.fam.proofs[y];
        match self.sys.shape[y].clone() {
            Shape::Plain(v) => Ok((v, p)),
            Shape::Loop(v) => {
                let k = self.inst(&v.to_expr(), rho);
                let p2 = ending(self.b, p, &make_loop(k.clone()))?;
                let unfold = d1(self.b, &k)?;
                let back = self.b.symm(p2);
                let back = self.b.cong_prefix(&Action::Tau, back);
                let back = self.b.cong_suml(back, &k);
                let id = self.b.chain(&[p2, unfold, back])?;
                let leaves = union(&v, &SumView::new(vec![(Action::Tau, Expr::Var(y.clone()))], vec![]));
                Ok((leaves, id))
            }
        }
    }

    fn go(&mut self, e: &Expr, rho: &BTreeMap<Name, Expr>) -> Result<Name> {
        match e {
            Expr::Nil => {
                let p = self.b.refl(e);
                Ok(self.add(Shape::Plain(SumView::default()), Expr::Nil, p))
            }
            Expr::Var(w) => {
                let sol = rho.get(w).cloned().unwrap_or_else(|| e.clone());
                let p = self.b.refl(&sol);
                Ok(self.add(Shape::Plain(SumView::new(vec![], vec![w.clone()])), sol, p))
            }
            Expr::Prefix(a, body) => {
                let x1 = self.go(body, rho)?;
                let sol = Expr::prefix(a.clone(), self.fam.sols[&x1].clone());
                let p = self.b.refl(&sol);
                let view = SumView::new(vec![(a.clone(), Expr::Var(x1))], vec![]);
                Ok(self.add(Shape::Plain(view), sol, p))
            }
            Expr::Sum(l, r) => {
                let xl = self.go(l, rho)?;
                let xr = self.go(r, rho)?;
                let (vl, pl) = self.part(&xl, rho)?;
                let (vr, pr) = self.part(&xr, rho)?;
                let view = union(&vl, &vr);
                let sol = Expr::sum(self.fam.sols[&xl].clone(), self.fam.sols[&xr].clone());
                let both = self.b.cong_sum(pl, pr)?;
                let mid = self.b.rhs(both).clone();
                let target = self.inst(&view.to_expr(), rho);
                let re = sum_equal(self.b, &mid, &target)?;
                let p = self.b.trans(both, re)?;
                Ok(self.add(Shape::Plain(view), sol, p))
            }
            Expr::Rec(_, body) if is_loop(e) => self.go_loop(e, body, rho),
            Expr::Rec(w, body) => {
                if !is_guarded_in(w, body) {
                    return Err(Error::NotGuarded(format!("{e}")));
                }
                self.go_rec(e, w, body, rho)
            }
        }
    }

    fn go_loop(&mut self, e: &Expr, body: &Expr, rho: &BTreeMap<Name, Expr>) -> Result<Name> {
        let leaves = flatten_sum(body);
        let inner = sum_list(leaves[1..].to_vec());
        let x1 = self.go(&inner, rho)?;
        let sol = substitute(e, rho);
        let Expr::Rec(z, sbody) = &sol else {
            return Err(Error::internal("loop lost its binder"));
        };
        let mut c = Calc::start(self.b, &sol);
        let exact = Expr::sum(Expr::tau(Expr::Var(z.clone())), self.fam.sols[&x1].clone());
        let re = sum_equal(self.b, sbody, &exact)?;
        c.then_at(self.b, &[Position::RecBody], re)?;
        c.then_at(self.b, &[Position::RecBody, Position::SumR], self.fam.proofs[&x1])?;
        let shape = self.sys.shape[&x1].clone();
        let p = match &shape {
            Shape::Plain(v) => {
                let target = make_loop(self.inst(&v.to_expr(), rho));
                c.conclude(self.b, &target)?
            }
            Shape::Loop(v) => {
                let k = self.inst(&v.to_expr(), rho);
                let c = c.conclude(self.b, &make_loop(make_loop(k.clone())))?;
                let flat = d6(self.b, &k)?;
                self.b.trans(c, flat)?
            }
        };
        let shape = loopify(shape);
        let target = self.inst(&shape.to_expr(), rho);
        let p = ending(self.b, p, &target)?;
        Ok(self.add(shape, sol, p))
    }

    fn go_rec(&mut self, e: &Expr, w: &Name, body: &Expr, rho: &BTreeMap<Name, Expr>) -> Result<Name> {
        let sol = substitute(e, rho);
        let mut rho2 = rho.clone();
        rho2.insert(w.clone(), sol.clone());
        let start = self.sys.formals.len();
        let xr = self.go(body, &rho2)?;
        let Expr::Rec(z, sbody) = &sol else {
            return Err(Error::internal("recursion lost its binder"));
        };
        let unfold = self.b.axiom(AxiomId::R1, Inst::new().e("E", (**sbody).clone()).x("X", z.clone()))?;
        let unfold = ending(self.b, unfold, &self.fam.sols[&xr].clone())?;
        let p_root = self.b.trans(unfold, self.fam.proofs[&xr])?;
        let shape = self.sys.shape[&xr].clone();
        let x = self.add(shape, sol.clone(), p_root);
        let (replacement, q) = self.part(&x, rho)?;

        let new: Vec<Name> = self.sys.formals[start..].to_vec();
        for y in new {
            let sh = self.sys.shape[&y].clone();
            if !sh.view().vars.contains(w) {
                continue;
            }
            let v = sh.view();
            let rest = SumView::new(
                v.prefixed.clone(),
                v.vars.iter().filter(|u| *u != w).cloned().collect(),
            );
            let v2 = union(&rest, &replacement);
            let old = self.inst(&v.to_expr(), &rho2);
            let rest_i = self.inst(&rest.to_expr(), &rho2);
            let new_i = self.inst(&v2.to_expr(), rho);
            let fix = self.replace_leaf(&old, &sol, &rest_i, q, &new_i)?;
            let p = self.fam.proofs[&y];
            let p = match &sh {
                Shape::Plain(_) => self.b.trans(p, fix)?,
                Shape::Loop(_) => {
                    let p = ending(self.b, p, &make_loop(old.clone()))?;
                    let mut c = Calc::from(p);
                    c.then_at(self.b, &[Position::RecBody, Position::SumR], fix)?;
                    c.conclude(self.b, &make_loop(new_i.clone()))?
                }
            };
            let sh2 = match sh {
                Shape::Plain(_) => Shape::Plain(v2),
                Shape::Loop(_) => Shape::Loop(v2),
            };
            let target = self.inst(&sh2.to_expr(), rho);
            let p = ending(self.b, p, &target)?;
            self.sys.shape.insert(y.clone(), sh2);
            self.fam.proofs.insert(y, p);
        }
        Ok(x)
    }

    // `old = new` where `old` has the leaf `leaf` next to the leaves of
    // `rest`, and `q` proves `leaf = R` with `new` the sum of `R` and `rest`.
    fn replace_leaf(&mut self, old: &Expr, leaf: &Expr, rest: &Expr, q: usize, new: &Expr) -> Result<usize> {
        let r = self.b.rhs(q).clone();
        if rest.is_nil() {
            let a = sum_equal(self.b, old, leaf)?;
            let c = sum_equal(self.b, &r, new)?;
            return self.b.chain(&[a, q, c]);
        }
        let a = sum_equal(self.b, old, &Expr::sum(leaf.clone(), rest.clone()))?;
        let m = self.b.cong_suml(q, rest);
        let c = sum_equal(self.b, &Expr::sum(r, rest.clone()), new)?;
        self.b.chain(&[a, m, c])
    }
}

fn loopify(shape: Shape) -> Shape {
    match shape {
        Shape::Plain(v) | Shape::Loop(v) => Shape::Loop(v),
    }
}

