//! Proofs that rearrange sums: reassociation, reordering, removal of
//! duplicates and of `0` summands, all with S1-S4.

use std::cmp::Ordering;

use super::axiom::{AxiomId, Inst};
use super::step::Builder;
use crate::error::{Error, Result};
use crate::syntax::{flatten_sum, sum_list, Expr};

fn s1(b: &mut Builder, e: &Expr, f: &Expr) -> Result<usize> {
    b.axiom(AxiomId::S1, Inst::new().e("E", e.clone()).e("F", f.clone()))
}

fn s2(b: &mut Builder, e: &Expr, f: &Expr, g: &Expr) -> Result<usize> {
    b.axiom(
        AxiomId::S2,
        Inst::new().e("E", e.clone()).e("F", f.clone()).e("G", g.clone()),
    )
}

fn s3(b: &mut Builder, e: &Expr) -> Result<usize> {
    b.axiom(AxiomId::S3, Inst::new().e("E", e.clone()))
}

fn s4(b: &mut Builder, e: &Expr) -> Result<usize> {
    b.axiom(AxiomId::S4, Inst::new().e("E", e.clone()))
}

/// `e = e1 + (e2 + (... + en))` for the leaves `e1..en` of `e`.
pub fn right_assoc(b: &mut Builder, e: &Expr) -> Result<usize> {
    match e {
        Expr::Sum(l, r) => {
            let pr = right_assoc(b, r)?;
            let r1 = b.rhs(pr).clone();
            let c = b.cong_sumr(l, pr);
            let a = append(b, l, &r1)?;
            b.trans(c, a)
        }
        _ => Ok(b.refl(e)),
    }
}

// `l + rl = list`, where `rl` is already right-nested.
fn append(b: &mut Builder, l: &Expr, rl: &Expr) -> Result<usize> {
    match l {
        Expr::Sum(a1, a2) => {
            let assoc = s2(b, a1, a2, rl)?;
            let s = b.symm(assoc);
            let p = append(b, a2, rl)?;
            let l1 = b.rhs(p).clone();
            let c = b.cong_sumr(a1, p);
            let q = append(b, a1, &l1)?;
            b.chain(&[s, c, q])
        }
        _ => Ok(b.refl(&Expr::sum(l.clone(), rl.clone()))),
    }
}

// `h + t = sorted`, where `t` is a sorted right-nested list without
// duplicates.
fn insert(b: &mut Builder, h: &Expr, t: &Expr) -> Result<usize> {
    let (y, rest) = match t {
        Expr::Sum(y, rest) => ((**y).clone(), Some((**rest).clone())),
        other => (other.clone(), None),
    };
    match h.cmp(&y) {
        Ordering::Less => Ok(b.refl(&Expr::sum(h.clone(), t.clone()))),
        Ordering::Equal => match rest {
            None => s3(b, h),
            Some(rest) => {
                let a = s2(b, h, h, &rest)?;
                let d = s3(b, h)?;
                let c = b.cong_suml(d, &rest);
                b.trans(a, c)
            }
        },
        Ordering::Greater => match rest {
            None => s1(b, h, &y),
            Some(rest) => {
                let a = s2(b, h, &y, &rest)?;
                let sw = s1(b, h, &y)?;
                let c = b.cong_suml(sw, &rest);
                let back = s2(b, &y, h, &rest)?;
                let back = b.symm(back);
                let i = insert(b, h, &rest)?;
                let tail = b.cong_sumr(&y, i);
                b.chain(&[a, c, back, tail])
            }
        },
    }
}

fn sort(b: &mut Builder, list: &Expr) -> Result<usize> {
    match list {
        Expr::Sum(h, t) => {
            let pt = sort(b, t)?;
            let t1 = b.rhs(pt).clone();
            let c = b.cong_sumr(h, pt);
            let i = insert(b, h, &t1)?;
            b.trans(c, i)
        }
        _ => Ok(b.refl(list)),
    }
}

/// The canonical form of a sum: its distinct non-`0` leaves in increasing
/// order, right-nested; `0` if there are none.
pub fn canonical_sum(e: &Expr) -> Expr {
    let mut leaves: Vec<Expr> = flatten_sum(e).into_iter().filter(|l| !l.is_nil()).collect();
    leaves.sort();
    leaves.dedup();
    sum_list(leaves)
}

/// `e = canonical_sum(e)`
pub fn normalize(b: &mut Builder, e: &Expr) -> Result<usize> {
    let a = right_assoc(b, e)?;
    let list = b.rhs(a).clone();
    let s = sort(b, &list)?;
    let sorted = b.rhs(s).clone();
    let mut ids = vec![a, s];
    if let Expr::Sum(h, rest) = &sorted {
        if h.is_nil() {
            ids.push(s1(b, h, rest)?);
            ids.push(s4(b, rest)?);
        }
    }
    let id = b.chain(&ids)?;
    debug_assert_eq!(b.rhs(id), &canonical_sum(e));
    Ok(id)
}

/// `x = y` for sums with the same set of non-`0` leaves.
pub fn sum_equal(b: &mut Builder, x: &Expr, y: &Expr) -> Result<usize> {
    if x == y {
        return Ok(b.refl(x));
    }
    let px = normalize(b, x)?;
    let py = normalize(b, y)?;
    if b.rhs(px) != b.rhs(py) {
        return Err(Error::internal(format!(
            "`{x}` and `{y}` differ as sums of leaves"
        )));
    }
    let back = b.symm(py);
    b.trans(px, back)
}

/// Whether [`sum_equal`] applies.
pub fn same_summands(x: &Expr, y: &Expr) -> bool {
    canonical_sum(x) == canonical_sum(y)
}
