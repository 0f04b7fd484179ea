#![allow(dead_code)]

use dpbb_core::semantics::Lts;
use dpbb_core::syntax::{is_guarded_expr, make_loop, Action, Expr, Name};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const BINDERS: [&str; 3] = ["X", "Y", "Z"];
const ACTIONS: [&str; 3] = ["a", "b", "tau"];

fn action<R: Rng>(rng: &mut R) -> Action {
    match *ACTIONS.choose(rng).unwrap() {
        "tau" => Action::Tau,
        a => Action::visible(a),
    }
}

fn go<R: Rng>(rng: &mut R, budget: usize, bound: &mut Vec<Name>) -> Expr {
    if budget <= 1 {
        return match rng.gen_range(0..4) {
            0 => Expr::Nil,
            1 => Expr::var("W"),
            _ => match bound.choose(rng) {
                Some(x) => Expr::Var(x.clone()),
                None => Expr::Nil,
            },
        };
    }
    match rng.gen_range(0..10) {
        0..=3 => Expr::prefix(action(rng), go(rng, budget - 1, bound)),
        4..=6 => {
            let left = rng.gen_range(1..budget.max(2));
            let l = go(rng, left, bound);
            let r = go(rng, budget.saturating_sub(left + 1).max(1), bound);
            Expr::sum(l, r)
        }
        7 => make_loop(go(rng, budget.saturating_sub(3).max(1), bound)),
        _ => {
            let x: Name = (*BINDERS.choose(rng).unwrap()).into();
            bound.push(x.clone());
            let body = go(rng, budget - 1, bound);
            bound.pop();
            Expr::rec_named(x, body)
        }
    }
}

/// A random expression with at most `size` nodes, give or take the loops.
pub fn expr<R: Rng>(rng: &mut R, size: usize) -> Expr {
    loop {
        let budget = rng.gen_range(1..=size);
        let e = go(rng, budget, &mut Vec::new());
        if e.size() <= size {
            return e;
        }
    }
}

pub fn guarded_expr<R: Rng>(rng: &mut R, size: usize) -> Expr {
    loop {
        let e = expr(rng, size);
        if is_guarded_expr(&e) {
            return e;
        }
    }
}

/// A random LTS with `n` states and exposures drawn from `{X}`.
pub fn lts<R: Rng>(rng: &mut R, n: usize) -> Lts {
    let mut l = Lts::with_states(n);
    let edges = rng.gen_range(0..=2 * n);
    for _ in 0..edges {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        l.add_transition(s, action(rng), t);
    }
    for s in 0..n {
        if rng.gen_bool(0.15) {
            l.exposure[s].insert("X".into());
        }
    }
    l
}

fn positions(e: &Expr, path: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    out.push(path.clone());
    let kids: Vec<&Expr> = match e {
        Expr::Prefix(_, b) | Expr::Rec(_, b) => vec![b],
        Expr::Sum(l, r) => vec![l, r],
        _ => vec![],
    };
    for (i, k) in kids.into_iter().enumerate() {
        path.push(i as u8);
        positions(k, path, out);
        path.pop();
    }
}

fn rewrite_at<R: Rng>(rng: &mut R, e: &Expr, path: &[u8]) -> Expr {
    let Some((&i, rest)) = path.split_first() else {
        return rewrite_here(rng, e);
    };
    match e {
        Expr::Prefix(a, b) => Expr::prefix(a.clone(), rewrite_at(rng, b, rest)),
        Expr::Rec(x, b) => Expr::rec_named(x.clone(), rewrite_at(rng, b, rest)),
        Expr::Sum(l, r) if i == 0 => Expr::sum(rewrite_at(rng, l, rest), (**r).clone()),
        Expr::Sum(l, r) => Expr::sum((**l).clone(), rewrite_at(rng, r, rest)),
        _ => e.clone(),
    }
}

// One sound rewrite of `e` at its root, or `e` itself.
fn rewrite_here<R: Rng>(rng: &mut R, e: &Expr) -> Expr {
    use dpbb_core::syntax::{loop_body, substitute_one};
    match rng.gen_range(0..6) {
        0 => match e {
            Expr::Prefix(a, b) => Expr::prefix(a.clone(), Expr::tau((**b).clone())),
            _ => e.clone(),
        },
        1 => match e {
            Expr::Rec(x, b) => substitute_one(b, x, e),
            _ => e.clone(),
        },
        2 => match loop_body(e) {
            Some(b) => Expr::sum(Expr::tau(e.clone()), b.clone()),
            None => Expr::sum(e.clone(), Expr::Nil),
        },
        3 => match e {
            Expr::Prefix(a, b) => match &**b {
                Expr::Sum(_, f) => Expr::prefix(a.clone(), Expr::sum(Expr::tau((**b).clone()), (**f).clone())),
                _ => e.clone(),
            },
            _ => e.clone(),
        },
        4 => match e {
            Expr::Sum(l, r) => Expr::sum((**r).clone(), (**l).clone()),
            _ => Expr::sum(e.clone(), e.clone()),
        },
        _ => e.clone(),
    }
}

/// An expression provably equal to `e`, from a few random sound rewrites.
pub fn variant<R: Rng>(rng: &mut R, e: &Expr, rounds: usize) -> Expr {
    let mut cur = e.clone();
    for _ in 0..rounds {
        let mut all = Vec::new();
        positions(&cur, &mut Vec::new(), &mut all);
        let path = all.choose(rng).unwrap().clone();
        cur = rewrite_at(rng, &cur, &path);
    }
    cur
}

/// A pair for completeness testing: provably equal variants, independent
/// expressions, or a variant with one action changed.
pub fn pair<R: Rng>(rng: &mut R, size: usize) -> (Expr, Expr) {
    loop {
        let e = guarded_expr(rng, size);
        let f = match rng.gen_range(0..4) {
            0 | 1 => variant(rng, &e, 4),
            2 => guarded_expr(rng, size),
            _ => {
                let f = variant(rng, &e, 2);
                perturb(rng, &f)
            }
        };
        if f != e && is_guarded_expr(&f) {
            return (e, f);
        }
    }
}

fn perturb<R: Rng>(rng: &mut R, e: &Expr) -> Expr {
    match e {
        Expr::Prefix(_, b) if rng.gen_bool(0.5) => Expr::prefix(action(rng), (**b).clone()),
        Expr::Prefix(a, b) => Expr::prefix(a.clone(), perturb(rng, b)),
        Expr::Sum(l, r) if rng.gen_bool(0.5) => Expr::sum(perturb(rng, l), (**r).clone()),
        Expr::Sum(l, r) => Expr::sum((**l).clone(), perturb(rng, r)),
        Expr::Rec(x, b) => Expr::rec_named(x.clone(), perturb(rng, b)),
        _ => Expr::prefix(action(rng), e.clone()),
    }
}
