//! The acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p dpbb-core --test acceptance -- --nocapture`.

mod common;

use std::time::Instant;

use dpbb_core::equiv::{
    bisimilarity, brute_oracle, equivalent, functional_b, functional_bd, functional_bp, functional_s,
    rooted_equal, Joint, Kind, PairRelation,
};
use dpbb_core::proof::{cert, check, derive_d0, derive_t1, instantiate, AxiomId, Derivation, Inst};
use dpbb_core::semantics::{in_class_divergent, tau_exposes, DEFAULT_BUDGET};
use dpbb_core::ses::{extract_ses, prove_congruent, solve_system_with, Congruence, SolveOrder};
use dpbb_core::standardize::{derive_d, standardize, DRule};
use dpbb_core::syntax::{
    as_standard_sum, is_guarded_in, parse_expr, substitute_one, Action, Expr, Name,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p(s: &str) -> Expr {
    parse_expr(s).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eq(e: &Expr, f: &Expr, kind: Kind) -> Result<bool, String> {
    equivalent(e, f, kind, DEFAULT_BUDGET).map_err(|x| x.to_string())
}

fn rooted(e: &Expr, f: &Expr) -> Result<bool, String> {
    rooted_equal(e, f, DEFAULT_BUDGET)
        .map(|m| m.is_none())
        .map_err(|x| x.to_string())
}

// The derivation checks and concludes `l = r`, and `l`, `r` are rooted equal.
fn sound_derivation(d: &Derivation, l: &Expr, r: &Expr) -> Result<(), String> {
    check(d).map_err(|x| format!("{l} = {r}: {x}"))?;
    ensure(d.conclusion() == Some((l, r)), || format!("wrong conclusion for {l} = {r}"))?;
    ensure(rooted(l, r)?, || format!("endpoints differ: {l} vs {r}"))
}

fn criterion_1() -> Outcome {
    let (div, ta) = (p("rec X. (tau.X + a.0)"), p("tau.a.0"));
    ensure(eq(&div, &ta, Kind::Branching)?, || "(a) not branching equivalent".into())?;
    ensure(!eq(&div, &ta, Kind::Dpbb)?, || "(a) dpbb equivalent".into())?;
    let (a, t) = (p("a.0"), p("tau.a.0"));
    ensure(eq(&a, &t, Kind::Dpbb)?, || "(b) a.0 vs tau.a.0 not dpbb equivalent".into())?;
    ensure(!rooted(&a, &t)?, || "(b) a.0 vs tau.a.0 rooted equal".into())?;
    ensure(!eq(&p("a.0 + b.0"), &p("tau.a.0 + b.0"), Kind::Dpbb)?, || {
        "(b) a.0+b.0 vs tau.a.0+b.0 dpbb equivalent".into()
    })?;
    let mut rng = common::rng(1);
    for _ in 0..20 {
        let (e, f) = (common::expr(&mut rng, 6), common::expr(&mut rng, 6));
        let ef = Expr::sum(e.clone(), f.clone());
        let lhs = Expr::sum(Expr::tau(ef.clone()), f.clone());
        ensure(eq(&lhs, &ef, Kind::Dpbb)?, || format!("(c) fails for E={e}, F={f}"))?;
    }
    Ok("3 fixed pairs, 20 random branching-axiom pairs".into())
}

fn corpus() -> Vec<dpbb_core::semantics::Lts> {
    let mut rng = common::rng(2);
    (0..500)
        .map(|_| {
            let n = rng.gen_range(1..=6);
            common::lts(&mut rng, n)
        })
        .collect()
}

fn criterion_2() -> Outcome {
    for (i, l) in corpus().iter().enumerate() {
        for kind in Kind::ALL {
            let fast = bisimilarity(l, kind);
            let slow = brute_oracle(l, kind).map_err(|x| x.to_string())?;
            ensure(fast == slow, || format!("LTS {i}, {kind:?}: {fast:?} vs {slow:?}"))?;
        }
    }
    Ok("500 LTSs x 3 kinds".into())
}

fn open_expr(rng: &mut ChaCha8Rng, size: usize, vars: &[&str]) -> Expr {
    let e = common::expr(rng, size);
    let x = vars[rng.gen_range(0..vars.len())];
    if rng.gen_bool(0.6) {
        substitute_one(&e, "W", &Expr::var(x))
    } else {
        e
    }
}

fn random_action(rng: &mut ChaCha8Rng) -> Action {
    match rng.gen_range(0..3) {
        0 => Action::Tau,
        1 => Action::visible("a"),
        _ => Action::visible("b"),
    }
}

// An instance of `id` meeting its side conditions, if the draw allows one.
fn draw_instance(rng: &mut ChaCha8Rng, id: AxiomId) -> Option<(Expr, Expr)> {
    use AxiomId::*;
    let (x, y): (Name, Name) = ("X".into(), "Y".into());
    let ex = |rng: &mut ChaCha8Rng| open_expr(rng, 6, &["X", "Y"]);
    let exposing = |rng: &mut ChaCha8Rng, e: Expr| match rng.gen_range(0..3) {
        0 => Expr::sum(e, Expr::var("X")),
        1 => Expr::tau(Expr::sum(Expr::var("X"), e)),
        _ => Expr::sum(Expr::tau(Expr::tau(Expr::var("X"))), e),
    };
    let inst = match id {
        S1 => Inst::new().e("E", ex(rng)).e("F", ex(rng)),
        S2 => Inst::new().e("E", ex(rng)).e("F", ex(rng)).e("G", ex(rng)),
        S3 | S4 => Inst::new().e("E", ex(rng)),
        B => Inst::new().e("E", ex(rng)).e("F", ex(rng)).a(random_action(rng)),
        R0 => Inst::new().e("E", ex(rng)).x("X", x.clone()).x("Y", "Z".into()),
        R1 | R3 | R6 => Inst::new().e("E", ex(rng)).x("X", x.clone()),
        R2 => {
            let body = Expr::sum(Expr::act("a", ex(rng)), ex(rng));
            if !is_guarded_in("X", &body) {
                return None;
            }
            let sol = substitute_one(&body, "X", &Expr::rec_named(x.clone(), body.clone()));
            Inst::new().e("E", body).e("F", sol).x("X", x.clone())
        }
        R4 => {
            let e = ex(rng);
            Inst::new()
                .e("E", exposing(rng, e))
                .e("F", ex(rng))
                .e("G", ex(rng))
                .x("X", x.clone())
        }
        R5 => {
            let e = ex(rng);
            Inst::new()
                .e("E", exposing(rng, e))
                .e("F", ex(rng))
                .x("X", x.clone())
                .x("Y", y.clone())
        }
        R7 => Inst::new().e("E", ex(rng)).x("X", x.clone()).x("Y", y.clone()),
        R8 => Inst::new().e("E", ex(rng)).e("F", ex(rng)).x("X", x.clone()).x("Y", y.clone()),
    };
    instantiate(id, &inst).ok()
}

fn criterion_3() -> Outcome {
    let mut rng = common::rng(3);
    let mut done = 0;
    let mut per_axiom = vec![0usize; AxiomId::ALL.len()];
    while done < 1000 {
        let k = done % AxiomId::ALL.len();
        let id = AxiomId::ALL[k];
        let Some((l, r)) = draw_instance(&mut rng, id) else {
            continue;
        };
        ensure(rooted(&l, &r)?, || format!("{id}: {l} = {r} is not sound"))?;
        per_axiom[k] += 1;
        done += 1;
    }
    Ok(format!("1000 instances over {} axioms", per_axiom.iter().filter(|&&n| n > 0).count()))
}

fn random_relation(rng: &mut ChaCha8Rng, n: usize) -> PairRelation {
    let density = rng.gen_range(0.1..0.9);
    let mut r = PairRelation::empty(n);
    for s in 0..n {
        for t in 0..n {
            if rng.gen_bool(density) {
                r.insert(s, t);
            }
        }
    }
    r
}

fn criterion_4() -> Outcome {
    for (i, l) in corpus().iter().enumerate() {
        let (s, d, b) = (
            bisimilarity(l, Kind::Strong),
            bisimilarity(l, Kind::Dpbb),
            bisimilarity(l, Kind::Branching),
        );
        for u in 0..l.num_states() {
            for v in 0..l.num_states() {
                ensure(!s.same(u, v) || d.same(u, v), || format!("LTS {i}: strong but not dpbb ({u},{v})"))?;
                ensure(!d.same(u, v) || b.same(u, v), || format!("LTS {i}: dpbb but not branching ({u},{v})"))?;
            }
        }
    }
    let mut rng = common::rng(4);
    let mut broken = [0usize; 3];
    let mut witness = None;
    let mut restricted_ok = true;
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let l = common::lts(&mut rng, n);
        let r = random_relation(&mut rng, n);
        let chain = [
            functional_s(&l, &r),
            functional_bp(&l, &r),
            functional_bd(&l, &r),
            functional_b(&l, &r),
        ];
        for (k, w) in chain.windows(2).enumerate() {
            if !w[0].is_subset(&w[1]) {
                broken[k] += 1;
                if k == 0 && witness.is_none() {
                    witness = chain[0].pairs().find(|&(s, t)| !chain[1].contains(s, t));
                }
            }
        }
        restricted_ok &= chain[0].intersect(&r).is_subset(&chain[1]);
    }
    if broken != [0, 0, 0] {
        return Err(format!(
            "violations per inclusion S<=B', B'<=Bd, Bd<=B: {broken:?} of 100 relations; \
             first S<=B' witness {witness:?}; S(R) & R <= B'(R) holds for all: {restricted_ok}"
        ));
    }
    Ok("500 LTSs, 100 relations".into())
}

fn criterion_5() -> Outcome {
    let mut rng = common::rng(5);
    let x: Name = "X".into();
    for _ in 0..50 {
        let (e, f, g) = (
            common::expr(&mut rng, 6),
            common::expr(&mut rng, 6),
            common::expr(&mut rng, 6),
        );
        let a = random_action(&mut rng);
        let d = derive_t1(&a, &e).map_err(|x| x.to_string())?;
        let (l, r) = (
            Expr::prefix(a.clone(), Expr::tau(e.clone())),
            Expr::prefix(a.clone(), e.clone()),
        );
        sound_derivation(&d, &l, &r)?;

        let exp = loop {
            let base = open_expr(&mut rng, 6, &["X"]);
            let cand = match rng.gen_range(0..3) {
                0 => Expr::sum(base, Expr::var("X")),
                1 => Expr::tau(Expr::sum(base, Expr::tau(Expr::var("X")))),
                _ => base,
            };
            if tau_exposes("X", &cand).unwrap_or(false) {
                break cand;
            }
        };
        let d = derive_d0(&exp, &f, &x).map_err(|x| x.to_string())?;
        let body = |h: Expr| Expr::rec_named(x.clone(), Expr::sum(Expr::tau(h), f.clone()));
        sound_derivation(&d, &body(exp.clone()), &body(Expr::sum(Expr::var("X"), exp.clone())))?;

        for rule in [
            DRule::D1(e.clone()),
            DRule::D2(e.clone()),
            DRule::D3 { x: x.clone(), e: e.clone(), f: f.clone() },
            DRule::D4 { x: x.clone(), e: e.clone(), f: f.clone(), g: g.clone() },
            DRule::D5 { e: e.clone(), f: f.clone() },
            DRule::D6(e.clone()),
        ] {
            let d = derive_d(&rule).map_err(|x| x.to_string())?;
            let (l, r) = rule.conclusion();
            sound_derivation(&d, &l, &r)?;
        }
    }
    Ok("50 operand sets x {T1, D0, D1..D6}".into())
}

fn criterion_6() -> Outcome {
    let mut rng = common::rng(6);
    for _ in 0..300 {
        let e = common::expr(&mut rng, 25);
        let (view, d) = standardize(&e).map_err(|x| format!("{e}: {x}"))?;
        let s = view.to_expr();
        ensure(as_standard_sum(&s).is_some(), || format!("{s} is not a standard sum"))?;
        sound_derivation(&d, &e, &s)?;
    }
    Ok("300 expressions of size <= 25".into())
}

fn criterion_7() -> Outcome {
    let mut rng = common::rng(7);
    let mut distinct = 0;
    for _ in 0..200 {
        let e = common::guarded_expr(&mut rng, 12);
        let (ses, root, sol) = extract_ses(&e).map_err(|x| format!("{e}: {x}"))?;
        let sys = ses.to_system();
        sol.verify(&sys).map_err(|x| format!("extraction of {e}: {x}"))?;
        let first = solve_system_with(&sys, SolveOrder::First).map_err(|x| x.to_string())?;
        let last = solve_system_with(&sys, SolveOrder::Last).map_err(|x| x.to_string())?;
        first.verify(&sys).map_err(|x| format!("solution of {e}: {x}"))?;
        last.verify(&sys).map_err(|x| format!("solution of {e}: {x}"))?;
        let (a, b) = (&first.exprs[&root], &last.exprs[&root]);
        ensure(rooted(a, &e)?, || format!("solution {a} differs from {e}"))?;
        if a != b {
            distinct += 1;
        }
        match prove_congruent(a, b, DEFAULT_BUDGET).map_err(|x| x.to_string())? {
            Congruence::Proved(d) => sound_derivation(&d, a, b)?,
            Congruence::Refuted(m) => return Err(format!("solutions of {e} refuted: {m}")),
        }
    }
    Ok(format!("200 expressions, {distinct} with syntactically distinct solutions"))
}

fn criterion_8() -> Outcome {
    let mut rng = common::rng(8);
    let (mut proved, mut refuted, mut done) = (0, 0, 0);
    while done < 200 {
        let (e, f) = common::pair(&mut rng, 15);
        let Ok(j) = Joint::build(&[&e, &f], 200) else {
            continue;
        };
        done += 1;
        let want = rooted(&e, &f)?;
        match prove_congruent(&e, &f, DEFAULT_BUDGET).map_err(|x| format!("{e} vs {f}: {x}"))? {
            Congruence::Proved(d) => {
                ensure(want, || format!("proved inequivalent {e} = {f}"))?;
                sound_derivation(&d, &e, &f)?;
                let back = cert::parse(&cert::to_text(&d)).map_err(|x| x.to_string())?;
                check(&back).map_err(|x| format!("reparsed certificate: {x}"))?;
                proved += 1;
            }
            Congruence::Refuted(_) => {
                ensure(!want, || format!("no proof for equivalent {e}, {f}"))?;
                refuted += 1;
            }
        }
        let part = bisimilarity(&j.lts, Kind::Dpbb);
        let div = in_class_divergent(&j.lts, &part.class_of);
        for s in 0..j.lts.num_states() {
            for t in 0..j.lts.num_states() {
                ensure(!part.same(s, t) || div[s] == div[t], || {
                    format!("divergence not uniform in a class of {e} + {f}")
                })?;
            }
        }
    }
    Ok(format!("200 pairs: {proved} proved, {refuted} refuted"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("1 example pairs", criterion_1),
        ("2 oracle equivalence", criterion_2),
        ("3 axiom soundness", criterion_3),
        ("4 hierarchy", criterion_4),
        ("5 derived-rule replay", criterion_5),
        ("6 standardization", criterion_6),
        ("7 equation-system round trip", criterion_7),
        ("8 completeness end-to-end", criterion_8),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {name}: {detail} ({:.1?})", t.elapsed()),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
