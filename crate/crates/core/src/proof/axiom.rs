use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::semantics::tau_exposes;
use crate::syntax::{free_vars, is_guarded_in, substitute_one, Action, Expr, Name};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    S1,
    S2,
    S3,
    S4,
    B,
    R0,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
}

impl AxiomId {
    pub const ALL: [AxiomId; 14] = [
        AxiomId::S1,
        AxiomId::S2,
        AxiomId::S3,
        AxiomId::S4,
        AxiomId::B,
        AxiomId::R0,
        AxiomId::R1,
        AxiomId::R2,
        AxiomId::R3,
        AxiomId::R4,
        AxiomId::R5,
        AxiomId::R6,
        AxiomId::R7,
        AxiomId::R8,
    ];

    /// Metavariables the schema needs: expressions, variable names, action.
    pub fn signature(self) -> (&'static [&'static str], &'static [&'static str], bool) {
        use AxiomId::*;
        match self {
            S1 => (&["E", "F"], &[], false),
            S2 => (&["E", "F", "G"], &[], false),
            S3 | S4 => (&["E"], &[], false),
            B => (&["E", "F"], &[], true),
            R0 => (&["E"], &["X", "Y"], false),
            R1 | R3 | R6 => (&["E"], &["X"], false),
            R2 => (&["E", "F"], &["X"], false),
            R4 => (&["E", "F", "G"], &["X"], false),
            R5 | R8 => (&["E", "F"], &["X", "Y"], false),
            R7 => (&["E"], &["X", "Y"], false),
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for AxiomId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        AxiomId::ALL
            .into_iter()
            .find(|id| id.to_string() == s)
            .ok_or_else(|| format!("unknown axiom `{s}`"))
    }
}

/// Metavariable bindings of an axiom instance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Inst {
    pub exprs: BTreeMap<&'static str, Expr>,
    pub names: BTreeMap<&'static str, Name>,
    pub action: Option<Action>,
}

impl Inst {
    pub fn new() -> Inst {
        Inst::default()
    }

    pub fn e(mut self, key: &'static str, value: Expr) -> Inst {
        self.exprs.insert(key, value);
        self
    }

    pub fn x(mut self, key: &'static str, value: Name) -> Inst {
        self.names.insert(key, value);
        self
    }

    pub fn a(mut self, value: Action) -> Inst {
        self.action = Some(value);
        self
    }

    fn expr(&self, key: &str) -> Result<&Expr> {
        self.exprs
            .get(key)
            .ok_or_else(|| Error::MissingMeta(key.to_string()))
    }

    fn name(&self, key: &str) -> Result<&Name> {
        self.names
            .get(key)
            .ok_or_else(|| Error::MissingMeta(key.to_string()))
    }

    fn act(&self) -> Result<&Action> {
        self.action
            .as_ref()
            .ok_or_else(|| Error::MissingMeta("a".to_string()))
    }
}

fn side(id: AxiomId, detail: impl Into<String>) -> Error {
    Error::SideCondition {
        axiom: id.to_string(),
        detail: detail.into(),
    }
}

fn sum(a: &Expr, b: &Expr) -> Expr {
    Expr::sum(a.clone(), b.clone())
}

fn tau(a: Expr) -> Expr {
    Expr::tau(a)
}

fn rec(x: &Name, body: Expr) -> Expr {
    Expr::rec_named(x.clone(), body)
}

fn var(x: &Name) -> Expr {
    Expr::Var(x.clone())
}

fn distinct(id: AxiomId, x: &Name, y: &Name) -> Result<()> {
    if x == y {
        return Err(side(id, format!("binders must differ, both are {x}")));
    }
    Ok(())
}

fn exposed(id: AxiomId, x: &Name, e: &Expr) -> Result<()> {
    if !tau_exposes(x, e)? {
        return Err(side(id, format!("{e} does not silently expose {x}")));
    }
    Ok(())
}

/// The two sides of an axiom instance, after checking its side conditions.
///
/// For `R2` the result is the conclusion `F = rec X. E`; the premise
/// `F = E{F/X}` is checked separately.
pub fn instantiate(id: AxiomId, inst: &Inst) -> Result<(Expr, Expr)> {
    use AxiomId::*;
    let (need_e, need_x, need_a) = id.signature();
    for k in need_e {
        inst.expr(k)?;
    }
    for k in need_x {
        inst.name(k)?;
    }
    if need_a {
        inst.act()?;
    }
    let ex = |k| inst.expr(k).cloned();
    Ok(match id {
        S1 => {
            let (e, f) = (ex("E")?, ex("F")?);
            (sum(&e, &f), sum(&f, &e))
        }
        S2 => {
            let (e, f, g) = (ex("E")?, ex("F")?, ex("G")?);
            (sum(&e, &sum(&f, &g)), sum(&sum(&e, &f), &g))
        }
        S3 => {
            let e = ex("E")?;
            (sum(&e, &e), e)
        }
        S4 => {
            let e = ex("E")?;
            (sum(&e, &Expr::Nil), e)
        }
        B => {
            let (e, f, a) = (ex("E")?, ex("F")?, inst.act()?.clone());
            let ef = sum(&e, &f);
            (
                Expr::prefix(a.clone(), sum(&tau(ef.clone()), &f)),
                Expr::prefix(a, ef),
            )
        }
        R0 => {
            let (e, x, y) = (ex("E")?, inst.name("X")?, inst.name("Y")?);
            let lhs = rec(x, e.clone());
            if free_vars(&lhs).contains(y) {
                return Err(side(id, format!("{y} occurs free in {lhs}")));
            }
            (lhs, rec(y, substitute_one(&e, x, &var(y))))
        }
        R1 => {
            let (e, x) = (ex("E")?, inst.name("X")?);
            let lhs = rec(x, e.clone());
            let rhs = substitute_one(&e, x, &lhs);
            (lhs, rhs)
        }
        R2 => {
            let (e, f, x) = (ex("E")?, ex("F")?, inst.name("X")?);
            if !is_guarded_in(x, &e) {
                return Err(side(id, format!("{x} is not guarded in {e}")));
            }
            (f, rec(x, e))
        }
        R3 => {
            let (e, x) = (ex("E")?, inst.name("X")?);
            (rec(x, sum(&var(x), &e)), rec(x, e))
        }
        R4 => {
            let (e, f, g, x) = (ex("E")?, ex("F")?, ex("G")?, inst.name("X")?);
            exposed(id, x, &e)?;
            (
                rec(x, sum(&tau(sum(&tau(e.clone()), &f)), &g)),
                rec(x, sum(&tau(sum(&e, &f)), &g)),
            )
        }
        R5 => {
            let (e, f, x, y) = (ex("E")?, ex("F")?, inst.name("X")?, inst.name("Y")?);
            distinct(id, x, y)?;
            exposed(id, x, &e)?;
            let inner_l = rec(y, sum(&tau(var(y)), &e));
            let inner_r = rec(y, e);
            (
                rec(x, sum(&tau(inner_l), &f)),
                rec(x, sum(&tau(inner_r), &f)),
            )
        }
        R6 => {
            let (e, x) = (ex("E")?, inst.name("X")?);
            let lhs = rec(x, tau(e.clone()));
            let rhs = tau(rec(x, substitute_one(&e, x, &tau(var(x)))));
            (lhs, rhs)
        }
        R7 => {
            let (e, x, y) = (ex("E")?, inst.name("X")?, inst.name("Y")?);
            distinct(id, x, y)?;
            let inner = rec(y, sum(&tau(var(y)), &e));
            (rec(x, sum(&tau(var(x)), &inner)), rec(x, inner))
        }
        R8 => {
            let (e, f, x, y) = (ex("E")?, ex("F")?, inst.name("X")?, inst.name("Y")?);
            distinct(id, x, y)?;
            let body = |v: &Name| rec(y, sum(&tau(sum(&var(v), &e)), &f));
            (rec(x, body(x)), rec(x, body(y)))
        }
    })
}

/// The premise `F = E{F/X}` required by an `R2` instance.
pub fn r2_premise(inst: &Inst) -> Result<(Expr, Expr)> {
    let (e, f, x) = (inst.expr("E")?, inst.expr("F")?, inst.name("X")?);
    Ok((f.clone(), substitute_one(e, x, f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_expr;

    fn p(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn branching_axiom() {
        let inst = Inst::new()
            .e("E", p("a.0"))
            .e("F", p("b.0"))
            .a(Action::visible("c"));
        let (l, r) = instantiate(AxiomId::B, &inst).unwrap();
        assert_eq!(l, p("c.(tau.(a.0 + b.0) + b.0)"));
        assert_eq!(r, p("c.(a.0 + b.0)"));
    }

    #[test]
    fn r3_instance() {
        let inst = Inst::new().e("E", p("a.0")).x("X", "X".into());
        let (l, r) = instantiate(AxiomId::R3, &inst).unwrap();
        assert_eq!(l, p("rec X. (X + a.0)"));
        assert_eq!(r, p("rec X. a.0"));
    }

    #[test]
    fn side_conditions() {
        let inst = Inst::new()
            .e("E", p("tau.X"))
            .e("F", p("0"))
            .x("X", "X".into());
        assert!(matches!(
            instantiate(AxiomId::R2, &inst),
            Err(Error::SideCondition { .. })
        ));
        let inst = Inst::new().e("E", p("a.Y")).x("X", "X".into()).x("Y", "Y".into());
        assert!(matches!(
            instantiate(AxiomId::R0, &inst),
            Err(Error::SideCondition { .. })
        ));
        let inst = Inst::new()
            .e("E", p("a.X"))
            .e("F", p("0"))
            .e("G", p("0"))
            .x("X", "X".into());
        assert!(matches!(
            instantiate(AxiomId::R4, &inst),
            Err(Error::SideCondition { .. })
        ));
        assert!(matches!(
            instantiate(AxiomId::S1, &Inst::new()),
            Err(Error::MissingMeta(_))
        ));
    }
}
