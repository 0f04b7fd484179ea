use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::proof::{check, Builder, Derivation};
use crate::syntax::{make_loop, occurs_unguarded, substitute, Expr, Name, SumView};

/// A recursive equation system `{X_i = F_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EqSystem {
    pub formals: Vec<Name>,
    pub rhs: BTreeMap<Name, Expr>,
}

impl EqSystem {
    pub fn new(equations: Vec<(Name, Expr)>) -> Result<EqSystem> {
        let mut sys = EqSystem::default();
        for (x, f) in equations {
            if sys.rhs.insert(x.clone(), f).is_some() {
                return Err(Error::internal(format!("{x} is defined twice")));
            }
            sys.formals.push(x);
        }
        Ok(sys)
    }

    pub fn len(&self) -> usize {
        self.formals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formals.is_empty()
    }

    pub fn is_formal(&self, x: &str) -> bool {
        self.rhs.contains_key(x)
    }

    pub fn rhs_of(&self, x: &str) -> &Expr {
        &self.rhs[x]
    }

    /// Pairs `(X, Y)` of formals with `Y` unguarded in the equation of `X`.
    pub fn unguarded_edges(&self) -> Vec<(Name, Name)> {
        let mut out = Vec::new();
        for x in &self.formals {
            for y in &self.formals {
                if occurs_unguarded(y, &self.rhs[x]) {
                    out.push((x.clone(), y.clone()));
                }
            }
        }
        out
    }

    /// Whether the unguardedness relation between formals is well-founded.
    pub fn is_guarded(&self) -> bool {
        self.cycle().is_none()
    }

    /// A formal on an unguarded cycle, if any.
    pub fn cycle(&self) -> Option<Name> {
        let edges = self.unguarded_edges();
        let mut remaining: BTreeSet<Name> = self.formals.iter().cloned().collect();
        loop {
            let sink = remaining
                .iter()
                .find(|x| !edges.iter().any(|(a, b)| a == *x && remaining.contains(b)))
                .cloned();
            match sink {
                Some(x) => {
                    remaining.remove(&x);
                }
                None => return remaining.into_iter().next(),
            }
        }
    }

    pub(crate) fn require_guarded(&self) -> Result<()> {
        match self.cycle() {
            None => Ok(()),
            Some(x) => Err(Error::NotGuarded(format!(
                "{x} lies on a cycle of unguarded occurrences"
            ))),
        }
    }

    /// `F_x` with every formal replaced by its entry in `sols`.
    pub fn instance(&self, x: &str, sols: &BTreeMap<Name, Expr>) -> Expr {
        substitute(&self.rhs[x], sols)
    }
}

impl fmt::Display for EqSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.formals {
            writeln!(f, "{x} = {}", self.rhs[x])?;
        }
        Ok(())
    }
}

/// `{X = tau.F_X}`
pub fn tau_transform(s: &EqSystem) -> EqSystem {
    EqSystem {
        formals: s.formals.clone(),
        rhs: s
            .rhs
            .iter()
            .map(|(x, f)| (x.clone(), Expr::tau(f.clone())))
            .collect(),
    }
}

/// Right-hand side of a standard equation: a simple sum, or a loop around one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Plain(SumView),
    Loop(SumView),
}

impl Shape {
    pub fn view(&self) -> &SumView {
        match self {
            Shape::Plain(v) | Shape::Loop(v) => v,
        }
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, Shape::Loop(_))
    }

    pub fn to_expr(&self) -> Expr {
        match self {
            Shape::Plain(v) => v.to_expr(),
            Shape::Loop(v) => make_loop(v.to_expr()),
        }
    }
}

/// A standard equation system.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SesSystem {
    pub formals: Vec<Name>,
    pub shape: BTreeMap<Name, Shape>,
}

impl SesSystem {
    pub fn len(&self) -> usize {
        self.formals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formals.is_empty()
    }

    pub fn index_of(&self, x: &str) -> Option<usize> {
        self.formals.iter().position(|y| &**y == x)
    }

    pub fn to_system(&self) -> EqSystem {
        EqSystem {
            formals: self.formals.clone(),
            rhs: self
                .shape
                .iter()
                .map(|(x, s)| (x.clone(), s.to_expr()))
                .collect(),
        }
    }

    /// Formals `Y` with `tau.Y` a summand of `F_x`.
    pub fn silent_successors(&self, x: &str) -> Vec<Name> {
        self.shape[x]
            .view()
            .prefixed
            .iter()
            .filter(|(a, _)| a.is_tau())
            .filter_map(|(_, b)| b.as_var().cloned())
            .filter(|y| self.shape.contains_key(y))
            .collect()
    }

    /// Checks the shape invariants: simple sums over the formals, non-formal
    /// bare summands, and guardedness.
    pub fn validate(&self) -> Result<()> {
        for x in &self.formals {
            let Some(sh) = self.shape.get(x) else {
                return Err(Error::internal(format!("no equation for {x}")));
            };
            let v = sh.view();
            for (_, body) in &v.prefixed {
                match body.as_var() {
                    Some(y) if self.shape.contains_key(y) => {}
                    _ => return Err(Error::internal(format!("{x}: `{body}` is not a formal"))),
                }
            }
            if let Some(w) = v.vars.iter().find(|w| self.shape.contains_key(*w)) {
                return Err(Error::internal(format!("{x}: formal {w} occurs bare")));
            }
        }
        if self.shape.len() != self.formals.len() {
            return Err(Error::internal("equations and formals differ"));
        }
        self.to_system().require_guarded()
    }

    /// The union with a system over disjoint formals.
    pub fn union(&self, other: &SesSystem) -> SesSystem {
        let mut out = self.clone();
        for x in &other.formals {
            out.formals.push(x.clone());
            out.shape.insert(x.clone(), other.shape[x].clone());
        }
        out
    }
}

impl fmt::Display for SesSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.formals {
            writeln!(f, "{x} = {}", self.shape[x].to_expr())?;
        }
        Ok(())
    }
}

/// Expressions for the formals of a system, with proofs of their equations
/// held in a builder.
#[derive(Clone, Debug, Default)]
pub(crate) struct Family {
    pub sols: BTreeMap<Name, Expr>,
    pub proofs: BTreeMap<Name, usize>,
}

/// A provable solution of a system: one expression per formal and a
/// derivation whose step `steps[X]` proves `E_X = F_X{E/X}`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub exprs: BTreeMap<Name, Expr>,
    pub derivation: Derivation,
    pub steps: BTreeMap<Name, usize>,
}

impl Solution {
    pub(crate) fn from_family(b: &Builder, fam: &Family) -> Solution {
        let names: Vec<Name> = fam.proofs.keys().cloned().collect();
        let ids: Vec<usize> = names.iter().map(|x| fam.proofs[x]).collect();
        let (derivation, new_ids) = b.extract(&ids);
        Solution {
            exprs: fam.sols.clone(),
            derivation,
            steps: names.into_iter().zip(new_ids).collect(),
        }
    }

    /// Checks the derivation and that it proves every equation of `s`.
    pub fn verify(&self, s: &EqSystem) -> Result<()> {
        check(&self.derivation)?;
        for x in &s.formals {
            let (Some(e), Some(&i)) = (self.exprs.get(x), self.steps.get(x)) else {
                return Err(Error::internal(format!("no solution for {x}")));
            };
            let step = self
                .derivation
                .steps
                .get(i)
                .ok_or_else(|| Error::internal(format!("missing step for {x}")))?;
            let want = s.instance(x, &self.exprs);
            if &step.lhs != e || !crate::proof::alpha_eq(&step.rhs, &want) {
                return Err(Error::internal(format!(
                    "step {} proves `{} = {}`, not the equation of {x}",
                    i + 1,
                    step.lhs,
                    step.rhs
                )));
            }
        }
        Ok(())
    }
}
