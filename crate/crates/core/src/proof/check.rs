use super::axiom::{instantiate, r2_premise, AxiomId};
use super::step::{plug, Derivation, Just, Position, Step};
use crate::error::{Error, Result};
use crate::syntax::{Expr, HOLE};

fn fail(step: usize, reason: impl Into<String>) -> Error {
    Error::Check {
        step: step + 1,
        reason: reason.into(),
    }
}

fn context_shape_ok(pos: Position, context: &Expr) -> bool {
    let is_hole = |e: &Expr| matches!(e, Expr::Var(h) if &**h == HOLE);
    let no_hole = |e: &Expr| !crate::syntax::all_names(e).iter().any(|n| &**n == HOLE);
    match (pos, context) {
        (Position::Prefix, Expr::Prefix(_, h)) => is_hole(h),
        (Position::SumL, Expr::Sum(h, r)) => is_hole(h) && no_hole(r),
        (Position::SumR, Expr::Sum(l, h)) => is_hole(h) && no_hole(l),
        (Position::RecBody, Expr::Rec(x, h)) => is_hole(h) && &**x != HOLE,
        _ => false,
    }
}

fn check_step(steps: &[Step], i: usize) -> Result<()> {
    let s = &steps[i];
    let earlier = |j: usize| -> Result<&Step> {
        if j >= i {
            return Err(fail(i, format!("reference to step {} is not earlier", j + 1)));
        }
        Ok(&steps[j])
    };
    match &s.just {
        Just::Refl => {
            if s.lhs != s.rhs {
                return Err(fail(i, "refl with different sides"));
            }
        }
        Just::Symm(j) => {
            let t = earlier(*j)?;
            if s.lhs != t.rhs || s.rhs != t.lhs {
                return Err(fail(i, format!("not the mirror of step {}", j + 1)));
            }
        }
        Just::Trans(j, k) => {
            let (a, b) = (earlier(*j)?, earlier(*k)?);
            if a.rhs != b.lhs {
                return Err(fail(
                    i,
                    format!("steps {} and {} do not meet", j + 1, k + 1),
                ));
            }
            if s.lhs != a.lhs || s.rhs != b.rhs {
                return Err(fail(i, "endpoints differ from the chained steps"));
            }
        }
        Just::Axiom { id, inst, premise } => {
            let (l, r) = instantiate(*id, inst).map_err(|e| fail(i, e.to_string()))?;
            if s.lhs != l || s.rhs != r {
                return Err(fail(i, format!("not an instance of {id}")));
            }
            match (id, premise) {
                (AxiomId::R2, Some(p)) => {
                    let t = earlier(*p)?;
                    let (pl, pr) = r2_premise(inst).map_err(|e| fail(i, e.to_string()))?;
                    if t.lhs != pl || t.rhs != pr {
                        return Err(fail(
                            i,
                            format!("step {} is not the premise F = E{{F/X}}", p + 1),
                        ));
                    }
                }
                (AxiomId::R2, None) => return Err(fail(i, "R2 without premise")),
                (_, Some(_)) => return Err(fail(i, format!("{id} takes no premise"))),
                (_, None) => {}
            }
        }
        Just::Cong {
            pos,
            inner,
            context,
        } => {
            let t = earlier(*inner)?;
            if !context_shape_ok(*pos, context) {
                return Err(fail(i, format!("context `{context}` does not fit `{pos}`")));
            }
            let l = plug(context, *pos, &t.lhs);
            let r = plug(context, *pos, &t.rhs);
            if l.as_ref() != Some(&s.lhs) || r.as_ref() != Some(&s.rhs) {
                return Err(fail(i, "context does not produce the stated sides"));
            }
        }
    }
    Ok(())
}

/// Verifies every step; the error names the first bad step (1-based).
pub fn check(d: &Derivation) -> Result<()> {
    if d.steps.is_empty() {
        return Err(Error::Check {
            step: 0,
            reason: "empty derivation".into(),
        });
    }
    (0..d.steps.len()).try_for_each(|i| check_step(&d.steps, i))
}
