//! Equational proofs: the axiom system, a proof builder, an independent
//! checker and a certificate format.

mod alpha;
mod axiom;
pub mod calc;
pub mod cert;
mod check;
pub mod lemmas;
mod step;
pub mod sums;

pub use alpha::{alpha_eq, alpha_proof};
pub use axiom::{instantiate, r2_premise, AxiomId, Inst};
pub use check::check;
pub use step::{context_of, plug, Builder, Derivation, Just, Position, Step};

use crate::error::Result;
use crate::syntax::{Action, Expr, Name};

/// Instantiates an axiom schema after checking its side conditions.
pub fn instantiate_axiom(id: AxiomId, inst: &Inst) -> Result<(Expr, Expr)> {
    instantiate(id, inst)
}

/// `a.tau.e = a.e`
pub fn derive_t1(a: &Action, e: &Expr) -> Result<Derivation> {
    let mut b = Builder::new();
    let id = lemmas::t1(&mut b, a, e)?;
    Ok(b.finish(id))
}

/// `e = e + a.t` for a move `e --a--> t`.
pub fn derive_summand_move(e: &Expr, a: &Action, t: &Expr) -> Result<Derivation> {
    let mut b = Builder::new();
    let id = lemmas::summand_move(&mut b, e, a, t)?;
    Ok(b.finish(id))
}

/// `e = e + x` for `e ▷ x`.
pub fn derive_summand_exposed(e: &Expr, x: &Name) -> Result<Derivation> {
    let mut b = Builder::new();
    let id = lemmas::summand_exposed(&mut b, e, x)?;
    Ok(b.finish(id))
}

/// `rec x.(tau.e + f) = rec x.(tau.(x + e) + f)` when `e` silently exposes `x`.
pub fn derive_d0(e: &Expr, f: &Expr, x: &Name) -> Result<Derivation> {
    let mut b = Builder::new();
    let id = lemmas::d0(&mut b, e, f, x)?;
    Ok(b.finish(id))
}
