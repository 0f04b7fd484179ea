//! Equivalence checking and equational proofs for finite-state process
//! expressions under divergence-preserving branching bisimilarity.

pub mod equiv;
pub mod error;
pub mod proof;
pub mod semantics;
pub mod ses;
pub mod standardize;
pub mod syntax;

pub use error::{Error, Result};
