//! Bisimilarity decision procedures and the root-level congruence check.

mod functional;
mod gfp;
mod oracle;
mod relation;
mod rooted;

pub use functional::{
    apply, functional_b, functional_bd, functional_bp, functional_s, Failure, Functional, Reach,
};
pub use gfp::{bisimilarity, coarsest, explain, Kind, Removal};
pub use oracle::{brute_oracle, ORACLE_LIMIT};
pub use relation::{PairRelation, Partition};
pub use rooted::{equivalent, minimize, rooted_equal, Joint, RootMismatch, Side};
