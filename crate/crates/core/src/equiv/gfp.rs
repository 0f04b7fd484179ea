use super::functional::{check_pair, DivergenceCache, Failure, Functional, Reach};
use super::{PairRelation, Partition};
use crate::semantics::Lts;

/// The three bisimilarities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Strong,
    Branching,
    Dpbb,
}

impl Kind {
    pub fn functional(self) -> Functional {
        match self {
            Kind::Strong => Functional::S,
            Kind::Branching => Functional::B,
            Kind::Dpbb => Functional::BDelta,
        }
    }

    pub const ALL: [Kind; 3] = [Kind::Strong, Kind::Branching, Kind::Dpbb];
}

/// Why a pair was removed during refinement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Removal {
    /// The ordered pair whose clause failed.
    pub pair: (usize, usize),
    pub failure: Failure,
}

/// Greatest symmetric relation `R` with `R ⊆ which(R)`.
///
/// Starts from the full relation and deletes pairs failing the transformer
/// against the current relation until a whole pass deletes nothing. Every
/// deletion is justified by monotonicity, so every symmetric post-fixpoint
/// stays included throughout.
pub fn coarsest(which: Functional, lts: &Lts) -> PairRelation {
    refine(which, lts, None).0
}

fn refine(
    which: Functional,
    lts: &Lts,
    watch: Option<(usize, usize)>,
) -> (PairRelation, Option<Removal>) {
    let n = lts.num_states();
    let reach = Reach::new(lts);
    let mut div = DivergenceCache::new(lts, &reach);
    let mut r = PairRelation::full(n);
    let mut removal = None;
    loop {
        div.clear();
        let mut changed = false;
        for e in 0..n {
            for f in 0..n {
                if !r.contains(e, f) {
                    continue;
                }
                if let Some(failure) = check_pair(which, lts, &reach, &mut div, &r, e, f) {
                    r.remove(e, f);
                    r.remove(f, e);
                    changed = true;
                    if removal.is_none() && watch.is_some_and(|w| w == (e, f) || w == (f, e)) {
                        removal = Some(Removal {
                            pair: (e, f),
                            failure,
                        });
                    }
                }
            }
        }
        if !changed {
            return (r, removal);
        }
    }
}

/// The partition induced by the chosen bisimilarity.
pub fn bisimilarity(lts: &Lts, kind: Kind) -> Partition {
    let r = coarsest(kind.functional(), lts);
    Partition::from_relation(&r).expect("the coarsest bisimulation is an equivalence")
}

/// The clause whose failure separated `s` and `t`, if they are inequivalent.
pub fn explain(lts: &Lts, kind: Kind, s: usize, t: usize) -> Option<Removal> {
    refine(kind.functional(), lts, Some((s, t))).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{build_lts, DEFAULT_BUDGET};
    use crate::syntax::parse_expr;

    fn joint(a: &str, b: &str) -> (Lts, usize) {
        let l = build_lts(&parse_expr(a).unwrap(), DEFAULT_BUDGET).unwrap();
        let r = build_lts(&parse_expr(b).unwrap(), DEFAULT_BUDGET).unwrap();
        l.disjoint_union(&r)
    }

    fn equivalent(a: &str, b: &str, kind: Kind) -> bool {
        let (l, off) = joint(a, b);
        bisimilarity(&l, kind).same(0, off)
    }

    #[test]
    fn divergence_example() {
        let (a, b) = ("rec X. (tau.X + a.0)", "tau.a.0");
        assert!(equivalent(a, b, Kind::Branching));
        assert!(!equivalent(a, b, Kind::Dpbb));
        assert!(!equivalent(a, b, Kind::Strong));
        let (l, off) = joint(a, b);
        assert!(explain(&l, Kind::Dpbb, 0, off).is_some());
        // the loop and `a.0` are told apart by the divergence clause alone
        let why = explain(&l, Kind::Dpbb, 0, off + 1).unwrap();
        assert_eq!(why.failure, Failure::Divergence);
        assert!(explain(&l, Kind::Branching, 0, off + 1).is_none());
    }

    #[test]
    fn branching_axiom_instance() {
        assert!(equivalent("tau.(a.0 + b.0) + b.0", "a.0 + b.0", Kind::Dpbb));
        assert!(!equivalent("tau.(a.0 + b.0) + b.0", "a.0 + b.0", Kind::Strong));
    }

    #[test]
    fn silent_prefix() {
        assert!(equivalent("a.0", "tau.a.0", Kind::Dpbb));
        assert!(!equivalent("a.0 + b.0", "tau.a.0 + b.0", Kind::Dpbb));
        assert!(!equivalent("X", "a.0", Kind::Dpbb));
    }

    #[test]
    fn identity_image_is_a_bisimulation() {
        let (l, _) = joint("tau.(a.0 + tau.b.0) + X", "rec Y. (tau.Y + a.Y)");
        let n = l.num_states();
        let bid = super::super::functional_b(&l, &PairRelation::identity(n));
        assert!(PairRelation::identity(n).is_subset(&bid));
    }
}
