//! Brute-force bisimilarity for tiny systems, written independently of the
//! refinement algorithm so the two can be compared.

use super::{Kind, PairRelation, Partition};
use crate::error::{Error, Result};
use crate::semantics::Lts;

/// Largest number of states the oracle accepts.
pub const ORACLE_LIMIT: usize = 8;

struct Naive<'a> {
    lts: &'a Lts,
    n: usize,
    /// `star[s][t]`: `t` reachable from `s` by zero or more silent moves.
    star: Vec<Vec<bool>>,
    /// `plus[s][t]`: one or more silent moves.
    plus: Vec<Vec<bool>>,
}

impl<'a> Naive<'a> {
    fn new(lts: &'a Lts) -> Self {
        let n = lts.num_states();
        let mut plus = vec![vec![false; n]; n];
        for (s, a, t) in lts.transitions() {
            if a.is_tau() {
                plus[s][t] = true;
            }
        }
        // transitive closure
        for k in 0..n {
            for i in 0..n {
                if plus[i][k] {
                    for j in 0..n {
                        if plus[k][j] {
                            plus[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut star = plus.clone();
        for (i, row) in star.iter_mut().enumerate() {
            row[i] = true;
        }
        Naive { lts, n, star, plus }
    }

    fn moves(&self, s: usize) -> impl Iterator<Item = (&crate::syntax::Action, usize)> + '_ {
        self.lts.succ[s].iter().map(|(a, t)| (a, *t))
    }

    fn strong(&self, r: &[Vec<bool>], e: usize, f: usize) -> bool {
        let moves_ok = self
            .moves(e)
            .all(|(a, e1)| self.moves(f).any(|(b, f1)| a == b && r[e1][f1]));
        let exp_ok = self.lts.exposure[e].is_subset(&self.lts.exposure[f]);
        moves_ok && exp_ok
    }

    fn branching(&self, r: &[Vec<bool>], e: usize, f: usize) -> bool {
        let moves_ok = self.moves(e).all(|(a, e1)| {
            let stutter = a.is_tau() && (0..self.n).any(|f1| self.star[f][f1] && r[e][f1] && r[e1][f1]);
            stutter
                || (0..self.n).any(|f1| {
                    self.star[f][f1]
                        && r[e][f1]
                        && self.moves(f1).any(|(b, f2)| a == b && r[e1][f2])
                })
        });
        let exp_ok = self.lts.exposure[e].iter().all(|w| {
            (0..self.n).any(|f1| self.star[f][f1] && r[e][f1] && self.lts.exposure[f1].contains(w))
        });
        moves_ok && exp_ok
    }

    /// Every infinite silent run from `e` meets a state related to some
    /// state reached from `f` by at least one silent move.
    fn divergence(&self, r: &[Vec<bool>], e: usize, f: usize) -> bool {
        let good: Vec<bool> = (0..self.n)
            .map(|e1| (0..self.n).any(|f1| self.plus[f][f1] && r[e1][f1]))
            .collect();
        // States with an infinite run avoiding `good`: shrink from all
        // non-good states, dropping those without a successor left.
        let mut avoid: Vec<bool> = good.iter().map(|g| !g).collect();
        loop {
            let next: Vec<bool> = (0..self.n)
                .map(|s| {
                    avoid[s]
                        && self
                            .moves(s)
                            .any(|(a, t)| a.is_tau() && avoid[t])
                })
                .collect();
            if next == avoid {
                break;
            }
            avoid = next;
        }
        !avoid[e]
    }

    fn post_fixpoint(&self, kind: Kind, r: &[Vec<bool>]) -> bool {
        (0..self.n).all(|e| {
            (0..self.n).all(|f| {
                !r[e][f]
                    || match kind {
                        Kind::Strong => self.strong(r, e, f),
                        Kind::Branching => self.branching(r, e, f),
                        Kind::Dpbb => self.branching(r, e, f) && self.divergence(r, e, f),
                    }
            })
        })
    }
}

/// Calls `visit` with every partition of `0..n` as a class label vector.
fn each_partition(n: usize, visit: &mut dyn FnMut(&[usize])) {
    fn go(labels: &mut Vec<usize>, n: usize, max: usize, visit: &mut dyn FnMut(&[usize])) {
        if labels.len() == n {
            visit(labels);
            return;
        }
        for c in 0..=max {
            labels.push(c);
            go(labels, n, max.max(c + 1), visit);
            labels.pop();
        }
    }
    go(&mut Vec::with_capacity(n), n, 0, visit);
}

/// Union of all equivalence relations that are bisimulations of the given
/// kind. The coarsest bisimulation is itself an equivalence, so the union
/// over equivalences equals the union over all symmetric bisimulations.
pub fn brute_oracle(lts: &Lts, kind: Kind) -> Result<Partition> {
    let n = lts.num_states();
    if n > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge(n));
    }
    let naive = Naive::new(lts);
    let mut union = vec![vec![false; n]; n];
    each_partition(n, &mut |labels| {
        let r: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| labels[i] == labels[j]).collect())
            .collect();
        if naive.post_fixpoint(kind, &r) {
            for i in 0..n {
                for j in 0..n {
                    union[i][j] |= r[i][j];
                }
            }
        }
    });
    let rel = PairRelation::from_pairs(
        n,
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| union[i][j]),
    );
    Partition::from_relation(&rel)
        .ok_or_else(|| Error::internal("union of bisimulation equivalences is not transitive"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{build_lts, DEFAULT_BUDGET};
    use crate::syntax::parse_expr;

    #[test]
    fn partitions_are_counted_by_bell_numbers() {
        let mut count = 0;
        each_partition(5, &mut |_| count += 1);
        assert_eq!(count, 52);
    }

    #[test]
    fn single_state() {
        let l = Lts::with_states(1);
        for kind in Kind::ALL {
            assert_eq!(brute_oracle(&l, kind).unwrap().num_classes(), 1);
        }
    }

    #[test]
    fn identical_copies() {
        let a = build_lts(&parse_expr("a.0").unwrap(), DEFAULT_BUDGET).unwrap();
        let (l, off) = a.disjoint_union(&a);
        for kind in Kind::ALL {
            assert!(brute_oracle(&l, kind).unwrap().same(0, off));
        }
    }

    #[test]
    fn rejects_large_input() {
        assert!(brute_oracle(&Lts::with_states(9), Kind::Strong).is_err());
    }
}
