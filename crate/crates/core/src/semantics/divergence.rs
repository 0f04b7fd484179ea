use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::Lts;

/// States lying on a cycle of the graph with the given edges.
fn cyclic(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let mut g = DiGraph::<(), ()>::with_capacity(n, edges.len());
    for _ in 0..n {
        g.add_node(());
    }
    let mut on_cycle = vec![false; n];
    for &(s, t) in edges {
        g.add_edge((s as u32).into(), (t as u32).into(), ());
        if s == t {
            on_cycle[s] = true;
        }
    }
    for comp in tarjan_scc(&g) {
        if comp.len() > 1 {
            for v in comp {
                on_cycle[v.index()] = true;
            }
        }
    }
    on_cycle
}

/// States that reach a cycle using only the given edges.
fn reaches_cycle(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let mut mark = cyclic(n, edges);
    let mut pred = vec![Vec::new(); n];
    for &(s, t) in edges {
        pred[t].push(s);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&s| mark[s]).collect();
    while let Some(t) = stack.pop() {
        for &s in &pred[t] {
            if !mark[s] {
                mark[s] = true;
                stack.push(s);
            }
        }
    }
    mark
}

fn tau_edges(lts: &Lts) -> Vec<(usize, usize)> {
    (0..lts.num_states())
        .flat_map(|s| lts.tau_successors(s).map(move |t| (s, t)))
        .collect()
}

/// States on a silent cycle.
pub fn tau_cycle_states(lts: &Lts) -> BTreeSet<usize> {
    let c = cyclic(lts.num_states(), &tau_edges(lts));
    (0..c.len()).filter(|&s| c[s]).collect()
}

/// States with an infinite silent run.
pub fn divergent(lts: &Lts) -> BTreeSet<usize> {
    let d = reaches_cycle(lts.num_states(), &tau_edges(lts));
    (0..d.len()).filter(|&s| d[s]).collect()
}

/// Per state: whether it has an infinite silent run staying inside its
/// class of `class_of`.
pub fn in_class_divergent(lts: &Lts, class_of: &[usize]) -> Vec<bool> {
    let edges: Vec<_> = tau_edges(lts)
        .into_iter()
        .filter(|&(s, t)| class_of[s] == class_of[t])
        .collect();
    reaches_cycle(lts.num_states(), &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{build_lts, DEFAULT_BUDGET};
    use crate::syntax::{parse_expr, Action};

    fn lts(s: &str) -> Lts {
        build_lts(&parse_expr(s).unwrap(), DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn loop_root_diverges() {
        let l = lts("rec X. (tau.X + a.0)");
        assert_eq!(divergent(&l), BTreeSet::from([0]));
    }

    #[test]
    fn no_divergence() {
        assert!(divergent(&lts("tau.a.0")).is_empty());
        assert!(divergent(&lts("a.b.0 + c.0")).is_empty());
    }

    #[test]
    fn reaching_a_cycle_counts() {
        let mut l = Lts::with_states(3);
        l.add_transition(0, Action::Tau, 1);
        l.add_transition(1, Action::Tau, 2);
        l.add_transition(2, Action::Tau, 1);
        assert_eq!(divergent(&l), BTreeSet::from([0, 1, 2]));
        assert_eq!(tau_cycle_states(&l), BTreeSet::from([1, 2]));
        let within = in_class_divergent(&l, &[0, 1, 2]);
        assert_eq!(within, vec![false, false, false]);
        let within = in_class_divergent(&l, &[0, 1, 1]);
        assert_eq!(within, vec![false, true, true]);
    }
}
