//! Node multiway cut solvers: the undeletable-terminal problem for `α ≤ 2`,
//! the deletable-terminal problem for any fixed `α ≤ d`, and its weighted
//! version for `α ≤ 2` by reduction to weighted subset feedback vertex set.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::flow::{min_vertex_separator, Separation};
use crate::graph::{self, Graph, Vertex, VertexSet};
use crate::oracle::Solution;
use crate::sfvs;

/// True iff every component of `G − x` holds at most one terminal, and, when
/// terminals are not deletable, `x` avoids `t`.
pub fn check_multiway(g: &Graph, t: &VertexSet, x: &VertexSet, deletable: bool) -> bool {
    if !deletable && !x.is_disjoint(t) {
        return false;
    }
    let keep = g.complement_of(x).flags(g.n());
    at_most_one_terminal_per_component(g, &keep, &t.flags(g.n()))
}

pub(crate) fn at_most_one_terminal_per_component(g: &Graph, keep: &[bool], terminal: &[bool]) -> bool {
    let mut seen = vec![false; g.n() + 1];
    let mut stack = Vec::new();
    for start in g.vertices() {
        if !keep[start] || !terminal[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if keep[u] && !seen[u] {
                    if terminal[u] {
                        return false;
                    }
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    true
}

fn verified(g: &Graph, t: &VertexSet, removed: VertexSet, deletable: bool, weighted: bool) -> Result<Solution> {
    if !check_multiway(g, t, &removed, deletable) {
        return Err(Error::Internal(format!("{removed} does not separate the terminals")));
    }
    Ok(Solution {
        objective: if weighted { g.weight_of(&removed) } else { removed.len() as u64 },
        removed,
        feasible: true,
    })
}

/// Node multiway cut (terminals undeletable, unit weights) for `α(g) ≤ 2`.
///
/// Returns an infeasible [`Solution`] when two terminals are adjacent.
pub fn solve_nmc_alpha2(g: &Graph, t: &VertexSet) -> Result<Solution> {
    g.check_set(t)?;
    graph::require_independence_at_most(g, 2)?;
    let terminals = t.as_slice();
    if terminals
        .iter()
        .tuple_combinations()
        .any(|(&a, &b)| g.adjacent(a, b))
    {
        return Ok(Solution::infeasible());
    }
    if terminals.len() <= 1 {
        return verified(g, t, VertexSet::new(), false, false);
    }
    // independent terminals in a graph with α ≤ 2
    debug_assert_eq!(terminals.len(), 2);
    let unit = g.unit_weighted();
    let a = VertexSet::from([terminals[0]]);
    let b = VertexSet::from([terminals[1]]);
    match min_vertex_separator(&unit, &a, &b, &VertexSet::new())? {
        Separation::Cut(x) => verified(g, t, x, false, false),
        Separation::Infeasible => Err(Error::Internal("non-adjacent terminals could not be separated".into())),
    }
}

/// Smallest `X` with `|X| ≤ |t|` separating `t ∖ X`; first in lexicographic order.
fn small_terminal_cut(g: &Graph, t: &VertexSet) -> VertexSet {
    let terminal = t.flags(g.n());
    for size in 0..=t.len() {
        for x in g.vertices().combinations(size) {
            let mut keep = vec![true; g.n() + 1];
            for &v in &x {
                keep[v] = false;
            }
            if at_most_one_terminal_per_component(g, &keep, &terminal) {
                return VertexSet::from_sorted(x);
            }
        }
    }
    unreachable!("removing every terminal always separates them")
}

/// Node multiway cut with deletable terminals, minimising `|X|`, for `α(g) ≤ d`.
/// Vertex weights are ignored.
pub fn solve_nmcdt_xp(g: &Graph, t: &VertexSet, d: usize) -> Result<Solution> {
    g.check_set(t)?;
    graph::require_independence_at_most(g, d)?;
    if t.len() <= d {
        return verified(g, t, small_terminal_cut(g, t), true, false);
    }
    // Surviving terminals are pairwise non-adjacent, so they form an
    // independent T' of size ≤ d and every other terminal is deleted.
    let mut best: Option<VertexSet> = None;
    for size in 0..=d {
        for kept in t.iter().combinations(size) {
            if kept.iter().tuple_combinations().any(|(&a, &b)| g.adjacent(a, b)) {
                continue;
            }
            let kept: VertexSet = kept.into_iter().collect();
            let dropped = t.difference(&kept);
            let rest = graph::induced_subgraph(g, &g.complement_of(&dropped))?;
            let local_kept: VertexSet = kept
                .iter()
                .map(|v| rest.to_parent.binary_search(&v).expect("kept terminal survives") + 1)
                .collect();
            let x = dropped.union(&rest.lift(&small_terminal_cut(&rest.graph, &local_kept)));
            if best.as_ref().is_none_or(|b| (x.len(), &x) < (b.len(), b)) {
                best = Some(x);
            }
        }
    }
    verified(g, t, best.expect("the empty T' is always a candidate"), true, false)
}

/// Weighted node multiway cut with deletable terminals for `α(g) ≤ 2`.
///
/// A hub adjacent to every terminal turns terminal-to-terminal paths into
/// cycles through the hub; the hub weighs as much as the whole graph so it
/// is never worth deleting.
pub fn solve_wnmcdt_alpha2(g: &Graph, t: &VertexSet) -> Result<Solution> {
    g.check_set(t)?;
    graph::require_independence_at_most(g, 2)?;
    if t.is_empty() {
        return verified(g, t, VertexSet::new(), true, true);
    }
    let hub: Vertex = g.n() + 1;
    let with_hub = g.extend(&[(g.total_weight(), t.clone())])?;
    let sol = sfvs::solve_wsfvs_alpha3(&with_hub, &VertexSet::from([hub]))?;
    if sol.removed.contains(hub) {
        return Err(Error::Internal("hub vertex was removed despite its weight".into()));
    }
    verified(g, t, sol.removed, true, true)
}
